//! Text grammar for fields, rational functions, p-polynomials, and ordinary
//! polynomials in `Y` variables.

use crate::canon::KPoly;
use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::gfq::PrimeFieldCtx;
use crate::ppoly::PPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (at, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1.to_digit(10).unwrap() as u64))
                        .ok_or_else(|| Error::parse(at, "integer too large"))?;
                    i += 1;
                }
                toks.push((at, Tok::Int(v)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    s.push(chars[i].1);
                    i += 1;
                }
                toks.push((at, Tok::Ident(s)));
            } else if "+-*/^(),".contains(c) {
                toks.push((at, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::parse(at, format!("unexpected character {c:?}")));
            }
        }
        Ok(Lexer { toks, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(a, _)| *a)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.at(), format!("expected {c:?}")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        let at = self.at();
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            _ => Err(Error::parse(at, "expected an integer")),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::parse(self.at(), "unexpected trailing input"));
        }
        Ok(())
    }
}

/// `F<q>` or `F<q>(name, ...)`.
pub fn parse_field(text: &str) -> Result<FieldCtx> {
    let text = text.trim();
    let rest = text
        .strip_prefix('F')
        .ok_or_else(|| Error::parse(0, "field must start with 'F'"))?;
    let mut lx = Lexer::new(rest)?;
    let q = lx.int().map_err(|_| Error::parse(1, "expected the field size"))?;
    let q = u32::try_from(q).map_err(|_| Error::parse(1, "field size too large"))?;
    let mut names = Vec::new();
    if lx.eat('(') {
        loop {
            let at = lx.at() + 1;
            match lx.next() {
                Some(Tok::Ident(s)) => names.push(s),
                _ => return Err(Error::parse(at, "expected a parameter name")),
            }
            if lx.eat(')') {
                break;
            }
            lx.expect(',').map_err(|e| shift(e, 1))?;
        }
    }
    lx.done().map_err(|e| shift(e, 1))?;
    let gf = PrimeFieldCtx::new(q)?;
    FieldCtx::new(gf, names)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

struct RatParser<'a> {
    ctx: &'a FieldCtx,
}

impl RatParser<'_> {
    fn expr(&self, lx: &mut Lexer) -> Result<RatFunc> {
        let k = self.ctx;
        let neg = lx.eat('-');
        let mut acc = self.term(lx)?;
        if neg {
            acc = k.neg(&acc);
        }
        loop {
            if lx.eat('+') {
                acc = k.add(&acc, &self.term(lx)?);
            } else if lx.eat('-') {
                acc = k.sub(&acc, &self.term(lx)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, lx: &mut Lexer) -> Result<RatFunc> {
        let k = self.ctx;
        let mut acc = self.factor(lx)?;
        loop {
            if lx.eat('*') {
                acc = k.mul(&acc, &self.factor(lx)?);
            } else if lx.peek() == Some(&Tok::Sym('/')) {
                let at = lx.at();
                lx.next();
                let d = self.factor(lx)?;
                acc = k.div(&acc, &d).ok_or_else(|| Error::parse(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&self, lx: &mut Lexer) -> Result<RatFunc> {
        let base = self.atom(lx)?;
        if lx.eat('^') {
            let at = lx.at();
            let neg = lx.eat('-');
            let e = lx.int()? as i64;
            let e = if neg { -e } else { e };
            return self.ctx.pow(&base, e).ok_or_else(|| Error::parse(at, "zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&self, lx: &mut Lexer) -> Result<RatFunc> {
        let k = self.ctx;
        let at = lx.at();
        match lx.next() {
            Some(Tok::Int(v)) => Ok(k.constant(k.gf().from_int((v % k.p() as u64) as i64))),
            Some(Tok::Ident(s)) => {
                if s == "g" {
                    return Ok(k.constant(k.gf().generator()));
                }
                match k.names().iter().position(|n| *n == s) {
                    Some(i) => Ok(k.var(i)),
                    None => Err(Error::parse(at, format!("unknown name {s:?}"))),
                }
            }
            Some(Tok::Sym('(')) => {
                let v = self.expr(lx)?;
                lx.expect(')')?;
                Ok(v)
            }
            _ => Err(Error::parse(at, "expected a number, name, or '('")),
        }
    }
}

pub fn parse_ratfunc(text: &str, ctx: &FieldCtx) -> Result<RatFunc> {
    let mut lx = Lexer::new(text)?;
    let v = RatParser { ctx }.expr(&mut lx)?;
    lx.done()?;
    Ok(v)
}

/// Parsed terms `(raw variable index, j, coefficient)`.
fn parse_ppoly_terms(text: &str, ctx: &FieldCtx) -> Result<Vec<(usize, u32, RatFunc)>> {
    let mut lx = Lexer::new(text)?;
    if lx.toks.len() == 1 && lx.peek() == Some(&Tok::Int(0)) {
        return Ok(Vec::new());
    }
    let rp = RatParser { ctx };
    let mut out = Vec::new();
    let mut sign = if lx.eat('-') { -1 } else { 1 };
    loop {
        let at = lx.at();
        let coeff = match lx.peek() {
            Some(Tok::Sym('(')) => {
                lx.next();
                let c = rp.expr(&mut lx)?;
                lx.expect(')')?;
                lx.expect('*')?;
                c
            }
            Some(Tok::Int(_)) => {
                let v = lx.int()?;
                lx.expect('*')?;
                ctx.constant(ctx.gf().from_int((v % ctx.p() as u64) as i64))
            }
            _ => ctx.one(),
        };
        let vat = lx.at();
        let var = match lx.next() {
            Some(Tok::Ident(s)) => var_index(&s, 'X').ok_or_else(|| Error::parse(vat, format!("expected a variable X<n>, found {s:?}")))?,
            _ => return Err(Error::parse(vat, "expected a variable X<n>")),
        };
        let j = if lx.eat('^') {
            let eat = lx.at();
            let e = lx.int()?;
            power_exponent(e, ctx.p()).ok_or_else(|| Error::parse(eat, format!("{e} is not a power of {}", ctx.p())))?
        } else {
            0
        };
        let c = if sign < 0 { ctx.neg(&coeff) } else { coeff };
        if coeff_is_zero(&c) {
            return Err(Error::parse(at, "zero coefficient"));
        }
        out.push((var, j, c));
        if lx.eat('+') {
            sign = 1;
        } else if lx.eat('-') {
            sign = -1;
        } else {
            break;
        }
    }
    lx.done()?;
    Ok(out)
}

fn coeff_is_zero(c: &RatFunc) -> bool {
    c.is_zero()
}

fn var_index(s: &str, prefix: char) -> Option<usize> {
    let digits = s.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn power_exponent(e: u64, p: u32) -> Option<u32> {
    let mut j = 0;
    let mut v = 1u64;
    while v < e {
        v = v.checked_mul(p as u64)?;
        j += 1;
    }
    (v == e).then_some(j)
}

/// How variable names map to indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indexing {
    /// `X0` is the first variable.
    ZeroBased,
    /// `X1` is the first variable.
    OneBased,
}

impl Indexing {
    pub fn base(self) -> usize {
        match self {
            Indexing::ZeroBased => 0,
            Indexing::OneBased => 1,
        }
    }

    pub fn zero_based(self) -> bool {
        self == Indexing::ZeroBased
    }
}

/// Parses several p-polynomials into a shared ambient space. Indexing is
/// zero-based when any input mentions `X0`; the arity is the largest index
/// seen unless `nvars` is given.
pub fn parse_ppoly_system(
    texts: &[&str],
    ctx: &FieldCtx,
    nvars: Option<usize>,
    indexing: Option<Indexing>,
) -> Result<(Vec<PPoly>, Indexing)> {
    let parsed: Vec<_> = texts.iter().map(|t| parse_ppoly_terms(t, ctx)).collect::<Result<_>>()?;
    let all = || parsed.iter().flatten();
    let indexing = indexing.unwrap_or(if all().any(|(v, _, _)| *v == 0) {
        Indexing::ZeroBased
    } else {
        Indexing::OneBased
    });
    let base = indexing.base();
    if base == 1 && all().any(|(v, _, _)| *v == 0) {
        return Err(Error::parse(0, "X0 used with one-based indexing"));
    }
    let seen = all().map(|(v, _, _)| v + 1 - base).max().unwrap_or(0);
    let n = match nvars {
        Some(n) if n < seen => {
            return Err(Error::parse(0, format!("variable index exceeds the declared {n} variables")));
        }
        Some(n) => n,
        None => seen.max(1),
    };
    let polys = parsed
        .into_iter()
        .map(|terms| PPoly::from_terms(ctx, n, terms.into_iter().map(|(v, j, c)| (v - base, j, c))))
        .collect();
    Ok((polys, indexing))
}

pub fn parse_ppoly(text: &str, ctx: &FieldCtx, nvars: Option<usize>) -> Result<(PPoly, Indexing)> {
    let (mut v, ix) = parse_ppoly_system(&[text], ctx, nvars, None)?;
    Ok((v.remove(0), ix))
}

/// Polynomial in `Y1..Ym`: `term (("+"|"-") term)*` with
/// `term := [coeff "*"] Yi["^" INT] ("*" Yj["^" INT])* | coeff`.
pub fn parse_kpoly(text: &str, ctx: &FieldCtx, nvars: Option<usize>) -> Result<KPoly> {
    let mut lx = Lexer::new(text)?;
    let rp = RatParser { ctx };
    let mut terms: Vec<(Vec<(usize, u32)>, RatFunc)> = Vec::new();
    let mut sign = if lx.eat('-') { -1 } else { 1 };
    loop {
        let coeff = match lx.peek() {
            Some(Tok::Sym('(')) => {
                lx.next();
                let c = rp.expr(&mut lx)?;
                lx.expect(')')?;
                Some(c)
            }
            Some(Tok::Int(_)) => {
                let v = lx.int()?;
                Some(ctx.constant(ctx.gf().from_int((v % ctx.p() as u64) as i64)))
            }
            _ => None,
        };
        let mut mono = Vec::new();
        let need_var = coeff.is_none();
        if !need_var && !lx.eat('*') {
            // bare coefficient
        } else {
            loop {
                let at = lx.at();
                let idx = match lx.next() {
                    Some(Tok::Ident(s)) => var_index(&s, 'Y')
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| Error::parse(at, format!("expected a variable Y<n>, found {s:?}")))?,
                    _ => return Err(Error::parse(at, "expected a variable Y<n>")),
                };
                let e = if lx.eat('^') { lx.int()? as u32 } else { 1 };
                mono.push((idx - 1, e));
                let save = lx.pos;
                if lx.eat('*') {
                    if matches!(lx.peek(), Some(Tok::Ident(_))) {
                        continue;
                    }
                    lx.pos = save;
                }
                break;
            }
        }
        let c = coeff.unwrap_or_else(|| ctx.one());
        terms.push((mono, if sign < 0 { ctx.neg(&c) } else { c }));
        if lx.eat('+') {
            sign = 1;
        } else if lx.eat('-') {
            sign = -1;
        } else {
            break;
        }
    }
    lx.done()?;
    let seen = terms.iter().flat_map(|(m, _)| m.iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
    let n = match nvars {
        Some(n) if n < seen => return Err(Error::parse(0, "variable index exceeds the declared count")),
        Some(n) => n,
        None => seen.max(1),
    };
    let mut out = KPoly::zero(ctx, n);
    for (mono, c) in terms {
        let mut e = vec![0; n];
        for (i, x) in mono {
            e[i] += x;
        }
        out.add_term(&e, &c);
    }
    Ok(out)
}
