//! Ordinary polynomials over `k` in variables `Y1..Ym`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::ppoly::PPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    ctx: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [in {} vars]", self.render(), self.nvars)
    }
}

/// Total degree, then exponents: the order in which terms are listed.
fn order_key(e: &[u32]) -> (u32, &[u32]) {
    (e.iter().sum(), e)
}

impl KPoly {
    pub fn zero(ctx: &FieldCtx, nvars: usize) -> Self {
        KPoly { ctx: ctx.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: &FieldCtx, exps: &[u32], c: RatFunc) -> Self {
        let mut out = Self::zero(ctx, exps.len());
        out.add_term(exps, &c);
        out
    }

    pub fn var(ctx: &FieldCtx, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(ctx, &e, ctx.one())
    }

    pub fn from_terms(
        ctx: &FieldCtx,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, RatFunc)>,
    ) -> Self {
        let mut out = Self::zero(ctx, nvars);
        for (e, c) in terms {
            out.add_term(&e, &c);
        }
        out
    }

    pub fn add_term(&mut self, exps: &[u32], c: &RatFunc) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let k = &self.ctx;
        match self.terms.get_mut(exps) {
            Some(old) => {
                let s = k.add(old, c);
                if s.is_zero() {
                    self.terms.remove(exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c.clone());
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&RatFunc> {
        self.terms.get(exps)
    }

    pub fn constant_term(&self) -> Option<&RatFunc> {
        self.terms.get(&vec![0; self.nvars])
    }

    /// Terms by descending total degree, then descending exponent vector.
    pub fn terms(&self) -> Vec<(&[u32], &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| order_key(b.0).cmp(&order_key(a.0)));
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &KPoly) -> Result<KPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KPoly) -> Result<KPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KPoly {
        self.scale(&self.ctx.int(-1))
    }

    pub fn scale(&self, c: &RatFunc) -> KPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), self.ctx.mul(x, c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        KPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// `self^(p^j)`, which is additive in characteristic `p`.
    pub fn frobenius_power(&self, j: u32) -> KPoly {
        let q = self.ctx.p().pow(j);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| x * q).collect(), self.ctx.frobenius(c, j)))
            .collect();
        KPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    fn check_same(&self, other: &KPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Renders with variables `Y1..Ym`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let k = &self.ctx;
        let mut out = String::new();
        for (n, (e, c)) in self.terms().into_iter().enumerate() {
            let minus = n > 0 && k.prefers_minus(c);
            let shown = if minus { k.neg(c) } else { c.clone() };
            if n > 0 {
                out.push_str(if minus { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("Y{}", i + 1) } else { format!("Y{}^{x}", i + 1) })
                .collect();
            let coeff = if k.is_small_int(&shown) {
                k.render(&shown)
            } else {
                format!("({})", k.render(&shown))
            };
            match (mono.is_empty(), shown.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
        out
    }
}

/// `F(G_1, ..., G_n)` for polynomials `G_i` over `k`.
pub fn eval_ppoly(f: &PPoly, args: &[KPoly]) -> Result<KPoly> {
    if args.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: args.len() });
    }
    let m = args.first().map_or(0, KPoly::nvars);
    let mut out = KPoly::zero(f.ctx(), m);
    for (i, j, c) in f.terms() {
        if args[i].nvars() != m {
            return Err(Error::ArityMismatch { expected: m, found: args[i].nvars() });
        }
        out = out.add(&args[i].frobenius_power(j).scale(c))?;
    }
    Ok(out)
}
