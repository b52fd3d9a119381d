//! Sparse multivariate polynomials over `F_q` in graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::gfq::{Fq, PrimeFieldCtx};

/// Exponent vector with cached total degree. The derived order compares total
/// degree first and then exponents lexicographically with `t1 > t2 > ...`,
/// which is graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u32,
    exps: SmallVec<[u32; 4]>,
}

impl Mono {
    pub fn one(r: usize) -> Self {
        Mono { deg: 0, exps: SmallVec::from_elem(0, r) }
    }

    pub fn new(exps: &[u32]) -> Self {
        Mono { deg: exps.iter().sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn var(r: usize, i: usize) -> Self {
        let mut m = Mono::one(r);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let exps: SmallVec<[u32; 4]> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Mono { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller checks divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        let exps: SmallVec<[u32; 4]> =
            other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Mono { deg: other.deg - self.deg, exps }
    }

    pub fn scale_exps(&self, factor: u32) -> Mono {
        let exps: SmallVec<[u32; 4]> = self.exps.iter().map(|e| e * factor).collect();
        Mono { deg: self.deg * factor, exps }
    }

    fn with_exp(&self, v: usize, e: u32) -> Mono {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[v] + e;
        m.exps[v] = e;
        m
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[i]);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

/// Polynomial with terms sorted by decreasing monomial; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: Vec<(Mono, Fq)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(r: usize, c: Fq) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: vec![(Mono::one(r), c)] }
    }

    pub fn one(r: usize) -> Self {
        MPoly::constant(r, Fq::ONE)
    }

    pub fn monomial(m: Mono, c: Fq) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(gf: &PrimeFieldCtx, mut terms: Vec<(Mono, Fq)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Fq)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = gf.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MPoly { terms: out }
    }

    #[inline]
    pub fn terms(&self) -> &[(Mono, Fq)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Fq> {
        match self.terms.as_slice() {
            [] => Some(Fq::ZERO),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Mono, Fq)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Fq {
        self.terms.first().map_or(Fq::ZERO, |t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.deg).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps[v]).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly, gf: &PrimeFieldCtx) -> MPoly {
        self.merge(other, gf, false)
    }

    pub fn sub(&self, other: &MPoly, gf: &PrimeFieldCtx) -> MPoly {
        self.merge(other, gf, true)
    }

    fn merge(&self, other: &MPoly, gf: &PrimeFieldCtx, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let conv = |c: Fq| if negate { gf.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), conv(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = gf.add(a[i].1, conv(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(*c))));
        MPoly { terms: out }
    }

    pub fn neg(&self, gf: &PrimeFieldCtx) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), gf.neg(*c))).collect() }
    }

    pub fn scale(&self, c: Fq, gf: &PrimeFieldCtx) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        if c == Fq::ONE {
            return self.clone();
        }
        MPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), gf.mul(*d, c))).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: Fq, gf: &PrimeFieldCtx) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        // multiplying by a monomial preserves the order
        MPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), gf.mul(*d, c))).collect() }
    }

    pub fn mul(&self, other: &MPoly, gf: &PrimeFieldCtx) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (small, big) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, *c, gf);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                prods.push((m.mul(n), gf.mul(*c, *d)));
            }
        }
        MPoly::from_terms(gf, prods)
    }

    pub fn pow(&self, mut n: u64, r: usize, gf: &PrimeFieldCtx) -> MPoly {
        let mut result = MPoly::one(r);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, gf);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, gf);
            }
        }
        result
    }

    /// `self^(p^n)`, computed termwise.
    pub fn frobenius(&self, n: u32, gf: &PrimeFieldCtx) -> MPoly {
        if n == 0 {
            return self.clone();
        }
        let factor = gf.p().pow(n);
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale_exps(factor), gf.frobenius(*c, n)))
                .collect(),
        }
    }

    /// Applies a field map to every coefficient (used for constant-field
    /// extensions).
    pub fn map_coeffs(&self, f: impl Fn(Fq) -> Fq) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), f(*c))).collect() }
    }

    pub fn monic(&self, gf: &PrimeFieldCtx) -> MPoly {
        match self.terms.first() {
            None => MPoly::zero(),
            Some((_, c)) if *c == Fq::ONE => self.clone(),
            Some((_, c)) => self.scale(gf.inv(*c).unwrap(), gf),
        }
    }

    /// Division with remainder by the leading term of `b` (graded-lex).
    pub fn divrem(&self, b: &MPoly, gf: &PrimeFieldCtx) -> (MPoly, MPoly) {
        let (lm, lc) = b.terms.first().expect("division by zero polynomial");
        let inv_lc = gf.inv(*lc).unwrap();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = lm.div_into(&m);
                let qc = gf.mul(c, inv_lc);
                p = p.sub(&b.mul_term(&qm, qc, gf), gf);
                quot.push((qm, qc));
            } else {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
        (MPoly { terms: quot }, MPoly { terms: rem })
    }

    pub fn div_exact(&self, b: &MPoly, gf: &PrimeFieldCtx) -> Option<MPoly> {
        if b.is_one() {
            return Some(self.clone());
        }
        if let Some(c) = b.constant_value() {
            return gf.inv(c).map(|ic| self.scale(ic, gf));
        }
        let (lm, lc) = b.terms.first()?;
        let inv_lc = gf.inv(*lc).unwrap();
        let mut quot = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.div_into(&m);
            let qc = gf.mul(c, inv_lc);
            p = p.sub(&b.mul_term(&qm, qc, gf), gf);
            quot.push((qm, qc));
        }
        Some(MPoly { terms: quot })
    }

    /// Coefficient of `t_v^d`, as a polynomial not involving `t_v`.
    fn coeff_in(&self, v: usize, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps[v] == d)
                .map(|(m, c)| (m.with_exp(v, 0), *c))
                .collect(),
        }
    }

    fn last_var(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(m, _)| m.exps.iter().rposition(|&e| e > 0))
            .max()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MPoly, r: usize, gf: &PrimeFieldCtx) -> MPoly {
        if self.is_zero() {
            return other.monic(gf);
        }
        if other.is_zero() {
            return self.monic(gf);
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one(r);
        }
        let nv = self.last_var().max(other.last_var()).map_or(0, |v| v + 1);
        gcd_rec(self, other, nv, r, gf).monic(gf)
    }

    pub fn render(&self, names: &[String], gf: &PrimeFieldCtx) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mono = m.render(names);
            let coeff = gf.format(*c);
            let part = if mono.is_empty() {
                coeff
            } else if *c == Fq::ONE {
                mono
            } else if gf.is_compound(*c) {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

fn content_in(a: &MPoly, v: usize, r: usize, gf: &PrimeFieldCtx) -> MPoly {
    let top = a.degree_in(v);
    let mut g = MPoly::zero();
    for d in (0..=top).rev() {
        let c = a.coeff_in(v, d);
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic(gf) } else { g.gcd(&c, r, gf) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(a: &MPoly, v: usize, r: usize, gf: &PrimeFieldCtx) -> MPoly {
    let c = content_in(a, v, r, gf);
    a.div_exact(&c, gf).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `t_v`.
fn prem(a: &MPoly, b: &MPoly, v: usize, r: usize, gf: &PrimeFieldCtx) -> MPoly {
    let db = b.degree_in(v);
    let lcb = b.coeff_in(v, db);
    let mut rem = a.clone();
    while !rem.is_zero() {
        let dr = rem.degree_in(v);
        if dr < db {
            break;
        }
        let lcr = rem.coeff_in(v, dr);
        let mut shift = Mono::one(r);
        shift.exps[v] = dr - db;
        shift.deg = dr - db;
        let t = b.mul(&lcr, gf).mul_term(&shift, Fq::ONE, gf);
        rem = rem.mul(&lcb, gf).sub(&t, gf);
    }
    rem
}

fn gcd_rec(a: &MPoly, b: &MPoly, nv: usize, r: usize, gf: &PrimeFieldCtx) -> MPoly {
    if a.is_zero() {
        return b.monic(gf);
    }
    if b.is_zero() {
        return a.monic(gf);
    }
    if nv <= 1 || a.is_constant() || b.is_constant() {
        if nv == 0 || a.is_constant() || b.is_constant() {
            return MPoly::one(r);
        }
        // univariate Euclid
        let (mut x, mut y) = (a.monic(gf), b.monic(gf));
        while !y.is_zero() {
            let (_, rem) = x.divrem(&y, gf);
            x = y;
            y = rem.monic(gf);
        }
        return x;
    }
    let v = nv - 1;
    if a.degree_in(v) == 0 && b.degree_in(v) == 0 {
        return gcd_rec(a, b, nv - 1, r, gf);
    }
    if a.degree_in(v) == 0 {
        return gcd_rec(a, &content_in(b, v, r, gf), nv - 1, r, gf);
    }
    if b.degree_in(v) == 0 {
        return gcd_rec(&content_in(a, v, r, gf), b, nv - 1, r, gf);
    }
    let ca = content_in(a, v, r, gf);
    let cb = content_in(b, v, r, gf);
    let g_cont = gcd_rec(&ca, &cb, nv - 1, r, gf);
    let mut x = a.div_exact(&ca, gf).unwrap();
    let mut y = b.div_exact(&cb, gf).unwrap();
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let rem = prem(&x, &y, v, r, gf);
        if rem.is_zero() {
            break;
        }
        if rem.degree_in(v) == 0 {
            return g_cont;
        }
        x = y;
        y = primitive_in(&rem, v, r, gf);
    }
    let g = primitive_in(&y, v, r, gf);
    g.mul(&g_cont, gf).monic(gf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> PrimeFieldCtx {
        PrimeFieldCtx::new(q).unwrap()
    }

    fn poly(gf: &PrimeFieldCtx, terms: &[(&[u32], u32)]) -> MPoly {
        MPoly::from_terms(gf, terms.iter().map(|(e, c)| (Mono::new(e), Fq(*c))).collect())
    }

    #[test]
    fn grlex_order() {
        let t = Mono::new(&[1, 0]);
        let u = Mono::new(&[0, 1]);
        let t2 = Mono::new(&[2, 0]);
        let tu = Mono::new(&[1, 1]);
        assert!(t > u);
        assert!(tu > t);
        assert!(t2 > tu);
    }

    #[test]
    fn univariate_gcd() {
        let k = gf(3);
        // (t+1)(t+2) and (t+1)^2
        let a = poly(&k, &[(&[2], 1), (&[0], 2)]);
        let b = poly(&k, &[(&[2], 1), (&[1], 2), (&[0], 1)]);
        let g = a.gcd(&b, 1, &k);
        assert_eq!(g, poly(&k, &[(&[1], 1), (&[0], 1)]));
    }

    #[test]
    fn bivariate_gcd() {
        let k = gf(2);
        let common = poly(&k, &[(&[1, 1], 1), (&[0, 0], 1)]); // tu + 1
        let a = common.mul(&poly(&k, &[(&[1, 0], 1), (&[0, 1], 1)]), &k);
        let b = common.mul(&poly(&k, &[(&[0, 2], 1), (&[1, 0], 1)]), &k);
        assert_eq!(a.gcd(&b, 2, &k), common);
        let c = poly(&k, &[(&[1, 0], 1)]);
        let d = poly(&k, &[(&[0, 1], 1)]);
        assert!(c.gcd(&d, 2, &k).is_one());
    }

    #[test]
    fn division_roundtrip() {
        let k = gf(5);
        let a = poly(&k, &[(&[3, 1], 2), (&[1, 1], 4), (&[0, 0], 1)]);
        let b = poly(&k, &[(&[1, 0], 3), (&[0, 1], 1)]);
        let (q, r) = a.divrem(&b, &k);
        assert_eq!(q.mul(&b, &k).add(&r, &k), a);
        let prod = a.mul(&b, &k);
        assert_eq!(prod.div_exact(&b, &k), Some(a.clone()));
        assert_eq!(a.div_exact(&b, &k), None);
    }

    #[test]
    fn frobenius_matches_pow() {
        let k = gf(3);
        let a = poly(&k, &[(&[2, 0], 2), (&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(a.frobenius(1, &k), a.pow(3, 2, &k));
        assert_eq!(a.frobenius(2, &k), a.pow(9, 2, &k));
    }
}
