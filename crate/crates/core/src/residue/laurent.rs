//! Finite-support Laurent polynomials over `F_q` in `t_1..t_r`, with
//! exponent vectors in `Z^r` ordered lexicographically.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::gfq::{Fq, PrimeFieldCtx};
use crate::ppoly::PPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLaurent {
    gf: PrimeFieldCtx,
    r: usize,
    terms: BTreeMap<Vec<i64>, Fq>,
}

impl SparseLaurent {
    pub fn zero(gf: &PrimeFieldCtx, r: usize) -> Self {
        SparseLaurent { gf: gf.clone(), r, terms: BTreeMap::new() }
    }

    pub fn monomial(gf: &PrimeFieldCtx, exps: &[i64], c: Fq) -> Self {
        let mut out = Self::zero(gf, exps.len());
        out.add_term(exps, c);
        out
    }

    pub fn add_term(&mut self, exps: &[i64], c: Fq) {
        assert_eq!(exps.len(), self.r, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let gf = &self.gf;
        let entry = self.terms.entry(exps.to_vec()).or_insert(Fq::ZERO);
        *entry = gf.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], Fq)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i64]) -> Fq {
        self.terms.get(exps).copied().unwrap_or(Fq::ZERO)
    }

    /// Coefficient of `t_1^-1 ... t_r^-1`.
    pub fn residue(&self) -> Fq {
        self.coeff(&vec![-1; self.r])
    }

    pub fn add(&self, other: &SparseLaurent) -> SparseLaurent {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> SparseLaurent {
        self.scale(self.gf.neg(Fq::ONE))
    }

    pub fn sub(&self, other: &SparseLaurent) -> SparseLaurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> SparseLaurent {
        let mut out = Self::zero(&self.gf, self.r);
        for (e, x) in self.terms() {
            out.add_term(e, self.gf.mul(x, c));
        }
        out
    }

    pub fn mul(&self, other: &SparseLaurent) -> SparseLaurent {
        let mut out = Self::zero(&self.gf, self.r);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let e: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(&e, self.gf.mul(x, y));
            }
        }
        out
    }

    /// `self^p`.
    pub fn frobenius(&self) -> SparseLaurent {
        let p = self.gf.p() as i64;
        let mut out = Self::zero(&self.gf, self.r);
        for (e, c) in self.terms() {
            let e: Vec<i64> = e.iter().map(|x| x * p).collect();
            out.add_term(&e, self.gf.frobenius(c, 1));
        }
        out
    }

    /// Expansion of an element of `k` whose denominator is a monomial.
    pub fn from_ratfunc(ctx: &FieldCtx, a: &RatFunc) -> Result<SparseLaurent> {
        let den = a.den();
        let (shift, dc) = match den.terms() {
            [(m, c)] => (m.exps().to_vec(), *c),
            _ => return Err(Error::precondition("denominator is not a monomial")),
        };
        let gf = ctx.gf();
        let inv = gf.inv(dc).expect("nonzero coefficient");
        let mut out = Self::zero(gf, ctx.r());
        for (m, c) in a.num().terms() {
            let e: Vec<i64> = m.exps().iter().zip(&shift).map(|(&x, &s)| x as i64 - s as i64).collect();
            out.add_term(&e, gf.mul(*c, inv));
        }
        Ok(out)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let gf = &self.gf;
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, &c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
                    .collect();
                let coeff = if gf.is_compound(c) { format!("({})", gf.format(c)) } else { gf.format(c) };
                match (mono.is_empty(), c == Fq::ONE) {
                    (true, _) => coeff,
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{coeff}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `F(alpha)` for `F` with coefficients that are Laurent polynomials in the
/// `t_i`.
pub fn eval_f_laurent(f: &PPoly, alpha: &[SparseLaurent]) -> Result<SparseLaurent> {
    if alpha.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: alpha.len() });
    }
    let ctx = f.ctx();
    let mut out = SparseLaurent::zero(ctx.gf(), ctx.r());
    for (i, j, c) in f.terms() {
        let coeff = SparseLaurent::from_ratfunc(ctx, c)
            .map_err(|_| Error::precondition("coefficient has no finite Laurent expansion"))?;
        let mut pw = alpha[i].clone();
        for _ in 0..j {
            pw = pw.frobenius();
        }
        out = out.add(&coeff.mul(&pw));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        let gf = PrimeFieldCtx::new(2).unwrap();
        assert_eq!(SparseLaurent::monomial(&gf, &[-1], Fq::ONE).residue(), Fq::ONE);
        let mut x = SparseLaurent::monomial(&gf, &[0], Fq::ONE);
        x.add_term(&[2], Fq::ONE);
        assert_eq!(x.residue(), Fq::ZERO);
        let gf5 = PrimeFieldCtx::new(5).unwrap();
        assert_eq!(SparseLaurent::monomial(&gf5, &[-1, -1], Fq(3)).residue(), Fq(3));
    }

    #[test]
    fn from_ratfunc_monomial_denominator() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let t = k.var(0);
        let a = k.div(&k.add(&t, &k.one()), &k.mul(&t, &t)).unwrap();
        let l = SparseLaurent::from_ratfunc(&k, &a).unwrap();
        assert_eq!(l.coeff(&[-1]), Fq::ONE);
        assert_eq!(l.coeff(&[-2]), Fq::ONE);
        assert!(SparseLaurent::from_ratfunc(&k, &k.inv(&k.add(&t, &k.one())).unwrap()).is_err());
        assert_eq!(l.render(k.names()), "t^-1 + t^-2");
    }
}
