//! Expansions in the p-basis `t1..tr` at Frobenius level `n`:
//! `x = sum_f t^f * a_f^(p^n)` over all `f: {1..r} -> {0..p^n - 1}`.

use std::collections::BTreeMap;

use super::mpoly::{MPoly, Mono};
use super::{FieldCtx, RatFunc};

/// The functions `{1..r} -> {0..p^m - 1}`, encoded as integers with `f(1)` in
/// the least significant base-`p^m` digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexSet {
    pub p: u32,
    pub r: usize,
    pub m: u32,
}

impl IndexSet {
    pub fn new(p: u32, r: usize, m: u32) -> Self {
        IndexSet { p, r, m }
    }

    pub fn base(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn len(&self) -> usize {
        self.base().pow(self.r as u32) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exps(&self, idx: usize) -> Vec<u32> {
        let b = self.base() as usize;
        let mut v = idx;
        (0..self.r)
            .map(|_| {
                let d = v % b;
                v /= b;
                d as u32
            })
            .collect()
    }

    pub fn index(&self, exps: &[u32]) -> usize {
        let b = self.base() as usize;
        exps.iter().rev().fold(0, |acc, &e| acc * b + e as usize)
    }

    /// Index of the constant function with value `v`.
    pub fn constant_fn(&self, v: u32) -> usize {
        self.index(&vec![v; self.r])
    }

    /// All indices, ordered by the graded-lex order of `t^f` (ascending).
    pub fn grlex_order(&self) -> Vec<usize> {
        let mut all: Vec<(Mono, usize)> =
            (0..self.len()).map(|i| (Mono::new(&self.exps(i)), i)).collect();
        all.sort();
        all.into_iter().map(|(_, i)| i).collect()
    }
}

/// Sparse coefficients `a_f` of an expansion at a fixed level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBasisExpansion {
    pub level: u32,
    pub coeffs: BTreeMap<usize, RatFunc>,
}

impl PBasisExpansion {
    pub fn get(&self, idx: usize) -> Option<&RatFunc> {
        self.coeffs.get(&idx)
    }
}

impl FieldCtx {
    pub fn index_set(&self, m: u32) -> IndexSet {
        IndexSet::new(self.p(), self.r(), m)
    }

    /// Splits `x` into its level-`n` p-basis coefficients.
    pub fn p_basis_expand(&self, x: &RatFunc, n: u32) -> PBasisExpansion {
        let gf = self.gf();
        let r = self.r();
        let idx = self.index_set(n);
        let pn = idx.base() as u32;
        let mut coeffs = BTreeMap::new();
        if x.is_zero() {
            return PBasisExpansion { level: n, coeffs };
        }
        // x = N * D^(p^n - 1) / D^(p^n)
        let scaled = if x.den.is_one() {
            x.num.clone()
        } else {
            let dp = x.den.frobenius(n, gf);
            let cofactor = dp.div_exact(&x.den, gf).expect("D divides D^(p^n)");
            x.num.mul(&cofactor, gf)
        };
        let mut parts: BTreeMap<usize, Vec<(Mono, crate::gfq::Fq)>> = BTreeMap::new();
        for (m, c) in scaled.terms() {
            let f: Vec<u32> = m.exps().iter().map(|e| e % pn).collect();
            let quo: Vec<u32> = m.exps().iter().map(|e| e / pn).collect();
            parts.entry(idx.index(&f)).or_default().push((Mono::new(&quo), gf.pn_root(*c, n)));
        }
        for (f, terms) in parts {
            let num = MPoly::from_terms(gf, terms);
            let a = self.frac(num, x.den.clone()).unwrap();
            debug_assert!(!a.is_zero());
            coeffs.insert(f, a);
        }
        debug_assert_eq!(r, idx.r);
        PBasisExpansion { level: n, coeffs }
    }

    /// `sum_f t^f * a_f^(p^n)`.
    pub fn reassemble(&self, e: &PBasisExpansion) -> RatFunc {
        let idx = self.index_set(e.level);
        let mut acc = self.zero();
        for (&f, a) in &e.coeffs {
            let term = self.mul(&self.monomial(&idx.exps(f)), &self.frobenius(a, e.level));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// The `p^n`-th root of `x` when it exists.
    pub fn pn_root(&self, x: &RatFunc, n: u32) -> Option<RatFunc> {
        let gf = self.gf();
        let pn = self.p().pow(n);
        let root = |poly: &MPoly| -> Option<MPoly> {
            let mut terms = Vec::with_capacity(poly.len());
            for (m, c) in poly.terms() {
                if m.exps().iter().any(|e| e % pn != 0) {
                    return None;
                }
                let ex: Vec<u32> = m.exps().iter().map(|e| e / pn).collect();
                terms.push((Mono::new(&ex), gf.pn_root(*c, n)));
            }
            Some(MPoly::from_terms(gf, terms))
        };
        // numerator and denominator are coprime with monic denominator, so x
        // is a p^n-th power exactly when both are
        let num = root(&x.num)?;
        let den = root(&x.den)?;
        Some(RatFunc { num, den })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let e = k.p_basis_expand(&t, 1);
        assert_eq!(e.get(0), None);
        assert_eq!(e.get(1), Some(&k.one()));

        let x = k.add(&k.mul(&t, &t), &t);
        let e = k.p_basis_expand(&x, 1);
        assert_eq!(e.get(0), Some(&t));
        assert_eq!(e.get(1), Some(&k.one()));

        assert!(k.p_basis_expand(&k.zero(), 3).coeffs.is_empty());
    }

    #[test]
    fn reassembly_with_denominators() {
        let k = FieldCtx::standard(3, 2).unwrap();
        let t = k.var(0);
        let u = k.var(1);
        let x = k
            .div(&k.add(&k.mul(&t, &u), &k.int(2)), &k.add(&k.mul(&t, &t), &u))
            .unwrap();
        for n in 0..3 {
            let e = k.p_basis_expand(&x, n);
            assert_eq!(k.reassemble(&e), x);
        }
    }

    #[test]
    fn pn_root_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        assert_eq!(k.pn_root(&k.mul(&t, &t), 1), Some(t.clone()));
        assert_eq!(k.pn_root(&t, 1), None);

        let k3 = FieldCtx::standard(3, 1).unwrap();
        let t = k3.var(0);
        let x = k3.add(&k3.pow(&t, 3).unwrap(), &k3.one());
        assert_eq!(k3.pn_root(&x, 1), Some(k3.add(&t, &k3.one())));
    }

    #[test]
    fn grlex_scan_order() {
        let idx = IndexSet::new(2, 2, 1);
        let order: Vec<Vec<u32>> = idx.grlex_order().into_iter().map(|i| idx.exps(i)).collect();
        assert_eq!(order, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(idx.constant_fn(1), 3);
    }
}
