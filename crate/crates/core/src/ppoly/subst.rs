use crate::error::{Error, Result};
use crate::funcfield::{mat_kernel, FieldCtx, Matrix};

use super::PPoly;

/// A substitution `X_i -> Phi_i(Y_1..Y_m)` for `i = 1..n`, i.e. an
/// endomorphism of vector groups, optionally with a known inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSubst {
    source: usize,
    comps: Vec<PPoly>,
    inverse: Option<Vec<PPoly>>,
}

impl AdditiveSubst {
    pub fn new(source: usize, comps: Vec<PPoly>) -> Self {
        assert!(comps.iter().all(|c| c.nvars() == source));
        AdditiveSubst { source, comps, inverse: None }
    }

    pub fn with_inverse(mut self, inverse: Vec<PPoly>) -> Self {
        assert_eq!(inverse.len(), self.source);
        assert!(inverse.iter().all(|c| c.nvars() == self.comps.len()));
        self.inverse = Some(inverse);
        self
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let comps: Vec<PPoly> = (0..n).map(|i| PPoly::var(ctx, n, i)).collect();
        AdditiveSubst { source: n, inverse: Some(comps.clone()), comps }
    }

    /// `X_i -> X_{perm[i]}`.
    pub fn permutation(ctx: &FieldCtx, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut inv = vec![0; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let comps = perm.iter().map(|&j| PPoly::var(ctx, n, j)).collect();
        let inverse = inv.iter().map(|&j| PPoly::var(ctx, n, j)).collect();
        AdditiveSubst { source: n, comps, inverse: Some(inverse) }
    }

    pub fn source_arity(&self) -> usize {
        self.source
    }

    pub fn target_arity(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[PPoly] {
        &self.comps
    }

    pub fn inverse(&self) -> Option<AdditiveSubst> {
        self.inverse.as_ref().map(|inv| AdditiveSubst {
            source: self.comps.len(),
            comps: inv.clone(),
            inverse: Some(self.comps.clone()),
        })
    }

    /// `self ∘ tau`: first apply `self`, then substitute `tau` into the
    /// result, so that `F∘(self∘tau) = (F∘self)∘tau`.
    pub fn then(&self, tau: &AdditiveSubst) -> Result<AdditiveSubst> {
        if tau.target_arity() != self.source {
            return Err(Error::ArityMismatch { expected: self.source, found: tau.target_arity() });
        }
        let comps = self.comps.iter().map(|c| c.compose(tau)).collect::<Result<Vec<_>>>()?;
        let inverse = match (&self.inverse, &tau.inverse) {
            (Some(si), Some(ti)) => {
                let tinv = AdditiveSubst::new(tau.comps.len(), ti.clone());
                let sinv = AdditiveSubst::new(self.comps.len(), si.clone());
                Some(tinv.comps.iter().map(|c| c.compose(&sinv)).collect::<Result<Vec<_>>>()?)
            }
            _ => None,
        };
        Ok(AdditiveSubst { source: tau.source, comps, inverse })
    }

    /// Acts on variables `offset..offset+n` of an ambient space of size
    /// `total`, fixing the others.
    pub fn lift(&self, offset: usize, total: usize) -> AdditiveSubst {
        assert_eq!(self.source, self.comps.len());
        let ctx = self.comps.first().map(|c| c.ctx().clone());
        let Some(ctx) = ctx else {
            return self.clone();
        };
        let lift_comps = |comps: &[PPoly]| -> Vec<PPoly> {
            (0..total)
                .map(|i| {
                    if i >= offset && i < offset + comps.len() {
                        comps[i - offset].embed(total, offset)
                    } else {
                        PPoly::var(&ctx, total, i)
                    }
                })
                .collect()
        };
        AdditiveSubst {
            source: total,
            comps: lift_comps(&self.comps),
            inverse: self.inverse.as_ref().map(|inv| lift_comps(inv)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.comps.len()
            && self.comps.iter().enumerate().all(|(i, c)| *c == PPoly::var(c.ctx(), self.source, i))
    }

    /// Checks symbolically that the stored inverse composes to the identity
    /// on both sides.
    pub fn verify_inverse(&self) -> bool {
        let Some(inv) = self.inverse() else {
            return false;
        };
        let Some(ctx) = self.comps.first().map(|c| c.ctx().clone()) else {
            return self.source == 0;
        };
        let fwd = AdditiveSubst::new(self.source, self.comps.clone());
        let back = AdditiveSubst::new(inv.source, inv.comps.clone());
        let ok = |s: Result<AdditiveSubst>, n: usize| {
            s.map(|s| s.comps == AdditiveSubst::identity(&ctx, n).comps).unwrap_or(false)
        };
        ok(fwd.then(&back), self.comps.len()) && ok(back.then(&fwd), self.source)
    }

    pub fn is_linear(&self) -> bool {
        self.comps.iter().all(|c| c.is_linear())
    }

    /// Coefficient matrix of a linear substitution (`n` rows, `m` columns).
    pub fn linear_matrix(&self) -> Option<Matrix> {
        if !self.is_linear() {
            return None;
        }
        let ctx = self.comps.first()?.ctx().clone();
        Some(
            self.comps
                .iter()
                .map(|c| {
                    (0..self.source)
                        .map(|v| c.coeff(v, 0).cloned().unwrap_or_else(|| ctx.zero()))
                        .collect()
                })
                .collect(),
        )
    }

    /// For linear substitutions: square with trivial kernel.
    pub fn is_invertible_linear(&self) -> bool {
        if self.source != self.comps.len() {
            return false;
        }
        match self.linear_matrix() {
            Some(m) => mat_kernel(self.comps[0].ctx(), &m, self.source).is_empty(),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_associative_on_polys() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let t = k.var(0);
        let a = AdditiveSubst::new(
            2,
            vec![PPoly::from_terms(&k, 2, [(0, 0, k.one()), (1, 1, t.clone())]), PPoly::var(&k, 2, 1)],
        )
        .with_inverse(vec![
            PPoly::from_terms(&k, 2, [(0, 0, k.one()), (1, 1, k.neg(&t))]),
            PPoly::var(&k, 2, 1),
        ]);
        assert!(a.verify_inverse());
        let b = AdditiveSubst::permutation(&k, &[1, 0]);
        assert!(b.verify_inverse());
        let f = PPoly::from_terms(&k, 2, [(0, 1, t.clone()), (1, 0, k.one()), (1, 2, k.one())]);
        let lhs = f.compose(&a).unwrap().compose(&b).unwrap();
        let ab = a.then(&b).unwrap();
        assert_eq!(lhs, f.compose(&ab).unwrap());
        assert!(ab.verify_inverse());
    }

    #[test]
    fn linear_invertibility() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let good = AdditiveSubst::new(
            2,
            vec![PPoly::from_terms(&k, 2, [(0, 0, k.one()), (1, 0, t.clone())]), PPoly::var(&k, 2, 1)],
        );
        assert!(good.is_invertible_linear());
        let bad = AdditiveSubst::new(2, vec![PPoly::var(&k, 2, 0), PPoly::var(&k, 2, 0)]);
        assert!(!bad.is_invertible_linear());
    }
}
