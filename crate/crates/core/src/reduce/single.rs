//! Making one p-polynomial reduced by an invertible change of variables.

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::ppoly::{AdditiveSubst, PPoly};

use super::zero::{principal_zero, restrict_to_involved};

/// One elimination step: `X_pivot -> s X_pivot` and
/// `X_i -> X_i + r_i X_pivot^(p^e_i)` for each listed `(i, r_i, e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub pivot: usize,
    pub scale: RatFunc,
    pub shifts: Vec<(usize, RatFunc, u32)>,
}

impl ReductionStep {
    pub fn substitution(&self, ctx: &FieldCtx, n: usize) -> Result<AdditiveSubst> {
        let inv_scale = ctx
            .inv(&self.scale)
            .ok_or_else(|| Error::invariant("reduction step with zero scale"))?;
        let mut fwd: Vec<PPoly> = (0..n).map(|i| PPoly::var(ctx, n, i)).collect();
        let mut back = fwd.clone();
        fwd[self.pivot] = PPoly::term(ctx, n, self.pivot, 0, self.scale.clone());
        back[self.pivot] = PPoly::term(ctx, n, self.pivot, 0, inv_scale.clone());
        for (i, r, e) in &self.shifts {
            if *i == self.pivot || *i >= n {
                return Err(Error::invariant("malformed reduction step"));
            }
            fwd[*i].add_term(self.pivot, *e, r);
            // X_i - r s^(-p^e) X_pivot^(p^e)
            let c = ctx.neg(&ctx.mul(r, &ctx.frobenius(&inv_scale, *e)));
            back[*i].add_term(self.pivot, *e, &c);
        }
        Ok(AdditiveSubst::new(n, fwd).with_inverse(back))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTranscript {
    pub steps: Vec<ReductionStep>,
    /// Final renaming `X_i -> X_{permutation[i]}`; inactive variables first.
    pub permutation: Vec<usize>,
}

impl ReductionTranscript {
    /// Rebuilds the total substitution and the reduced polynomial.
    pub fn replay(&self, f: &PPoly) -> Result<(AdditiveSubst, PPoly)> {
        let ctx = f.ctx();
        let n = f.nvars();
        let mut sigma = AdditiveSubst::identity(ctx, n);
        let mut cur = f.clone();
        for step in &self.steps {
            let s = step.substitution(ctx, n)?;
            let next = cur.compose(&s)?;
            if next.degree_sum() >= cur.degree_sum() {
                return Err(Error::invariant("reduction step does not lower the degree sum"));
            }
            cur = next;
            sigma = sigma.then(&s)?;
        }
        let perm = AdditiveSubst::permutation(ctx, &self.permutation);
        Ok((sigma.then(&perm)?, cur.compose(&perm)?))
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub sigma: AdditiveSubst,
    pub reduced: PPoly,
    /// First active variable (0-based): `reduced` lies in `k[X_m..X_n]`.
    pub first_active: usize,
    pub transcript: ReductionTranscript,
}

pub fn reduce_ppoly(f: &PPoly) -> Result<Reduction> {
    if f.is_zero() {
        return Err(Error::precondition("cannot reduce the zero p-polynomial"));
    }
    let ctx = f.ctx().clone();
    let n = f.nvars();
    let mut cur = f.clone();
    let mut sigma = AdditiveSubst::identity(&ctx, n);
    let mut steps = Vec::new();
    loop {
        let (restricted, vars) = restrict_to_involved(&cur);
        let Some(z) = principal_zero(&restricted.principal_part())? else {
            break;
        };
        let exp = |i: usize| cur.top_exp(i).unwrap();
        // pivot: nonzero coordinate of largest degree, least index on ties
        let mut pivot: Option<usize> = None;
        for (pos, &v) in vars.iter().enumerate() {
            if z[pos].is_zero() {
                continue;
            }
            if pivot.is_none_or(|pv| exp(v) > exp(pv)) {
                pivot = Some(v);
            }
        }
        let pivot = pivot.ok_or_else(|| Error::invariant("principal zero is trivial"))?;
        let pivot_pos = vars.iter().position(|&v| v == pivot).unwrap();
        let shifts = vars
            .iter()
            .enumerate()
            .filter(|&(pos, &v)| v != pivot && !z[pos].is_zero())
            .map(|(pos, &v)| (v, z[pos].clone(), exp(pivot) - exp(v)))
            .collect();
        let step = ReductionStep { pivot, scale: z[pivot_pos].clone(), shifts };
        let s = step.substitution(&ctx, n)?;
        let next = cur.compose(&s)?;
        if next.degree_sum() >= cur.degree_sum() {
            return Err(Error::invariant("reduction step does not lower the degree sum"));
        }
        cur = next;
        sigma = sigma.then(&s)?;
        steps.push(step);
    }
    let inactive: Vec<usize> = (0..n).filter(|&i| !cur.involves(i)).collect();
    let active: Vec<usize> = (0..n).filter(|&i| cur.involves(i)).collect();
    let mut permutation = vec![0; n];
    for (new, &old) in inactive.iter().chain(active.iter()).enumerate() {
        permutation[old] = new;
    }
    let perm = AdditiveSubst::permutation(&ctx, &permutation);
    let reduced = cur.compose(&perm)?;
    Ok(Reduction {
        sigma: sigma.then(&perm)?,
        reduced,
        first_active: inactive.len(),
        transcript: ReductionTranscript { steps, permutation },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::zero::is_reduced;

    #[test]
    fn two_step_example() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let one = k.one();
        // X1^2 + X2^2 + X1
        let f = PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (1, 1, one.clone()), (0, 0, one.clone())]);
        let red = reduce_ppoly(&f).unwrap();
        assert_eq!(red.transcript.steps.len(), 2);
        assert_eq!(f.compose(&red.sigma).unwrap(), red.reduced);
        assert!(red.sigma.verify_inverse());
        // a single linear term survives, moved to the last slot
        assert_eq!(red.reduced, PPoly::var(&k, 2, 1));
        assert_eq!(red.first_active, 1);
        let (s, g) = red.transcript.replay(&f).unwrap();
        assert_eq!(g, red.reduced);
        assert_eq!(s, red.sigma);
    }

    #[test]
    fn reduced_input_is_fixed() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let f = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t)]);
        let red = reduce_ppoly(&f).unwrap();
        assert!(red.sigma.is_identity());
        assert_eq!(red.reduced, f);
        assert_eq!(red.first_active, 0);
    }

    #[test]
    fn monogeneous_stays_monogeneous() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let f = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, k.one())]);
        let red = reduce_ppoly(&f).unwrap();
        assert!(red.reduced.is_monogeneous());
        assert_eq!(red.reduced.vars().len(), 1);
        assert_eq!(red.reduced.top_exp(1), Some(1));
        assert!(is_reduced(&red.reduced.restrict(red.first_active, 2).unwrap()).unwrap());
    }
}
