//! Deciding universality of monogeneous p-polynomials and solving
//! `P(x) = a`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::funcfield::linalg::{ColumnSpace, Insertion};
use crate::funcfield::{FieldCtx, Matrix, RatFunc};
use crate::ppoly::{AdditiveSubst, MonoPPoly, PPoly};
use crate::reduce::homogenize::{homogenize, Homogenized};
use crate::reduce::single::{reduce_ppoly, Reduction};
use crate::reduce::zero::restrict_to_involved;

/// `sum_i deg_{X_i}(P)^(-r)` over the variables occurring in `P`.
pub fn phi_value(p: &MonoPPoly) -> Result<BigRational> {
    if p.is_zero() {
        return Err(Error::precondition("phi of the zero p-polynomial"));
    }
    let ctx = p.as_ppoly().ctx();
    let r = ctx.r() as u32;
    let mut acc = BigRational::zero();
    for (_, d, _) in p.entries() {
        let denom = BigInt::from(ctx.p()).pow(r * d);
        acc += BigRational::new(BigInt::one(), denom);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub enum UniversalityWitness {
    /// Square invertible coefficient matrix of the homogenized reduced form.
    Basis(Matrix),
    /// An element of `k` outside the image.
    Unrepresented(RatFunc),
}

#[derive(Clone, Debug)]
pub struct UniversalityVerdict {
    /// `phi` of the input.
    pub phi: BigRational,
    /// Whether the input itself is reduced.
    pub reduced: bool,
    /// `phi` of the reduced form on its active variables; equals `phi`
    /// when the input is reduced.
    pub reduced_phi: BigRational,
    pub universal: bool,
    pub witness: UniversalityWitness,
}

/// Everything needed to solve `P(x) = a` for a universal `P`.
#[derive(Clone)]
pub struct Representer {
    ctx: FieldCtx,
    nvars: usize,
    reduction: Reduction,
    homogenized: Homogenized,
    space: ColumnSpace,
}

fn active_part(red: &Reduction) -> Result<MonoPPoly> {
    let n = red.reduced.nvars();
    MonoPPoly::new(red.reduced.restrict(red.first_active, n)?)
}

fn column_space(h: &Homogenized, ctx: &FieldCtx) -> (ColumnSpace, bool) {
    let mut space = ColumnSpace::new(ctx, h.nrows());
    let mut independent = true;
    for col in h.columns() {
        if let Insertion::Dependent(_) = space.insert(&col) {
            independent = false;
        }
    }
    (space, independent)
}

pub fn is_universal(p: &MonoPPoly) -> Result<UniversalityVerdict> {
    let phi = phi_value(p)?;
    let red = reduce_ppoly(p.as_ppoly())?;
    let reduced = red.transcript.steps.is_empty() && red.first_active == 0;
    let active = active_part(&red)?;
    if !active.as_ppoly().is_monogeneous() {
        return Err(Error::invariant("reduction lost monogeneity"));
    }
    let reduced_phi = phi_value(&active)?;
    let universal = reduced_phi.is_one();
    let witness = if universal {
        let h = homogenize(&active)?;
        UniversalityWitness::Basis(h.matrix())
    } else {
        UniversalityWitness::Unrepresented(unrepresented_of(&active)?)
    };
    Ok(UniversalityVerdict { phi, reduced, reduced_phi, universal, witness })
}

fn unrepresented_of(active: &MonoPPoly) -> Result<RatFunc> {
    let ctx = active.as_ppoly().ctx();
    let h = homogenize(active)?;
    let (space, _) = column_space(&h, ctx);
    first_outside(ctx, &h, &space).ok_or_else(|| Error::precondition("p-polynomial is universal"))
}

/// Least `t^f` (graded-lex) whose level-`N` expansion leaves the span.
fn first_outside(ctx: &FieldCtx, h: &Homogenized, space: &ColumnSpace) -> Option<RatFunc> {
    let idx = ctx.index_set(h.level());
    for f in idx.grlex_order() {
        let mut e = vec![ctx.zero(); h.nrows()];
        e[f] = ctx.one();
        if !space.contains(&e) {
            return Some(ctx.monomial(&idx.exps(f)));
        }
    }
    None
}

/// A deterministic element of `k` not of the form `P(x)`.
pub fn find_unrepresented(p: &MonoPPoly) -> Result<RatFunc> {
    if p.is_zero() {
        return Ok(p.as_ppoly().ctx().one());
    }
    let red = reduce_ppoly(p.as_ppoly())?;
    unrepresented_of(&active_part(&red)?)
}

impl Representer {
    pub fn new(p: &MonoPPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::precondition("the zero p-polynomial is not universal"));
        }
        let rep = Self::partial(p)?;
        if rep.space.rank() != rep.homogenized.nrows() {
            return Err(Error::precondition("p-polynomial is not universal"));
        }
        Ok(rep)
    }

    /// Like [`Representer::new`] without requiring universality; use
    /// [`Representer::try_represent`].
    pub fn partial(p: &MonoPPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::precondition("cannot represent with the zero p-polynomial"));
        }
        let ctx = p.as_ppoly().ctx().clone();
        let reduction = reduce_ppoly(p.as_ppoly())?;
        let active = active_part(&reduction)?;
        let homogenized = homogenize(&active)?;
        let (space, independent) = column_space(&homogenized, &ctx);
        if !independent {
            return Err(Error::invariant("reduced form has dependent columns"));
        }
        Ok(Representer { ctx, nvars: p.nvars(), reduction, homogenized, space })
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Some `x` with `P(x) = a`.
    pub fn represent(&self, a: &RatFunc) -> Result<Vec<RatFunc>> {
        self.try_represent(a)?
            .ok_or_else(|| Error::invariant("full-rank system is inconsistent"))
    }

    /// `None` when `a` is not a value of `P`.
    pub fn try_represent(&self, a: &RatFunc) -> Result<Option<Vec<RatFunc>>> {
        let k = &self.ctx;
        let alpha = self.homogenized.expand(a);
        let Some(combo) = self.space.solve(&alpha) else {
            return Ok(None);
        };
        let mut x = vec![k.zero(); self.homogenized.ncols()];
        for (i, c) in combo {
            x[i] = c;
        }
        let y_active = self.homogenized.back_map(&x);
        let mut y = vec![k.zero(); self.nvars];
        y[self.reduction.first_active..].clone_from_slice(&y_active);
        // P(sigma(y)) = (P o sigma)(y) = a
        self.reduction
            .sigma
            .components()
            .iter()
            .map(|c| c.eval(&y))
            .collect::<Result<_>>()
            .map(Some)
    }

    pub fn substitution(&self) -> &AdditiveSubst {
        &self.reduction.sigma
    }
}

pub fn represent(p: &MonoPPoly, a: &RatFunc) -> Result<Vec<RatFunc>> {
    Representer::new(p)?.represent(a)
}

/// Rank of the homogenized coefficient matrix computed by fraction-free
/// elimination, independent of the incremental column-space path. `P` is
/// universal exactly when this equals the row count.
pub fn homogenized_rank(p: &MonoPPoly) -> Result<(usize, usize)> {
    let (restricted, _) = restrict_to_involved(p.as_ppoly());
    let h = homogenize(&MonoPPoly::new(restricted)?)?;
    let m = h.matrix();
    let kernel = crate::funcfield::mat_kernel(p.as_ppoly().ctx(), &m, h.ncols());
    Ok((h.ncols() - kernel.len(), h.nrows()))
}

/// Convenience: the monogeneous polynomial `sum c_i X_i^(p^d_i)`.
pub fn mono_from(ctx: &FieldCtx, terms: &[(u32, RatFunc)]) -> MonoPPoly {
    let n = terms.len();
    MonoPPoly::new(PPoly::from_terms(
        ctx,
        n,
        terms.iter().enumerate().map(|(i, (d, c))| (i, *d, c.clone())),
    ))
    .expect("one term per variable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn phi_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        assert_eq!(phi_value(&mono_from(&k, &[(1, k.one()), (1, t.clone())])).unwrap(), rat(1, 1));
        let k3 = FieldCtx::standard(3, 1).unwrap();
        let t3 = k3.var(0);
        assert_eq!(phi_value(&mono_from(&k3, &[(1, k3.one()), (1, t3)])).unwrap(), rat(2, 3));
        assert_eq!(phi_value(&mono_from(&k, &[(0, k.one())])).unwrap(), rat(1, 1));
    }

    #[test]
    fn universality_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let p = mono_from(&k, &[(1, k.one()), (1, t.clone())]);
        let v = is_universal(&p).unwrap();
        assert!(v.universal && v.reduced);

        let k3 = FieldCtx::standard(3, 1).unwrap();
        let t3 = k3.var(0);
        let p3 = mono_from(&k3, &[(1, k3.one()), (1, t3.clone())]);
        let v = is_universal(&p3).unwrap();
        assert!(!v.universal);
        match v.witness {
            UniversalityWitness::Unrepresented(a) => assert_eq!(a, k3.mul(&t3, &t3)),
            UniversalityWitness::Basis(_) => panic!("expected a witness element"),
        }
        assert!(is_universal(&mono_from(&k, &[(0, k.one())])).unwrap().universal);
    }

    #[test]
    fn unrepresented_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        assert_eq!(find_unrepresented(&mono_from(&k, &[(1, k.one())])).unwrap(), t);
        assert_eq!(find_unrepresented(&mono_from(&k, &[(2, k.one())])).unwrap(), t);
    }

    #[test]
    fn represent_examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let p = mono_from(&k, &[(1, k.one()), (1, t.clone())]);
        let rep = Representer::new(&p).unwrap();
        assert_eq!(rep.represent(&k.add(&t, &k.one())).unwrap(), vec![k.one(), k.one()]);
        assert_eq!(rep.represent(&k.zero()).unwrap(), vec![k.zero(), k.zero()]);
        let a = k.add(&k.mul(&t, &t), &t);
        assert_eq!(rep.represent(&a).unwrap(), vec![t.clone(), k.one()]);
    }

    #[test]
    fn non_reduced_universal() {
        // X^2 + Y^2 + t Z^2 over F_2(t): not reduced, image still all of k
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let p = mono_from(&k, &[(1, k.one()), (1, k.one()), (1, t.clone())]);
        let v = is_universal(&p).unwrap();
        assert!(!v.reduced);
        assert!(v.universal);
        let a = k.div(&k.one(), &k.add(&t, &k.one())).unwrap();
        let x = represent(&p, &a).unwrap();
        assert_eq!(p.as_ppoly().eval(&x).unwrap(), a);
    }
}
