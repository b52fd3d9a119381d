//! Completing a reduced monogeneous p-polynomial to a universal one, and
//! embedding a group into a permawound one with vector-group quotient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::funcfield::linalg::{ColumnSpace, Insertion};
use crate::funcfield::RatFunc;
use crate::ppoly::{MonoPPoly, PPoly};
use crate::reduce::homogenize::homogenize;
use crate::reduce::zero::is_reduced;

use super::verdict::phi_value;

#[derive(Clone, Debug)]
pub struct Completion {
    /// Top exponent `N`: every added term is `c * Y^(p^N)`.
    pub level: u32,
    /// Coefficients of the added terms, in the order they were found.
    pub added: Vec<RatFunc>,
    /// `P + Q` in `n + added.len()` variables, fresh ones last.
    pub completed: MonoPPoly,
}

impl Completion {
    /// `Q` alone, in the fresh variables only.
    pub fn addition(&self) -> PPoly {
        let n = self.completed.nvars();
        let m = self.added.len();
        self.completed
            .as_ppoly()
            .specialize_zero(|v| v < n - m)
            .restrict(n - m, n)
            .expect("fresh variables are last")
    }
}

/// Repeatedly subtracts `a Y^(p^N)` for the least graded-lex monomial `a`
/// outside the image, until `phi` reaches 1.
pub fn complete_to_universal(p: &MonoPPoly) -> Result<Completion> {
    if p.is_zero() {
        return Err(Error::precondition("cannot complete the zero p-polynomial"));
    }
    if !is_reduced(p.as_ppoly())? {
        return Err(Error::precondition("p-polynomial is not reduced"));
    }
    let ctx = p.as_ppoly().ctx().clone();
    let h = homogenize(p)?;
    let level = h.level();
    let mut space = ColumnSpace::new(&ctx, h.nrows());
    for col in h.columns() {
        if let Insertion::Dependent(_) = space.insert(&col) {
            return Err(Error::invariant("reduced p-polynomial has dependent columns"));
        }
    }
    let idx = ctx.index_set(level);
    let mut added = Vec::new();
    for f in idx.grlex_order() {
        let mut e = vec![ctx.zero(); h.nrows()];
        e[f] = ctx.one();
        if matches!(space.insert(&e), Insertion::Independent) {
            added.push(ctx.neg(&ctx.monomial(&idx.exps(f))));
        }
    }
    let n = p.nvars();
    let total = n + added.len();
    let mut poly = p.as_ppoly().embed(total, 0);
    for (i, c) in added.iter().enumerate() {
        poly.add_term(n + i, level, c);
    }
    let completed = MonoPPoly::new(poly)?;

    let expected = (BigRational::one() - phi_value(p)?)
        * BigRational::from_integer(BigInt::from(idx.len()));
    if expected != BigRational::from_integer(BigInt::from(added.len())) {
        return Err(Error::invariant("completion step count disagrees with phi"));
    }
    if !phi_value(&completed)?.is_one() {
        return Err(Error::invariant("completion did not reach phi = 1"));
    }
    Ok(Completion { level, added, completed })
}

#[derive(Clone, Debug)]
pub struct Ubiquity {
    /// `F + Q` in the enlarged space.
    pub w: PPoly,
    /// The fresh variables; projecting onto them has kernel `{F = 0}`.
    pub projection: Vec<usize>,
    pub completion: Completion,
}

pub fn ubiquity_embed(f: &PPoly) -> Result<Ubiquity> {
    if !f.is_separable() {
        return Err(Error::precondition("p-polynomial is not separable"));
    }
    if !is_reduced(f)? {
        return Err(Error::precondition("p-polynomial is not reduced"));
    }
    let completion = complete_to_universal(&f.principal_part())?;
    let n = f.nvars();
    let total = completion.completed.nvars();
    let w = f.embed(total, 0).add(&completion.addition().embed(total, n))?;
    Ok(Ubiquity { w, projection: (n..total).collect(), completion })
}
