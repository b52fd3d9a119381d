//! Permawoundness and related verdicts for groups cut out by one
//! p-polynomial, or by a filtration of such groups.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ppoly::{MonoPPoly, PPoly};
use crate::reduce::filtration::FiltrationStage;
use crate::reduce::single::{reduce_ppoly, Reduction};
use crate::reduce::zero::is_reduced;

use super::verdict::phi_value;

#[derive(Clone, Debug)]
pub struct Classification {
    pub separable: bool,
    /// Whether the input itself is reduced.
    pub reduced: bool,
    pub reduction: Reduction,
    /// Number of split `G_a` factors peeled off by the reduction.
    pub split_rank: usize,
    /// `phi` of the principal part of the reduced form on its active
    /// variables.
    pub principal_phi: BigRational,
    pub principal_universal: bool,
    /// Asserted only for separable inputs whose reduced form has no split
    /// factor.
    pub permawound: Option<bool>,
    pub quasi_weakly_permawound: Option<bool>,
    pub connected: Option<bool>,
    pub semiwound: Option<bool>,
}

impl Classification {
    /// Reduced after the change of variables, with nothing split off.
    pub fn reduced_form(&self) -> bool {
        self.split_rank == 0
    }
}

pub fn classify(f: &PPoly) -> Result<Classification> {
    if f.is_zero() {
        return Err(Error::precondition("cannot classify the zero p-polynomial"));
    }
    let separable = f.is_separable();
    let reduced = is_reduced(f)?;
    let reduction = reduce_ppoly(f)?;
    let split_rank = reduction.first_active;
    let active = reduction.reduced.restrict(split_rank, f.nvars())?;
    let principal_phi = phi_value(&active.principal_part())?;
    // the active form is reduced, so universality is exactly phi = 1
    let principal_universal = principal_phi.is_one();
    let wound = split_rank == 0;
    Ok(Classification {
        separable,
        reduced,
        reduction,
        split_rank,
        principal_phi,
        principal_universal,
        permawound: (separable && wound).then_some(principal_universal),
        quasi_weakly_permawound: wound.then_some(principal_universal),
        connected: (wound && principal_universal).then_some(true),
        semiwound: Some(wound),
    })
}

/// Weak permawoundness read off a filtration whose quotients are either
/// `G_a` (zero equation) or cut out by a single p-polynomial.
///
/// `Some(true)` when every non-split stage is reduced with universal
/// principal part. `Some(false)` when all stages are reduced hypersurfaces
/// and some principal part is not universal. `None` otherwise: a stage is
/// not reduced, or split stages sit alongside a non-universal one.
pub fn filtration_weakly_permawound(stages: &[FiltrationStage]) -> Result<Option<bool>> {
    let mut has_split = false;
    let mut all_universal = true;
    for s in stages {
        if s.equation.is_zero() {
            has_split = true;
            continue;
        }
        if !is_reduced(&s.equation)? {
            return Ok(None);
        }
        if !phi_value(&s.equation.principal_part())?.is_one() {
            all_universal = false;
        }
    }
    if all_universal {
        Ok(Some(true))
    } else if has_split {
        Ok(None)
    } else {
        Ok(Some(false))
    }
}

/// Whether a monogeneous `P` is reduced with `phi(P) = 1`.
pub fn reduced_and_universal(p: &MonoPPoly) -> Result<bool> {
    Ok(is_reduced(p.as_ppoly())? && phi_value(p)?.is_one())
}
