//! Successive hypersurface quotients of a group given by a normalized system.

use crate::error::{Error, Result};
use crate::funcfield::FieldCtx;
use crate::ppoly::PPoly;

use super::system::check_normalized;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStage {
    /// Ambient variables `lo..hi` kept by the stage's projection.
    pub lo: usize,
    pub hi: usize,
    /// The quotient's equation in the variables `lo..hi`, renumbered from 0;
    /// the zero polynomial for a split `G_a` stage.
    pub equation: PPoly,
    /// Whether the equation involves its leading variable `X_lo`; this is
    /// what makes the stage map surjective.
    pub involves_leading: bool,
}

/// Stages listed from the top quotient down. For a normalized `F_1..F_m`
/// in `n` variables with `F_m` in `k[X_(m+j)..X_n]`, the top stage is `F_m`
/// in those variables, followed by `j` split stages `G_a` for
/// `X_m..X_(m+j-1)`, and then `F_i(X_i, 0, ..., 0)` for `i = m-1` down to 1.
pub fn hypersurface_filtration(
    ctx: &FieldCtx,
    nvars: usize,
    system: &[PPoly],
) -> Result<Vec<FiltrationStage>> {
    let offset = check_normalized(system)
        .map_err(|e| Error::precondition(format!("system not normalized: {e}")))?;
    let m = system.len();
    let split = |i: usize| FiltrationStage {
        lo: i,
        hi: i + 1,
        equation: PPoly::zero(ctx, 1),
        involves_leading: false,
    };
    if m == 0 {
        return Ok((0..nvars).rev().map(split).collect());
    }
    let lo = m - 1 + offset;
    let equation = system[m - 1].restrict(lo, nvars)?;
    let mut stages = vec![FiltrationStage {
        lo,
        hi: nvars,
        involves_leading: equation.involves(0),
        equation,
    }];
    stages.extend((m - 1..lo).rev().map(split));
    for i in (0..m - 1).rev() {
        let equation = system[i].specialize_zero(|v| v != i).restrict(i, i + 1)?;
        stages.push(FiltrationStage {
            lo: i,
            hi: i + 1,
            involves_leading: equation.involves(0),
            equation,
        });
    }
    Ok(stages)
}
