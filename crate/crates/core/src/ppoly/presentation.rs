use crate::error::{Error, Result};
use crate::funcfield::FieldCtx;

use super::PPoly;

/// The subgroup of `G_a^n` cut out by a list of p-polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    ctx: FieldCtx,
    nvars: usize,
    equations: Vec<PPoly>,
    separable: Vec<bool>,
}

impl GroupPresentation {
    pub fn new(ctx: &FieldCtx, nvars: usize, equations: Vec<PPoly>) -> Result<Self> {
        for e in &equations {
            if e.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.nvars() });
            }
        }
        let separable = equations.iter().map(|e| e.is_separable()).collect();
        Ok(GroupPresentation { ctx: ctx.clone(), nvars, equations, separable })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[PPoly] {
        &self.equations
    }

    pub fn separable_flags(&self) -> &[bool] {
        &self.separable
    }

    pub fn render(&self, zero_based: bool) -> Vec<String> {
        self.equations.iter().map(|e| e.render(zero_based)).collect()
    }
}
