use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

use super::PPoly;

/// A p-polynomial in which each variable appears in at most one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoPPoly(PPoly);

impl MonoPPoly {
    pub fn new(p: PPoly) -> Result<Self> {
        if !p.is_monogeneous() {
            return Err(Error::precondition("p-polynomial is not monogeneous"));
        }
        Ok(MonoPPoly(p))
    }

    pub fn as_ppoly(&self) -> &PPoly {
        &self.0
    }

    pub fn into_ppoly(self) -> PPoly {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(variable, d_i, c_i)` for each term `c_i X_i^(p^d_i)`, by variable.
    pub fn entries(&self) -> Vec<(usize, u32, RatFunc)> {
        self.0.terms().map(|(i, j, c)| (i, j, c.clone())).collect()
    }

    /// Largest `d_i`.
    pub fn max_exp(&self) -> Option<u32> {
        self.0.terms().map(|(_, j, _)| j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut exps = self.0.terms().map(|(_, j, _)| j);
        match exps.next() {
            None => true,
            Some(first) => exps.all(|j| j == first),
        }
    }
}
