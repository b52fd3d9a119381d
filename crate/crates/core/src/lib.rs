//! Exact computation with additive polynomials over `F_q(t1..tr)`.

pub mod canon;
pub mod cli;
pub mod error;
pub mod funcfield;
pub mod gfq;
pub mod ppoly;
pub mod reduce;
pub mod residue;
pub mod universal;

pub use error::{Error, Result};
