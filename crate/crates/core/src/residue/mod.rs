//! Residues of finite-support Laurent expansions and first-cohomology
//! witnesses built from them.

pub mod laurent;
pub mod witness;

pub use laurent::{eval_f_laurent, SparseLaurent};
pub use witness::{check_witness, h1_witness, ResidueReport, ResidueWitness};
