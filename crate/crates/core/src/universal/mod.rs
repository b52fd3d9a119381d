//! Universality, permawoundness classification, completions, and the
//! standard groups.

pub mod classify;
pub mod complete;
pub mod standard;
pub mod verdict;
pub mod vpl;

pub use classify::{classify, filtration_weakly_permawound, Classification};
pub use complete::{complete_to_universal, ubiquity_embed, Completion, Ubiquity};
pub use standard::{
    example_e, example_w, level_one_form, standard_v, weil_restrict_alpha_p,
    weil_restrict_gm_quotient, StandardGroup, StandardKind, WeilBlock, WeilRestriction,
};
pub use verdict::{
    find_unrepresented, homogenized_rank, is_universal, phi_value, represent, Representer,
    UniversalityVerdict, UniversalityWitness,
};
pub use vpl::{solve_vpl_scalar, verify_vpl_change_of_vars, VplPair, VplSolution};
