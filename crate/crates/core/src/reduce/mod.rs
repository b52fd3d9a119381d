//! Reducedness, single-polynomial reduction, and system normalization.

pub mod filtration;
pub mod homogenize;
pub mod single;
pub mod system;
pub mod zero;

pub use filtration::{hypersurface_filtration, FiltrationStage};
pub use homogenize::{homogenize, universal_form, Homogenized};
pub use single::{reduce_ppoly, Reduction, ReductionStep, ReductionTranscript};
pub use system::{
    check_normalized, normalize_system, replay_normalization, NormStep, NormalizationCertificate,
    Normalized,
};
pub use zero::{is_reduced, principal_zero};
