//! Canonical forms modulo the image of a p-polynomial map, Ext^1
//! representatives, and homomorphism checks.

pub mod division;
pub mod ext1;
pub mod hom;
pub mod kpoly;

pub use division::{canonical_form, is_in_image, CanonicalForm, Divider};
pub use ext1::{
    check_independence, ext1_independence, ext1_reduce, leading_coefficient, Ext1Reduction,
    IndependenceCertificate, Obstruction,
};
pub use hom::hom_verify;
pub use kpoly::{eval_ppoly, KPoly};
