//! Galois groups of integer polynomials of small degree.

mod blocks;
pub mod classify;
pub mod dedekind;
mod maximal;
pub mod perm;
pub mod resolvent;
mod small;
pub mod tables;

pub use classify::{
    classify, classify_coefficients, classify_monic, cycle_type_sample, Certainty, ClassifyOptions, CycleSample,
    Evidence, GaloisLabel,
};
pub use dedekind::{dedekind_test, field_disc_certificate, CertificateStatus, FieldDiscCertificate};
pub use tables::{group_table, GroupTableEntry};
