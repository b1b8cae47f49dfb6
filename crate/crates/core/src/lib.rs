//! Exact-arithmetic census of Galois groups of integer polynomials.
//!
//! The crate enumerates monic (or non-monic) integer polynomials with
//! coefficients in a box `[-H, H]`, classifies their Galois groups, and
//! tallies the structural data used to bound how many of them fail to have
//! the full symmetric group: field-discriminant certificates, ramified-prime
//! products, double discriminants, and the equidistribution of mod-p
//! splitting types measured through exact Fourier transforms.
//!
//! Module map:
//!
//! * [`intpoly`]: integer polynomials, resultants, discriminants, the double
//!   discriminant, factorization over `Q`, integer diagnostics.
//! * [`ffpoly`]: polynomials over prime fields, splitting types, weight
//!   functions and their Fourier transforms, box counts.
//! * [`galois`]: transitive group tables, Dedekind certificates, Frobenius
//!   cycle types, classification.
//! * [`census`]: sharded enumeration with checkpoints, case decomposition,
//!   exponent fits, reports.
//! * [`cli`]: the `galois-census` command line.

pub mod census;
pub mod cli;
pub mod error;
pub mod ffpoly;
pub mod galois;
pub mod intpoly;

pub use error::{Error, Result};
