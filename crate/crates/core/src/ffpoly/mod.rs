//! Polynomials over prime fields `F_p`.

pub mod boxcount;
pub mod factor;
pub mod fourier;
pub mod poly;
pub(crate) mod small;
pub mod splitting;

pub use boxcount::{poisson_box_count, BoxCount};
pub use factor::{factor_mod_p, FpFactorization};
pub use fourier::{fourier_sweep, fourier_transform_w, FourierReport};
pub use poly::FpPoly;
pub use splitting::{splitting_type, weight_w, Partition, SplittingType};
