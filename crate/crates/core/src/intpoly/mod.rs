//! Integer polynomials: arithmetic, resultants and discriminants, the
//! double discriminant, factorization over `Q`, integer diagnostics.

pub mod ddisc;
pub mod decimal;
pub mod factor;
pub mod integer;
pub mod parse;
pub mod poly;
pub mod resultant;

pub use ddisc::{disc_in_an, double_discriminant, prop3_check, DoubleDiscriminant, Prop3Check};
pub use factor::{factor_over_q, integer_roots, IntFactorization};
pub use integer::{factor_integer, integer_diagnostics, is_prime, is_prime_u64, IntegerDiagnostics};
pub use parse::{format_poly, parse_poly};
pub use poly::{IntPoly, MonicIntPoly};
pub use resultant::{discriminant, is_perfect_square, resultant};
