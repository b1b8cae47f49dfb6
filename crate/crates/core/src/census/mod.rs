//! Exhaustive census over coefficient boxes: sharded enumeration with
//! resumable checkpoints, per-label counts, the case split of primitive
//! non-`S_n` polynomials, and exponent fits across box sizes.

pub mod cases;
pub mod checkpoint;
pub mod config;
pub mod counters;
pub mod fit;
pub mod report;
pub mod run;

pub use cases::{case_decompose, Case, CaseLabel, Subcase};
pub use checkpoint::{write_atomic, Checkpoint};
pub use config::{CensusConfig, Mode};
pub use counters::{CaseCounts, Counters, Tally};
pub use fit::{fit_exponent, ExponentFit};
pub use report::{CensusReport, LabelCount, ReportSummary};
pub use run::{enumerate_census, run_shard};
