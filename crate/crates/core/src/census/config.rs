use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::galois::dedekind::CertificateOptions;
use crate::galois::ClassifyOptions;

/// Largest box enumerated without an explicit larger budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Monic,
    /// The leading coefficient ranges over `[-H, H]` as well.
    NonMonic,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Monic => "monic",
            Mode::NonMonic => "non_monic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub n: usize,
    pub h: u64,
    pub mode: Mode,
    pub delta: f64,
    pub prime_bound: u64,
    pub shard_count: usize,
    pub certificate: CertificateOptions,
    /// Maximum number of polynomials a run may enumerate.
    pub budget: u64,
    /// Worker threads; `GALOIS_CENSUS_THREADS` takes precedence.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many shards have been completed in this run, leaving
    /// a checkpoint behind.
    pub stop_after_shards: Option<usize>,
}

impl CensusConfig {
    pub fn new(n: usize, h: u64) -> Self {
        CensusConfig {
            n,
            h,
            mode: Mode::Monic,
            delta: 0.0,
            prime_bound: crate::galois::classify::DEFAULT_PRIME_BOUND,
            shard_count: 1,
            certificate: CertificateOptions::default(),
            budget: DEFAULT_BUDGET,
            threads: None,
            checkpoint: None,
            stop_after_shards: None,
        }
    }

    /// Number of free coefficients.
    pub fn dimension(&self) -> usize {
        self.n + usize::from(self.mode == Mode::NonMonic)
    }

    pub fn side(&self) -> u64 {
        2 * self.h + 1
    }

    /// `(2H+1)^dimension`, saturating.
    pub fn box_size(&self) -> u64 {
        (0..self.dimension()).fold(1u64, |acc, _| acc.saturating_mul(self.side()))
    }

    /// Coefficients fixed per shard: `a_1..a_ceil(n/2)`, plus `a_0` in
    /// non-monic mode.
    pub fn prefix_len(&self) -> usize {
        self.n.div_ceil(2) + usize::from(self.mode == Mode::NonMonic)
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions { prime_bound: self.prime_bound, non_monic_mode: self.mode == Mode::NonMonic }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree { degree: self.n, supported: "1..=7" });
        }
        if self.h == 0 {
            return Err(Error::invalid("H must be at least 1"));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::invalid(format!("delta must be finite and nonnegative, got {}", self.delta)));
        }
        let limit = 1.0 / (2 * self.n - 1) as f64;
        if self.delta != 0.0 && self.delta >= limit {
            return Err(Error::invalid(format!("delta must be below 1/(2n-1) = {limit:.6}, got {}", self.delta)));
        }
        if self.prime_bound < 2 {
            return Err(Error::invalid("prime bound must be at least 2"));
        }
        if self.shard_count == 0 {
            return Err(Error::invalid("shard count must be positive"));
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("thread count must be positive"));
        }
        let side = self.side() as f64;
        let needed = side.powi(self.dimension() as i32);
        if needed > self.budget as f64 {
            return Err(Error::ResourceLimit { what: "census box".into(), needed, cap: self.budget as f64 });
        }
        Ok(())
    }

    /// Hash of everything that determines shard contents and counters.
    pub fn config_hash(&self) -> String {
        let key = serde_json::json!({
            "n": self.n,
            "h": self.h,
            "mode": self.mode,
            "delta": format!("{:?}", self.delta),
            "prime_bound": self.prime_bound,
            "shard_count": self.shard_count,
            "index_parity": self.certificate.index_parity,
            "maximal_order": self.certificate.maximal_order,
        });
        let digest = Sha256::digest(key.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Worker count: the environment override, then the configured value,
    /// then rayon's default.
    pub fn resolved_threads(&self) -> Result<Option<usize>> {
        match std::env::var("GALOIS_CENSUS_THREADS") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(t) if t > 0 => Ok(Some(t)),
                _ => Err(Error::invalid(format!("GALOIS_CENSUS_THREADS must be a positive integer, got {v:?}"))),
            },
            Err(_) => Ok(self.threads),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CensusConfig::new(3, 10).validate().is_ok());
        assert!(CensusConfig::new(8, 1).validate().is_err());
        assert!(CensusConfig::new(3, 0).validate().is_err());
        let mut c = CensusConfig::new(3, 10);
        c.delta = 0.2;
        assert!(c.validate().is_err());
        c.delta = 0.19;
        assert!(c.validate().is_ok());
        c.delta = -0.1;
        assert!(c.validate().is_err());
        let mut c = CensusConfig::new(7, 1000);
        c.budget = 1_000_000;
        assert!(matches!(c.validate(), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn sizes_and_hash() {
        let mut c = CensusConfig::new(3, 2);
        assert_eq!((c.box_size(), c.prefix_len()), (125, 2));
        let h = c.config_hash();
        c.mode = Mode::NonMonic;
        assert_eq!((c.box_size(), c.prefix_len()), (625, 3));
        assert_ne!(c.config_hash(), h);
        // paths and thread counts do not change results
        let mut d = CensusConfig::new(3, 2);
        d.threads = Some(3);
        d.checkpoint = Some("x.json".into());
        assert_eq!(d.config_hash(), h);
    }
}
