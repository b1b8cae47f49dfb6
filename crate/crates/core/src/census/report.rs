use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{CensusConfig, Mode};
use super::counters::{CaseCounts, Counters};
use crate::error::{Error, Result};
use crate::galois::tables::{group_table, symmetric_name};
use crate::galois::Certainty;

pub const CSV_HEADER: &str = "section,key,certainty,value";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelCount {
    pub label: String,
    pub certainty: Certainty,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub h: u64,
    pub mode: Mode,
    pub delta: f64,
    pub prime_bound: u64,
    pub total: u64,
    pub labels: Vec<LabelCount>,
    pub certified_sn: u64,
    pub undecided: u64,
    /// Decided non-`S_n` count; undecided polynomials are left out.
    pub e_n_lower: u64,
    /// `e_n_lower` plus every undecided polynomial.
    pub e_n_upper: u64,
    pub intransitive: u64,
    /// `intransitive / H^(n-1)`.
    pub chela_ratio: f64,
    /// Decided transitive labels whose group is imprimitive.
    pub imprimitive: u64,
    pub primitive_non_sn: u64,
    pub exact_certificates: u64,
    pub excluded_partial: u64,
    pub squarefull_exceptions: u64,
    pub exception_examples: Vec<Vec<i64>>,
    pub cases: CaseCounts,
    pub counter_digest: String,
    // run metadata, kept out of the CSV body
    pub shard_count: usize,
    pub threads: usize,
    pub wall_time_secs: f64,
    pub shard_digests: Vec<(usize, String)>,
}

impl CensusReport {
    pub fn build(cfg: &CensusConfig, c: &Counters) -> Result<Self> {
        let table = group_table(cfg.n)?;
        let sym = symmetric_name(cfg.n);
        let mut labels = Vec::new();
        let (mut certified_sn, mut undecided, mut imprimitive) = (0, 0, 0);
        for (name, t) in &c.labels {
            for certainty in [Certainty::Certified, Certainty::Heuristic, Certainty::Undecided] {
                let count = t.get(certainty);
                if count > 0 {
                    labels.push(LabelCount { label: name.clone(), certainty, count });
                }
            }
            undecided += t.undecided;
            if *name == sym {
                certified_sn += t.certified + t.heuristic;
            } else if table.iter().any(|e| e.name == *name && !e.is_primitive) {
                imprimitive += t.certified + t.heuristic;
            }
        }
        let e_n_lower = c.total - certified_sn - undecided;
        let chela_ratio = c.intransitive as f64 / (cfg.h as f64).powi(cfg.n as i32 - 1);
        Ok(CensusReport {
            n: cfg.n,
            h: cfg.h,
            mode: cfg.mode,
            delta: cfg.delta,
            prime_bound: cfg.prime_bound,
            total: c.total,
            labels,
            certified_sn,
            undecided,
            e_n_lower,
            e_n_upper: e_n_lower + undecided,
            intransitive: c.intransitive,
            chela_ratio,
            imprimitive,
            primitive_non_sn: c.primitive_non_sn,
            exact_certificates: c.exact_certificates,
            excluded_partial: c.excluded_partial,
            squarefull_exceptions: c.squarefull_exceptions,
            exception_examples: c.exception_examples.clone(),
            cases: c.cases,
            counter_digest: c.digest(),
            shard_count: cfg.shard_count,
            threads: 1,
            wall_time_secs: 0.0,
            shard_digests: Vec::new(),
        })
    }

    pub fn e_n_interval(&self) -> (u64, u64) {
        (self.e_n_lower, self.e_n_upper)
    }

    pub fn undecided_fraction(&self) -> f64 {
        self.undecided as f64 / self.total as f64
    }

    /// Partial certificates among certified primitive non-`S_n` polynomials.
    pub fn excluded_fraction(&self) -> f64 {
        if self.primitive_non_sn == 0 {
            0.0
        } else {
            self.excluded_partial as f64 / self.primitive_non_sn as f64
        }
    }

    /// Deterministic CSV: one row per `(label, certainty)` and summary rows.
    /// Nothing here depends on sharding, threads or time.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{CSV_HEADER}");
        let mut row = |section: &str, key: &str, certainty: &str, value: String| {
            let _ = writeln!(s, "{section},{key},{certainty},{value}");
        };
        row("config", "n", "", self.n.to_string());
        row("config", "H", "", self.h.to_string());
        row("config", "mode", "", self.mode.as_str().into());
        row("config", "delta", "", format!("{:?}", self.delta));
        row("config", "prime_bound", "", self.prime_bound.to_string());
        for l in &self.labels {
            row("label", &l.label, l.certainty.as_str(), l.count.to_string());
        }
        row("summary", "total", "", self.total.to_string());
        row("summary", "certified_sn", "", self.certified_sn.to_string());
        row("summary", "undecided", "", self.undecided.to_string());
        row("summary", "E_n_lower", "", self.e_n_lower.to_string());
        row("summary", "E_n_upper", "", self.e_n_upper.to_string());
        row("summary", "intransitive", "", self.intransitive.to_string());
        row("summary", "chela_ratio", "", format!("{:.9}", self.chela_ratio));
        row("summary", "imprimitive", "", self.imprimitive.to_string());
        row("summary", "primitive_non_sn", "", self.primitive_non_sn.to_string());
        row("summary", "exact_certificates", "", self.exact_certificates.to_string());
        row("summary", "excluded_partial", "", self.excluded_partial.to_string());
        row("summary", "squarefull_exceptions", "", self.squarefull_exceptions.to_string());
        row("case", "CASE_I", "", self.cases.case_i.to_string());
        row("case", "CASE_II", "", self.cases.case_ii.to_string());
        row("case", "CASE_III", "", self.cases.case_iii.to_string());
        row("case", "CASE_III(i)", "", self.cases.case_iii_i.to_string());
        row("case", "CASE_III(ii)", "", self.cases.case_iii_ii.to_string());
        row("summary", "counter_digest", "", self.counter_digest.clone());
        s
    }

    /// `#`-prefixed lines for the metadata sidecar.
    pub fn meta_lines(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# wall_time_secs={:.3}", self.wall_time_secs);
        let _ = writeln!(s, "# threads={}", self.threads);
        let _ = writeln!(s, "# shard_count={}", self.shard_count);
        for (id, d) in &self.shard_digests {
            let _ = writeln!(s, "# shard {id} {d}");
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mode = if self.mode == Mode::Monic { "monic" } else { "non-monic" };
        let _ = writeln!(s, "census n={} H={} ({mode}, delta={}, B={})", self.n, self.h, self.delta, self.prime_bound);
        let _ = writeln!(s, "  polynomials        {}", self.total);
        let _ = writeln!(s, "  certified S_{}       {}", self.n, self.certified_sn);
        let _ = writeln!(s, "  undecided          {} ({:.4}%)", self.undecided, 100.0 * self.undecided_fraction());
        let _ = writeln!(s, "  E_n(H) in          [{}, {}]", self.e_n_lower, self.e_n_upper);
        let _ = writeln!(s, "  intransitive       {} (ratio to H^(n-1): {:.6})", self.intransitive, self.chela_ratio);
        let _ = writeln!(s, "  imprimitive        {}", self.imprimitive);
        let _ = writeln!(
            s,
            "  primitive non-S_n  {} (exact {}, excluded {}, {:.2}%)",
            self.primitive_non_sn,
            self.exact_certificates,
            self.excluded_partial,
            100.0 * self.excluded_fraction()
        );
        let _ = writeln!(s, "  squarefull misses  {}", self.squarefull_exceptions);
        for e in &self.exception_examples {
            let _ = writeln!(s, "    {e:?}");
        }
        let c = &self.cases;
        let _ = writeln!(
            s,
            "  cases              I {}  II {}  III {}  III(i) {}  III(ii) {}",
            c.case_i, c.case_ii, c.case_iii, c.case_iii_i, c.case_iii_ii
        );
        let _ = writeln!(s, "  groups:");
        for l in &self.labels {
            let _ = writeln!(s, "    {:<14} {:<10} {}", l.label, l.certainty.as_str(), l.count);
        }
        s
    }
}

/// The `config` and `summary` rows of a report CSV, keyed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    pub values: BTreeMap<String, String>,
}

impl ReportSummary {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::Parse(format!("report header must be {CSV_HEADER:?}")));
        }
        let mut values = BTreeMap::new();
        for line in lines {
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("malformed report row {line:?}")));
            }
            if parts[0] == "config" || parts[0] == "summary" {
                values.insert(parts[1].to_string(), parts[3].to_string());
            }
        }
        Ok(ReportSummary { values })
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.values
            .get(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("report lacks a valid {key:?} row")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_round_trip() {
        let mut c = Counters::default();
        c.record_label("S3", Certainty::Certified, false);
        c.record_label("C3", Certainty::Certified, false);
        c.record_label("red(1 2)", Certainty::Certified, true);
        let r = CensusReport::build(&CensusConfig::new(3, 2), &c).unwrap();
        assert_eq!((r.e_n_lower, r.e_n_upper, r.certified_sn), (2, 2, 1));
        let s = ReportSummary::parse(&r.to_csv()).unwrap();
        assert_eq!(s.get::<u64>("total").unwrap(), 3);
        assert_eq!(s.get::<u64>("H").unwrap(), 2);
        assert!(ReportSummary::parse("a,b\n").is_err());
    }
}
