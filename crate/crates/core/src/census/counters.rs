use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cases::{Case, CaseLabel, Subcase};
use crate::galois::Certainty;

/// Squarefull violations kept verbatim, smallest first.
pub const EXCEPTION_EXAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub certified: u64,
    pub heuristic: u64,
    pub undecided: u64,
}

impl Tally {
    pub fn get(&self, c: Certainty) -> u64 {
        match c {
            Certainty::Certified => self.certified,
            Certainty::Heuristic => self.heuristic,
            Certainty::Undecided => self.undecided,
        }
    }

    fn slot(&mut self, c: Certainty) -> &mut u64 {
        match c {
            Certainty::Certified => &mut self.certified,
            Certainty::Heuristic => &mut self.heuristic,
            Certainty::Undecided => &mut self.undecided,
        }
    }

    pub fn total(&self) -> u64 {
        self.certified + self.heuristic + self.undecided
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub case_i: u64,
    pub case_ii: u64,
    /// Case III at `delta = 0`, where subcases are not assigned.
    pub case_iii: u64,
    pub case_iii_i: u64,
    pub case_iii_ii: u64,
    pub not_applicable: u64,
}

impl CaseCounts {
    pub fn record(&mut self, l: &CaseLabel) {
        let slot = match (l.case, l.subcase) {
            (Case::CaseI, _) => &mut self.case_i,
            (Case::CaseII, _) => &mut self.case_ii,
            (Case::CaseIII, Subcase::I) => &mut self.case_iii_i,
            (Case::CaseIII, Subcase::Ii) => &mut self.case_iii_ii,
            (Case::CaseIII, Subcase::None) => &mut self.case_iii,
            (Case::NotApplicable, _) => &mut self.not_applicable,
        };
        *slot += 1;
    }

    pub fn merge(&mut self, o: &CaseCounts) {
        self.case_i += o.case_i;
        self.case_ii += o.case_ii;
        self.case_iii += o.case_iii;
        self.case_iii_i += o.case_iii_i;
        self.case_iii_ii += o.case_iii_ii;
        self.not_applicable += o.not_applicable;
    }

    pub fn total(&self) -> u64 {
        self.case_i + self.case_ii + self.case_iii + self.case_iii_i + self.case_iii_ii + self.not_applicable
    }
}

/// Mergeable census state. Merging is componentwise addition, so the
/// result does not depend on how the box was sharded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub total: u64,
    pub labels: BTreeMap<String, Tally>,
    /// Reducible, inseparable or degree-dropped polynomials.
    pub intransitive: u64,
    /// Certified primitive labels other than `S_n`.
    pub primitive_non_sn: u64,
    pub exact_certificates: u64,
    /// Primitive non-`S_n` polynomials whose certificate stayed partial.
    pub excluded_partial: u64,
    pub squarefull_exceptions: u64,
    pub exception_examples: Vec<Vec<i64>>,
    pub cases: CaseCounts,
}

impl Counters {
    pub fn record_label(&mut self, name: &str, certainty: Certainty, intransitive: bool) {
        self.total += 1;
        if intransitive {
            self.intransitive += 1;
        }
        match self.labels.get_mut(name) {
            Some(t) => *t.slot(certainty) += 1,
            None => {
                let mut t = Tally::default();
                *t.slot(certainty) += 1;
                self.labels.insert(name.to_string(), t);
            }
        }
    }

    pub fn record_exception(&mut self, coeffs: &[i64]) {
        self.squarefull_exceptions += 1;
        self.exception_examples.push(coeffs.to_vec());
        self.trim_examples();
    }

    fn trim_examples(&mut self) {
        self.exception_examples.sort();
        self.exception_examples.dedup();
        self.exception_examples.truncate(EXCEPTION_EXAMPLES);
    }

    pub fn merge(&mut self, o: &Counters) {
        self.total += o.total;
        for (k, t) in &o.labels {
            let e = self.labels.entry(k.clone()).or_default();
            e.certified += t.certified;
            e.heuristic += t.heuristic;
            e.undecided += t.undecided;
        }
        self.intransitive += o.intransitive;
        self.primitive_non_sn += o.primitive_non_sn;
        self.exact_certificates += o.exact_certificates;
        self.excluded_partial += o.excluded_partial;
        self.squarefull_exceptions += o.squarefull_exceptions;
        self.exception_examples.extend(o.exception_examples.iter().cloned());
        self.trim_examples();
        self.cases.merge(&o.cases);
    }

    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("counters serialize");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
