//! Law-check reports.
//!
//! Every checker in this crate returns a [`LawReport`]: the name of the
//! check, a pass/fail status, the list of violations found, and the number
//! of law instances examined. The contract is strict in both directions:
//! `status == Fail` exactly when `violations` is nonempty, and each
//! violation carries a witness precise enough to replay the failing
//! instance against the original tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// One failed law instance. `law` names the law, `witness` the ids of the
/// participating cells in a fixed documented order per law.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new<S: Into<String>>(law: &str, witness: impl IntoIterator<Item = S>) -> Self {
        Violation {
            law: law.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub check: String,
    pub status: Status,
    /// Sorted lexicographically by (law, witness) so merged or parallel
    /// sweeps produce identical reports regardless of discovery order.
    pub violations: Vec<Violation>,
    /// Law instances examined.
    pub cases: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
}

impl LawReport {
    pub fn new(check: &str, mut violations: Vec<Violation>, cases: u64) -> Self {
        violations.sort();
        violations.dedup();
        let status = if violations.is_empty() { Status::Pass } else { Status::Fail };
        LawReport {
            check: check.to_string(),
            status,
            violations,
            cases,
            flags: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn pass(check: &str, cases: u64) -> Self {
        Self::new(check, Vec::new(), cases)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        self.flags.push(flag.to_string());
        self
    }

    pub fn with_metric(mut self, name: &str, value: f64) -> Self {
        self.metrics.insert(name.to_string(), value);
        self
    }

    /// Keep at most `cap` violations; flags the truncation and records the
    /// original count so the cap never silently hides information.
    pub fn truncate_violations(&mut self, cap: usize) {
        if self.violations.len() > cap {
            self.metrics
                .insert("violations_total".to_string(), self.violations.len() as f64);
            self.violations.truncate(cap);
            self.flags.push("truncated".to_string());
        }
    }
}
