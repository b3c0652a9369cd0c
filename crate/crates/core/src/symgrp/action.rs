//! Group actions on finite sets: validation, orbits, exact orbit counting.

use serde::{Deserialize, Serialize};

use super::group::{FinGroup, GroupData};
use super::SymError;
use crate::report::{LawReport, Violation};

/// Serialized form: the acting group inline, named points, and the full
/// action table with `table[g][i]` the index of g applied to point i.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionData {
    pub group: GroupData,
    pub points: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct SetAction {
    pub group: FinGroup,
    pub points: Vec<String>,
    /// table[g][i] = g applied to point i.
    pub table: Vec<Vec<usize>>,
}

impl SetAction {
    pub fn from_doc(doc: &ActionData) -> Result<Self, SymError> {
        let group = FinGroup::from_doc(&doc.group)?;
        let np = doc.points.len();
        if doc.table.len() != group.order() {
            return Err(SymError::MalformedDocument(format!(
                "action table has {} rows for a group of order {}",
                doc.table.len(),
                group.order()
            )));
        }
        for (g, row) in doc.table.iter().enumerate() {
            if row.len() != np {
                return Err(SymError::MalformedDocument(format!(
                    "action row {} has {} entries for {} points",
                    g,
                    row.len(),
                    np
                )));
            }
            for &p in row {
                if p >= np {
                    return Err(SymError::MalformedDocument(format!(
                        "action row {} sends a point to {}, out of range",
                        g, p
                    )));
                }
            }
        }
        Ok(SetAction { group, points: doc.points.clone(), table: doc.table.clone() })
    }

    pub fn to_doc(&self) -> ActionData {
        ActionData {
            group: self.group.to_doc(),
            points: self.points.clone(),
            table: self.table.clone(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn apply(&self, g: usize, point: usize) -> usize {
        self.table[g][point]
    }

    /// Checks that the identity fixes every point and that acting by g then h
    /// matches acting by h*g (points transform on the left).
    pub fn validate(&self) -> LawReport {
        let mut violations = Vec::new();
        let mut cases = 0u64;
        if let Ok(e) = self.group.identity() {
            for p in 0..self.n_points() {
                cases += 1;
                if self.apply(e, p) != p {
                    violations.push(Violation::new("action-identity", vec![self.points[p].clone()]));
                }
            }
        } else {
            violations.push(Violation::new("action-identity", vec!["<no group identity>".to_string()]));
        }
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                let hg = self.group.mul(h, g);
                for p in 0..self.n_points() {
                    cases += 1;
                    if self.apply(h, self.apply(g, p)) != self.apply(hg, p) {
                        violations.push(Violation::new(
                            "action-compatibility",
                            vec![
                                self.group.name(h).to_string(),
                                self.group.name(g).to_string(),
                                self.points[p].clone(),
                            ],
                        ));
                    }
                }
            }
        }
        LawReport::new("action-laws", violations, cases)
    }
}

/// Orbits as sorted index lists, ordered by smallest member. Union-find over
/// the action table.
pub fn orbits(action: &SetAction) -> Vec<Vec<usize>> {
    let np = action.n_points();
    let mut parent: Vec<usize> = (0..np).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in 0..action.group.order() {
        for p in 0..np {
            let a = find(&mut parent, p);
            let b = find(&mut parent, action.apply(g, p));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for p in 0..np {
        let root = find(&mut parent, p);
        buckets.entry(root).or_default().push(p);
    }
    buckets.into_values().collect()
}

/// Exact orbit count as (sum over g of fixed points of g) / |G|, computed in
/// integers. A non-integral quotient is reported as an error rather than
/// rounded, since it can only happen when the action laws fail.
pub fn burnside_count(action: &SetAction) -> Result<u128, SymError> {
    let order = action.group.order() as u128;
    let mut total: u128 = 0;
    for g in 0..action.group.order() {
        total += (0..action.n_points()).filter(|&p| action.apply(g, p) == p).count() as u128;
    }
    if total % order != 0 {
        return Err(SymError::NonIntegralCount { total, order });
    }
    Ok(total / order)
}
