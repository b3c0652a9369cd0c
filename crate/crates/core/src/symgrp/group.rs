//! Multiplication-table groups.

use serde::{Deserialize, Serialize};

use super::SymError;
use crate::report::{LawReport, Violation};

/// Serialized form: element names plus the full multiplication table,
/// `table[g][h]` being the index of g*h.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupData {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct FinGroup {
    pub elements: Vec<String>,
    /// table[g][h] = g*h.
    pub table: Vec<Vec<usize>>,
    /// Two-sided identity, if the table has one.
    identity: Option<usize>,
    /// inverses[g] = the two-sided inverse of g, when identity and all
    /// inverses exist.
    inverses: Option<Vec<usize>>,
}

impl FinGroup {
    /// Structural validation only: the table must be n-by-n with in-range
    /// entries. Law failures (associativity, missing identity) are reported
    /// by [`validate_group`], not here, so broken tables can still be loaded
    /// and diagnosed.
    pub fn from_doc(doc: &GroupData) -> Result<Self, SymError> {
        let n = doc.elements.len();
        if n == 0 {
            return Err(SymError::MalformedDocument("group has no elements".into()));
        }
        if doc.table.len() != n {
            return Err(SymError::MalformedDocument(format!(
                "multiplication table has {} rows for {} elements",
                doc.table.len(),
                n
            )));
        }
        for (g, row) in doc.table.iter().enumerate() {
            if row.len() != n {
                return Err(SymError::MalformedDocument(format!(
                    "row {} of the multiplication table has {} entries for {} elements",
                    g,
                    row.len(),
                    n
                )));
            }
            for (h, &gh) in row.iter().enumerate() {
                if gh >= n {
                    return Err(SymError::MalformedDocument(format!(
                        "table[{}][{}] = {} is out of range",
                        g, h, gh
                    )));
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &doc.elements {
            if !seen.insert(name) {
                return Err(SymError::MalformedDocument(format!(
                    "duplicate element name {:?}",
                    name
                )));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| doc.table[e][g] == g && doc.table[g][e] == g));
        let inverses = identity.and_then(|e| {
            (0..n)
                .map(|g| (0..n).find(|&h| doc.table[g][h] == e && doc.table[h][g] == e))
                .collect::<Option<Vec<usize>>>()
        });
        Ok(FinGroup { elements: doc.elements.clone(), table: doc.table.clone(), identity, inverses })
    }

    pub fn to_doc(&self) -> GroupData {
        GroupData { elements: self.elements.clone(), table: self.table.clone() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> Result<usize, SymError> {
        self.identity.ok_or_else(|| SymError::NotAGroup("no two-sided identity".into()))
    }

    pub fn inverse(&self, g: usize) -> Result<usize, SymError> {
        self.inverses
            .as_ref()
            .map(|inv| inv[g])
            .ok_or_else(|| SymError::NotAGroup("missing inverses".into()))
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    /// Cyclic group of order n, elements named r0..r{n-1}.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n).map(|k| format!("r{}", k)).collect();
        let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FinGroup::from_doc(&GroupData { elements, table }).expect("cyclic table is square")
    }

    /// Symmetric group on three letters, elements as permutations of (0,1,2)
    /// in one-line notation, named by their images, e.g. "012" is the
    /// identity and "102" swaps the first two letters.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let elements: Vec<String> =
            perms.iter().map(|p| p.iter().map(|d| d.to_string()).collect()).collect();
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| {
                        let gh = compose(g, h);
                        perms.iter().position(|p| *p == gh).unwrap()
                    })
                    .collect()
            })
            .collect();
        FinGroup::from_doc(&GroupData { elements, table }).expect("s3 table is square")
    }
}

/// Checks every group law by enumeration and reports each failure with a
/// replayable witness (element names, not indices).
pub fn validate_group(g: &FinGroup) -> LawReport {
    let n = g.order();
    let mut violations = Vec::new();
    let mut cases = 0u64;

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                cases += 1;
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    violations.push(Violation::new(
                        "associativity",
                        vec![g.name(a), g.name(b), g.name(c)],
                    ));
                }
            }
        }
    }

    match g.identity {
        None => violations.push(Violation::new("identity-missing", Vec::<String>::new())),
        Some(e) => {
            cases += 1;
            match &g.inverses {
                Some(_) => {}
                None => {
                    for a in 0..n {
                        cases += 1;
                        let has = (0..n).any(|b| g.mul(a, b) == e && g.mul(b, a) == e);
                        if !has {
                            violations.push(Violation::new("inverse-missing", vec![g.name(a)]));
                        }
                    }
                }
            }
        }
    }

    // Cancellation: each row and column of the table must be a permutation.
    for a in 0..n {
        cases += 2;
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for b in 0..n {
            row_seen[g.mul(a, b)] = true;
            col_seen[g.mul(b, a)] = true;
        }
        if row_seen.iter().any(|s| !s) {
            violations.push(Violation::new("cancellation-row", vec![g.name(a)]));
        }
        if col_seen.iter().any(|s| !s) {
            violations.push(Violation::new("cancellation-col", vec![g.name(a)]));
        }
    }

    LawReport::new("group-laws", violations, cases)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn cyclic_and_s3_pass_all_laws() {
        for g in [FinGroup::cyclic(1), FinGroup::cyclic(4), FinGroup::s3()] {
            let report = validate_group(&g);
            assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        }
        // S3 associativity is checked over all 216 triples.
        let report = validate_group(&FinGroup::s3());
        assert!(report.cases >= 216);
    }

    #[test]
    fn broken_associativity_is_witnessed() {
        // Start from Z3 and corrupt one entry.
        let mut doc = FinGroup::cyclic(3).to_doc();
        doc.table[1][1] = 1; // r1*r1 = r1 instead of r2
        let g = FinGroup::from_doc(&doc).unwrap();
        let report = validate_group(&g);
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "associativity"
            || v.law == "cancellation-row"
            || v.law == "cancellation-col"));
    }

    #[test]
    fn identityless_table_is_loadable_but_fails() {
        // Constant table: every product is element 0; no identity.
        let doc = GroupData {
            elements: vec!["a".into(), "b".into()],
            table: vec![vec![0, 0], vec![0, 0]],
        };
        let g = FinGroup::from_doc(&doc).unwrap();
        assert!(g.identity().is_err());
        let report = validate_group(&g);
        assert!(report.violations.iter().any(|v| v.law == "identity-missing"));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let ragged = GroupData { elements: vec!["e".into()], table: vec![] };
        assert!(matches!(FinGroup::from_doc(&ragged), Err(SymError::MalformedDocument(_))));
        let out_of_range = GroupData { elements: vec!["e".into()], table: vec![vec![3]] };
        assert!(matches!(FinGroup::from_doc(&out_of_range), Err(SymError::MalformedDocument(_))));
    }
}
