//! Truncated simplicial objects as finite sets with explicit face and
//! degeneracy tables, their identity laws, nerves of finite categories, and
//! level-wise invariance of map families.
//!
//! Degeneracy tables are indexed by their target level: `s_i^k` maps level
//! k-1 into level k for 0 <= i <= k-1. (The frequent alternative indexes by
//! source, `s_i: X_m -> X_{m+1}` with 0 <= i <= m; the two differ by the
//! substitution m = k-1 and nothing else.)

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCategory, FinFunctor};
use crate::report::{LawReport, Violation};

#[derive(Debug, Error)]
pub enum SobjError {
    /// Ragged tables, out-of-range entries, duplicate element names, or a
    /// level/table count mismatch.
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("expected {expected} scores, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicialObjectData {
    /// Element names per level, levels 0..=n.
    pub levels: Vec<Vec<String>>,
    /// faces[k-1][i] is the table of d_i^k: level k -> level k-1, 0 <= i <= k.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// degeneracies[k-1][i] is the table of s_i^k: level k-1 -> level k,
    /// 0 <= i <= k-1.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone)]
pub struct SimplicialObject {
    pub levels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialObject {
    pub fn from_doc(doc: &SimplicialObjectData) -> Result<Self, SobjError> {
        if doc.levels.is_empty() {
            return Err(SobjError::MalformedDocument("no levels".into()));
        }
        let n = doc.levels.len() - 1;
        for (k, level) in doc.levels.iter().enumerate() {
            let mut seen = std::collections::BTreeSet::new();
            for name in level {
                if !seen.insert(name) {
                    return Err(SobjError::MalformedDocument(format!(
                        "duplicate element {} in level {}",
                        name, k
                    )));
                }
            }
        }
        if doc.faces.len() != n || doc.degeneracies.len() != n {
            return Err(SobjError::MalformedDocument(format!(
                "expected {} face and degeneracy table groups, got {} and {}",
                n,
                doc.faces.len(),
                doc.degeneracies.len()
            )));
        }
        for k in 1..=n {
            let fg = &doc.faces[k - 1];
            if fg.len() != k + 1 {
                return Err(SobjError::MalformedDocument(format!(
                    "level {} needs {} face tables, got {}",
                    k,
                    k + 1,
                    fg.len()
                )));
            }
            for (i, table) in fg.iter().enumerate() {
                if table.len() != doc.levels[k].len() {
                    return Err(SobjError::MalformedDocument(format!(
                        "face table d_{}^{} has {} entries for {} elements",
                        i,
                        k,
                        table.len(),
                        doc.levels[k].len()
                    )));
                }
                if let Some(&bad) = table.iter().find(|&&e| e >= doc.levels[k - 1].len()) {
                    return Err(SobjError::MalformedDocument(format!(
                        "face table d_{}^{} hits missing element {}",
                        i, k, bad
                    )));
                }
            }
            let sg = &doc.degeneracies[k - 1];
            if sg.len() != k {
                return Err(SobjError::MalformedDocument(format!(
                    "level {} needs {} degeneracy tables, got {}",
                    k,
                    k,
                    sg.len()
                )));
            }
            for (i, table) in sg.iter().enumerate() {
                if table.len() != doc.levels[k - 1].len() {
                    return Err(SobjError::MalformedDocument(format!(
                        "degeneracy table s_{}^{} has {} entries for {} elements",
                        i,
                        k,
                        table.len(),
                        doc.levels[k - 1].len()
                    )));
                }
                if let Some(&bad) = table.iter().find(|&&e| e >= doc.levels[k].len()) {
                    return Err(SobjError::MalformedDocument(format!(
                        "degeneracy table s_{}^{} hits missing element {}",
                        i, k, bad
                    )));
                }
            }
        }
        Ok(SimplicialObject {
            levels: doc.levels.clone(),
            faces: doc.faces.clone(),
            degeneracies: doc.degeneracies.clone(),
        })
    }

    pub fn to_doc(&self) -> SimplicialObjectData {
        SimplicialObjectData {
            levels: self.levels.clone(),
            faces: self.faces.clone(),
            degeneracies: self.degeneracies.clone(),
        }
    }

    /// Truncation height n (levels run 0..=n).
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.levels[k].len()
    }

    /// d_i^k: level k -> level k-1.
    pub fn face(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k - 1][i]
    }

    /// s_i^k: level k-1 -> level k.
    pub fn degeneracy(&self, k: usize, i: usize) -> &[usize] {
        &self.degeneracies[k - 1][i]
    }

    /// All-singleton object of height n; every table is forced.
    pub fn constant(n: usize) -> Self {
        SimplicialObject {
            levels: (0..=n).map(|_| vec!["x".to_string()]).collect(),
            faces: (1..=n).map(|k| vec![vec![0]; k + 1]).collect(),
            degeneracies: (1..=n).map(|k| vec![vec![0]; k]).collect(),
        }
    }
}

fn instance_witness(k: usize, i: usize, j: usize, element: &str) -> Vec<String> {
    vec![format!("k={}", k), format!("i={}", i), format!("j={}", j), element.to_string()]
}

/// Checks every instance of the simplicial identities:
/// d_i d_j = d_{j-1} d_i (i < j), s_i s_j = s_{j+1} s_i (i <= j), and the
/// mixed face-degeneracy case split (compose, cancel, or commute past).
pub fn validate_simplicial(m: &SimplicialObject) -> LawReport {
    let n = m.height();
    let mut violations = Vec::new();
    let mut cases = 0u64;

    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                for x in 0..m.level_size(k) {
                    cases += 1;
                    let lhs = m.face(k - 1, i)[m.face(k, j)[x]];
                    let rhs = m.face(k - 1, j - 1)[m.face(k, i)[x]];
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "face-face",
                            instance_witness(k, i, j, &m.levels[k][x]),
                        ));
                    }
                }
            }
        }
    }

    // s_i^{k+1} s_j^k = s_{j+1}^{k+1} s_i^k for i <= j, on level k-1.
    for k in 1..n {
        for j in 0..k {
            for i in 0..=j {
                for x in 0..m.level_size(k - 1) {
                    cases += 1;
                    let lhs = m.degeneracy(k + 1, i)[m.degeneracy(k, j)[x]];
                    let rhs = m.degeneracy(k + 1, j + 1)[m.degeneracy(k, i)[x]];
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "degeneracy-degeneracy",
                            instance_witness(k, i, j, &m.levels[k - 1][x]),
                        ));
                    }
                }
            }
        }
    }

    // d_i^k s_j^k on level k-1: s_{j-1}^{k-1} d_i^{k-1} when i < j, the
    // identity when i is j or j+1, s_j^{k-1} d_{i-1}^{k-1} when i > j+1.
    for k in 1..=n {
        for j in 0..k {
            for i in 0..=k {
                for x in 0..m.level_size(k - 1) {
                    cases += 1;
                    let lhs = m.face(k, i)[m.degeneracy(k, j)[x]];
                    let rhs = if i < j {
                        m.degeneracy(k - 1, j - 1)[m.face(k - 1, i)[x]]
                    } else if i == j || i == j + 1 {
                        x
                    } else {
                        m.degeneracy(k - 1, j)[m.face(k - 1, i - 1)[x]]
                    };
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "face-degeneracy",
                            instance_witness(k, i, j, &m.levels[k - 1][x]),
                        ));
                    }
                }
            }
        }
    }

    let mut report = LawReport::new("simplicial-identities", violations, cases);
    report.truncate_violations(32);
    report
}

/// A nerve keeps the simplicial object together with the raw chains behind
/// each element: chains[0][e] is a one-entry object index, chains[k][e] for
/// k >= 1 lists the k composable morphism indices in application order.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub object: SimplicialObject,
    pub chains: Vec<Vec<Vec<usize>>>,
}

/// The n-truncated nerve: level k is the set of composable k-chains, faces
/// drop an outer morphism or compose an adjacent pair, degeneracies insert
/// identities. Labels join morphism names with '|' in application order.
pub fn nerve(cat: &FinCategory, n: usize) -> Result<Nerve, SobjError> {
    let ids: Vec<usize> = cat
        .identities
        .iter()
        .enumerate()
        .map(|(x, id)| {
            id.ok_or_else(|| {
                SobjError::MalformedDocument(format!(
                    "object {} has no identity; the nerve needs one",
                    cat.obj_name(x)
                ))
            })
        })
        .collect::<Result<_, _>>()?;

    let mut chains: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    chains.push((0..cat.n_objects()).map(|x| vec![x]).collect());
    if n >= 1 {
        chains.push((0..cat.n_morphisms()).map(|f| vec![f]).collect());
    }
    for k in 2..=n {
        let mut level = Vec::new();
        for prefix in &chains[k - 1] {
            let last_tgt = cat.morphisms[*prefix.last().unwrap()].tgt;
            for f in 0..cat.n_morphisms() {
                if cat.morphisms[f].src == last_tgt {
                    let mut chain = prefix.clone();
                    chain.push(f);
                    level.push(chain);
                }
            }
        }
        chains.push(level);
    }

    let label = |k: usize, chain: &[usize]| -> String {
        if k == 0 {
            cat.obj_name(chain[0]).to_string()
        } else {
            chain
                .iter()
                .map(|&f| cat.mor_name(f).to_string())
                .collect::<Vec<_>>()
                .join("|")
        }
    };
    let levels: Vec<Vec<String>> = chains
        .iter()
        .enumerate()
        .map(|(k, level)| level.iter().map(|c| label(k, c)).collect())
        .collect();

    let mut position: Vec<BTreeMap<&[usize], usize>> = Vec::with_capacity(n + 1);
    for level in &chains {
        position.push(level.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect());
    }
    let lookup = |k: usize, chain: &[usize]| -> Result<usize, SobjError> {
        position[k].get(chain).copied().ok_or_else(|| {
            SobjError::MalformedDocument("nerve produced a chain it did not enumerate".into())
        })
    };

    let mut faces = Vec::with_capacity(n);
    let mut degeneracies = Vec::with_capacity(n);
    for k in 1..=n {
        let mut face_tables = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut table = Vec::with_capacity(chains[k].len());
            for chain in &chains[k] {
                let image: Vec<usize> = if k == 1 {
                    let m = &cat.morphisms[chain[0]];
                    // d_0 drops the source vertex, leaving the target.
                    vec![if i == 0 { m.tgt } else { m.src }]
                } else if i == 0 {
                    chain[1..].to_vec()
                } else if i == k {
                    chain[..k - 1].to_vec()
                } else {
                    let composed =
                        cat.compose(chain[i], chain[i - 1]).ok_or_else(|| {
                            SobjError::MalformedDocument(format!(
                                "composition {} after {} is missing",
                                cat.mor_name(chain[i]),
                                cat.mor_name(chain[i - 1])
                            ))
                        })?;
                    let mut c = chain[..i - 1].to_vec();
                    c.push(composed);
                    c.extend_from_slice(&chain[i + 1..]);
                    c
                };
                table.push(lookup(k - 1, &image)?);
            }
            face_tables.push(table);
        }
        faces.push(face_tables);

        let mut deg_tables = Vec::with_capacity(k);
        for i in 0..k {
            let mut table = Vec::with_capacity(chains[k - 1].len());
            for chain in &chains[k - 1] {
                let image: Vec<usize> = if k == 1 {
                    vec![ids[chain[0]]]
                } else {
                    // Insert the identity of the object at position i of the
                    // chain's vertex path.
                    let obj = if i == 0 {
                        cat.morphisms[chain[0]].src
                    } else {
                        cat.morphisms[chain[i - 1]].tgt
                    };
                    let mut c = chain[..i].to_vec();
                    c.push(ids[obj]);
                    c.extend_from_slice(&chain[i..]);
                    c
                };
                table.push(lookup(k, &image)?);
            }
            deg_tables.push(table);
        }
        degeneracies.push(deg_tables);
    }

    Ok(Nerve {
        object: SimplicialObject { levels, faces, degeneracies },
        chains,
    })
}

/// The level maps a functorial endomorphism induces on a nerve: objects and
/// morphisms map through the functor, chains map entrywise.
pub fn nerve_family_from_functor(
    nrv: &Nerve,
    cat: &FinCategory,
    f: &FinFunctor,
) -> Result<Vec<Vec<usize>>, SobjError> {
    let mut position: Vec<BTreeMap<&[usize], usize>> = Vec::new();
    for level in &nrv.chains {
        position.push(level.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect());
    }
    let mut family = Vec::with_capacity(nrv.chains.len());
    for (k, level) in nrv.chains.iter().enumerate() {
        let mut table = Vec::with_capacity(level.len());
        for chain in level {
            let image: Vec<usize> = if k == 0 {
                vec![f.obj_map[chain[0]]]
            } else {
                chain.iter().map(|&m| f.mor_map[m]).collect()
            };
            let idx = position[k].get(image.as_slice()).copied().ok_or_else(|| {
                SobjError::MalformedDocument(format!(
                    "functor image of a level-{} chain ({}) is not a chain of the nerve",
                    k,
                    image.iter().map(|m| cat.mor_name(*m)).collect::<Vec<_>>().join("|"),
                ))
            })?;
            table.push(idx);
        }
        family.push(table);
    }
    Ok(family)
}

/// A per-level map family commutes with the structure when
/// F_{k-1} d_i^k = d_i^k F_k and F_k s_i^k = s_i^k F_{k-1} for every i, k.
pub fn check_simplicial_invariance(
    family: &[Vec<usize>],
    m: &SimplicialObject,
) -> Result<LawReport, SobjError> {
    let n = m.height();
    if family.len() != n + 1 {
        return Err(SobjError::MalformedDocument(format!(
            "family has {} levels, object has {}",
            family.len(),
            n + 1
        )));
    }
    for (k, table) in family.iter().enumerate() {
        if table.len() != m.level_size(k) {
            return Err(SobjError::MalformedDocument(format!(
                "family level {} has {} entries for {} elements",
                k,
                table.len(),
                m.level_size(k)
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= m.level_size(k)) {
            return Err(SobjError::MalformedDocument(format!(
                "family level {} hits missing element {}",
                k, bad
            )));
        }
    }

    let mut violations = Vec::new();
    let mut cases = 0u64;
    for k in 1..=n {
        for i in 0..=k {
            for x in 0..m.level_size(k) {
                cases += 1;
                let lhs = family[k - 1][m.face(k, i)[x]];
                let rhs = m.face(k, i)[family[k][x]];
                if lhs != rhs {
                    violations.push(Violation::new(
                        "face-commutation",
                        instance_witness(k, i, i, &m.levels[k][x]),
                    ));
                }
            }
        }
        for i in 0..k {
            for x in 0..m.level_size(k - 1) {
                cases += 1;
                let lhs = family[k][m.degeneracy(k, i)[x]];
                let rhs = m.degeneracy(k, i)[family[k - 1][x]];
                if lhs != rhs {
                    violations.push(Violation::new(
                        "degeneracy-commutation",
                        instance_witness(k, i, i, &m.levels[k - 1][x]),
                    ));
                }
            }
        }
    }
    let mut report = LawReport::new("simplicial-invariance", violations, cases);
    report.truncate_violations(32);
    Ok(report)
}

/// Least level whose score is at or below the threshold (inclusive, so an
/// exact hit selects that level); None when every score is above.
pub fn adapt_level(
    m: &SimplicialObject,
    scores: &[f64],
    threshold: f64,
) -> Result<Option<usize>, SobjError> {
    if scores.len() != m.levels.len() {
        return Err(SobjError::LengthMismatch {
            expected: m.levels.len(),
            got: scores.len(),
        });
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(SobjError::MalformedDocument("non-finite score".into()));
    }
    Ok(scores.iter().position(|&s| s <= threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn constant_objects_satisfy_every_identity() {
        for n in 0..=4 {
            let m = SimplicialObject::constant(n);
            let report = validate_simplicial(&m);
            assert_eq!(report.status, Status::Pass, "height {}", n);
        }
    }

    #[test]
    fn arrow_nerve_is_simplicial_with_expected_sizes() {
        let cat = FinCategory::arrow();
        let nrv = nerve(&cat, 2).unwrap();
        assert_eq!(nrv.object.level_size(0), 2);
        assert_eq!(nrv.object.level_size(1), 3);
        assert_eq!(nrv.object.level_size(2), 4);
        let report = validate_simplicial(&nrv.object);
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        // Spot-check a label: the chain composing u after the identity.
        assert!(nrv.object.levels[2].iter().any(|l| l.contains('|')));
    }

    #[test]
    fn deloopings_and_random_heights_stay_simplicial() {
        let z3 = crate::symgrp::FinGroup::cyclic(3);
        let cat = FinCategory::delooping(&z3);
        for n in 1..=3 {
            let nrv = nerve(&cat, n).unwrap();
            assert_eq!(
                validate_simplicial(&nrv.object).status,
                Status::Pass,
                "height {}",
                n
            );
        }
        // Level sizes of a group delooping nerve are |G|^k.
        let nrv = nerve(&cat, 3).unwrap();
        assert_eq!(nrv.object.level_size(0), 1);
        assert_eq!(nrv.object.level_size(2), 9);
        assert_eq!(nrv.object.level_size(3), 27);
    }

    #[test]
    fn face_table_mutation_is_named_precisely() {
        let cat = FinCategory::arrow();
        let nrv = nerve(&cat, 2).unwrap();
        let mut doc = nrv.object.to_doc();
        let original = doc.faces[1][1][0];
        doc.faces[1][1][0] = (original + 1) % doc.levels[1].len();
        let mutated = SimplicialObject::from_doc(&doc).unwrap();
        let report = validate_simplicial(&mutated);
        assert_eq!(report.status, Status::Fail);
        assert!(report
            .violations
            .iter()
            .all(|v| ["face-face", "degeneracy-degeneracy", "face-degeneracy"]
                .contains(&v.law.as_str())));
    }

    #[test]
    fn identity_family_always_commutes() {
        let cat = FinCategory::parallel_pair();
        let nrv = nerve(&cat, 2).unwrap();
        let family: Vec<Vec<usize>> =
            (0..=2).map(|k| (0..nrv.object.level_size(k)).collect()).collect();
        let report = check_simplicial_invariance(&family, &nrv.object).unwrap();
        assert_eq!(report.status, Status::Pass);
    }

    #[test]
    fn swap_automorphism_of_the_parallel_pair_commutes() {
        let cat = FinCategory::parallel_pair();
        let nrv = nerve(&cat, 2).unwrap();
        let u = cat.mor_index("u").unwrap();
        let v = cat.mor_index("v").unwrap();
        let mut mor_map: Vec<usize> = (0..cat.n_morphisms()).collect();
        mor_map.swap(u, v);
        let swap = FinFunctor { obj_map: (0..cat.n_objects()).collect(), mor_map };
        let family = nerve_family_from_functor(&nrv, &cat, &swap).unwrap();
        let report = check_simplicial_invariance(&family, &nrv.object).unwrap();
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        // The family genuinely moves level 1 and level 2 elements.
        assert!(family[1].iter().enumerate().any(|(i, &j)| i != j));
        assert!(family[2].iter().enumerate().any(|(i, &j)| i != j));
    }

    #[test]
    fn single_level_permutation_breaks_face_commutation() {
        let cat = FinCategory::arrow();
        let nrv = nerve(&cat, 2).unwrap();
        let mut family: Vec<Vec<usize>> =
            (0..=2).map(|k| (0..nrv.object.level_size(k)).collect()).collect();
        family[1].swap(0, 1);
        let report = check_simplicial_invariance(&family, &nrv.object).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "face-commutation"));
    }

    #[test]
    fn level_selection_is_least_and_inclusive() {
        let m = SimplicialObject::constant(2);
        assert_eq!(adapt_level(&m, &[0.5, 0.2, 0.05], 0.1).unwrap(), Some(2));
        assert_eq!(adapt_level(&m, &[0.5, 0.2, 0.15], 0.1).unwrap(), None);
        assert_eq!(adapt_level(&m, &[0.5, 0.1, 0.05], 0.1).unwrap(), Some(1));
        assert!(matches!(
            adapt_level(&m, &[0.5], 0.1),
            Err(SobjError::LengthMismatch { expected: 3, got: 1 })
        ));
        assert!(adapt_level(&m, &[0.5, f64::NAN, 0.0], 0.1).is_err());
    }

    #[test]
    fn shape_defects_are_rejected_at_load() {
        let mut doc = SimplicialObject::constant(1).to_doc();
        doc.faces[0][0][0] = 5;
        assert!(SimplicialObject::from_doc(&doc).is_err());
        let mut doc = SimplicialObject::constant(1).to_doc();
        doc.faces[0].pop();
        assert!(SimplicialObject::from_doc(&doc).is_err());
        let mut doc = SimplicialObject::constant(1).to_doc();
        doc.levels[0] = vec!["x".into(), "x".into()];
        assert!(SimplicialObject::from_doc(&doc).is_err());
    }
}
