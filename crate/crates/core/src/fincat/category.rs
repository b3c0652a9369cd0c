//! The composition-table category type, its laws, and witness replay.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FincatError;
use crate::report::{LawReport, Violation};

/// Serialized morphism: a unique id with named endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Serialized category. Composition entries are `[after, first, result]`
/// triples meaning result = after . first (apply `first`, then `after`).
/// `identities` maps an object name to the id of its identity morphism;
/// objects may be missing from it, which the validator reports rather than
/// the loader.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// identities[x] = index of the morphism declared as the identity of
    /// object x, if any was declared.
    pub identities: Vec<Option<usize>>,
    /// composition[(g, f)] = g . f, keyed with the later morphism first.
    pub composition: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    pub fn from_doc(doc: &CategoryData) -> Result<Self, FincatError> {
        let mut obj_index = BTreeMap::new();
        for (i, name) in doc.objects.iter().enumerate() {
            if obj_index.insert(name.clone(), i).is_some() {
                return Err(FincatError::MalformedDocument(format!(
                    "duplicate object name {:?}",
                    name
                )));
            }
        }
        let mut mor_index = BTreeMap::new();
        let mut morphisms = Vec::with_capacity(doc.morphisms.len());
        for (i, m) in doc.morphisms.iter().enumerate() {
            if mor_index.insert(m.id.clone(), i).is_some() {
                return Err(FincatError::MalformedDocument(format!(
                    "duplicate morphism id {:?}",
                    m.id
                )));
            }
            let src = *obj_index.get(&m.src).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "morphism {:?} has unknown source {:?}",
                    m.id, m.src
                ))
            })?;
            let tgt = *obj_index.get(&m.tgt).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "morphism {:?} has unknown target {:?}",
                    m.id, m.tgt
                ))
            })?;
            morphisms.push(Morphism { id: m.id.clone(), src, tgt });
        }

        let mut identities = vec![None; doc.objects.len()];
        for (obj, mor) in &doc.identities {
            let x = *obj_index.get(obj).ok_or_else(|| {
                FincatError::MalformedDocument(format!("identity entry for unknown object {:?}", obj))
            })?;
            let m = *mor_index.get(mor).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "identity of {:?} names unknown morphism {:?}",
                    obj, mor
                ))
            })?;
            identities[x] = Some(m);
        }

        let mut composition = BTreeMap::new();
        for [after, first, result] in &doc.composition {
            let g = *mor_index.get(after).ok_or_else(|| {
                FincatError::MalformedDocument(format!("composition names unknown morphism {:?}", after))
            })?;
            let f = *mor_index.get(first).ok_or_else(|| {
                FincatError::MalformedDocument(format!("composition names unknown morphism {:?}", first))
            })?;
            let h = *mor_index.get(result).ok_or_else(|| {
                FincatError::MalformedDocument(format!("composition names unknown morphism {:?}", result))
            })?;
            if morphisms[f].tgt != morphisms[g].src {
                return Err(FincatError::MalformedDocument(format!(
                    "composition entry ({:?}, {:?}) is not a composable pair",
                    after, first
                )));
            }
            if let Some(&prev) = composition.get(&(g, f)) {
                if prev != h {
                    return Err(FincatError::MalformedDocument(format!(
                        "conflicting composition entries for ({:?}, {:?})",
                        after, first
                    )));
                }
            }
            composition.insert((g, f), h);
        }

        Ok(FinCategory { objects: doc.objects.clone(), morphisms, identities, composition })
    }

    pub fn to_doc(&self) -> CategoryData {
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismData {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .filter_map(|(x, id)| {
                    id.map(|m| (self.objects[x].clone(), self.morphisms[m].id.clone()))
                })
                .collect(),
            composition: self
                .composition
                .iter()
                .map(|(&(g, f), &h)| {
                    [
                        self.morphisms[g].id.clone(),
                        self.morphisms[f].id.clone(),
                        self.morphisms[h].id.clone(),
                    ]
                })
                .collect(),
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// g . f when the table has it; the validator reports missing entries.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn composable(&self, g: usize, f: usize) -> bool {
        self.morphisms[f].tgt == self.morphisms[g].src
    }

    pub fn mor_name(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn obj_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn obj_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn mor_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    /// Indices of morphisms from x to y, in declaration order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].src == x && self.morphisms[f].tgt == y)
            .collect()
    }

    pub fn is_identity_of(&self, f: usize, x: usize) -> bool {
        self.identities[x] == Some(f)
    }

    /// True when (f, g) compose to the declared identities both ways.
    pub fn is_iso_pair(&self, f: usize, g: usize) -> bool {
        let (x, y) = (self.morphisms[f].src, self.morphisms[f].tgt);
        if self.morphisms[g].src != y || self.morphisms[g].tgt != x {
            return false;
        }
        let gf = self.compose(g, f);
        let fg = self.compose(f, g);
        match (self.identities[x], self.identities[y]) {
            (Some(ix), Some(iy)) => gf == Some(ix) && fg == Some(iy),
            _ => false,
        }
    }

    /// First isomorphism pair (f: x -> y, g: y -> x) in index order.
    pub fn find_isomorphism(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        for f in self.hom(x, y) {
            for g in self.hom(y, x) {
                if self.is_iso_pair(f, g) {
                    return Some((f, g));
                }
            }
        }
        None
    }

    /// One object per group element is overkill; a delooping has a single
    /// object whose endomorphisms are the group elements.
    pub fn delooping(group: &crate::symgrp::FinGroup) -> Self {
        let objects = vec!["o".to_string()];
        let morphisms: Vec<Morphism> = group
            .elements
            .iter()
            .map(|name| Morphism { id: name.clone(), src: 0, tgt: 0 })
            .collect();
        let identities = vec![group.identity().ok()];
        let mut composition = BTreeMap::new();
        for g in 0..group.order() {
            for f in 0..group.order() {
                // Left action convention: (g . f) applies f first, so the
                // table entry is g*f.
                composition.insert((g, f), group.mul(g, f));
            }
        }
        FinCategory { objects, morphisms, identities, composition }
    }

    /// Two objects and a single arrow between them.
    pub fn arrow() -> Self {
        let doc = CategoryData {
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![
                MorphismData { id: "ia".into(), src: "a".into(), tgt: "a".into() },
                MorphismData { id: "f".into(), src: "a".into(), tgt: "b".into() },
                MorphismData { id: "ib".into(), src: "b".into(), tgt: "b".into() },
            ],
            identities: [("a".to_string(), "ia".to_string()), ("b".to_string(), "ib".to_string())]
                .into_iter()
                .collect(),
            composition: vec![
                ["ia".into(), "ia".into(), "ia".into()],
                ["f".into(), "ia".into(), "f".into()],
                ["ib".into(), "f".into(), "f".into()],
                ["ib".into(), "ib".into(), "ib".into()],
            ],
        };
        FinCategory::from_doc(&doc).expect("arrow category is well formed")
    }

    /// n objects, identities only.
    pub fn discrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
        let morphisms: Vec<Morphism> = (0..n)
            .map(|i| Morphism { id: format!("id_x{}", i), src: i, tgt: i })
            .collect();
        let identities = (0..n).map(Some).collect();
        let composition = (0..n).map(|i| ((i, i), i)).collect();
        FinCategory { objects, morphisms, identities, composition }
    }

    /// Two objects with two parallel arrows from the first to the second.
    /// Its one nontrivial automorphism swaps the parallel arrows.
    pub fn parallel_pair() -> Self {
        let doc = CategoryData {
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![
                MorphismData { id: "ia".into(), src: "a".into(), tgt: "a".into() },
                MorphismData { id: "u".into(), src: "a".into(), tgt: "b".into() },
                MorphismData { id: "v".into(), src: "a".into(), tgt: "b".into() },
                MorphismData { id: "ib".into(), src: "b".into(), tgt: "b".into() },
            ],
            identities: [("a".to_string(), "ia".to_string()), ("b".to_string(), "ib".to_string())]
                .into_iter()
                .collect(),
            composition: vec![
                ["ia".into(), "ia".into(), "ia".into()],
                ["u".into(), "ia".into(), "u".into()],
                ["v".into(), "ia".into(), "v".into()],
                ["ib".into(), "u".into(), "u".into()],
                ["ib".into(), "v".into(), "v".into()],
                ["ib".into(), "ib".into(), "ib".into()],
            ],
        };
        FinCategory::from_doc(&doc).expect("parallel pair is well formed")
    }
}

/// Checks every category law by enumeration. Each violation carries the
/// morphism and object names needed to replay it with [`replay_violation`].
pub fn validate_category(cat: &FinCategory) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;

    for x in 0..cat.n_objects() {
        cases += 1;
        match cat.identities[x] {
            None => violations.push(Violation::new("identity-missing", vec![cat.obj_name(x)])),
            Some(i) => {
                let m = &cat.morphisms[i];
                if m.src != x || m.tgt != x {
                    violations.push(Violation::new(
                        "identity-endpoints",
                        vec![cat.obj_name(x), cat.mor_name(i)],
                    ));
                }
            }
        }
    }

    let n = cat.n_morphisms();
    for g in 0..n {
        for f in 0..n {
            if !cat.composable(g, f) {
                continue;
            }
            cases += 1;
            match cat.compose(g, f) {
                None => violations.push(Violation::new(
                    "composition-totality",
                    vec![cat.mor_name(g), cat.mor_name(f)],
                )),
                Some(h) => {
                    let hm = &cat.morphisms[h];
                    if hm.src != cat.morphisms[f].src || hm.tgt != cat.morphisms[g].tgt {
                        violations.push(Violation::new(
                            "composition-endpoints",
                            vec![cat.mor_name(g), cat.mor_name(f), cat.mor_name(h)],
                        ));
                    }
                }
            }
        }
    }

    for f in 0..n {
        let (x, y) = (cat.morphisms[f].src, cat.morphisms[f].tgt);
        if let Some(iy) = cat.identities[y] {
            cases += 1;
            if cat.composable(iy, f) && cat.compose(iy, f) != Some(f) {
                violations.push(Violation::new("left-identity", vec![cat.mor_name(f)]));
            }
        }
        if let Some(ix) = cat.identities[x] {
            cases += 1;
            if cat.composable(f, ix) && cat.compose(f, ix) != Some(f) {
                violations.push(Violation::new("right-identity", vec![cat.mor_name(f)]));
            }
        }
    }

    for h in 0..n {
        for g in 0..n {
            if !cat.composable(h, g) {
                continue;
            }
            for f in 0..n {
                if !cat.composable(g, f) {
                    continue;
                }
                cases += 1;
                let left = cat.compose(h, g).and_then(|hg| cat.compose(hg, f));
                let right = cat.compose(g, f).and_then(|gf| cat.compose(h, gf));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        violations.push(Violation::new(
                            "associativity",
                            vec![cat.mor_name(h), cat.mor_name(g), cat.mor_name(f)],
                        ));
                    }
                }
                // Missing entries already fall under composition-totality.
            }
        }
    }

    LawReport::new("category-laws", violations, cases)
}

/// Recomputes the law instance a violation names and returns a trace showing
/// the failure, or `None` when the witness does not reproduce (unknown names,
/// or the law actually holds there).
pub fn replay_violation(cat: &FinCategory, v: &Violation) -> Option<String> {
    let mor = |id: &str| cat.mor_index(id);
    let name = |i: usize| cat.mor_name(i).to_string();
    match (v.law.as_str(), v.witness.as_slice()) {
        ("identity-missing", [obj]) => {
            let x = cat.obj_index(obj)?;
            cat.identities[x].is_none().then(|| format!("object {} declares no identity", obj))
        }
        ("identity-endpoints", [obj, m]) => {
            let x = cat.obj_index(obj)?;
            let i = mor(m)?;
            let mm = &cat.morphisms[i];
            (cat.identities[x] == Some(i) && (mm.src != x || mm.tgt != x)).then(|| {
                format!(
                    "identity of {} is {}: {} -> {}",
                    obj,
                    m,
                    cat.obj_name(mm.src),
                    cat.obj_name(mm.tgt)
                )
            })
        }
        ("composition-totality", [g, f]) => {
            let (g, f) = (mor(g)?, mor(f)?);
            (cat.composable(g, f) && cat.compose(g, f).is_none())
                .then(|| format!("{} . {} is composable but has no table entry", name(g), name(f)))
        }
        ("composition-endpoints", [g, f, _h]) => {
            let (gi, fi) = (mor(g)?, mor(f)?);
            let h = cat.compose(gi, fi)?;
            let hm = &cat.morphisms[h];
            (hm.src != cat.morphisms[fi].src || hm.tgt != cat.morphisms[gi].tgt).then(|| {
                format!(
                    "{} . {} = {}: {} -> {}, expected {} -> {}",
                    name(gi),
                    name(fi),
                    name(h),
                    cat.obj_name(hm.src),
                    cat.obj_name(hm.tgt),
                    cat.obj_name(cat.morphisms[fi].src),
                    cat.obj_name(cat.morphisms[gi].tgt)
                )
            })
        }
        ("left-identity", [f]) => {
            let fi = mor(f)?;
            let iy = cat.identities[cat.morphisms[fi].tgt]?;
            let got = cat.compose(iy, fi)?;
            (got != fi)
                .then(|| format!("{} . {} = {}, expected {}", name(iy), name(fi), name(got), f))
        }
        ("right-identity", [f]) => {
            let fi = mor(f)?;
            let ix = cat.identities[cat.morphisms[fi].src]?;
            let got = cat.compose(fi, ix)?;
            (got != fi)
                .then(|| format!("{} . {} = {}, expected {}", name(fi), name(ix), name(got), f))
        }
        ("associativity", [h, g, f]) => {
            let (hi, gi, fi) = (mor(h)?, mor(g)?, mor(f)?);
            let left = cat.compose(hi, gi).and_then(|hg| cat.compose(hg, fi))?;
            let right = cat.compose(gi, fi).and_then(|gf| cat.compose(hi, gf))?;
            (left != right).then(|| {
                format!(
                    "({} . {}) . {} = {} but {} . ({} . {}) = {}",
                    h,
                    g,
                    f,
                    name(left),
                    h,
                    g,
                    f,
                    name(right)
                )
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::symgrp::FinGroup;

    fn bz2() -> FinCategory {
        FinCategory::delooping(&FinGroup::cyclic(2))
    }

    #[test]
    fn stock_categories_pass_all_laws() {
        for cat in [bz2(), FinCategory::arrow(), FinCategory::discrete(3), FinCategory::parallel_pair()]
        {
            let report = validate_category(&cat);
            assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        }
    }

    #[test]
    fn corrupted_identity_row_fails_identity_laws() {
        // In the Z2 delooping, set id . id = the other element.
        let mut cat = bz2();
        cat.composition.insert((0, 0), 1);
        let report = validate_category(&cat);
        assert_eq!(report.status, Status::Fail);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "left-identity" || v.law == "right-identity"));
    }

    #[test]
    fn every_emitted_violation_replays() {
        let mut cat = bz2();
        cat.composition.insert((1, 1), 1); // makes the non-identity idempotent: breaks cancellation via associativity or identity laws
        cat.composition.insert((0, 1), 0);
        let report = validate_category(&cat);
        assert_eq!(report.status, Status::Fail);
        for v in &report.violations {
            assert!(
                replay_violation(&cat, v).is_some(),
                "violation {:?} did not replay",
                v
            );
        }
    }

    #[test]
    fn dangling_names_are_malformed_not_violations() {
        let doc = CategoryData {
            objects: vec!["a".into()],
            morphisms: vec![MorphismData { id: "f".into(), src: "a".into(), tgt: "ghost".into() }],
            identities: Default::default(),
            composition: vec![],
        };
        assert!(matches!(FinCategory::from_doc(&doc), Err(FincatError::MalformedDocument(_))));
    }

    #[test]
    fn noncomposable_table_entries_are_malformed() {
        let mut doc = FinCategory::arrow().to_doc();
        doc.composition.push(["f".into(), "f".into(), "f".into()]); // f . f is not composable
        assert!(matches!(FinCategory::from_doc(&doc), Err(FincatError::MalformedDocument(_))));
    }

    #[test]
    fn missing_table_entries_are_totality_violations() {
        let mut cat = FinCategory::arrow();
        cat.composition.remove(&(1, 0)); // drop f . ia
        let report = validate_category(&cat);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "composition-totality" && v.witness == vec!["f", "ia"]));
    }

    #[test]
    fn iso_search_finds_mutually_inverse_pairs() {
        let cat = bz2();
        // In a delooped group every morphism is invertible.
        assert_eq!(cat.find_isomorphism(0, 0), Some((0, 0)));
        let arrow = FinCategory::arrow();
        assert_eq!(arrow.find_isomorphism(0, 1), None);
    }

    #[test]
    fn round_trip_through_doc_preserves_structure() {
        let cat = FinCategory::parallel_pair();
        let again = FinCategory::from_doc(&cat.to_doc()).unwrap();
        assert_eq!(cat.objects, again.objects);
        assert_eq!(cat.morphisms, again.morphisms);
        assert_eq!(cat.identities, again.identities);
        assert_eq!(cat.composition, again.composition);
    }
}
