//! Group actions on a category by endofunctors, and the subcategory of
//! strictly fixed data.

use serde::{Deserialize, Serialize};

use super::category::{CategoryData, FinCategory};
use super::functor::{check_functor, FinFunctor};
use super::FincatError;
use crate::report::{LawReport, Violation};
use crate::symgrp::{FinGroup, GroupData};

/// Serialized action: for each group element (in element order) the images
/// of all objects and all morphisms, by name, in declaration order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatActionData {
    pub group: GroupData,
    pub category: CategoryData,
    pub objects: Vec<Vec<String>>,
    pub morphisms: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct CatAction {
    pub group: FinGroup,
    pub cat: FinCategory,
    /// One endofunctor per group element, in element order.
    pub functors: Vec<FinFunctor>,
}

impl CatAction {
    pub fn from_doc(doc: &CatActionData) -> Result<Self, FincatError> {
        let group = FinGroup::from_doc(&doc.group)
            .map_err(|e| FincatError::MalformedDocument(e.to_string()))?;
        let cat = FinCategory::from_doc(&doc.category)?;
        if doc.objects.len() != group.order() || doc.morphisms.len() != group.order() {
            return Err(FincatError::MalformedDocument(format!(
                "action lists {} object rows and {} morphism rows for a group of order {}",
                doc.objects.len(),
                doc.morphisms.len(),
                group.order()
            )));
        }
        let mut functors = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            if doc.objects[g].len() != cat.n_objects() {
                return Err(FincatError::MalformedDocument(format!(
                    "element {} maps {} objects, category has {}",
                    group.name(g),
                    doc.objects[g].len(),
                    cat.n_objects()
                )));
            }
            if doc.morphisms[g].len() != cat.n_morphisms() {
                return Err(FincatError::MalformedDocument(format!(
                    "element {} maps {} morphisms, category has {}",
                    group.name(g),
                    doc.morphisms[g].len(),
                    cat.n_morphisms()
                )));
            }
            let obj_map = doc.objects[g]
                .iter()
                .map(|name| {
                    cat.obj_index(name).ok_or_else(|| {
                        FincatError::MalformedDocument(format!("unknown object {:?}", name))
                    })
                })
                .collect::<Result<Vec<usize>, _>>()?;
            let mor_map = doc.morphisms[g]
                .iter()
                .map(|name| {
                    cat.mor_index(name).ok_or_else(|| {
                        FincatError::MalformedDocument(format!("unknown morphism {:?}", name))
                    })
                })
                .collect::<Result<Vec<usize>, _>>()?;
            functors.push(FinFunctor { obj_map, mor_map });
        }
        Ok(CatAction { group, cat, functors })
    }

    /// Checks that every element acts by a functor, that the identity acts
    /// trivially, and that acting by g after h matches acting by g*h.
    pub fn validate(&self) -> LawReport {
        let mut violations = Vec::new();
        let mut cases = 0u64;

        for g in 0..self.group.order() {
            let sub = check_functor(&self.cat, &self.cat, &self.functors[g]);
            cases += sub.cases;
            for v in sub.violations {
                let mut witness = vec![self.group.name(g).to_string()];
                witness.extend(v.witness);
                violations.push(Violation::new(&v.law, witness));
            }
        }

        if let Ok(e) = self.group.identity() {
            cases += 1;
            if !self.functors[e].is_identity() {
                violations.push(Violation::new("action-identity", vec![self.group.name(e)]));
            }
        } else {
            violations.push(Violation::new("action-identity", vec!["<no group identity>"]));
        }

        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                cases += 1;
                let composite = self.functors[g].compose(&self.functors[h]);
                if composite != self.functors[self.group.mul(g, h)] {
                    violations.push(Violation::new(
                        "action-compatibility",
                        vec![self.group.name(g), self.group.name(h)],
                    ));
                }
            }
        }

        LawReport::new("cat-action-laws", violations, cases)
    }
}

/// The strictly fixed part of an action, plus the weaker iso-fixed object
/// list and a report that names everything the action moves.
#[derive(Debug, Clone)]
pub struct FixedSubcategory {
    /// Category formed by the strictly fixed objects and morphisms.
    pub category: FinCategory,
    /// Indices (into the original category) of strictly fixed objects.
    pub fixed_objects: Vec<usize>,
    /// Indices of strictly fixed morphisms whose endpoints are also fixed.
    pub fixed_morphisms: Vec<usize>,
    /// Objects isomorphic to all their images, a strictly larger notion.
    pub iso_fixed_objects: Vec<usize>,
    /// One `strict-fixity` violation per moved object or morphism (with the
    /// first group element moving it), plus `fixity-closure` violations when
    /// the fixed data fails to close under composition or identities, which
    /// can only happen when the action laws already fail.
    pub report: LawReport,
}

pub fn fixed_subcategory(action: &CatAction) -> FixedSubcategory {
    let cat = &action.cat;
    let mut violations = Vec::new();
    let mut cases = 0u64;

    let moved_by_obj = |x: usize| {
        (0..action.group.order()).find(|&g| action.functors[g].obj_map[x] != x)
    };
    let moved_by_mor = |m: usize| {
        (0..action.group.order()).find(|&g| action.functors[g].mor_map[m] != m)
    };

    let mut fixed_objects = Vec::new();
    for x in 0..cat.n_objects() {
        cases += 1;
        match moved_by_obj(x) {
            None => fixed_objects.push(x),
            Some(g) => violations.push(Violation::new(
                "strict-fixity",
                vec!["object".to_string(), cat.obj_name(x).to_string(), action.group.name(g).to_string()],
            )),
        }
    }

    let mut fixed_morphisms = Vec::new();
    for m in 0..cat.n_morphisms() {
        cases += 1;
        match moved_by_mor(m) {
            None => {
                let mm = &cat.morphisms[m];
                if fixed_objects.contains(&mm.src) && fixed_objects.contains(&mm.tgt) {
                    fixed_morphisms.push(m);
                }
            }
            Some(g) => violations.push(Violation::new(
                "strict-fixity",
                vec!["morphism".to_string(), cat.mor_name(m).to_string(), action.group.name(g).to_string()],
            )),
        }
    }

    // Closure of the fixed data. With a lawful action this cannot fail:
    // g(h . f) = g(h) . g(f) keeps composites of fixed morphisms fixed.
    for &g in &fixed_morphisms {
        for &f in &fixed_morphisms {
            if !cat.composable(g, f) {
                continue;
            }
            cases += 1;
            match cat.compose(g, f) {
                Some(h) if fixed_morphisms.contains(&h) => {}
                Some(h) => violations.push(Violation::new(
                    "fixity-closure",
                    vec![cat.mor_name(g), cat.mor_name(f), cat.mor_name(h)],
                )),
                None => {} // reported by the base category validator
            }
        }
    }
    for &x in &fixed_objects {
        cases += 1;
        if let Some(ix) = cat.identities[x] {
            if !fixed_morphisms.contains(&ix) {
                violations.push(Violation::new(
                    "fixity-closure",
                    vec!["identity".to_string(), cat.obj_name(x).to_string()],
                ));
            }
        }
    }

    // Iso-fixity: every image is isomorphic to the object itself.
    let mut iso_fixed_objects = Vec::new();
    for x in 0..cat.n_objects() {
        cases += 1;
        let all_iso = (0..action.group.order()).all(|g| {
            let gx = action.functors[g].obj_map[x];
            gx == x || cat.find_isomorphism(gx, x).is_some()
        });
        if all_iso {
            iso_fixed_objects.push(x);
        }
    }

    // Assemble the fixed category with original names.
    let obj_of = |x: usize| fixed_objects.iter().position(|&o| o == x);
    let objects: Vec<String> =
        fixed_objects.iter().map(|&x| cat.obj_name(x).to_string()).collect();
    let morphisms: Vec<super::category::Morphism> = fixed_morphisms
        .iter()
        .map(|&m| super::category::Morphism {
            id: cat.mor_name(m).to_string(),
            src: obj_of(cat.morphisms[m].src).expect("endpoints of kept morphisms are fixed"),
            tgt: obj_of(cat.morphisms[m].tgt).expect("endpoints of kept morphisms are fixed"),
        })
        .collect();
    let identities: Vec<Option<usize>> = fixed_objects
        .iter()
        .map(|&x| {
            cat.identities[x].and_then(|ix| fixed_morphisms.iter().position(|&m| m == ix))
        })
        .collect();
    let mut composition = std::collections::BTreeMap::new();
    for (gi, &g) in fixed_morphisms.iter().enumerate() {
        for (fi, &f) in fixed_morphisms.iter().enumerate() {
            if let Some(h) = cat.compose(g, f) {
                if let Some(hi) = fixed_morphisms.iter().position(|&m| m == h) {
                    composition.insert((gi, fi), hi);
                }
            }
        }
    }
    let category = FinCategory { objects, morphisms, identities, composition };

    let report = LawReport::new("fixed-subcategory", violations, cases);
    FixedSubcategory { category, fixed_objects, fixed_morphisms, iso_fixed_objects, report }
}
