//! Functors between composition-table categories, and isomorphism lifting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::category::{CategoryData, FinCategory};
use super::FincatError;
use crate::report::{LawReport, Violation};

/// Serialized functor: both categories inline plus total maps on object and
/// morphism names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorData {
    pub source: CategoryData,
    pub target: CategoryData,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

/// Index-level functor data relative to a fixed source and target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FinFunctor {
    pub fn identity(cat: &FinCategory) -> Self {
        FinFunctor {
            obj_map: (0..cat.n_objects()).collect(),
            mor_map: (0..cat.n_morphisms()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// self . other: apply `other` first. Both must be composable shapes;
    /// for endofunctors on one category they always are.
    pub fn compose(&self, other: &FinFunctor) -> FinFunctor {
        FinFunctor {
            obj_map: other.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: other.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    /// Resolves a name-level functor document. The maps must be total on the
    /// source; anything else is a malformed document, not a law violation.
    pub fn from_doc(doc: &FunctorData) -> Result<(FinCategory, FinCategory, FinFunctor), FincatError>
    {
        let source = FinCategory::from_doc(&doc.source)?;
        let target = FinCategory::from_doc(&doc.target)?;
        let mut obj_map = Vec::with_capacity(source.n_objects());
        for x in 0..source.n_objects() {
            let name = source.obj_name(x);
            let image = doc.object_map.get(name).ok_or_else(|| {
                FincatError::MalformedDocument(format!("object {:?} is not mapped", name))
            })?;
            obj_map.push(target.obj_index(image).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "object {:?} maps to unknown object {:?}",
                    name, image
                ))
            })?);
        }
        let mut mor_map = Vec::with_capacity(source.n_morphisms());
        for f in 0..source.n_morphisms() {
            let name = source.mor_name(f);
            let image = doc.morphism_map.get(name).ok_or_else(|| {
                FincatError::MalformedDocument(format!("morphism {:?} is not mapped", name))
            })?;
            mor_map.push(target.mor_index(image).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "morphism {:?} maps to unknown morphism {:?}",
                    name, image
                ))
            })?);
        }
        for (name, _) in &doc.object_map {
            if source.obj_index(name).is_none() {
                return Err(FincatError::MalformedDocument(format!(
                    "object map mentions unknown object {:?}",
                    name
                )));
            }
        }
        for (name, _) in &doc.morphism_map {
            if source.mor_index(name).is_none() {
                return Err(FincatError::MalformedDocument(format!(
                    "morphism map mentions unknown morphism {:?}",
                    name
                )));
            }
        }
        Ok((source, target, FinFunctor { obj_map, mor_map }))
    }
}

/// Checks endpoint preservation, identity preservation, and preservation of
/// every composition entry.
pub fn check_functor(src: &FinCategory, dst: &FinCategory, f: &FinFunctor) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;

    for m in 0..src.n_morphisms() {
        cases += 1;
        let fm = f.mor_map[m];
        let want_src = f.obj_map[src.morphisms[m].src];
        let want_tgt = f.obj_map[src.morphisms[m].tgt];
        if dst.morphisms[fm].src != want_src || dst.morphisms[fm].tgt != want_tgt {
            violations.push(Violation::new("functor-endpoints", vec![src.mor_name(m)]));
        }
    }

    for x in 0..src.n_objects() {
        cases += 1;
        match (src.identities[x], dst.identities[f.obj_map[x]]) {
            (Some(ix), Some(iy)) => {
                if f.mor_map[ix] != iy {
                    violations.push(Violation::new("functor-identity", vec![src.obj_name(x)]));
                }
            }
            (Some(_), None) | (None, _) => {
                violations.push(Violation::new("functor-identity", vec![src.obj_name(x)]));
            }
        }
    }

    for (&(g, h), &gh) in &src.composition {
        cases += 1;
        let image = dst.compose(f.mor_map[g], f.mor_map[h]);
        if image != Some(f.mor_map[gh]) {
            violations.push(Violation::new(
                "functor-composition",
                vec![src.mor_name(g), src.mor_name(h)],
            ));
        }
    }

    LawReport::new("functor-laws", violations, cases)
}

/// Result of searching the source for an isomorphism over an isomorphic
/// image pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoLift {
    /// f: x -> y and g: y -> x composing to identities both ways.
    Found { f: usize, g: usize },
    /// Every candidate pair was tried; the isomorphism downstairs does not
    /// lift.
    Exhausted { pairs_tried: usize },
}

/// Looks for an isomorphism x = y in the source given that their images are
/// isomorphic in the target. Errors with [`FincatError::NotIso`] when the
/// images are not isomorphic (then there is nothing to lift), and returns
/// [`IsoLift::Exhausted`] when the images are isomorphic but no source pair
/// works, which is the interesting failure mode.
pub fn iso_lift(
    src: &FinCategory,
    dst: &FinCategory,
    functor: &FinFunctor,
    x: usize,
    y: usize,
) -> Result<IsoLift, FincatError> {
    let (fx, fy) = (functor.obj_map[x], functor.obj_map[y]);
    if dst.find_isomorphism(fx, fy).is_none() {
        return Err(FincatError::NotIso {
            fx: dst.obj_name(fx).to_string(),
            fy: dst.obj_name(fy).to_string(),
        });
    }
    let mut pairs_tried = 0;
    for f in src.hom(x, y) {
        for g in src.hom(y, x) {
            pairs_tried += 1;
            if src.is_iso_pair(f, g) {
                return Ok(IsoLift::Found { f, g });
            }
        }
    }
    Ok(IsoLift::Exhausted { pairs_tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::symgrp::FinGroup;

    #[test]
    fn identity_functor_passes() {
        let cat = FinCategory::arrow();
        let f = FinFunctor::identity(&cat);
        let report = check_functor(&cat, &cat, &f);
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
    }

    #[test]
    fn collapse_onto_one_object_passes() {
        let arrow = FinCategory::arrow();
        let f = FinFunctor { obj_map: vec![0, 0], mor_map: vec![0, 0, 0] };
        assert_eq!(check_functor(&arrow, &arrow, &f).status, Status::Pass);
    }

    #[test]
    fn wrong_identity_image_is_witnessed() {
        let arrow = FinCategory::arrow();
        // Map everything to b but send ia to f (not an identity).
        let f = FinFunctor { obj_map: vec![1, 1], mor_map: vec![1, 2, 2] };
        let report = check_functor(&arrow, &arrow, &f);
        assert_eq!(report.status, Status::Fail);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "functor-identity" || v.law == "functor-endpoints"));
    }

    #[test]
    fn group_hom_failure_shows_up_as_composition_violation() {
        // Z4 -> Z4 delooped, morphism map k -> k+1 is not a homomorphism.
        // It also moves the identity, so both laws report.
        let cat = FinCategory::delooping(&FinGroup::cyclic(4));
        let f = FinFunctor { obj_map: vec![0], mor_map: vec![1, 2, 3, 0] };
        let report = check_functor(&cat, &cat, &f);
        assert!(report.violations.iter().any(|v| v.law == "functor-composition"));
        assert!(report.violations.iter().any(|v| v.law == "functor-identity"));
        assert_eq!(report.status, Status::Fail);
    }

    #[test]
    fn iso_lift_finds_inverses_in_a_delooped_group() {
        let cat = FinCategory::delooping(&FinGroup::cyclic(2));
        let f = FinFunctor::identity(&cat);
        let lift = iso_lift(&cat, &cat, &f, 0, 0).unwrap();
        assert_eq!(lift, IsoLift::Found { f: 0, g: 0 });
    }

    #[test]
    fn isomorphic_images_need_not_lift() {
        // Two isolated objects collapse onto the one-object point category;
        // downstairs the images are equal (so isomorphic), upstairs there is
        // not a single morphism between the two objects.
        let src = FinCategory::discrete(2);
        let dst = FinCategory::discrete(1);
        let f = FinFunctor { obj_map: vec![0, 0], mor_map: vec![0, 0] };
        assert_eq!(check_functor(&src, &dst, &f).status, Status::Pass);
        let lift = iso_lift(&src, &dst, &f, 0, 1).unwrap();
        assert_eq!(lift, IsoLift::Exhausted { pairs_tried: 0 });
    }

    #[test]
    fn non_isomorphic_images_are_a_precondition_error() {
        let arrow = FinCategory::arrow();
        let f = FinFunctor::identity(&arrow);
        assert!(matches!(
            iso_lift(&arrow, &arrow, &f, 0, 1),
            Err(FincatError::NotIso { .. })
        ));
    }
}
