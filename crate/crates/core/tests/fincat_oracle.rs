//! Mutation sweeps and independent-oracle parity for the finite-category
//! and group-action checkers. Every single-entry corruption of a lawful
//! table must be flagged with a witness that replays against the corrupted
//! document, and the pristine documents must come through clean.

use std::collections::BTreeMap;

use symcat_core::fincat::{
    check_functor, check_natural, replay_violation, validate_category, CategoryData, FinCategory,
    FinFunctor, FunctorData, MapPairData, MorphismData, NatData,
};
use symcat_core::oracles::{
    action_with_known_orbits, category_doc_is_lawful, category_mutants, functor_mutants,
    group_table_mutants, intertwiner_dim_by_characters, intertwiner_dim_by_elimination,
    nat_mutants, GroupKind,
};
use symcat_core::symgrp::{
    burnside_count, intertwiner_basis, orbits, validate_group, FinGroup, Representation,
    SetAction,
};
use symcat_core::mat::Mat;

fn arrow_doc() -> CategoryData {
    CategoryData {
        objects: vec!["a".into(), "b".into()],
        morphisms: vec![
            MorphismData { id: "ia".into(), src: "a".into(), tgt: "a".into() },
            MorphismData { id: "ib".into(), src: "b".into(), tgt: "b".into() },
            MorphismData { id: "f".into(), src: "a".into(), tgt: "b".into() },
        ],
        identities: [("a", "ia"), ("b", "ib")]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        composition: vec![
            ["ia".into(), "ia".into(), "ia".into()],
            ["ib".into(), "ib".into(), "ib".into()],
            ["f".into(), "ia".into(), "f".into()],
            ["ib".into(), "f".into(), "f".into()],
        ],
    }
}

fn bz2_doc() -> CategoryData {
    CategoryData {
        objects: vec!["*".into()],
        morphisms: vec![
            MorphismData { id: "r0".into(), src: "*".into(), tgt: "*".into() },
            MorphismData { id: "r1".into(), src: "*".into(), tgt: "*".into() },
        ],
        identities: [("*".to_string(), "r0".to_string())].into_iter().collect(),
        composition: vec![
            ["r0".into(), "r0".into(), "r0".into()],
            ["r0".into(), "r1".into(), "r1".into()],
            ["r1".into(), "r0".into(), "r1".into()],
            ["r1".into(), "r1".into(), "r0".into()],
        ],
    }
}

fn identity_map(doc: &CategoryData) -> MapPairData {
    MapPairData {
        object_map: doc.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        morphism_map: doc.morphisms.iter().map(|m| (m.id.clone(), m.id.clone())).collect(),
    }
}

/// Whether the production pipeline rejects the document, through either
/// channel: a constructor refusal or a failing law report.
fn category_detected(doc: &CategoryData) -> bool {
    match FinCategory::from_doc(doc) {
        Err(_) => true,
        Ok(cat) => !validate_category(&cat).passed(),
    }
}

#[test]
fn arrow_category_mutants_all_detected_with_replayable_witnesses() {
    let doc = arrow_doc();
    assert!(category_doc_is_lawful(&doc), "pristine document must be lawful");
    assert!(!category_detected(&doc), "pristine document must not be flagged");

    let mutants = category_mutants(&doc);
    // 4 composition entries x 2 alternative results + 2 identities x 2.
    assert_eq!(mutants.len(), 12);
    for (mutant, tag) in &mutants {
        assert!(!category_doc_is_lawful(mutant), "oracle missed mutant: {}", tag);
        let cat = FinCategory::from_doc(mutant).expect("names stay valid under mutation");
        let report = validate_category(&cat);
        assert!(!report.passed(), "checker missed mutant: {}", tag);
        let replayed = report
            .violations
            .iter()
            .filter_map(|v| replay_violation(&cat, v))
            .count();
        assert!(replayed > 0, "no violation replayed for mutant: {}", tag);
    }
}

#[test]
fn bz2_category_mutants_match_oracle_with_one_lawful_exception() {
    let doc = bz2_doc();
    assert!(category_doc_is_lawful(&doc));
    assert!(!category_detected(&doc));

    let mutants = category_mutants(&doc);
    // 4 composition entries x 1 alternative + 1 identity x 1.
    assert_eq!(mutants.len(), 5);
    let mut lawful_tags = Vec::new();
    for (mutant, tag) in &mutants {
        let oracle_lawful = category_doc_is_lawful(mutant);
        let detected = category_detected(mutant);
        assert_eq!(
            oracle_lawful, !detected,
            "oracle and checker disagree on mutant: {}",
            tag
        );
        if oracle_lawful {
            lawful_tags.push(tag.clone());
        }
    }
    // Redirecting r1 . r1 from r0 to r1 turns the two-element group table
    // into the idempotent monoid on {r0, r1}, which satisfies every
    // category law; it is the one semantically equivalent mutant.
    assert_eq!(lawful_tags, vec!["comp(r1,r1)=r0 changed to r1".to_string()]);
}

#[test]
fn group_table_mutants_all_break_a_law() {
    for group in [FinGroup::cyclic(2), FinGroup::cyclic(4), FinGroup::s3()] {
        let doc = group.to_doc();
        assert!(validate_group(&group).passed());
        for (mutant, tag) in group_table_mutants(&doc) {
            let detected = match FinGroup::from_doc(&mutant) {
                Err(_) => true,
                Ok(g) => !validate_group(&g).passed(),
            };
            assert!(detected, "undetected group mutant: {}", tag);
        }
    }
}

#[test]
fn identity_functor_mutants_all_detected() {
    let doc = arrow_doc();
    let functor_doc = FunctorData {
        source: doc.clone(),
        target: doc.clone(),
        object_map: identity_map(&doc).object_map,
        morphism_map: identity_map(&doc).morphism_map,
    };
    let (src, dst, f) = FinFunctor::from_doc(&functor_doc).unwrap();
    assert!(check_functor(&src, &dst, &f).passed());

    let mutants = functor_mutants(&functor_doc);
    // 2 objects x 1 alternative + 3 morphisms x 2 alternatives.
    assert_eq!(mutants.len(), 8);
    for (mutant, tag) in &mutants {
        let detected = match FinFunctor::from_doc(mutant) {
            Err(_) => true,
            Ok((s, d, g)) => !check_functor(&s, &d, &g).passed(),
        };
        assert!(detected, "undetected functor mutant: {}", tag);
    }
}

#[test]
fn identity_transformation_mutants_all_detected() {
    let doc = arrow_doc();
    let pair = identity_map(&doc);
    let nat_doc = NatData {
        source: doc.clone(),
        target: doc.clone(),
        f: pair.clone(),
        g: pair,
        components: [("a", "ia"), ("b", "ib")]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    };
    let (src, dst, f, g, comps) = nat_doc.resolve().unwrap();
    assert!(check_natural(&src, &dst, &f, &g, &comps).unwrap().passed());

    let mutants = nat_mutants(&nat_doc);
    // 2 components x 2 alternative morphisms.
    assert_eq!(mutants.len(), 4);
    for (mutant, tag) in &mutants {
        let detected = match mutant.resolve() {
            Err(_) => true,
            Ok((s, d, mf, mg, mc)) => match check_natural(&s, &d, &mf, &mg, &mc) {
                Err(_) => true,
                Ok(report) => !report.passed(),
            },
        };
        assert!(detected, "undetected transformation mutant: {}", tag);
    }
}

#[test]
fn burnside_count_equals_orbit_count_on_randomized_actions() {
    let kinds =
        [GroupKind::Cyclic(2), GroupKind::Cyclic(3), GroupKind::Cyclic(4), GroupKind::S3];
    for (i, kind) in kinds.iter().enumerate() {
        for seed in 0..25u64 {
            let (action, blocks) = action_with_known_orbits(*kind, 12, seed * 4 + i as u64);
            assert!(action.validate().passed());
            let counted = orbits(&action).len();
            let averaged = burnside_count(&action).unwrap();
            assert_eq!(counted, blocks, "partition disagrees with construction");
            assert_eq!(averaged, blocks as u128, "fixed-point average disagrees");
        }
    }
}

fn c4_pair_action() -> SetAction {
    let group = FinGroup::cyclic(4);
    let base: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|i| (i + g) % 4).collect()).collect();
    let points = (0..16).map(|p| format!("{}-{}", p / 4, p % 4)).collect();
    let table = (0..4)
        .map(|g| (0..16).map(|p| base[g][p / 4] * 4 + base[g][p % 4]).collect())
        .collect();
    SetAction { group, points, table }
}

#[test]
fn cell_pair_action_has_four_orbits() {
    let pairs = c4_pair_action();
    assert!(pairs.validate().passed());
    assert_eq!(orbits(&pairs).len(), 4);
    assert_eq!(burnside_count(&pairs).unwrap(), 4);
}

fn c2_sign() -> Representation {
    Representation {
        group: FinGroup::cyclic(2),
        dim: 1,
        mats: vec![Mat::new(1, 1, vec![1.0]), Mat::new(1, 1, vec![-1.0])],
    }
}

fn s3_sign() -> Representation {
    let group = FinGroup::s3();
    let mats = (0..6)
        .map(|g| {
            let name = group.name(g).as_bytes().to_vec();
            let mut inv = 0;
            for i in 0..3 {
                for j in i + 1..3 {
                    if name[i] > name[j] {
                        inv += 1;
                    }
                }
            }
            Mat::new(1, 1, vec![if inv % 2 == 0 { 1.0 } else { -1.0 }])
        })
        .collect();
    Representation { group, dim: 1, mats }
}

fn rotation_action(n: usize) -> SetAction {
    SetAction {
        group: FinGroup::cyclic(n),
        points: (0..n).map(|i| format!("p{}", i)).collect(),
        table: (0..n).map(|g| (0..n).map(|i| (i + g) % n).collect()).collect(),
    }
}

fn s3_natural() -> SetAction {
    let group = FinGroup::s3();
    let table = (0..6)
        .map(|g| group.name(g).bytes().map(|b| (b - b'0') as usize).collect())
        .collect();
    SetAction { group, points: vec!["x".into(), "y".into(), "z".into()], table }
}

fn max_commutation_residual(
    rep_in: &Representation,
    rep_out: &Representation,
    basis: &[Mat],
) -> f64 {
    let mut worst = 0.0f64;
    for t in basis {
        for g in 0..rep_in.group.order() {
            let lhs = rep_out.mat(g).matmul(t);
            let rhs = t.matmul(rep_in.mat(g));
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
    }
    worst
}

#[test]
fn intertwiner_dimension_agrees_with_both_oracles() {
    let mut families: Vec<(String, Vec<Representation>)> = Vec::new();
    for n in 2..=4usize {
        let group = FinGroup::cyclic(n);
        let mut reps =
            vec![Representation::trivial(&group), Representation::permutation(&rotation_action(n))];
        if n == 2 {
            reps.push(c2_sign());
        }
        families.push((format!("c{}", n), reps));
    }
    families.push((
        "s3".to_string(),
        vec![
            Representation::trivial(&FinGroup::s3()),
            s3_sign(),
            Representation::permutation(&s3_natural()),
        ],
    ));

    for (family, reps) in &families {
        for rin in reps {
            for rout in reps {
                let basis = intertwiner_basis(rin, rout);
                let by_chars = intertwiner_dim_by_characters(rin, rout).unwrap();
                let by_rank = intertwiner_dim_by_elimination(rin, rout, 1e-9);
                assert!(
                    (by_chars - by_chars.round()).abs() < 1e-9,
                    "{}: character sum {} is not near an integer",
                    family,
                    by_chars
                );
                assert_eq!(basis.len(), by_chars.round() as usize, "family {}", family);
                assert_eq!(basis.len(), by_rank, "family {}", family);
                let residual = max_commutation_residual(rin, rout, &basis);
                assert!(
                    residual <= 1e-12,
                    "{}: basis residual {} too large",
                    family,
                    residual
                );
            }
        }
    }
}

#[test]
fn swap_and_rotation_self_intertwiners_have_known_dimensions() {
    let swap = Representation::permutation(&rotation_action(2));
    assert_eq!(intertwiner_basis(&swap, &swap).len(), 2);
    let c4 = Representation::permutation(&rotation_action(4));
    assert_eq!(intertwiner_basis(&c4, &c4).len(), 4);
}

#[test]
fn burnside_rejects_empty_tables_gracefully() {
    // A single fixed point under the trivial group: one orbit, no panic.
    let action = SetAction {
        group: FinGroup::cyclic(1),
        points: vec!["only".into()],
        table: vec![vec![0]],
    };
    assert!(action.validate().passed());
    assert_eq!(burnside_count(&action).unwrap(), 1);
    assert_eq!(orbits(&action), vec![vec![0]]);
}

#[test]
fn functor_document_round_trip_preserves_composition_keys() {
    let doc = arrow_doc();
    let cat = FinCategory::from_doc(&doc).unwrap();
    let back = cat.to_doc();
    let key = |d: &CategoryData| -> BTreeMap<(String, String), String> {
        d.composition
            .iter()
            .map(|e| ((e[0].clone(), e[1].clone()), e[2].clone()))
            .collect()
    };
    assert_eq!(key(&doc), key(&back));
    assert_eq!(doc.objects, back.objects);
}
