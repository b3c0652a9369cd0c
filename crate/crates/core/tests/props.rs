//! Property tests for the invariants the library promises regardless of
//! input: averaging projectors, orbit canonicalization, contraction
//! iteration, convergence detection, and diagram distances.

use proptest::prelude::*;

use symcat_core::enriched::canonical_representative;
use symcat_core::mat::Mat;
use symcat_core::optdyn::{banach_iterate, detect_convergence, estimate_contraction};
use symcat_core::oracles::{action_with_known_orbits, GroupKind};
use symcat_core::symgrp::{
    burnside_count, orbits, reynolds_vector, FinGroup, Representation, SetAction,
};
use symcat_core::topo::{bottleneck, Bar, PersistenceDiagram};

fn rotation_rep(n: usize) -> Representation {
    let action = SetAction {
        group: FinGroup::cyclic(n),
        points: (0..n).map(|i| format!("p{}", i)).collect(),
        table: (0..n).map(|g| (0..n).map(|i| (i + g) % n).collect()).collect(),
    };
    Representation::permutation(&action)
}

fn small_coord() -> impl Strategy<Value = f64> {
    (-1000i64..=1000).prop_map(|k| k as f64 / 16.0)
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    /// Group averaging is idempotent and constant on orbits: averaging a
    /// translated point re-sums the same orbit in a different order, so the
    /// results agree to rounding error, and averaging twice changes nothing
    /// beyond that same rounding.
    #[test]
    fn reynolds_projects_onto_the_fixed_space(
        xs in prop::collection::vec(small_coord(), 4),
        g in 0usize..4,
    ) {
        let rep = rotation_rep(4);
        let averaged = reynolds_vector(&rep, &xs).unwrap();
        let translated = reynolds_vector(&rep, &rep.apply(g, &xs)).unwrap();
        prop_assert!(linf(&averaged, &translated) <= 1e-12);
        let twice = reynolds_vector(&rep, &averaged).unwrap();
        prop_assert!(linf(&averaged, &twice) <= 1e-12);
        let spread = averaged.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
            - averaged.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        prop_assert!(spread <= 1e-12, "averaged point must be constant, spread {}", spread);
    }

    /// The canonical orbit representative is a class function: every element
    /// of an orbit canonicalizes to the bitwise-identical point, because a
    /// permutation representation permutes coordinates exactly.
    #[test]
    fn canonicalization_is_constant_on_orbits(
        xs in prop::collection::vec(small_coord(), 4),
        g in 0usize..4,
    ) {
        let rep = rotation_rep(4);
        let here = canonical_representative(&rep, &xs).unwrap();
        let there = canonical_representative(&rep, &rep.apply(g, &xs)).unwrap();
        prop_assert_eq!(here, there);
    }

    /// Fixed-point iteration on a scalar affine contraction lands within the
    /// a-priori error bound of the true fixed point b / (1 - a).
    #[test]
    fn affine_contractions_converge_to_the_closed_form(
        a in -0.9f64..=0.9,
        b in -8.0f64..=8.0,
        x0 in -8.0f64..=8.0,
    ) {
        let tol = 1e-10;
        let fixed = banach_iterate(|x| vec![a * x[0] + b], &[x0], tol, 10_000).unwrap();
        let truth = b / (1.0 - a);
        let bound = tol / (1.0 - a.abs()) + 1e-9;
        prop_assert!(
            (fixed.point[0] - truth).abs() <= bound,
            "got {}, want {} within {}", fixed.point[0], truth, bound
        );
    }

    /// The sampled contraction ratio of an affine map is its slope, up to
    /// division rounding, and certifies a contraction exactly when |a| < 1.
    #[test]
    fn contraction_estimate_recovers_the_affine_slope(
        a in -1.5f64..=1.5,
        b in -4.0f64..=4.0,
        seed in 0u64..64,
    ) {
        let cert = estimate_contraction(
            |x| vec![a * x[0] + b],
            &[-2.0],
            &[2.0],
            100,
            seed,
        );
        prop_assert!((cert.max_ratio - a.abs()).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    /// Settling time is antitone in the tolerance: a looser ball can only be
    /// entered earlier, never later.
    #[test]
    fn convergence_time_is_antitone_in_epsilon(
        start in 0.5f64..=8.0,
        ratio in 0.05f64..=0.95,
        len in 4usize..=40,
        e1 in 0.01f64..=2.0,
        scale in 1.0f64..=10.0,
    ) {
        let traj: Vec<Vec<f64>> =
            (0..len).map(|t| vec![start * ratio.powi(t as i32)]).collect();
        let e2 = e1 * scale;
        let t1 = detect_convergence(&traj, e1).map_or(usize::MAX, |t| t);
        let t2 = detect_convergence(&traj, e2).map_or(usize::MAX, |t| t);
        prop_assert!(t2 <= t1, "eps {} settled at {:?}, eps {} at {:?}", e1, t1, e2, t2);
    }

    /// Orbit counting by fixed-point averaging matches the explicit orbit
    /// partition on randomized disjoint unions of standard blocks.
    #[test]
    fn burnside_equals_partition_count_on_random_actions(
        seed in 0u64..=u64::MAX / 2,
        pick in 0usize..4,
    ) {
        let kind = [GroupKind::Cyclic(2), GroupKind::Cyclic(3), GroupKind::Cyclic(4), GroupKind::S3][pick];
        let (action, blocks) = action_with_known_orbits(kind, 12, seed);
        prop_assert_eq!(orbits(&action).len(), blocks);
        prop_assert_eq!(burnside_count(&action).unwrap(), blocks as u128);
    }

    /// The bottleneck distance is a pseudometric on diagrams: symmetric and
    /// zero on identical arguments, computed through the same comparisons in
    /// either order.
    #[test]
    fn bottleneck_is_symmetric_and_reflexive(
        births in prop::collection::vec(0u8..8, 0..5),
        lives in prop::collection::vec(1u8..8, 0..5),
        births2 in prop::collection::vec(0u8..8, 0..5),
        lives2 in prop::collection::vec(1u8..8, 0..5),
    ) {
        let mk = |bs: &[u8], ls: &[u8]| {
            let bars = bs
                .iter()
                .zip(ls)
                .map(|(&b, &l)| Bar {
                    dim: 0,
                    birth: b as f64 * 0.25,
                    death: b as f64 * 0.25 + l as f64 * 0.25,
                })
                .collect();
            PersistenceDiagram::new(bars)
        };
        let d1 = mk(&births, &lives);
        let d2 = mk(&births2, &lives2);
        prop_assert_eq!(bottleneck(&d1, &d1, 0), 0.0);
        prop_assert_eq!(bottleneck(&d1, &d2, 0), bottleneck(&d2, &d1, 0));
    }

    /// Row-reduction is idempotent: reducing an already reduced matrix is a
    /// no-op, whatever the input.
    #[test]
    fn rref_is_idempotent(
        entries in prop::collection::vec(small_coord(), 12),
    ) {
        let m = Mat::new(3, 4, entries);
        let once = m.rref(1e-10);
        let twice = once.rref(1e-10);
        prop_assert_eq!(once.data, twice.data);
    }
}
