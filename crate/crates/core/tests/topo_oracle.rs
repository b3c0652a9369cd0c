//! Persistence, bottleneck, and equivariant-filtration checks against
//! independent brute-force references: Betti numbers from GF(2) boundary
//! ranks, bottleneck from exhaustive matchings, and planted perturbations
//! of orbit-constant filtrations.

use symcat_core::oracles::{
    bars_alive_at, betti_at, bottleneck_by_matchings, perturbable_simplex, random_diagram,
    random_filtration, symmetric_filtration,
};
use symcat_core::topo::{
    bottleneck, bottleneck_all_dims, check_equivariant_filtration, diagram_invariance,
    persistence, validate_filtration, Bar, Filtration, PersistenceDiagram, SimplicialComplex,
};

/// Sample times straddling every half-integer level a random filtration can
/// use, plus one before birth and one after everything has appeared.
fn sample_times(f: &Filtration) -> Vec<f64> {
    let top = f.values.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut ts = vec![-0.25];
    let mut t = 0.0;
    while t <= top + 0.5 {
        ts.push(t);
        ts.push(t + 0.25);
        t += 0.5;
    }
    ts
}

#[test]
fn reduction_matches_boundary_rank_betti_numbers_on_random_filtrations() {
    for seed in 0..150u64 {
        let f = random_filtration(seed, 12);
        assert!(validate_filtration(&f).passed(), "generator must emit monotone values");
        let diagram = persistence(&f);
        for t in sample_times(&f) {
            let expected = betti_at(&f, t, 2);
            let got = bars_alive_at(&diagram, t, 2);
            assert_eq!(got, expected, "seed {} at t = {}", seed, t);
        }
    }
}

#[test]
fn triangle_filtration_has_the_expected_bars() {
    let complex = SimplicialComplex::from_simplices(vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
        vec![0, 1, 2],
    ])
    .unwrap();
    let f = Filtration { complex, values: vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0] };
    let diagram = persistence(&f);
    let bars: Vec<(usize, f64, f64)> =
        diagram.bars.iter().map(|b| (b.dim, b.birth, b.death)).collect();
    assert_eq!(
        bars,
        vec![
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, f64::INFINITY),
            (1, 1.0, 2.0),
        ]
    );
}

#[test]
fn bottleneck_matches_exhaustive_matching_on_random_diagrams() {
    for seed in 0..100u64 {
        let d1 = random_diagram(seed * 2, 5, 0);
        let d2 = random_diagram(seed * 2 + 1, 5, 0);
        let got = bottleneck(&d1, &d2, 0);
        let expected = bottleneck_by_matchings(&d1, &d2, 0);
        assert_eq!(got, expected, "seed {}: {} vs {}", seed, got, expected);
    }
}

#[test]
fn bottleneck_on_shifted_single_bars_is_half_the_gap_free_or_exact() {
    let a = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: 2.0 }]);
    let b = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: 2.5 }]);
    assert_eq!(bottleneck(&a, &b, 0), 0.5);
    assert_eq!(bottleneck_all_dims(&a, &b), 0.5);
    assert_eq!(bottleneck(&a, &a, 0), 0.0);
}

#[test]
fn mismatched_infinite_bar_counts_push_bottleneck_to_infinity() {
    let a = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: f64::INFINITY }]);
    let b = PersistenceDiagram::new(vec![Bar { dim: 0, birth: 0.0, death: 1.0 }]);
    assert!(bottleneck(&a, &b, 0).is_infinite());
    assert_eq!(bottleneck_by_matchings(&a, &b, 0), f64::INFINITY);
}

#[test]
fn orbit_constant_filtrations_pass_both_equivariance_gates() {
    for seed in 0..50u64 {
        let (act, f) = symmetric_filtration(seed);
        assert!(validate_filtration(&f).passed(), "seed {}", seed);
        assert!(act.validate_on(&f.complex).passed(), "seed {}", seed);
        let gate = check_equivariant_filtration(&act, &f).unwrap();
        assert!(gate.passed(), "seed {}: values are orbit-constant by construction", seed);
        let invariance = diagram_invariance(&act, &f).unwrap();
        assert!(
            invariance.passed(),
            "seed {}: equivariant input must yield invariant diagrams",
            seed
        );
    }
}

#[test]
fn planted_orbit_breaking_perturbations_are_always_caught() {
    let mut planted = 0usize;
    for seed in 0..50u64 {
        let (act, f) = symmetric_filtration(seed);
        let Some(target) = perturbable_simplex(&act, &f) else { continue };
        planted += 1;
        let mut values = f.values.clone();
        values[target] += 0.25;
        let perturbed = Filtration { complex: f.complex.clone(), values };
        assert!(
            validate_filtration(&perturbed).passed(),
            "seed {}: the perturbed simplex has no cofaces, so values stay monotone",
            seed
        );
        let gate = check_equivariant_filtration(&act, &perturbed).unwrap();
        assert!(!gate.passed(), "seed {}: perturbation must be detected", seed);
        assert!(
            gate.violations.iter().any(|v| v.law == "filtration-equivariance"),
            "seed {}: violation should name the broken value equality",
            seed
        );
    }
    assert!(planted >= 40, "most symmetric fixtures admit a perturbation, got {}", planted);
}

#[test]
fn persistence_bars_are_sorted_and_well_formed() {
    for seed in 200..260u64 {
        let f = random_filtration(seed, 12);
        let diagram = persistence(&f);
        for b in &diagram.bars {
            assert!(b.birth < b.death, "zero-length bars are dropped");
            assert!(b.dim <= 2);
        }
        for pair in diagram.bars.windows(2) {
            let key = |b: &Bar| (b.dim, b.birth, b.death);
            assert!(key(&pair[0]) <= key(&pair[1]), "bars must be sorted");
        }
    }
}
