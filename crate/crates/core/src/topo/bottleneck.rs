//! Exact bottleneck distance between persistence diagrams.

use super::persistence::{Bar, PersistenceDiagram};

fn pair_cost(a: &(f64, f64), b: &(f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn diag_cost(a: &(f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Kuhn augmenting-path matching on the standard bottleneck graph: left
/// vertices are d1's points plus one diagonal slot per d2 point, right
/// vertices symmetrically; diagonal slots match each other for free. A
/// perfect matching exists iff cost `c` is feasible.
fn feasible(a: &[(f64, f64)], b: &[(f64, f64)], c: f64) -> bool {
    let (n, m) = (a.len(), b.len());
    let left = n + m;
    let right = m + n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left];
    for (i, pa) in a.iter().enumerate() {
        for (j, pb) in b.iter().enumerate() {
            if pair_cost(pa, pb) <= c {
                adj[i].push(j);
            }
        }
        if diag_cost(pa) <= c {
            adj[i].push(m + i);
        }
    }
    for (j, pb) in b.iter().enumerate() {
        if diag_cost(pb) <= c {
            adj[n + j].push(j);
        }
        for i in 0..n {
            adj[n + j].push(m + i);
        }
    }

    let mut match_right: Vec<Option<usize>> = vec![None; right];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        match_right: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if match_right[v].is_none()
                    || augment(match_right[v].unwrap(), adj, match_right, seen)
                {
                    match_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    for u in 0..left {
        let mut seen = vec![false; right];
        if !augment(u, &adj, &mut match_right, &mut seen) {
            return false;
        }
    }
    true
}

fn finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates = vec![0.0];
    for pa in a {
        candidates.push(diag_cost(pa));
        for pb in b {
            candidates.push(pair_cost(pa, pb));
        }
    }
    for pb in b {
        candidates.push(diag_cost(pb));
    }
    candidates.sort_by(|x, y| x.total_cmp(y));
    candidates.dedup();
    // The largest candidate is always feasible (everything to the diagonal),
    // so binary search for the least feasible one is well defined.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Bottleneck distance restricted to one homological dimension.
///
/// Infinite bars must match in count (otherwise the distance is infinity);
/// matched infinite bars contribute their birth differences, paired off in
/// sorted order. The finite part is exact: the answer is one of the finitely
/// many pairwise or diagonal costs, found by binary search with a
/// bipartite-matching feasibility test.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> f64 {
    let split = |d: &PersistenceDiagram| -> (Vec<(f64, f64)>, Vec<f64>) {
        let mut finite = Vec::new();
        let mut inf = Vec::new();
        for b in d.bars.iter().filter(|b| b.dim == dim) {
            if b.is_infinite() {
                inf.push(b.birth);
            } else {
                finite.push((b.birth, b.death));
            }
        }
        inf.sort_by(|x, y| x.total_cmp(y));
        (finite, inf)
    };
    let (fin1, inf1) = split(d1);
    let (fin2, inf2) = split(d2);
    if inf1.len() != inf2.len() {
        return f64::INFINITY;
    }
    let inf_part = inf1
        .iter()
        .zip(&inf2)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    inf_part.max(finite_bottleneck(&fin1, &fin2))
}

/// Convenience: bars of every dimension present in either diagram, summed.
pub fn bottleneck_all_dims(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let top = d1.max_dim().into_iter().chain(d2.max_dim()).max();
    match top {
        None => 0.0,
        Some(t) => (0..=t).map(|dim| bottleneck(d1, d2, dim)).sum(),
    }
}

#[allow(dead_code)]
pub(crate) fn bar(dim: usize, birth: f64, death: f64) -> Bar {
    Bar { dim, birth, death }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(bars: Vec<(f64, f64)>) -> PersistenceDiagram {
        PersistenceDiagram::new(
            bars.into_iter().map(|(b, d)| bar(0, b, d)).collect(),
        )
    }

    #[test]
    fn identical_diagrams_are_at_distance_zero() {
        let d = diagram(vec![(0.0, 2.0), (1.0, 3.5), (0.5, f64::INFINITY)]);
        assert_eq!(bottleneck(&d, &d, 0), 0.0);
    }

    #[test]
    fn lone_bar_projects_to_the_diagonal() {
        let d1 = diagram(vec![(0.0, 2.0)]);
        let d2 = diagram(vec![]);
        assert_eq!(bottleneck(&d1, &d2, 0), 1.0);
    }

    #[test]
    fn direct_match_beats_double_projection() {
        let d1 = diagram(vec![(0.0, 2.0)]);
        let d2 = diagram(vec![(0.0, 2.5)]);
        assert_eq!(bottleneck(&d1, &d2, 0), 0.5);
    }

    #[test]
    fn projection_beats_a_bad_match() {
        // Matching (0, 0.2) to (5, 5.2) costs 5; both to the diagonal costs 0.1.
        let d1 = diagram(vec![(0.0, 0.2)]);
        let d2 = diagram(vec![(5.0, 5.2)]);
        assert!((bottleneck(&d1, &d2, 0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn mismatched_infinite_bars_are_infinitely_far() {
        let d1 = diagram(vec![(0.0, f64::INFINITY)]);
        let d2 = diagram(vec![]);
        assert!(bottleneck(&d1, &d2, 0).is_infinite());
    }

    #[test]
    fn matched_infinite_bars_compare_births() {
        let d1 = diagram(vec![(0.0, f64::INFINITY), (0.0, 1.0)]);
        let d2 = diagram(vec![(0.25, f64::INFINITY), (0.0, 1.0)]);
        assert_eq!(bottleneck(&d1, &d2, 0), 0.25);
    }

    #[test]
    fn other_dimensions_do_not_leak_in() {
        let d1 = PersistenceDiagram::new(vec![bar(0, 0.0, 1.0), bar(1, 0.0, 9.0)]);
        let d2 = PersistenceDiagram::new(vec![bar(0, 0.0, 1.0)]);
        assert_eq!(bottleneck(&d1, &d2, 0), 0.0);
        assert_eq!(bottleneck(&d1, &d2, 1), 4.5);
        assert_eq!(bottleneck_all_dims(&d1, &d2), 4.5);
    }
}
