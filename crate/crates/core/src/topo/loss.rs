//! Scalar summaries of diagrams and the 1D sublevel-set special case.

use super::bottleneck::bottleneck;
use super::persistence::{Bar, PersistenceDiagram};

/// How to turn a diagram into one number. The two modes are deliberately
/// explicit because "the loss of a diagram" admits several readings; callers
/// must choose one.
#[derive(Debug, Clone)]
pub enum PhLossMode {
    /// Sum of (death - birth) over finite bars; infinite bars contribute
    /// nothing.
    TotalPersistence,
    /// Sum over dimensions of the bottleneck distance to a reference
    /// diagram.
    BottleneckTo(PersistenceDiagram),
}

pub fn ph_loss(d: &PersistenceDiagram, mode: &PhLossMode) -> f64 {
    match mode {
        PhLossMode::TotalPersistence => d
            .bars
            .iter()
            .filter(|b| !b.is_infinite())
            .map(|b| b.death - b.birth)
            .sum(),
        PhLossMode::BottleneckTo(reference) => {
            let top = d.max_dim().into_iter().chain(reference.max_dim()).max();
            match top {
                None => 0.0,
                Some(t) => (0..=t).map(|dim| bottleneck(d, reference, dim)).sum(),
            }
        }
    }
}

/// H0 persistence of the sublevel filtration of a piecewise-linear sequence:
/// one bar per strict local minimum, components merged by the elder rule
/// (the lower birth survives; born at equal height, the earlier index
/// survives). Deaths happen at merge height; zero-length bars are dropped.
pub fn sublevel_persistence_1d(values: &[f64]) -> PersistenceDiagram {
    assert!(!values.is_empty(), "sublevel persistence needs at least one sample");
    assert!(
        values.iter().all(|v| v.is_finite()),
        "sublevel persistence needs finite samples"
    );
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    const ABSENT: usize = usize::MAX;
    let mut parent = vec![ABSENT; n];
    // (birth value, birth index) per current root.
    let mut birth: Vec<(f64, usize)> = vec![(0.0, 0); n];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut bars = Vec::new();
    for &i in &order {
        parent[i] = i;
        birth[i] = (values[i], i);
        for nb in [i.checked_sub(1), (i + 1 < n).then_some(i + 1)].into_iter().flatten() {
            if parent[nb] == ABSENT {
                continue;
            }
            let ra = find(&mut parent, i);
            let rb = find(&mut parent, nb);
            if ra == rb {
                continue;
            }
            // Elder rule: the younger component dies at the current height.
            let (elder, younger) = if (birth[ra].0, birth[ra].1) <= (birth[rb].0, birth[rb].1)
            {
                (ra, rb)
            } else {
                (rb, ra)
            };
            if values[i] > birth[younger].0 {
                bars.push(Bar { dim: 0, birth: birth[younger].0, death: values[i] });
            }
            parent[younger] = elder;
        }
    }
    for i in 0..n {
        if parent[i] == i {
            bars.push(Bar { dim: 0, birth: birth[i].0, death: f64::INFINITY });
        }
    }
    PersistenceDiagram::new(bars)
}

/// Strict local minima of a sequence, endpoints compared one-sided. For
/// sequences with pairwise-distinct values this is exactly the number of
/// bars the sublevel diagram carries.
pub fn strict_local_minima(values: &[f64]) -> usize {
    let n = values.len();
    (0..n)
        .filter(|&i| {
            (i == 0 || values[i] < values[i - 1]) && (i + 1 == n || values[i] < values[i + 1])
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_sequence_is_a_single_bar() {
        let d = sublevel_persistence_1d(&[-1.0, 0.5, 2.0, 7.0]);
        assert_eq!(d.bars.len(), 1);
        assert_eq!(d.bars[0].birth, -1.0);
        assert!(d.bars[0].is_infinite());
    }

    #[test]
    fn valley_peak_valley_merges_by_the_elder_rule() {
        let d = sublevel_persistence_1d(&[0.0, 1.0, 0.0]);
        let expected = PersistenceDiagram::new(vec![
            Bar { dim: 0, birth: 0.0, death: 1.0 },
            Bar { dim: 0, birth: 0.0, death: f64::INFINITY },
        ]);
        assert!(d.multiset_eq(&expected), "{}", d.compact());
    }

    #[test]
    fn constant_sequence_is_one_component() {
        let d = sublevel_persistence_1d(&[0.75, 0.75, 0.75]);
        assert_eq!(d.bars.len(), 1);
        assert_eq!(d.bars[0].birth, 0.75);
        assert!(d.bars[0].is_infinite());
    }

    #[test]
    fn deeper_minimum_survives_the_merge() {
        // Minima at heights 0.2 (left) and 0.0 (right); the right one is
        // elder by value even though it appears later.
        let d = sublevel_persistence_1d(&[0.2, 1.0, 0.0]);
        let expected = PersistenceDiagram::new(vec![
            Bar { dim: 0, birth: 0.2, death: 1.0 },
            Bar { dim: 0, birth: 0.0, death: f64::INFINITY },
        ]);
        assert!(d.multiset_eq(&expected), "{}", d.compact());
    }

    #[test]
    fn bar_count_is_the_strict_minimum_count() {
        let v = [0.3, -0.2, 0.9, 0.1, 0.4, -0.7, 2.0, 1.5];
        let d = sublevel_persistence_1d(&v);
        assert_eq!(d.bars.len(), strict_local_minima(&v));
    }

    #[test]
    fn total_persistence_sums_finite_bars() {
        let d = PersistenceDiagram::new(vec![
            Bar { dim: 0, birth: 0.0, death: 1.0 },
            Bar { dim: 0, birth: 1.0, death: 2.0 },
            Bar { dim: 0, birth: 0.0, death: f64::INFINITY },
        ]);
        assert_eq!(ph_loss(&d, &PhLossMode::TotalPersistence), 2.0);
        assert_eq!(ph_loss(&d, &PhLossMode::BottleneckTo(d.clone())), 0.0);
        let empty = PersistenceDiagram::default();
        assert_eq!(ph_loss(&empty, &PhLossMode::TotalPersistence), 0.0);
        assert_eq!(ph_loss(&empty, &PhLossMode::BottleneckTo(empty.clone())), 0.0);
    }
}
