//! Weight tying along orbits of a pair of actions.

use serde::{Deserialize, Serialize};

use super::layer::{Activation, Layer};
use super::EquinetError;
use crate::mat::Mat;
use crate::symgrp::SetAction;

/// Which entries share a parameter: weight entries (out, in) grouped by the
/// orbits of the product action g.(i, j) = (g.i, g.j), bias entries by the
/// orbits on outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TyingPattern {
    pub out_dim: usize,
    pub in_dim: usize,
    /// Each class lists its (out, in) entries, classes ordered by smallest
    /// member, members sorted.
    pub weight_classes: Vec<Vec<(usize, usize)>>,
    pub bias_classes: Vec<Vec<usize>>,
}

/// Parameter counting before and after tying. The headline ratio is for the
/// weight matrix alone; the bias is reported separately since its tying is
/// along a different orbit structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompressionReport {
    pub raw_weights: usize,
    pub tied_weights: usize,
    pub raw_bias: usize,
    pub tied_bias: usize,
    /// raw_weights / tied_weights.
    pub weight_ratio: f64,
}

/// Computes the tying pattern forced by equivariance between two actions of
/// the same group: a layer commutes with the permutation representations
/// exactly when its weights are constant on these classes.
pub fn compress(
    action_in: &SetAction,
    action_out: &SetAction,
) -> Result<(TyingPattern, CompressionReport), EquinetError> {
    if action_in.group.order() != action_out.group.order()
        || action_in.group.table != action_out.group.table
    {
        return Err(EquinetError::GroupMismatch(
            "weight tying needs one group acting on both ends".into(),
        ));
    }
    let (ni, no) = (action_in.n_points(), action_out.n_points());

    // Union-find over weight entries (i, j) -> flat index i * ni + j.
    let mut parent: Vec<usize> = (0..no * ni).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in 0..action_in.group.order() {
        for i in 0..no {
            for j in 0..ni {
                let a = find(&mut parent, i * ni + j);
                let b = find(
                    &mut parent,
                    action_out.apply(g, i) * ni + action_in.apply(g, j),
                );
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut weight_buckets: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        Default::default();
    for i in 0..no {
        for j in 0..ni {
            let root = find(&mut parent, i * ni + j);
            weight_buckets.entry(root).or_default().push((i, j));
        }
    }
    let weight_classes: Vec<Vec<(usize, usize)>> = weight_buckets.into_values().collect();

    let bias_classes = crate::symgrp::orbits(action_out);

    let report = CompressionReport {
        raw_weights: no * ni,
        tied_weights: weight_classes.len(),
        raw_bias: no,
        tied_bias: bias_classes.len(),
        weight_ratio: (no * ni) as f64 / weight_classes.len().max(1) as f64,
    };
    Ok((
        TyingPattern { out_dim: no, in_dim: ni, weight_classes, bias_classes },
        report,
    ))
}

/// Materializes a layer from one coefficient per class.
pub fn layer_from_pattern(
    pattern: &TyingPattern,
    weight_coeffs: &[f64],
    bias_coeffs: &[f64],
    activation: Activation,
) -> Result<Layer, EquinetError> {
    if weight_coeffs.len() != pattern.weight_classes.len() {
        return Err(EquinetError::Shape(format!(
            "{} weight coefficients for {} classes",
            weight_coeffs.len(),
            pattern.weight_classes.len()
        )));
    }
    if bias_coeffs.len() != pattern.bias_classes.len() {
        return Err(EquinetError::Shape(format!(
            "{} bias coefficients for {} classes",
            bias_coeffs.len(),
            pattern.bias_classes.len()
        )));
    }
    let mut w = Mat::zeros(pattern.out_dim, pattern.in_dim);
    for (class, &c) in pattern.weight_classes.iter().zip(weight_coeffs) {
        for &(i, j) in class {
            w.set(i, j, c);
        }
    }
    let mut b = vec![0.0; pattern.out_dim];
    for (class, &c) in pattern.bias_classes.iter().zip(bias_coeffs) {
        for &i in class {
            b[i] = c;
        }
    }
    Ok(Layer { w, b, activation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::check::check_model_equivariance;
    use super::super::layer::DenseModel;
    use crate::report::Status;
    use crate::symgrp::{FinGroup, Representation};
    use crate::ALG_TOL;

    fn cycle_action(n: usize) -> SetAction {
        let group = FinGroup::cyclic(n);
        let points: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
        let table = (0..n).map(|g| (0..n).map(|p| (p + g) % n).collect()).collect();
        SetAction { group, points, table }
    }

    #[test]
    fn cyclic_tying_is_circulant_with_n_classes() {
        let action = cycle_action(4);
        let (pattern, report) = compress(&action, &action).unwrap();
        assert_eq!(report.raw_weights, 16);
        assert_eq!(report.tied_weights, 4);
        assert_eq!(report.weight_ratio, 4.0);
        assert_eq!(report.raw_bias, 4);
        assert_eq!(report.tied_bias, 1);
        // Classes are the diagonals j - i mod 4, each of size 4.
        assert!(pattern.weight_classes.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn tied_layers_are_equivariant_by_construction() {
        let action = cycle_action(4);
        let (pattern, _) = compress(&action, &action).unwrap();
        let layer = layer_from_pattern(
            &pattern,
            &[1.0, -0.5, 0.25, 2.0],
            &[0.75],
            Activation::Tanh,
        )
        .unwrap();
        let rep = Representation::permutation(&action);
        let model = DenseModel::new(vec![layer]);
        let report = check_model_equivariance(&model, &rep, &rep, 10, 0, ALG_TOL).unwrap();
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
    }

    #[test]
    fn mixed_actions_tie_rectangular_layers() {
        // Z2 swapping two inputs, fixing one of three outputs.
        let group = FinGroup::cyclic(2);
        let input = SetAction {
            group: group.clone(),
            points: vec!["a".into(), "b".into()],
            table: vec![vec![0, 1], vec![1, 0]],
        };
        let output = SetAction {
            group,
            points: vec!["x".into(), "y".into(), "z".into()],
            table: vec![vec![0, 1, 2], vec![1, 0, 2]],
        };
        let (pattern, report) = compress(&input, &output).unwrap();
        // (x,a)~(y,b), (x,b)~(y,a), (z,a)~(z,b): 3 weight classes.
        assert_eq!(report.tied_weights, 3);
        assert_eq!(report.tied_bias, 2);
        assert_eq!(pattern.weight_classes.len(), 3);
    }

    #[test]
    fn different_groups_refuse_to_tie() {
        let a2 = cycle_action(2);
        let a3 = cycle_action(3);
        assert!(matches!(compress(&a2, &a3), Err(EquinetError::GroupMismatch(_))));
    }
}
