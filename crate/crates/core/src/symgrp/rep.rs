//! Matrix representations: validation, Reynolds averaging, intertwiners.

use serde::{Deserialize, Serialize};

use super::group::{FinGroup, GroupData};
use super::SymError;
use crate::mat::{l2_diff, Mat};
use crate::report::{LawReport, Violation};
use crate::PIV_TOL;

/// Serialized form: the group inline, the matrix size, and one row-major
/// matrix per group element in element order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepData {
    pub group: GroupData,
    pub dim: usize,
    pub mats: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub group: FinGroup,
    pub dim: usize,
    pub mats: Vec<Mat>,
}

impl Representation {
    pub fn from_doc(doc: &RepData) -> Result<Self, SymError> {
        let group = FinGroup::from_doc(&doc.group)?;
        if doc.mats.len() != group.order() {
            return Err(SymError::MalformedDocument(format!(
                "{} matrices for a group of order {}",
                doc.mats.len(),
                group.order()
            )));
        }
        let mut mats = Vec::with_capacity(doc.mats.len());
        for (g, rows) in doc.mats.iter().enumerate() {
            if rows.len() != doc.dim || rows.iter().any(|r| r.len() != doc.dim) {
                return Err(SymError::MalformedDocument(format!(
                    "matrix for element {} is not {}x{}",
                    g, doc.dim, doc.dim
                )));
            }
            if rows.iter().flatten().any(|v| !v.is_finite()) {
                return Err(SymError::MalformedDocument(format!(
                    "matrix for element {} has a non-finite entry",
                    g
                )));
            }
            mats.push(Mat::from_rows(rows));
        }
        Ok(Representation { group, dim: doc.dim, mats })
    }

    pub fn to_doc(&self) -> RepData {
        RepData {
            group: self.group.to_doc(),
            dim: self.dim,
            mats: self
                .mats
                .iter()
                .map(|m| (0..m.rows).map(|i| m.row(i).to_vec()).collect())
                .collect(),
        }
    }

    #[inline]
    pub fn mat(&self, g: usize) -> &Mat {
        &self.mats[g]
    }

    pub fn apply(&self, g: usize, x: &[f64]) -> Vec<f64> {
        self.mats[g].matvec(x)
    }

    /// True when every matrix is a 0/1 permutation matrix.
    pub fn is_permutation_rep(&self) -> bool {
        self.mats.iter().all(Mat::is_permutation)
    }

    /// Permutation representation of an action: matrix entry (g(p), p) is 1.
    pub fn permutation(action: &super::SetAction) -> Self {
        let dim = action.n_points();
        let mats = (0..action.group.order())
            .map(|g| {
                let mut m = Mat::zeros(dim, dim);
                for p in 0..dim {
                    m.set(action.apply(g, p), p, 1.0);
                }
                m
            })
            .collect();
        Representation { group: action.group.clone(), dim, mats }
    }

    /// One-dimensional representation sending everything to 1.
    pub fn trivial(group: &FinGroup) -> Self {
        let mats = (0..group.order()).map(|_| Mat::identity(1)).collect();
        Representation { group: group.clone(), dim: 1, mats }
    }
}

/// Checks that the identity maps to the identity matrix exactly, that the
/// table is respected up to `tol` in the max-abs norm, and that every matrix
/// is invertible at the elimination threshold.
pub fn validate_representation(rep: &Representation, tol: f64) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;
    let n = rep.group.order();

    match rep.group.identity() {
        Ok(e) => {
            cases += 1;
            if rep.mats[e] != Mat::identity(rep.dim) {
                violations.push(Violation::new("identity-matrix", vec![rep.group.name(e)]));
            }
        }
        Err(_) => violations.push(Violation::new("identity-matrix", vec!["<no group identity>"])),
    }

    for g in 0..n {
        for h in 0..n {
            cases += 1;
            let lhs = rep.mats[g].matmul(&rep.mats[h]);
            let rhs = &rep.mats[rep.group.mul(g, h)];
            if !lhs.approx_eq(rhs, tol) {
                violations.push(Violation::new(
                    "homomorphism",
                    vec![rep.group.name(g), rep.group.name(h)],
                ));
            }
        }
    }

    for g in 0..n {
        cases += 1;
        if rep.mats[g].inverse(PIV_TOL).is_none() {
            violations.push(Violation::new("invertible", vec![rep.group.name(g)]));
        }
    }

    LawReport::new("representation-laws", violations, cases)
}

/// Group average of the orbit of `x`: (1/|G|) sum over g of the matrix for
/// g^-1 applied to x. The result is fixed by every group element whenever the
/// representation laws hold.
pub fn reynolds_vector(rep: &Representation, x: &[f64]) -> Result<Vec<f64>, SymError> {
    if x.len() != rep.dim {
        return Err(SymError::DimensionMismatch { expected: rep.dim, got: x.len() });
    }
    rep.group.identity()?;
    let mut acc = vec![0.0; rep.dim];
    for g in 0..rep.group.order() {
        let inv = rep.group.inverse(g)?;
        let gy = rep.apply(inv, x);
        for (a, b) in acc.iter_mut().zip(&gy) {
            *a += b;
        }
    }
    let scale = 1.0 / rep.group.order() as f64;
    Ok(acc.into_iter().map(|v| v * scale).collect())
}

/// The averaging projector as a matrix: (1/|G|) sum over g of the matrix for
/// g^-1. Idempotent up to roundoff, and its column space is the fixed
/// subspace.
pub fn reynolds_map(rep: &Representation) -> Result<Mat, SymError> {
    rep.group.identity()?;
    let mut acc = Mat::zeros(rep.dim, rep.dim);
    for g in 0..rep.group.order() {
        let inv = rep.group.inverse(g)?;
        acc = acc.add(&rep.mats[inv]);
    }
    Ok(acc.scale(1.0 / rep.group.order() as f64))
}

/// Basis of the space of linear maps A with out(g) A = A in(g) for all g,
/// found by stacking the constraint rows for every group element and taking
/// the nullspace. Deterministic: the elimination order fixes the basis.
pub fn intertwiner_basis(rep_in: &Representation, rep_out: &Representation) -> Vec<Mat> {
    assert_eq!(
        rep_in.group.order(),
        rep_out.group.order(),
        "intertwiners need a shared group"
    );
    let (di, dn) = (rep_in.dim, rep_out.dim);
    let unknowns = dn * di;
    let n = rep_in.group.order();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n * unknowns);
    for g in 0..n {
        let rho_out = &rep_out.mats[g];
        let rho_in = &rep_in.mats[g];
        // Constraint entry (i, j): sum_k out[i][k] A[k][j] - A[i][k] in[k][j] = 0.
        for i in 0..dn {
            for j in 0..di {
                let mut row = vec![0.0; unknowns];
                for k in 0..dn {
                    row[k * di + j] += rho_out.get(i, k);
                }
                for k in 0..di {
                    row[i * di + k] -= rho_in.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    let constraints = Mat::from_rows(&rows);
    constraints
        .nullspace(PIV_TOL)
        .into_iter()
        .map(|v| Mat::new(dn, di, v))
        .collect()
}

/// Basis of the subspace fixed by every group element: column-space basis of
/// the averaging projector, each vector scaled so its first nonzero entry
/// is 1.
pub fn fixed_subspace(rep: &Representation) -> Result<Vec<Vec<f64>>, SymError> {
    Ok(reynolds_map(rep)?.column_space_basis(PIV_TOL))
}

/// Distance from x to the orbit of y: min over g of |x - g.y| in the
/// Euclidean norm. Zero (up to roundoff) exactly when x and y lie on the same
/// orbit.
pub fn orbit_distance(rep: &Representation, x: &[f64], y: &[f64]) -> Result<f64, SymError> {
    if x.len() != rep.dim {
        return Err(SymError::DimensionMismatch { expected: rep.dim, got: x.len() });
    }
    if y.len() != rep.dim {
        return Err(SymError::DimensionMismatch { expected: rep.dim, got: y.len() });
    }
    let mut best = f64::INFINITY;
    for g in 0..rep.group.order() {
        best = best.min(l2_diff(x, &rep.apply(g, y)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ALG_TOL;
    use crate::report::Status;
    use crate::symgrp::SetAction;

    /// Z2 acting on R^2 by swapping coordinates.
    fn swap_rep() -> Representation {
        let group = FinGroup::cyclic(2);
        let mats = vec![
            Mat::identity(2),
            Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
        ];
        Representation { group, dim: 2, mats }
    }

    #[test]
    fn swap_representation_is_valid() {
        let report = validate_representation(&swap_rep(), ALG_TOL);
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
    }

    #[test]
    fn scaled_matrix_breaks_the_homomorphism_law() {
        let mut rep = swap_rep();
        rep.mats[1] = rep.mats[1].scale(2.0);
        let report = validate_representation(&rep, ALG_TOL);
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "homomorphism"));
    }

    #[test]
    fn averaging_projects_onto_the_diagonal() {
        let rep = swap_rep();
        let avg = reynolds_vector(&rep, &[3.0, 1.0]).unwrap();
        assert_eq!(avg, vec![2.0, 2.0]);
        let p = reynolds_map(&rep).unwrap();
        assert!(p.matmul(&p).approx_eq(&p, 1e-12));
        // The averaged vector is fixed by every element.
        for g in 0..2 {
            assert!(l2_diff(&rep.apply(g, &avg), &avg) <= 1e-12);
        }
        assert_eq!(fixed_subspace(&rep).unwrap(), vec![vec![1.0, 1.0]]);
    }

    #[test]
    fn swap_self_intertwiners_are_identity_and_flip() {
        let rep = swap_rep();
        let basis = intertwiner_basis(&rep, &rep);
        assert_eq!(basis.len(), 2);
        // Every basis element commutes with the swap.
        for b in &basis {
            for g in 0..2 {
                let lhs = rep.mats[g].matmul(b);
                let rhs = b.matmul(&rep.mats[g]);
                assert!(lhs.approx_eq(&rhs, 1e-12));
            }
        }
        // The span contains the identity: solve c1*b1 + c2*b2 = I at two
        // independent entries.
        let i2 = Mat::identity(2);
        let span_has = |target: &Mat| {
            let a = Mat::from_rows(&[
                vec![basis[0].get(0, 0), basis[1].get(0, 0)],
                vec![basis[0].get(0, 1), basis[1].get(0, 1)],
            ]);
            a.inverse(1e-12).map(|ainv| {
                let c = ainv.matvec(&[target.get(0, 0), target.get(0, 1)]);
                let rec = basis[0].scale(c[0]).add(&basis[1].scale(c[1]));
                rec.approx_eq(target, 1e-9)
            }) == Some(true)
        };
        assert!(span_has(&i2));
        assert!(span_has(&Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])));
    }

    #[test]
    fn trivial_to_swap_intertwiners_are_constant_vectors() {
        let rep = swap_rep();
        let triv = Representation::trivial(&rep.group);
        let basis = intertwiner_basis(&triv, &rep);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].data, vec![1.0, 1.0]);
    }

    #[test]
    fn orbit_distance_minimizes_over_the_orbit() {
        let rep = swap_rep();
        // Orbit of (0, 2) is {(0, 2), (2, 0)}; distance from (1, 2) is 1.
        let d = orbit_distance(&rep, &[1.0, 2.0], &[0.0, 2.0]).unwrap();
        assert!((d - 1.0).abs() <= 1e-12);
        // A point on the orbit has distance zero.
        let d0 = orbit_distance(&rep, &[2.0, 0.0], &[0.0, 2.0]).unwrap();
        assert_eq!(d0, 0.0);
    }

    #[test]
    fn permutation_rep_of_an_action_is_valid_and_detected() {
        let group = FinGroup::cyclic(3);
        let points: Vec<String> = (0..3).map(|i| format!("p{}", i)).collect();
        let table = (0..3).map(|g| (0..3).map(|p| (p + g) % 3).collect()).collect();
        let action = SetAction { group, points, table };
        let rep = Representation::permutation(&action);
        assert!(rep.is_permutation_rep());
        assert_eq!(validate_representation(&rep, ALG_TOL).status, Status::Pass);
        // Averaging over a cyclic shift gives the all-ones direction.
        assert_eq!(fixed_subspace(&rep).unwrap(), vec![vec![1.0, 1.0, 1.0]]);
    }
}
