//! Small dense row-major matrices.
//!
//! Desk-scale linear algebra only: multiply, invert, reduce. Elimination
//! routines take an explicit pivot tolerance because representation checks
//! and intertwiner solves pin their own (`symgrp::PIV_TOL`).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    /// Row-major, length rows*cols.
    pub data: Vec<f64>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &a| m.max(a.abs()))
    }

    /// Induced infinity norm (max absolute row sum).
    pub fn inf_op_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.sub(other).max_abs() <= tol
    }

    /// Exact test for a 0/1 permutation matrix.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        let mut col_seen = vec![false; n];
        for i in 0..n {
            let mut ones = 0;
            let mut one_col = 0;
            for j in 0..n {
                let v = self.get(i, j);
                if v == 1.0 {
                    ones += 1;
                    one_col = j;
                } else if v != 0.0 {
                    return false;
                }
            }
            if ones != 1 || col_seen[one_col] {
                return false;
            }
            col_seen[one_col] = true;
        }
        true
    }

    /// Gauss-Jordan inverse with partial pivoting. `None` if a pivot falls
    /// below `piv_tol`.
    pub fn inverse(&self, piv_tol: f64) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r1, &r2| a.get(r1, col).abs().total_cmp(&a.get(r2, col).abs()))?;
            if a.get(pivot_row, col).abs() <= piv_tol {
                return None;
            }
            for j in 0..n {
                let t = a.get(col, j);
                a.set(col, j, a.get(pivot_row, j));
                a.set(pivot_row, j, t);
                let t = inv.get(col, j);
                inv.set(col, j, inv.get(pivot_row, j));
                inv.set(pivot_row, j, t);
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - factor * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - factor * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }

    /// Condition estimate in the infinity norm; `None` when singular at
    /// `piv_tol`.
    pub fn cond_inf(&self, piv_tol: f64) -> Option<f64> {
        let inv = self.inverse(piv_tol)?;
        Some(self.inf_op_norm() * inv.inf_op_norm())
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self, piv_tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = (row..self.rows)
                .max_by(|&r1, &r2| self.get(r1, col).abs().total_cmp(&self.get(r2, col).abs()))
                .unwrap();
            if self.get(pivot_row, col).abs() <= piv_tol {
                continue;
            }
            for j in 0..self.cols {
                let t = self.get(row, j);
                self.set(row, j, self.get(pivot_row, j));
                self.set(pivot_row, j, t);
            }
            let p = self.get(row, col);
            for j in 0..self.cols {
                self.set(row, j, self.get(row, j) / p);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0.0 {
                    continue;
                }
                for j in 0..self.cols {
                    self.set(r, j, self.get(r, j) - factor * self.get(row, j));
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, piv_tol: f64) -> usize {
        let mut m = self.clone();
        m.rref(piv_tol).len()
    }

    /// Nullspace basis from the RREF free-variable parametrization: one
    /// vector per free column, with a 1 in its free slot. Deterministic.
    pub fn nullspace(&self, piv_tol: f64) -> Vec<Vec<f64>> {
        let mut m = self.clone();
        let pivots = m.rref(piv_tol);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0.0; self.cols];
            v[free] = 1.0;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space: the pivot columns of the original matrix,
    /// each scaled so its first nonzero entry is 1.
    pub fn column_space_basis(&self, piv_tol: f64) -> Vec<Vec<f64>> {
        let mut m = self.clone();
        let pivots = m.rref(piv_tol);
        pivots
            .iter()
            .map(|&c| {
                let col: Vec<f64> = (0..self.rows).map(|r| self.get(r, c)).collect();
                let lead = col.iter().copied().find(|v| v.abs() > piv_tol).unwrap_or(1.0);
                col.iter().map(|v| v / lead).collect()
            })
            .collect()
    }
}

// Vector helpers shared by the checkers.

pub fn vec_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn linf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

pub fn linf_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn l2(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn l2_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|x| x.is_finite())
}
