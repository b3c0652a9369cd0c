//! Persistence diagrams by boundary-matrix column reduction over GF(2).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::complex::{Filtration, SimplicialComplex};
use super::TopoError;

/// A single homological feature: born when its creating simplex enters, dead
/// when its killing simplex enters (infinity when never killed).
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Bar {
    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    fn key(&self) -> (usize, f64, f64) {
        (self.dim, self.birth, self.death)
    }
}

fn cmp_key(a: &(usize, f64, f64), b: &(usize, f64, f64)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarData {
    pub dim: usize,
    pub birth: f64,
    /// Absent means the feature never dies.
    pub death: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramData {
    pub bars: Vec<BarData>,
}

/// Multiset of bars, kept sorted by (dim, birth, death) for determinism.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub bars: Vec<Bar>,
}

impl PersistenceDiagram {
    pub fn new(mut bars: Vec<Bar>) -> Self {
        bars.sort_by(|a, b| cmp_key(&a.key(), &b.key()));
        PersistenceDiagram { bars }
    }

    pub fn from_doc(doc: &DiagramData) -> Result<Self, TopoError> {
        let mut bars = Vec::with_capacity(doc.bars.len());
        for b in &doc.bars {
            if !b.birth.is_finite() {
                return Err(TopoError::MalformedDocument(format!(
                    "non-finite birth {}",
                    b.birth
                )));
            }
            let death = match b.death {
                None => f64::INFINITY,
                Some(d) if !d.is_finite() => {
                    return Err(TopoError::MalformedDocument(format!(
                        "non-finite death {}; omit the field for an infinite bar",
                        d
                    )));
                }
                Some(d) if d < b.birth => {
                    return Err(TopoError::MalformedDocument(format!(
                        "death {} before birth {}",
                        d, b.birth
                    )));
                }
                Some(d) => d,
            };
            bars.push(Bar { dim: b.dim, birth: b.birth, death });
        }
        Ok(Self::new(bars))
    }

    pub fn to_doc(&self) -> DiagramData {
        DiagramData {
            bars: self
                .bars
                .iter()
                .map(|b| BarData {
                    dim: b.dim,
                    birth: b.birth,
                    death: if b.death.is_finite() { Some(b.death) } else { None },
                })
                .collect(),
        }
    }

    pub fn in_dim(&self, dim: usize) -> Vec<&Bar> {
        self.bars.iter().filter(|b| b.dim == dim).collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.bars.iter().map(|b| b.dim).max()
    }

    /// Exact multiset equality (births and deaths compared as the floats
    /// they are; both sides sorted the same way by construction).
    pub fn multiset_eq(&self, other: &Self) -> bool {
        self.bars.len() == other.bars.len()
            && self
                .bars
                .iter()
                .zip(&other.bars)
                .all(|(a, b)| a.dim == b.dim && a.birth == b.birth && a.death == b.death)
    }

    pub fn compact(&self) -> String {
        let parts: Vec<String> = self
            .bars
            .iter()
            .map(|b| {
                if b.is_infinite() {
                    format!("{}:({},inf)", b.dim, b.birth)
                } else {
                    format!("{}:({},{})", b.dim, b.birth, b.death)
                }
            })
            .collect();
        if parts.is_empty() {
            "(empty)".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Merge-style symmetric difference of two ascending index lists.
fn xor_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard persistence computation: simplices ordered by (value, dimension,
/// lexicographic tuple), boundary columns reduced left to right over GF(2);
/// a column that reduces to low row i pairs the bar (value[i], value[j]).
/// Zero-length pairs are dropped; unpaired creators become infinite bars.
///
/// The filtration must be face-closed and monotone (see
/// `validate_filtration`); a missing face panics.
pub fn persistence(f: &Filtration) -> PersistenceDiagram {
    let n = f.complex.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        f.values[a]
            .total_cmp(&f.values[b])
            .then(f.complex.simplices[a].len().cmp(&f.complex.simplices[b].len()))
            .then(f.complex.simplices[a].cmp(&f.complex.simplices[b]))
    });
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }

    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &i in &order {
        let mut col: Vec<usize> = SimplicialComplex::faces(&f.complex.simplices[i])
            .iter()
            .map(|face| {
                rank[f
                    .complex
                    .position(face)
                    .expect("persistence needs a face-closed complex")]
            })
            .collect();
        col.sort_unstable();
        cols.push(col);
    }

    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    let mut bars = Vec::new();
    let mut paired_birth = vec![false; n];
    for j in 0..n {
        let mut col = std::mem::take(&mut cols[j]);
        while let Some(&low) = col.last() {
            match low_owner[low] {
                Some(j2) => col = xor_columns(&col, &cols[j2]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            low_owner[low] = Some(j);
            paired_birth[low] = true;
            let (bi, di) = (order[low], order[j]);
            let (birth, death) = (f.values[bi], f.values[di]);
            if death > birth {
                bars.push(Bar { dim: f.complex.dim_of(bi), birth, death });
            }
        }
        cols[j] = col;
    }
    for j in 0..n {
        if cols[j].is_empty() && !paired_birth[j] {
            let i = order[j];
            bars.push(Bar {
                dim: f.complex.dim_of(i),
                birth: f.values[i],
                death: f64::INFINITY,
            });
        }
    }
    PersistenceDiagram::new(bars)
}
