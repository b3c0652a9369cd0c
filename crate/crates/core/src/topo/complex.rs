//! Simplicial complexes and monotone filtrations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TopoError;
use crate::report::{LawReport, Violation};

pub fn simplex_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexData {
    pub simplices: Vec<Vec<usize>>,
}

/// A complex given by explicit simplices (vertex tuples, sorted strictly
/// increasing, dimension at most 3). Document order is preserved because
/// filtration values align with it by position.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    pub simplices: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    pub fn from_doc(doc: &ComplexData) -> Result<Self, TopoError> {
        let mut index = BTreeMap::new();
        for (i, s) in doc.simplices.iter().enumerate() {
            if s.is_empty() || s.len() > 4 {
                return Err(TopoError::MalformedDocument(format!(
                    "simplex {} has {} vertices; expected 1 to 4",
                    simplex_label(s),
                    s.len()
                )));
            }
            if !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(TopoError::MalformedDocument(format!(
                    "simplex {} is not strictly increasing",
                    simplex_label(s)
                )));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(TopoError::MalformedDocument(format!(
                    "duplicate simplex {}",
                    simplex_label(s)
                )));
            }
        }
        Ok(SimplicialComplex { simplices: doc.simplices.clone(), index })
    }

    pub fn from_simplices(simplices: Vec<Vec<usize>>) -> Result<Self, TopoError> {
        Self::from_doc(&ComplexData { simplices })
    }

    pub fn to_doc(&self) -> ComplexData {
        ComplexData { simplices: self.simplices.clone() }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.simplices.iter().flatten().max().map_or(0, |m| m + 1)
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    /// Codimension-1 faces (empty for vertices).
    pub fn faces(s: &[usize]) -> Vec<Vec<usize>> {
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|skip| {
                s.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect()
            })
            .collect()
    }
}

/// Face closure: every codimension-1 face of a listed simplex is listed.
/// Closure under iterated faces follows by induction.
pub fn validate_complex(k: &SimplicialComplex) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;
    for s in &k.simplices {
        for f in SimplicialComplex::faces(s) {
            cases += 1;
            if k.position(&f).is_none() {
                violations.push(Violation::new(
                    "face-closure",
                    [simplex_label(s), simplex_label(&f)],
                ));
            }
        }
    }
    LawReport::new("complex-validity", violations, cases.max(k.len() as u64))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationData {
    pub complex: ComplexData,
    pub values: Vec<f64>,
}

/// One real value per simplex, aligned by position with the complex.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub complex: SimplicialComplex,
    pub values: Vec<f64>,
}

impl Filtration {
    pub fn from_doc(doc: &FiltrationData) -> Result<Self, TopoError> {
        let complex = SimplicialComplex::from_doc(&doc.complex)?;
        if doc.values.len() != complex.len() {
            return Err(TopoError::MalformedDocument(format!(
                "{} values for {} simplices",
                doc.values.len(),
                complex.len()
            )));
        }
        if let Some(v) = doc.values.iter().find(|v| !v.is_finite()) {
            return Err(TopoError::MalformedDocument(format!(
                "non-finite filtration value {}",
                v
            )));
        }
        Ok(Filtration { complex, values: doc.values.clone() })
    }

    pub fn to_doc(&self) -> FiltrationData {
        FiltrationData { complex: self.complex.to_doc(), values: self.values.clone() }
    }

    pub fn value_of(&self, s: &[usize]) -> Option<f64> {
        self.complex.position(s).map(|i| self.values[i])
    }
}

/// Face closure plus monotonicity: no simplex may enter before its faces.
pub fn validate_filtration(f: &Filtration) -> LawReport {
    let closure = validate_complex(&f.complex);
    let mut violations = closure.violations;
    let mut cases = closure.cases;
    for (i, s) in f.complex.simplices.iter().enumerate() {
        for face in SimplicialComplex::faces(s) {
            if let Some(j) = f.complex.position(&face) {
                cases += 1;
                if f.values[j] > f.values[i] {
                    violations.push(Violation::new(
                        "monotonicity",
                        [
                            format!("{} at {}", simplex_label(&face), f.values[j]),
                            format!("{} at {}", simplex_label(s), f.values[i]),
                        ],
                    ));
                }
            }
        }
    }
    LawReport::new("filtration-validity", violations, cases)
}
