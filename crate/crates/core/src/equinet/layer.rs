//! Dense layers and models, plus the two constructions of exactly
//! equivariant layers.

use serde::{Deserialize, Serialize};

use super::EquinetError;
use crate::mat::Mat;
use crate::optdyn::Real;
use crate::rng::CounterRng;
use crate::symgrp::{
    fixed_subspace, intertwiner_basis, reynolds_vector, RepData, Representation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Identity,
    Tanh,
    Relu,
}

impl Activation {
    pub fn is_linear(self) -> bool {
        matches!(self, Activation::Identity)
    }

    pub fn apply<R: Real>(self, x: R) -> R {
        match self {
            Activation::Identity => x,
            Activation::Tanh => x.tanh(),
            // Multiplying by the zero constant keeps the derivative carrier
            // zeroed on the flat side.
            Activation::Relu => {
                if x.value() > 0.0 {
                    x
                } else {
                    R::from_f64(0.0) * x
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub w: Mat,
    pub b: Vec<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn out_dim(&self) -> usize {
        self.w.rows
    }

    pub fn in_dim(&self) -> usize {
        self.w.cols
    }

    pub fn forward<R: Real>(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.w.cols, "layer input size");
        (0..self.w.rows)
            .map(|i| {
                let mut acc = R::from_f64(self.b[i]);
                for j in 0..self.w.cols {
                    acc = acc + R::from_f64(self.w.get(i, j)) * x[j];
                }
                self.activation.apply(acc)
            })
            .collect()
    }
}

/// Serialized layer: row-major weights, bias, activation name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayerData {
    pub w: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub activation: Activation,
}

/// Serialized model, optionally carrying the representations it claims to
/// be equivariant for.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelData {
    pub layers: Vec<LayerData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_rep: Option<RepData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_rep: Option<RepData>,
}

#[derive(Debug, Clone)]
pub struct DenseModel {
    pub layers: Vec<Layer>,
    /// The claimed (input, output) symmetry, when the document carried one.
    pub boundary_reps: Option<Box<(Representation, Representation)>>,
}

impl DenseModel {
    pub fn new(layers: Vec<Layer>) -> Self {
        DenseModel { layers, boundary_reps: None }
    }

    pub fn from_doc(doc: &ModelData) -> Result<Self, EquinetError> {
        let mut layers = Vec::with_capacity(doc.layers.len());
        for (i, l) in doc.layers.iter().enumerate() {
            let rows = l.w.len();
            if rows == 0 || l.w.iter().any(|r| r.len() != l.w[0].len()) {
                return Err(EquinetError::Shape(format!("layer {} weights are ragged or empty", i)));
            }
            if l.b.len() != rows {
                return Err(EquinetError::Shape(format!(
                    "layer {} has {} bias entries for {} rows",
                    i,
                    l.b.len(),
                    rows
                )));
            }
            layers.push(Layer { w: Mat::from_rows(&l.w), b: l.b.clone(), activation: l.activation });
        }
        for pair in layers.windows(2) {
            if pair[1].in_dim() != pair[0].out_dim() {
                return Err(EquinetError::Shape(format!(
                    "layer sizes do not chain: {} then {}",
                    pair[0].out_dim(),
                    pair[1].in_dim()
                )));
            }
        }
        let boundary_reps = match (&doc.input_rep, &doc.output_rep) {
            (Some(i), Some(o)) => Some(Box::new((
                Representation::from_doc(i).map_err(EquinetError::Sym)?,
                Representation::from_doc(o).map_err(EquinetError::Sym)?,
            ))),
            (None, None) => None,
            _ => {
                return Err(EquinetError::Shape(
                    "boundary representations must be given for both ends or neither".into(),
                ))
            }
        };
        Ok(DenseModel { layers, boundary_reps })
    }

    pub fn to_doc(&self) -> ModelData {
        ModelData {
            layers: self
                .layers
                .iter()
                .map(|l| LayerData {
                    w: (0..l.w.rows).map(|i| l.w.row(i).to_vec()).collect(),
                    b: l.b.clone(),
                    activation: l.activation,
                })
                .collect(),
            input_rep: self.boundary_reps.as_ref().map(|r| r.0.to_doc()),
            output_rep: self.boundary_reps.as_ref().map(|r| r.1.to_doc()),
        }
    }

    pub fn in_dim(&self) -> usize {
        self.layers.first().map(Layer::in_dim).unwrap_or(0)
    }

    pub fn out_dim(&self) -> usize {
        self.layers.last().map(Layer::out_dim).unwrap_or(0)
    }

    pub fn forward<R: Real>(&self, x: &[R]) -> Vec<R> {
        let mut cur = x.to_vec();
        for layer in &self.layers {
            cur = layer.forward(&cur);
        }
        cur
    }

    pub fn forward_f64(&self, x: &[f64]) -> Vec<f64> {
        self.forward::<f64>(x)
    }

    pub fn has_nonlinearity(&self) -> bool {
        self.layers.iter().any(|l| !l.activation.is_linear())
    }

    /// Product of all weight matrices (last layer first), defined when every
    /// activation is the identity so the model is the affine map it looks
    /// like.
    pub fn collapsed_weights(&self) -> Option<Mat> {
        if self.has_nonlinearity() || self.layers.is_empty() {
            return None;
        }
        let mut acc = self.layers[0].w.clone();
        for layer in &self.layers[1..] {
            acc = layer.w.matmul(&acc);
        }
        Some(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Draw a random layer and average it over the group:
    /// W <- mean over g of out(g^-1) W in(g), bias group-averaged.
    Average,
    /// Draw random coefficients over the intertwiner basis and the fixed
    /// subspace, so equivariance holds by construction of the span.
    Basis,
}

/// Builds a layer whose weights commute with the pair of representations
/// and whose bias is fixed by the output representation. Both constructions
/// give exact equivariance up to roundoff; they differ in how the random
/// degrees of freedom are parametrized.
pub fn build_equivariant_layer(
    rep_in: &Representation,
    rep_out: &Representation,
    mode: BuildMode,
    activation: Activation,
    seed: u64,
) -> Result<Layer, EquinetError> {
    if rep_in.group.order() != rep_out.group.order() {
        return Err(EquinetError::GroupMismatch(format!(
            "orders {} and {}",
            rep_in.group.order(),
            rep_out.group.order()
        )));
    }
    let mut rng = CounterRng::stream(seed, 8);
    match mode {
        BuildMode::Average => {
            let raw = Mat::new(
                rep_out.dim,
                rep_in.dim,
                rng.normal_vec(rep_out.dim * rep_in.dim),
            );
            let mut acc = Mat::zeros(rep_out.dim, rep_in.dim);
            for g in 0..rep_in.group.order() {
                let ginv = rep_out.group.inverse(g).map_err(EquinetError::Sym)?;
                acc = acc.add(&rep_out.mat(ginv).matmul(&raw).matmul(rep_in.mat(g)));
            }
            let w = acc.scale(1.0 / rep_in.group.order() as f64);
            let b_raw = rng.normal_vec(rep_out.dim);
            let b = reynolds_vector(rep_out, &b_raw).map_err(EquinetError::Sym)?;
            Ok(Layer { w, b, activation })
        }
        BuildMode::Basis => {
            let basis = intertwiner_basis(rep_in, rep_out);
            let mut w = Mat::zeros(rep_out.dim, rep_in.dim);
            for bmat in &basis {
                w = w.add(&bmat.scale(rng.normal()));
            }
            let fixed = fixed_subspace(rep_out).map_err(EquinetError::Sym)?;
            let mut b = vec![0.0; rep_out.dim];
            for v in &fixed {
                let c = rng.normal();
                for (bi, vi) in b.iter_mut().zip(v) {
                    *bi += c * vi;
                }
            }
            Ok(Layer { w, b, activation })
        }
    }
}
