//! Problem specifications and the network ansatz, with order-2 evaluation.

use serde::{Deserialize, Serialize};

use crate::equinet::{Activation, DenseModel};
use crate::optdyn::Dual2;

use super::PinnError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    /// u'' = f on an interval with Dirichlet boundary values.
    Poisson1d,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFn {
    /// f(x) = -pi^2 cos(pi x); on [-1, 1] with boundary -1 at both ends the
    /// solution is cos(pi x).
    CosPi,
    Zero,
    One,
    /// Samples at the collocation grid, in grid order.
    Table(Vec<f64>),
}

impl SourceFn {
    pub fn values_on(&self, grid: &[f64]) -> Result<Vec<f64>, PinnError> {
        let vals = match self {
            SourceFn::CosPi => grid
                .iter()
                .map(|&x| -std::f64::consts::PI * std::f64::consts::PI
                    * (std::f64::consts::PI * x).cos())
                .collect(),
            SourceFn::Zero => vec![0.0; grid.len()],
            SourceFn::One => vec![1.0; grid.len()],
            SourceFn::Table(samples) => {
                if samples.len() != grid.len() {
                    return Err(PinnError::MalformedSpec(format!(
                        "source table has {} samples for {} collocation points",
                        samples.len(),
                        grid.len()
                    )));
                }
                samples.clone()
            }
        };
        if let Some(bad) = vals.iter().find(|v| !v.is_finite()) {
            return Err(PinnError::MalformedSpec(format!("non-finite source value {}", bad)));
        }
        Ok(vals)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PdeSpec {
    pub equation: Equation,
    /// Interval [a, b].
    pub domain: (f64, f64),
    pub source: SourceFn,
    /// Dirichlet values (u(a), u(b)).
    pub boundary: (f64, f64),
    /// Number of uniformly placed collocation points, endpoints included.
    pub collocation: usize,
    /// Boundary penalty weight.
    pub lambda: f64,
}

impl PdeSpec {
    /// The stock demo problem: u'' = -pi^2 cos(pi x) on [-1, 1], boundary -1
    /// at both ends, 17 collocation points (a dyadic grid, so the mirror of
    /// every grid point is a grid point, bitwise), unit boundary weight.
    pub fn poisson_cospi() -> Self {
        PdeSpec {
            equation: Equation::Poisson1d,
            domain: (-1.0, 1.0),
            source: SourceFn::CosPi,
            boundary: (-1.0, -1.0),
            collocation: 17,
            lambda: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), PinnError> {
        let (a, b) = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(PinnError::MalformedSpec(format!("domain [{}, {}]", a, b)));
        }
        if self.collocation < 2 {
            return Err(PinnError::MalformedSpec(format!(
                "{} collocation points; the boundary alone needs 2",
                self.collocation
            )));
        }
        if !(self.boundary.0.is_finite() && self.boundary.1.is_finite()) {
            return Err(PinnError::MalformedSpec("non-finite boundary value".into()));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(PinnError::MalformedSpec(format!(
                "boundary weight {}",
                self.lambda
            )));
        }
        self.source.values_on(&self.grid())?;
        Ok(())
    }

    /// Uniform collocation grid from a to b inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let (a, b) = self.domain;
        let n = self.collocation;
        (0..n)
            .map(|i| a + (b - a) * (i as f64) / ((n - 1) as f64))
            .collect()
    }

    pub fn symmetric_domain(&self) -> bool {
        self.domain.0 == -self.domain.1
    }
}

/// A 1D scalar network, optionally wrapped in the reflection average
/// u_s(x) = (u(x) + u(-x)) / 2, which is invariant under x -> -x exactly:
/// both orders of the same two summands add to the same float.
#[derive(Debug, Clone)]
pub struct Ansatz {
    pub base: DenseModel,
    pub symmetrized: bool,
}

impl Ansatz {
    pub fn new(base: DenseModel) -> Result<Self, PinnError> {
        if base.in_dim() != 1 || base.out_dim() != 1 {
            return Err(PinnError::MalformedSpec(format!(
                "ansatz network maps {} -> {}, needs 1 -> 1",
                base.in_dim(),
                base.out_dim()
            )));
        }
        if base
            .layers
            .iter()
            .any(|l| matches!(l.activation, Activation::Relu))
        {
            return Err(PinnError::MalformedSpec(
                "relu has no second derivative; use tanh hidden layers".into(),
            ));
        }
        Ok(Ansatz { base, symmetrized: false })
    }

    fn base_dual(&self, x: f64, dx: f64) -> Dual2 {
        self.base.forward(&[Dual2::seeded(x, dx)])[0]
    }

    /// (u, u', u'') at x by order-2 forward-mode differentiation.
    pub fn probe(&self, x: f64) -> (f64, f64, f64) {
        let p = self.base_dual(x, 1.0);
        if !self.symmetrized {
            return (p.v, p.d, p.dd);
        }
        let m = self.base_dual(-x, -1.0);
        (0.5 * (p.v + m.v), 0.5 * (p.d + m.d), 0.5 * (p.dd + m.dd))
    }

    pub fn value(&self, x: f64) -> f64 {
        let p = self.base.forward_f64(&[x])[0];
        if !self.symmetrized {
            return p;
        }
        let m = self.base.forward_f64(&[-x])[0];
        0.5 * (p + m)
    }

    pub fn second(&self, x: f64) -> f64 {
        self.probe(x).2
    }

    /// max |u(x) - u(-x)| over the grid.
    pub fn grid_defect(&self, grid: &[f64]) -> f64 {
        grid.iter()
            .map(|&x| (self.value(x) - self.value(-x)).abs())
            .fold(0.0, f64::max)
    }
}

/// Restrict the ansatz to reflection-invariant functions by group averaging.
/// Only a domain symmetric about 0 makes the reflection an endomap of it.
pub fn symmetrize(ans: &Ansatz, spec: &PdeSpec) -> Result<Ansatz, PinnError> {
    if !spec.symmetric_domain() {
        return Err(PinnError::AsymmetricDomain { a: spec.domain.0, b: spec.domain.1 });
    }
    Ok(Ansatz { base: ans.base.clone(), symmetrized: true })
}

/// Mean squared collocation residual plus weighted squared boundary error,
/// for any second-order-evaluable candidate. `probe` returns (u, u'').
pub(crate) fn grid_loss(
    probe: impl Fn(f64) -> (f64, f64),
    spec: &PdeSpec,
    grid: &[f64],
    fvals: &[f64],
) -> f64 {
    let n = grid.len();
    let mut acc = 0.0;
    for (&x, &f) in grid.iter().zip(fvals) {
        let r = probe(x).1 - f;
        acc += r * r;
    }
    let mut loss = acc / n as f64;
    let bl = probe(grid[0]).0 - spec.boundary.0;
    let br = probe(grid[n - 1]).0 - spec.boundary.1;
    loss += spec.lambda * (bl * bl + br * br);
    loss
}

/// Collocation loss of the ansatz: mean (u''(x) - f(x))^2 over the grid plus
/// lambda times the squared boundary mismatch at the endpoints.
pub fn residual_loss(ans: &Ansatz, spec: &PdeSpec) -> Result<f64, PinnError> {
    spec.validate()?;
    let grid = spec.grid();
    let fvals = spec.source.values_on(&grid)?;
    let loss = grid_loss(
        |x| {
            let (v, _, dd) = ans.probe(x);
            (v, dd)
        },
        spec,
        &grid,
        &fvals,
    );
    if !loss.is_finite() {
        return Err(PinnError::NonFinite { context: "residual loss".into(), partial: None });
    }
    Ok(loss)
}
