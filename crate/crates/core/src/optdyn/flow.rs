//! Discrete-time flows: iterate a step map and check the laws that make the
//! iteration a flow (semigroup in time, commuting with a representation).

use super::diff::{DiffFunction, LossFn};
use crate::mat::linf_diff;
use crate::report::{LawReport, Violation};
use crate::rng::CounterRng;
use crate::symgrp::Representation;

/// A one-step update; time-t evolution is the t-fold composition, so the
/// semigroup law holds bitwise by construction and the check below is a
/// tripwire for anything that breaks that (stateful steps, shape changes).
pub struct FlowMap {
    pub step: Box<dyn Fn(&[f64]) -> Vec<f64>>,
}

impl FlowMap {
    pub fn new(step: Box<dyn Fn(&[f64]) -> Vec<f64>>) -> Self {
        FlowMap { step }
    }

    /// Explicit gradient descent on a stock loss.
    pub fn gradient_step(loss: LossFn, eta: f64) -> Self {
        FlowMap {
            step: Box::new(move |x: &[f64]| {
                let g = loss.gradient(x);
                x.iter().zip(&g).map(|(xi, gi)| xi - eta * gi).collect()
            }),
        }
    }

    pub fn apply(&self, x: &[f64], t: usize) -> Vec<f64> {
        let mut cur = x.to_vec();
        for _ in 0..t {
            cur = (self.step)(&cur);
        }
        cur
    }
}

/// Checks apply(apply(x, s), t) == apply(x, s+t) exactly (bitwise) on the
/// given (s, t) pairs plus seeded random pairs with s, t <= 16, each at a
/// fresh random point.
pub fn check_semigroup(
    flow: &FlowMap,
    dim: usize,
    given: &[(usize, usize)],
    n_random: usize,
    seed: u64,
) -> LawReport {
    let mut rng = CounterRng::stream(seed, 1);
    let mut pairs: Vec<(usize, usize)> = given.to_vec();
    for _ in 0..n_random {
        pairs.push((rng.below(17) as usize, rng.below(17) as usize));
    }
    let mut violations = Vec::new();
    let mut xrng = CounterRng::stream(seed, 2);
    for (i, &(s, t)) in pairs.iter().enumerate() {
        let x = xrng.normal_vec(dim);
        let stepped = flow.apply(&flow.apply(&x, s), t);
        let joint = flow.apply(&x, s + t);
        if stepped != joint {
            violations.push(Violation::new(
                "semigroup",
                vec![s.to_string(), t.to_string(), format!("case{}", i)],
            ));
        }
    }
    let cases = pairs.len() as u64;
    LawReport::new("flow-semigroup", violations, cases)
}

/// Checks that the flow commutes with every group element up to `tol` at
/// every time 0..=t_max, on seeded random points.
pub fn check_flow_equivariance(
    flow: &FlowMap,
    rep: &Representation,
    t_max: usize,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut rng = CounterRng::stream(seed, 3);
    let mut max_defect: f64 = 0.0;
    for i in 0..n_samples {
        let x = rng.normal_vec(rep.dim);
        for g in 0..rep.group.order() {
            let gx = rep.apply(g, &x);
            for t in 0..=t_max {
                cases += 1;
                let lhs = flow.apply(&gx, t);
                let rhs = rep.apply(g, &flow.apply(&x, t));
                let defect = linf_diff(&lhs, &rhs);
                max_defect = max_defect.max(defect);
                if !(defect <= tol) {
                    violations.push(Violation::new(
                        "flow-equivariance",
                        vec![rep.group.name(g).to_string(), t.to_string(), format!("sample{}", i)],
                    ));
                }
            }
        }
    }
    LawReport::new("flow-equivariance", violations, cases).with_metric("max_defect", max_defect)
}
