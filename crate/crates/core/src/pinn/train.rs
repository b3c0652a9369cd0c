//! The comparison trainer. Collocation batches propagate (value, d/dx,
//! d2/dx2) through the network in one augmented forward pass; the reverse
//! pass accumulates exact parameter gradients of the residual-plus-boundary
//! loss. Summation orders are fixed, so identical inputs give bitwise
//! identical runs.

use serde::{Deserialize, Serialize};

use crate::optdyn::FlowMap;
use crate::rng::CounterRng;

use super::model::PdeSpec;
use super::PinnError;

/// Default gradient-descent step size.
pub const DEFAULT_LR: f64 = 0.01;
/// Default scale of the uniform weight init, divided by sqrt(fan-in).
pub const DEFAULT_WSCALE: f64 = 2.0;
const INIT_STREAM: u64 = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Hidden layer widths; the network is 1 -> hidden... -> 1 with tanh
    /// hidden activations and a linear head.
    pub hidden: Vec<usize>,
    pub steps: usize,
    pub seed: u64,
    pub lr: f64,
    pub wscale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            hidden: vec![16, 16],
            steps: 2000,
            seed: 0,
            lr: DEFAULT_LR,
            wscale: DEFAULT_WSCALE,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainReport {
    pub symmetric: bool,
    pub seed: u64,
    /// Completed gradient steps; both curves have steps + 1 entries.
    pub steps: usize,
    pub loss_curve: Vec<f64>,
    /// Reflection defect max |u(x) - u(-x)| over the grid, per recorded step.
    pub defect_curve: Vec<f64>,
    pub final_loss: f64,
    /// Mean squared collocation residual at the final parameters.
    pub final_residual: f64,
    /// Worst absolute boundary mismatch at the final parameters.
    pub boundary_error: f64,
    /// Max of the defect curve.
    pub invariance_defect: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdCrossing {
    pub threshold: f64,
    /// First recorded step with loss at or below the threshold.
    pub baseline_steps: Option<usize>,
    pub symmetrized_steps: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub baseline: TrainReport,
    pub symmetrized: TrainReport,
    /// Measured steps-to-threshold; reported, never asserted.
    pub crossings: Vec<ThresholdCrossing>,
    pub flags: Vec<String>,
}

fn widths_of(hidden: &[usize]) -> Vec<(usize, usize)> {
    let mut dims = Vec::with_capacity(hidden.len() + 2);
    dims.push(1);
    dims.extend_from_slice(hidden);
    dims.push(1);
    dims.windows(2).map(|w| (w[0], w[1])).collect()
}

fn param_count(widths: &[(usize, usize)]) -> usize {
    widths.iter().map(|&(fi, fo)| fo * (fi + 1)).sum()
}

/// Weights drawn uniformly in ±wscale/sqrt(fan-in), row-major per layer;
/// biases start at zero and consume no draws.
fn init_params(widths: &[(usize, usize)], seed: u64, wscale: f64) -> Vec<f64> {
    let mut rng = CounterRng::stream(seed, INIT_STREAM);
    let mut params = Vec::with_capacity(param_count(widths));
    for &(fi, fo) in widths {
        let scale = wscale / (fi as f64).sqrt();
        for _ in 0..fo * fi {
            params.push((rng.uniform() * 2.0 - 1.0) * scale);
        }
        params.extend(std::iter::repeat(0.0).take(fo));
    }
    params
}

/// Per-layer forward state kept for the reverse pass. Channel buffers are
/// row-major (unit, column): buf[r * ncols + j].
struct LayerCache {
    a: Vec<f64>,
    ad: Vec<f64>,
    add: Vec<f64>,
    sd: Vec<f64>,
    sdd: Vec<f64>,
    p1: Vec<f64>,
    p2: Vec<f64>,
    p3: Vec<f64>,
}

struct ForwardPass {
    u: Vec<f64>,
    udd: Vec<f64>,
    caches: Vec<LayerCache>,
}

#[derive(Clone)]
struct GridTask {
    widths: Vec<(usize, usize)>,
    xs: Vec<f64>,
    fvals: Vec<f64>,
    lambda: f64,
    ua: f64,
    ub: f64,
    symmetric: bool,
}

impl GridTask {
    /// The batch: the grid itself, with its reflection appended when the
    /// symmetrized average is in force.
    fn xin(&self) -> Vec<f64> {
        if self.symmetric {
            self.xs.iter().copied().chain(self.xs.iter().map(|&x| -x)).collect()
        } else {
            self.xs.clone()
        }
    }

    fn forward_full(&self, params: &[f64]) -> ForwardPass {
        let xin = self.xin();
        let nc = xin.len();
        let nl = self.widths.len();
        let mut a = xin;
        let mut ad = vec![1.0; nc];
        let mut add = vec![0.0; nc];
        let mut caches = Vec::with_capacity(nl);
        let mut off = 0;
        for (l, &(fi, fo)) in self.widths.iter().enumerate() {
            let w = &params[off..off + fo * fi];
            let b = &params[off + fo * fi..off + fo * (fi + 1)];
            off += fo * (fi + 1);
            let mut s = vec![0.0; fo * nc];
            let mut sd = vec![0.0; fo * nc];
            let mut sdd = vec![0.0; fo * nc];
            for r in 0..fo {
                for j in 0..nc {
                    let mut acc = b[r];
                    let mut accd = 0.0;
                    let mut accdd = 0.0;
                    for c in 0..fi {
                        let wv = w[r * fi + c];
                        acc += wv * a[c * nc + j];
                        accd += wv * ad[c * nc + j];
                        accdd += wv * add[c * nc + j];
                    }
                    s[r * nc + j] = acc;
                    sd[r * nc + j] = accd;
                    sdd[r * nc + j] = accdd;
                }
            }
            if l + 1 < nl {
                let mut p1 = vec![0.0; fo * nc];
                let mut p2 = vec![0.0; fo * nc];
                let mut p3 = vec![0.0; fo * nc];
                let mut na = vec![0.0; fo * nc];
                let mut nad = vec![0.0; fo * nc];
                let mut nadd = vec![0.0; fo * nc];
                for k in 0..fo * nc {
                    let tv = s[k].tanh();
                    let q1 = 1.0 - tv * tv;
                    let q2 = -2.0 * tv * q1;
                    let q3 = -2.0 * (q1 * q1 + tv * q2);
                    p1[k] = q1;
                    p2[k] = q2;
                    p3[k] = q3;
                    na[k] = tv;
                    nad[k] = q1 * sd[k];
                    nadd[k] = q1 * sdd[k] + q2 * sd[k] * sd[k];
                }
                caches.push(LayerCache { a, ad, add, sd, sdd, p1, p2, p3 });
                a = na;
                ad = nad;
                add = nadd;
            } else {
                caches.push(LayerCache {
                    a,
                    ad,
                    add,
                    sd: sd.clone(),
                    sdd: sdd.clone(),
                    p1: Vec::new(),
                    p2: Vec::new(),
                    p3: Vec::new(),
                });
                a = s;
                ad = sd;
                add = sdd;
            }
        }
        ForwardPass { u: a, udd: add, caches }
    }

    /// The arm's effective (u, u'') at the grid: raw network outputs, or the
    /// reflection average of the two batch halves.
    fn combined(&self, fw: &ForwardPass) -> (Vec<f64>, Vec<f64>) {
        let n = self.xs.len();
        if self.symmetric {
            let u2 = (0..n).map(|i| 0.5 * (fw.u[i] + fw.u[n + i])).collect();
            let udd2 = (0..n).map(|i| 0.5 * (fw.udd[i] + fw.udd[n + i])).collect();
            (u2, udd2)
        } else {
            (fw.u.clone(), fw.udd.clone())
        }
    }

    fn loss_parts(&self, u2: &[f64], udd2: &[f64]) -> (f64, f64, f64) {
        let n = self.xs.len();
        let mut acc = 0.0;
        for i in 0..n {
            let r = udd2[i] - self.fvals[i];
            acc += r * r;
        }
        let residual = acc / n as f64;
        let bl = u2[0] - self.ua;
        let br = u2[n - 1] - self.ub;
        let loss = residual + self.lambda * (bl * bl + br * br);
        (loss, residual, bl.abs().max(br.abs()))
    }

    fn loss_only(&self, params: &[f64]) -> (f64, f64, f64) {
        let fw = self.forward_full(params);
        let (u2, udd2) = self.combined(&fw);
        self.loss_parts(&u2, &udd2)
    }

    fn loss_and_grad(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let n = self.xs.len();
        let fw = self.forward_full(params);
        let (u2, udd2) = self.combined(&fw);
        let (loss, _, _) = self.loss_parts(&u2, &udd2);

        // Seed the reverse pass on the output channels (value and second
        // derivative per batch column).
        let nc = if self.symmetric { 2 * n } else { n };
        let mut ga = vec![0.0; nc];
        let mut gad = vec![0.0; nc];
        let mut gadd = vec![0.0; nc];
        for i in 0..n {
            let gres = 2.0 * (udd2[i] - self.fvals[i]) / n as f64;
            if self.symmetric {
                gadd[i] = 0.5 * gres;
                gadd[n + i] = 0.5 * gres;
            } else {
                gadd[i] = gres;
            }
        }
        let gbl = 2.0 * self.lambda * (u2[0] - self.ua);
        let gbr = 2.0 * self.lambda * (u2[n - 1] - self.ub);
        if self.symmetric {
            ga[0] += 0.5 * gbl;
            ga[n] += 0.5 * gbl;
            ga[n - 1] += 0.5 * gbr;
            ga[2 * n - 1] += 0.5 * gbr;
        } else {
            ga[0] += gbl;
            ga[n - 1] += gbr;
        }

        let mut offs = Vec::with_capacity(self.widths.len());
        let mut off = 0;
        for &(fi, fo) in &self.widths {
            offs.push(off);
            off += fo * (fi + 1);
        }
        let mut grads = vec![0.0; params.len()];
        let nl = self.widths.len();
        for l in (0..nl).rev() {
            let (fi, fo) = self.widths[l];
            let cache = &fw.caches[l];
            // Pull the upstream channel gradients back through the
            // activation onto this layer's pre-activation channels. The
            // hidden outputs were t, p1*sd, p1*sdd + p2*sd^2; the head is
            // linear, so its channels pass through unchanged.
            let (gs, gsd, gsdd) = if l + 1 < nl {
                let mut gs = vec![0.0; fo * nc];
                let mut gsd = vec![0.0; fo * nc];
                let mut gsdd = vec![0.0; fo * nc];
                for k in 0..fo * nc {
                    let sd = cache.sd[k];
                    let sdd = cache.sdd[k];
                    gs[k] = ga[k] * cache.p1[k]
                        + gad[k] * cache.p2[k] * sd
                        + gadd[k] * (cache.p3[k] * sd * sd + cache.p2[k] * sdd);
                    gsd[k] = gad[k] * cache.p1[k] + gadd[k] * 2.0 * cache.p2[k] * sd;
                    gsdd[k] = gadd[k] * cache.p1[k];
                }
                (gs, gsd, gsdd)
            } else {
                (ga, gad, gadd)
            };
            let w = &params[offs[l]..offs[l] + fo * fi];
            let gw = &mut grads[offs[l]..offs[l] + fo * (fi + 1)];
            for r in 0..fo {
                for c in 0..fi {
                    let mut acc = 0.0;
                    for j in 0..nc {
                        acc += gs[r * nc + j] * cache.a[c * nc + j]
                            + gsd[r * nc + j] * cache.ad[c * nc + j]
                            + gsdd[r * nc + j] * cache.add[c * nc + j];
                    }
                    gw[r * fi + c] = acc;
                }
                let mut acc = 0.0;
                for j in 0..nc {
                    acc += gs[r * nc + j];
                }
                gw[fo * fi + r] = acc;
            }
            let mut nga = vec![0.0; fi * nc];
            let mut ngad = vec![0.0; fi * nc];
            let mut ngadd = vec![0.0; fi * nc];
            for c in 0..fi {
                for j in 0..nc {
                    let mut acc = 0.0;
                    let mut accd = 0.0;
                    let mut accdd = 0.0;
                    for r in 0..fo {
                        let wv = w[r * fi + c];
                        acc += wv * gs[r * nc + j];
                        accd += wv * gsd[r * nc + j];
                        accdd += wv * gsdd[r * nc + j];
                    }
                    nga[c * nc + j] = acc;
                    ngad[c * nc + j] = accd;
                    ngadd[c * nc + j] = accdd;
                }
            }
            ga = nga;
            gad = ngad;
            gadd = ngadd;
        }
        (loss, grads)
    }

    fn forward_values(&self, params: &[f64], xin: &[f64]) -> Vec<f64> {
        let nc = xin.len();
        let nl = self.widths.len();
        let mut a = xin.to_vec();
        let mut off = 0;
        for (l, &(fi, fo)) in self.widths.iter().enumerate() {
            let w = &params[off..off + fo * fi];
            let b = &params[off + fo * fi..off + fo * (fi + 1)];
            off += fo * (fi + 1);
            let mut s = vec![0.0; fo * nc];
            for r in 0..fo {
                for j in 0..nc {
                    let mut acc = b[r];
                    for c in 0..fi {
                        acc += w[r * fi + c] * a[c * nc + j];
                    }
                    s[r * nc + j] = if l + 1 < nl { acc.tanh() } else { acc };
                }
            }
            a = s;
        }
        a
    }

    /// max over the grid of |u(x) - u(-x)| for the arm's effective u. For
    /// the symmetrized arm both sides average the same two summands, so the
    /// defect is exactly zero.
    fn defect(&self, params: &[f64]) -> f64 {
        let n = self.xs.len();
        let both: Vec<f64> =
            self.xs.iter().copied().chain(self.xs.iter().map(|&x| -x)).collect();
        let vals = self.forward_values(params, &both);
        let mut worst = 0.0f64;
        for i in 0..n {
            let (here, mirrored) = if self.symmetric {
                (0.5 * (vals[i] + vals[n + i]), 0.5 * (vals[n + i] + vals[i]))
            } else {
                (vals[i], vals[n + i])
            };
            worst = worst.max((here - mirrored).abs());
        }
        worst
    }
}

fn summarize(
    task: &GridTask,
    params: &[f64],
    symmetric: bool,
    seed: u64,
    steps: usize,
    loss_curve: Vec<f64>,
    defect_curve: Vec<f64>,
) -> TrainReport {
    let (final_loss, final_residual, boundary_error) = task.loss_only(params);
    let invariance_defect = defect_curve.iter().copied().fold(0.0, f64::max);
    TrainReport {
        symmetric,
        seed,
        steps,
        loss_curve,
        defect_curve,
        final_loss,
        final_residual,
        boundary_error,
        invariance_defect,
    }
}

/// Train one arm by fixed-step gradient descent on the collocation loss,
/// recording loss and reflection defect before every step and once more at
/// the end.
pub fn train(
    spec: &PdeSpec,
    cfg: &TrainConfig,
    symmetric: bool,
) -> Result<TrainReport, PinnError> {
    spec.validate()?;
    if symmetric && !spec.symmetric_domain() {
        return Err(PinnError::AsymmetricDomain { a: spec.domain.0, b: spec.domain.1 });
    }
    if !(cfg.lr.is_finite() && cfg.wscale.is_finite()) {
        return Err(PinnError::MalformedSpec("non-finite training knob".into()));
    }
    let grid = spec.grid();
    let fvals = spec.source.values_on(&grid)?;
    let task = GridTask {
        widths: widths_of(&cfg.hidden),
        xs: grid,
        fvals,
        lambda: spec.lambda,
        ua: spec.boundary.0,
        ub: spec.boundary.1,
        symmetric,
    };
    let mut params = init_params(&task.widths, cfg.seed, cfg.wscale);

    let step_task = task.clone();
    let lr = cfg.lr;
    let flow = FlowMap::new(Box::new(move |p: &[f64]| {
        let (_, g) = step_task.loss_and_grad(p);
        p.iter().zip(&g).map(|(pi, gi)| pi - lr * gi).collect()
    }));

    let mut loss_curve = Vec::with_capacity(cfg.steps + 1);
    let mut defect_curve = Vec::with_capacity(cfg.steps + 1);
    for step in 0..=cfg.steps {
        let (loss, _, _) = task.loss_only(&params);
        let defect = task.defect(&params);
        if !(loss.is_finite() && defect.is_finite()) {
            let partial =
                summarize(&task, &params, symmetric, cfg.seed, step, loss_curve, defect_curve);
            return Err(PinnError::NonFinite {
                context: format!("training loss at step {}", step),
                partial: Some(Box::new(partial)),
            });
        }
        loss_curve.push(loss);
        defect_curve.push(defect);
        if step < cfg.steps {
            params = (flow.step)(&params);
        }
    }
    Ok(summarize(&task, &params, symmetric, cfg.seed, cfg.steps, loss_curve, defect_curve))
}

fn first_at_or_below(curve: &[f64], threshold: f64) -> Option<usize> {
    curve.iter().position(|&l| l <= threshold)
}

fn source_is_even(spec: &PdeSpec) -> Result<bool, PinnError> {
    let grid = spec.grid();
    let vals = spec.source.values_on(&grid)?;
    let n = vals.len();
    Ok((0..n).all(|i| {
        (vals[i] - vals[n - 1 - i]).abs() <= 1e-9 * (1.0 + vals[i].abs())
    }))
}

/// Train both arms from the same initialization and optimizer settings and
/// report measured steps-to-threshold at 1e-1 and 1e-2. An uneven source
/// makes the comparison lopsided, so it is flagged, not rejected.
pub fn train_compare(spec: &PdeSpec, cfg: &TrainConfig) -> Result<CompareReport, PinnError> {
    spec.validate()?;
    if !spec.symmetric_domain() {
        return Err(PinnError::AsymmetricDomain { a: spec.domain.0, b: spec.domain.1 });
    }
    let mut flags = Vec::new();
    if !source_is_even(spec)? {
        flags.push("source-not-even-about-zero".to_string());
    }
    let baseline = train(spec, cfg, false)?;
    let symmetrized = train(spec, cfg, true)?;
    let crossings = [1e-1, 1e-2]
        .iter()
        .map(|&threshold| ThresholdCrossing {
            threshold,
            baseline_steps: first_at_or_below(&baseline.loss_curve, threshold),
            symmetrized_steps: first_at_or_below(&symmetrized.loss_curve, threshold),
        })
        .collect();
    Ok(CompareReport { baseline, symmetrized, crossings, flags })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equinet::{Activation, DenseModel, Layer};
    use crate::mat::Mat;
    use crate::pinn::model::{Ansatz, SourceFn};

    fn network_from_params(hidden: &[usize], params: &[f64]) -> DenseModel {
        let widths = widths_of(hidden);
        let mut layers = Vec::with_capacity(widths.len());
        let mut off = 0;
        for (l, &(fi, fo)) in widths.iter().enumerate() {
            let w = Mat::new(fo, fi, params[off..off + fo * fi].to_vec());
            let b = params[off + fo * fi..off + fo * (fi + 1)].to_vec();
            off += fo * (fi + 1);
            let activation =
                if l + 1 < widths.len() { Activation::Tanh } else { Activation::Identity };
            layers.push(Layer { w, b, activation });
        }
        DenseModel::new(layers)
    }

    fn stock_task(symmetric: bool, hidden: &[usize]) -> GridTask {
        let spec = PdeSpec::poisson_cospi();
        let grid = spec.grid();
        let fvals = spec.source.values_on(&grid).unwrap();
        GridTask {
            widths: widths_of(hidden),
            xs: grid,
            fvals,
            lambda: spec.lambda,
            ua: spec.boundary.0,
            ub: spec.boundary.1,
            symmetric,
        }
    }

    #[test]
    fn engine_matches_the_dual_probe() {
        let hidden = [6, 6];
        let task = stock_task(false, &hidden);
        let params = init_params(&task.widths, 0, 1.5);
        let fw = task.forward_full(&params);
        let ans = Ansatz::new(network_from_params(&hidden, &params)).unwrap();
        for (j, &x) in task.xs.iter().enumerate() {
            let (v, _, dd) = ans.probe(x);
            assert!((fw.u[j] - v).abs() <= 1e-12 * (1.0 + v.abs()));
            assert!(
                (fw.udd[j] - dd).abs() <= 1e-9 * (1.0 + dd.abs()),
                "u'' {} vs {}",
                fw.udd[j],
                dd
            );
        }
    }

    #[test]
    fn parameter_gradients_match_central_differences() {
        for symmetric in [false, true] {
            let task = stock_task(symmetric, &[5]);
            let params = init_params(&task.widths, 2, 1.0);
            let (_, grads) = task.loss_and_grad(&params);
            let h = 1e-6;
            // One probe per parameter block: early weight, late weight, bias.
            for &idx in &[0usize, 3, 5, 7, 10, params.len() - 1] {
                let mut p = params.clone();
                p[idx] += h;
                let (lp, _, _) = task.loss_only(&p);
                p[idx] -= 2.0 * h;
                let (lm, _, _) = task.loss_only(&p);
                let fd = (lp - lm) / (2.0 * h);
                assert!(
                    (grads[idx] - fd).abs() <= 2e-5 * (1.0 + fd.abs()),
                    "param {} ({}): {} vs fd {}",
                    idx,
                    symmetric,
                    grads[idx],
                    fd
                );
            }
        }
    }

    #[test]
    fn symmetrized_arm_has_identically_zero_defect() {
        let spec = PdeSpec::poisson_cospi();
        let cfg = TrainConfig { hidden: vec![8], steps: 30, lr: 0.005, ..TrainConfig::default() };
        let report = train(&spec, &cfg, true).unwrap();
        assert_eq!(report.defect_curve.len(), 31);
        assert!(report.defect_curve.iter().all(|&d| d == 0.0));
        assert_eq!(report.invariance_defect, 0.0);
    }

    #[test]
    fn reruns_are_bitwise_identical() {
        let spec = PdeSpec::poisson_cospi();
        let cfg = TrainConfig { hidden: vec![8], steps: 25, ..TrainConfig::default() };
        let a = train(&spec, &cfg, false).unwrap();
        let b = train(&spec, &cfg, false).unwrap();
        assert_eq!(a.loss_curve, b.loss_curve);
        assert_eq!(a.defect_curve, b.defect_curve);
        assert_eq!(a.final_loss, b.final_loss);
        assert_eq!(a.final_residual, b.final_residual);
        assert_eq!(a.boundary_error, b.boundary_error);
    }

    #[test]
    fn zero_steps_reports_the_initial_state() {
        let spec = PdeSpec::poisson_cospi();
        let cfg = TrainConfig { steps: 0, ..TrainConfig::default() };
        let cmp = train_compare(&spec, &cfg).unwrap();
        assert_eq!(cmp.baseline.loss_curve.len(), 1);
        assert_eq!(cmp.symmetrized.loss_curve.len(), 1);
        assert!(cmp.flags.is_empty());
        assert!(cmp.crossings[0].baseline_steps.is_none());
        // Same seed, same draws: both arms start from the same weights.
        let widths = widths_of(&cfg.hidden);
        assert_eq!(init_params(&widths, 0, 2.0), init_params(&widths, 0, 2.0));
    }

    #[test]
    fn training_descends_on_the_stock_problem() {
        let spec = PdeSpec::poisson_cospi();
        let cfg = TrainConfig { steps: 300, lr: 0.005, ..TrainConfig::default() };
        let report = train(&spec, &cfg, false).unwrap();
        assert_eq!(report.loss_curve.len(), 301);
        assert!(report.final_loss < 0.5 * report.loss_curve[0]);
        assert!(report.loss_curve.iter().all(|l| l.is_finite()));
    }

    #[test]
    fn runaway_steps_abort_with_the_finite_prefix() {
        let spec = PdeSpec::poisson_cospi();
        let cfg = TrainConfig { steps: 10, lr: 1e30, ..TrainConfig::default() };
        match train(&spec, &cfg, false) {
            Err(PinnError::NonFinite { partial: Some(partial), .. }) => {
                assert!(!partial.loss_curve.is_empty());
                assert!(partial.loss_curve.iter().all(|l| l.is_finite()));
                assert!(partial.steps < 10);
            }
            other => panic!("expected a non-finite abort, got {:?}", other.map(|r| r.final_loss)),
        }
    }

    #[test]
    fn crossings_use_the_first_recorded_step() {
        assert_eq!(first_at_or_below(&[5.0, 0.5, 0.05], 0.1), Some(2));
        assert_eq!(first_at_or_below(&[0.1, 0.2], 0.1), Some(0));
        assert_eq!(first_at_or_below(&[5.0, 0.5], 0.1), None);
    }

    #[test]
    fn uneven_sources_are_flagged() {
        let mut spec = PdeSpec::poisson_cospi();
        spec.collocation = 3;
        spec.source = SourceFn::Table(vec![0.0, 1.0, 2.0]);
        let cfg = TrainConfig { steps: 0, ..TrainConfig::default() };
        let cmp = train_compare(&spec, &cfg).unwrap();
        assert_eq!(cmp.flags, vec!["source-not-even-about-zero".to_string()]);
    }
}
