//! Small recipe grammars for flags: maps, losses, vectors, architectures.
//!
//! Map recipes name self-maps of R^n so checks can be run without shipping
//! code: `scale:c`, `offset:v[,..]`, `affine:a,b`, `reynolds` (group
//! average, needs a representation), `canonical` (orbit representative,
//! needs a representation), `gradstep:eta` (gradient descent step, needs a
//! loss).

use crate::docs::CliError;
use symcat_core::enriched::canonical_representative;
use symcat_core::optdyn::{FlowMap, LossFn};
use symcat_core::symgrp::{reynolds_map, Representation};

pub type VecMap = Box<dyn Fn(&[f64]) -> Vec<f64>>;

/// "1,2.5,-3" as a vector. Spaces around entries are tolerated.
pub fn parse_vec(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("not a number: {:?}", part.trim())))
        })
        .collect()
}

fn parse_scalar(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| CliError::usage(format!("{what} is not a number: {s:?}")))
}

/// Loss recipes: `quad`, `sumsq`, or `custom-poly:c0,c1,...` with ascending
/// coefficients applied per coordinate and summed.
pub fn parse_loss(s: &str) -> Result<LossFn, CliError> {
    if s == "quad" {
        return Ok(LossFn::Quad);
    }
    if s == "sumsq" {
        return Ok(LossFn::SumSq);
    }
    if let Some(coeffs) = s.strip_prefix("custom-poly:") {
        let c = parse_vec(coeffs)?;
        if c.is_empty() {
            return Err(CliError::usage("custom-poly needs at least one coefficient"));
        }
        return Ok(LossFn::Poly(c));
    }
    Err(CliError::usage(format!(
        "unknown loss {s:?}; expected quad, sumsq, or custom-poly:c0,c1,..."
    )))
}

/// "2x16" as hidden layer widths: two hidden layers of width sixteen.
pub fn parse_arch(s: &str) -> Result<Vec<usize>, CliError> {
    let (layers, width) = s
        .split_once('x')
        .ok_or_else(|| CliError::usage(format!("architecture {s:?} is not LAYERSxWIDTH")))?;
    let layers: usize = layers
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("layer count is not a number: {layers:?}")))?;
    let width: usize = width
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("layer width is not a number: {width:?}")))?;
    if layers == 0 || width == 0 {
        return Err(CliError::usage("architecture needs at least one hidden unit"));
    }
    Ok(vec![width; layers])
}

/// "a=ia,b=ib" as ordered (object, morphism) name pairs.
pub fn parse_components(s: &str) -> Result<Vec<(String, String)>, CliError> {
    s.split(',')
        .map(|pair| {
            let (obj, mor) = pair
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("component {pair:?} is not OBJECT=MORPHISM")))?;
            Ok((obj.trim().to_string(), mor.trim().to_string()))
        })
        .collect()
}

/// Builds the self-map a recipe names. `dim` fixes the space; recipes that
/// need a representation or a loss get them from the caller's flags.
pub fn build_map(
    spec: &str,
    dim: usize,
    rep: Option<&Representation>,
    loss: Option<&LossFn>,
) -> Result<VecMap, CliError> {
    if let Some(c) = spec.strip_prefix("scale:") {
        let c = parse_scalar(c, "scale factor")?;
        return Ok(Box::new(move |x: &[f64]| x.iter().map(|v| c * v).collect()));
    }
    if let Some(v) = spec.strip_prefix("offset:") {
        let v = parse_vec(v)?;
        let v = broadcast(v, dim)?;
        return Ok(Box::new(move |x: &[f64]| {
            x.iter().zip(&v).map(|(xi, vi)| xi + vi).collect()
        }));
    }
    if let Some(rest) = spec.strip_prefix("affine:") {
        let parts = parse_vec(rest)?;
        if parts.len() != 2 {
            return Err(CliError::usage("affine takes exactly two numbers: affine:a,b"));
        }
        let (a, b) = (parts[0], parts[1]);
        return Ok(Box::new(move |x: &[f64]| x.iter().map(|v| a * v + b).collect()));
    }
    if spec == "reynolds" {
        let rep = rep.ok_or_else(|| CliError::usage("reynolds needs --rep"))?;
        if rep.dim != dim {
            return Err(CliError::usage(format!(
                "representation acts on dimension {}, map runs on {dim}",
                rep.dim
            )));
        }
        let avg = reynolds_map(rep).map_err(|e| CliError::usage(e.to_string()))?;
        return Ok(Box::new(move |x: &[f64]| avg.matvec(x)));
    }
    if spec == "canonical" {
        let rep = rep.ok_or_else(|| CliError::usage("canonical needs --rep"))?;
        if rep.dim != dim {
            return Err(CliError::usage(format!(
                "representation acts on dimension {}, map runs on {dim}",
                rep.dim
            )));
        }
        let rep = rep.clone();
        return Ok(Box::new(move |x: &[f64]| {
            canonical_representative(&rep, x).expect("dimension was checked at parse time")
        }));
    }
    if let Some(eta) = spec.strip_prefix("gradstep:") {
        let eta = parse_scalar(eta, "step size")?;
        let loss = loss.ok_or_else(|| CliError::usage("gradstep needs --loss"))?;
        return Ok(FlowMap::gradient_step(loss.clone(), eta).step);
    }
    Err(CliError::usage(format!(
        "unknown map {spec:?}; expected scale:c, offset:v, affine:a,b, reynolds, canonical, or gradstep:eta"
    )))
}

fn broadcast(v: Vec<f64>, dim: usize) -> Result<Vec<f64>, CliError> {
    if v.len() == dim {
        Ok(v)
    } else if v.len() == 1 {
        Ok(vec![v[0]; dim])
    } else {
        Err(CliError::usage(format!("expected 1 or {dim} entries, found {}", v.len())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symcat_core::symgrp::{FinGroup, Representation};

    #[test]
    fn recipes_build_the_maps_they_name() {
        let scale = build_map("scale:0.5", 2, None, None).unwrap();
        assert_eq!(scale(&[2.0, -4.0]), vec![1.0, -2.0]);

        let offset = build_map("offset:1", 3, None, None).unwrap();
        assert_eq!(offset(&[0.0, 1.0, 2.0]), vec![1.0, 2.0, 3.0]);

        let affine = build_map("affine:0.5,1", 1, None, None).unwrap();
        assert_eq!(affine(&[4.0]), vec![3.0]);

        let loss = parse_loss("quad").unwrap();
        let grad = build_map("gradstep:0.25", 2, None, Some(&loss)).unwrap();
        // Quadratic loss has gradient x, so the step contracts by 0.75.
        assert_eq!(grad(&[4.0, -8.0]), vec![3.0, -6.0]);
    }

    #[test]
    fn reynolds_recipe_averages_the_swap_orbit() {
        let g = FinGroup::cyclic(2);
        let mats = vec![
            symcat_core::mat::Mat::identity(2),
            symcat_core::mat::Mat::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]),
        ];
        let rep = Representation { group: g, dim: 2, mats };
        let avg = build_map("reynolds", 2, Some(&rep), None).unwrap();
        assert_eq!(avg(&[1.0, 3.0]), vec![2.0, 2.0]);
    }

    #[test]
    fn malformed_recipes_are_usage_errors() {
        assert!(build_map("rotate:3", 2, None, None).is_err());
        assert!(build_map("scale:x", 2, None, None).is_err());
        assert!(build_map("gradstep:0.1", 2, None, None).is_err());
        assert!(parse_arch("16").is_err());
        assert_eq!(parse_arch("2x16").unwrap(), vec![16, 16]);
        assert_eq!(parse_components("a=ia, b=ib").unwrap().len(), 2);
    }
}
