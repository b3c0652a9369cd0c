//! Smooth scalar functions written once over a generic scalar, with exact
//! gradients by forward differentiation and a finite-difference fallback for
//! cross-checking.

use serde::{Deserialize, Serialize};

use super::dual::{Dual2, Real};

/// A scalar function defined for every [`Real`], so one definition serves
/// evaluation and differentiation.
pub trait SmoothFn {
    fn eval<R: Real>(&self, x: &[R]) -> R;
}

/// Derivative interface obtained for free from [`SmoothFn`].
pub trait DiffFunction {
    fn value(&self, x: &[f64]) -> f64;
    /// Exact gradient by seeding one coordinate direction at a time.
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    /// (value, directional first derivative, directional second derivative)
    /// along `dir`.
    fn second_directional(&self, x: &[f64], dir: &[f64]) -> (f64, f64, f64);
}

impl<T: SmoothFn> DiffFunction for T {
    fn value(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut grad = Vec::with_capacity(x.len());
        let mut seeds: Vec<Dual2> = x.iter().map(|&v| Dual2::constant(v)).collect();
        for i in 0..x.len() {
            seeds[i] = Dual2::seeded(x[i], 1.0);
            grad.push(self.eval(&seeds).d);
            seeds[i] = Dual2::constant(x[i]);
        }
        grad
    }

    fn second_directional(&self, x: &[f64], dir: &[f64]) -> (f64, f64, f64) {
        assert_eq!(x.len(), dir.len());
        let seeds: Vec<Dual2> =
            x.iter().zip(dir).map(|(&v, &d)| Dual2::seeded(v, d)).collect();
        let out = self.eval(&seeds);
        (out.v, out.d, out.dd)
    }
}

/// The stock losses the command line knows how to build.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LossFn {
    /// Half squared norm.
    Quad,
    /// Plain sum of squares.
    SumSq,
    /// A polynomial in one variable applied to each coordinate and summed;
    /// coefficients in ascending degree.
    Poly(Vec<f64>),
}

impl SmoothFn for LossFn {
    fn eval<R: Real>(&self, x: &[R]) -> R {
        match self {
            LossFn::Quad => {
                let mut acc = R::from_f64(0.0);
                for &xi in x {
                    acc = acc + xi * xi;
                }
                acc * R::from_f64(0.5)
            }
            LossFn::SumSq => {
                let mut acc = R::from_f64(0.0);
                for &xi in x {
                    acc = acc + xi * xi;
                }
                acc
            }
            LossFn::Poly(coeffs) => {
                let mut acc = R::from_f64(0.0);
                for &xi in x {
                    // Horner evaluation from the top coefficient down.
                    let mut p = R::from_f64(0.0);
                    for &c in coeffs.iter().rev() {
                        p = p * xi + R::from_f64(c);
                    }
                    acc = acc + p;
                }
                acc
            }
        }
    }
}

/// Central-difference gradient for cross-checking exact derivatives.
pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let hi = f(&probe);
        probe[i] = x[i] - h;
        let lo = f(&probe);
        probe[i] = x[i];
        grad.push((hi - lo) / (2.0 * h));
    }
    grad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::linf_diff;
    use crate::GRAD_TOL;

    struct Rosenbrock;
    impl SmoothFn for Rosenbrock {
        fn eval<R: Real>(&self, x: &[R]) -> R {
            let one = R::from_f64(1.0);
            let hundred = R::from_f64(100.0);
            let a = one - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + hundred * b * b
        }
    }

    fn rel_err(ad: &[f64], fd: &[f64]) -> f64 {
        let scale = ad.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        linf_diff(ad, fd) / scale
    }

    #[test]
    fn forward_gradient_matches_finite_differences() {
        let f = Rosenbrock;
        let x = [0.3, -0.7];
        let ad = f.gradient(&x);
        let fd = fd_gradient(|p| f.value(p), &x, 1e-6);
        assert!(rel_err(&ad, &fd) <= GRAD_TOL, "ad {:?} fd {:?}", ad, fd);
    }

    #[test]
    fn stock_losses_differentiate_correctly() {
        let x = [1.5, -2.0, 0.25];
        assert_eq!(LossFn::Quad.gradient(&x), vec![1.5, -2.0, 0.25]);
        assert_eq!(LossFn::SumSq.gradient(&x), vec![3.0, -4.0, 0.5]);
        // p(t) = 1 + 2t + 3t^2, p'(t) = 2 + 6t.
        let poly = LossFn::Poly(vec![1.0, 2.0, 3.0]);
        let grad = poly.gradient(&x);
        for (g, xi) in grad.iter().zip(&x) {
            assert!((g - (2.0 + 6.0 * xi)).abs() <= 1e-12);
        }
    }

    #[test]
    fn second_directional_derivative_sees_the_hessian() {
        // Quad has the identity as second derivative everywhere: along any
        // unit direction the second directional derivative is 1.
        let (v, d, dd) = LossFn::Quad.second_directional(&[3.0, 4.0], &[1.0, 0.0]);
        assert_eq!(v, 12.5);
        assert_eq!(d, 3.0);
        assert_eq!(dd, 1.0);
    }
}
