//! Order-2 dual numbers for forward-mode differentiation along one
//! direction: value, first derivative, second derivative.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value with first and second directional derivatives carried through
/// arithmetic. Multiplication uses the order-2 Leibniz rule and every
/// elementary function is pushed through the chain rule
/// (f, f'(v) d, f''(v) d^2 + f'(v) dd).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual2 {
    pub v: f64,
    pub d: f64,
    pub dd: f64,
}

impl Dual2 {
    pub fn constant(v: f64) -> Self {
        Dual2 { v, d: 0.0, dd: 0.0 }
    }

    /// Seed the direction: value v moving with velocity d.
    pub fn seeded(v: f64, d: f64) -> Self {
        Dual2 { v, d, dd: 0.0 }
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at self.v.
    #[inline]
    pub fn chain(self, f: f64, df: f64, ddf: f64) -> Self {
        Dual2 { v: f, d: df * self.d, dd: ddf * self.d * self.d + df * self.dd }
    }
}

impl Add for Dual2 {
    type Output = Dual2;
    fn add(self, o: Dual2) -> Dual2 {
        Dual2 { v: self.v + o.v, d: self.d + o.d, dd: self.dd + o.dd }
    }
}

impl Sub for Dual2 {
    type Output = Dual2;
    fn sub(self, o: Dual2) -> Dual2 {
        Dual2 { v: self.v - o.v, d: self.d - o.d, dd: self.dd - o.dd }
    }
}

impl Mul for Dual2 {
    type Output = Dual2;
    fn mul(self, o: Dual2) -> Dual2 {
        Dual2 {
            v: self.v * o.v,
            d: self.v * o.d + self.d * o.v,
            dd: self.v * o.dd + 2.0 * self.d * o.d + self.dd * o.v,
        }
    }
}

impl Div for Dual2 {
    type Output = Dual2;
    fn div(self, o: Dual2) -> Dual2 {
        // 1/x has derivatives -1/x^2 and 2/x^3.
        let inv = o.chain(1.0 / o.v, -1.0 / (o.v * o.v), 2.0 / (o.v * o.v * o.v));
        self * inv
    }
}

impl Neg for Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        Dual2 { v: -self.v, d: -self.d, dd: -self.dd }
    }
}

/// The scalar field the smooth functions are written over: plain f64 for
/// evaluation, [`Dual2`] for derivatives, same code either way.
pub trait Real:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn tanh(self) -> Self;
    fn powi(self, n: i32) -> Self;
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

impl Real for Dual2 {
    fn from_f64(v: f64) -> Self {
        Dual2::constant(v)
    }
    fn value(self) -> f64 {
        self.v
    }
    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos(), -self.v.sin())
    }
    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin(), -self.v.cos())
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn tanh(self) -> Self {
        let t = self.v.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Dual2::constant(1.0),
            1 => self,
            _ => {
                let f = self.v.powi(n);
                let df = n as f64 * self.v.powi(n - 1);
                let ddf = (n as f64) * (n as f64 - 1.0) * self.v.powi(n - 2);
                self.chain(f, df, ddf)
            }
        }
    }
}
