//! Number types the normalised objective is generic over.

use std::ops::{Add, Div, Mul, Sub};

use twofloat::TwoFloat;

pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn cst(v: f64) -> Self;
    /// `num / den`, rounded once in the target precision.
    fn ratio(num: i64, den: i64) -> Self;
    fn sqrt(self) -> Self;
    fn value(self) -> f64;
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn value(self) -> f64 {
        self
    }
}

impl Scalar for TwoFloat {
    fn cst(v: f64) -> Self {
        TwoFloat::from(v)
    }

    fn ratio(num: i64, den: i64) -> Self {
        TwoFloat::from(num as f64) / TwoFloat::from(den as f64)
    }

    fn sqrt(self) -> Self {
        TwoFloat::sqrt(self)
    }

    fn value(self) -> f64 {
        self.hi() + self.lo()
    }
}

/// Forward-mode dual number carrying the gradient in `(α, τ, μ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual3 {
    pub v: f64,
    pub d: [f64; 3],
}

impl Dual3 {
    pub fn variable(v: f64, axis: usize) -> Self {
        let mut d = [0.0; 3];
        d[axis] = 1.0;
        Dual3 { v, d }
    }

    pub fn norm(&self) -> f64 {
        self.d.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn map(self, f: impl Fn(f64) -> f64) -> [f64; 3] {
        self.d.map(f)
    }
}

impl Add for Dual3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual3 { v: self.v + o.v, d: [self.d[0] + o.d[0], self.d[1] + o.d[1], self.d[2] + o.d[2]] }
    }
}

impl Sub for Dual3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual3 { v: self.v - o.v, d: [self.d[0] - o.d[0], self.d[1] - o.d[1], self.d[2] - o.d[2]] }
    }
}

impl Mul for Dual3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = [0, 1, 2].map(|i| self.d[i] * o.v + self.v * o.d[i]);
        Dual3 { v: self.v * o.v, d }
    }
}

impl Div for Dual3 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = self.v / o.v;
        let d = [0, 1, 2].map(|i| (self.d[i] - v * o.d[i]) / o.v);
        Dual3 { v, d }
    }
}

impl Scalar for Dual3 {
    fn cst(v: f64) -> Self {
        Dual3 { v, d: [0.0; 3] }
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::cst(num as f64 / den as f64)
    }

    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Dual3 { v: s, d: self.map(|x| x / (2.0 * s)) }
    }

    fn value(self) -> f64 {
        self.v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_rules() {
        let x = Dual3::variable(2.0, 0);
        let y = Dual3::variable(3.0, 1);
        let f = (x * y + x / y).sqrt();
        let v = (6.0f64 + 2.0 / 3.0).sqrt();
        assert!((f.v - v).abs() < 1e-15);
        assert!((f.d[0] - (3.0 + 1.0 / 3.0) / (2.0 * v)).abs() < 1e-15);
        assert!((f.d[1] - (2.0 - 2.0 / 9.0) / (2.0 * v)).abs() < 1e-15);
        assert_eq!(f.d[2], 0.0);
    }

    #[test]
    fn twofloat_ratio_is_closer_than_f64() {
        let exact = TwoFloat::ratio(148, 1000);
        let err = (exact - TwoFloat::from(0.148)).value().abs();
        assert!(err > 0.0 && err < 1e-16);
    }
}
