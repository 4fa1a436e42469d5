//! Exact arithmetic in the real quadratic field ℚ(√5).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{Field, Scalar};
use crate::rational::{format_rational, int, Rational};

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QSqrt5 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    pub fn sqrt5() -> Self {
        Self { a: Rational::zero(), b: Rational::one() }
    }

    /// Galois conjugate `a − b√5`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(5) * &self.b * &self.b
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { a: &self.a * r, b: &self.b * r }
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational::to_f64(&self.a) + crate::rational::to_f64(&self.b) * 5f64.sqrt()
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            write!(f, "{} + {}·√5", format_rational(&self.a), format_rational(&self.b))
        }
    }
}

impl Add for QSqrt5 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt5 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QSqrt5 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.a * &o.a + int(5) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self { a, b }
    }
}

impl Neg for QSqrt5 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl Zero for QSqrt5 {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt5 {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Scalar for QSqrt5 {
    fn from_int(v: i64) -> Self {
        Self::rational(int(v))
    }
}

impl Field for QSqrt5 {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            // √5 is irrational, so the norm vanishes only at zero.
            return None;
        }
        let c = self.conjugate();
        Some(Self { a: c.a / &n, b: c.b / &n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn sqrt5_squares_to_five() {
        let s = QSqrt5::sqrt5();
        assert_eq!(s.clone() * s, QSqrt5::from_int(5));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QSqrt5::new(frac(3, 2), frac(-7, 3));
        let y = x.inv().unwrap();
        assert_eq!(x * y, QSqrt5::one());
        assert!(QSqrt5::zero().inv().is_none());
    }
}
