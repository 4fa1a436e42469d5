use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Coefficient ring for adjacency-algebra arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;
}

/// Scalars with exact (or numerically safe) division.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;

    /// Exact fields answer exactly; floating fields compare against a tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rational {
    fn from_int(v: i64) -> Self {
        int(v)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for Complex64 {
    fn from_int(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if self.norm() < 1e-300 {
            None
        } else {
            Some(self.inv())
        }
    }

    fn is_negligible(&self) -> bool {
        self.norm() < 1e-9
    }
}
