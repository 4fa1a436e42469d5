//! Univariate polynomials over the rationals, complex root finding, and
//! factorization of squarefree monic integer polynomials over ℚ.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, int, to_f64, Rational};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![Rational::one()] }
    }

    /// `x − a`.
    pub fn linear(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        let lc = self.leading();
        if lc.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..len).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lc = divisor.leading();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = r0.leading();
        if lc.is_zero() {
            return (r0, s0, t0);
        }
        let inv = lc.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + to_f64(c))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}·x", format_rational(c)),
                _ => format!("{}·x^{i}", format_rational(c)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Complex polynomial `p(x)/(x − r)` by synthetic division (remainder dropped).
pub fn deflate(coeffs: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let mut out = vec![Complex64::zero(); d];
    let mut carry = Complex64::zero();
    for k in (0..d).rev() {
        carry = coeffs[k + 1] + carry * r;
        out[k] = carry;
    }
    out
}

pub fn eval_c(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * x + c)
}

fn derivative_c(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

/// All complex roots of a polynomial with nonzero leading coefficient, by
/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lc = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lc).collect();
    if d == 1 {
        return vec![-monic[0]];
    }
    let dp = derivative_c(&monic);
    // Fujiwara bound on the root moduli. Starting points on a circle much
    // wider than the roots are a fixed point of the iteration for p ≈ x^d, so
    // the radii are also staggered.
    let radius = (1..=d)
        .map(|k| {
            let c = monic[d - k].norm() / if k == d { 2.0 } else { 1.0 };
            2.0 * c.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        .max(1e-3);
    let centre = -monic[d - 1] / d as f64;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let stagger = 0.5 + 0.4 * ((k * 7 % 11) as f64 / 11.0);
            centre + Complex64::from_polar(radius * stagger, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..d {
            let p = eval_c(&monic, z[k]);
            let q = eval_c(&dp, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / q;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let q = eval_c(&dp, *r);
            if q.norm() == 0.0 {
                break;
            }
            let step = eval_c(&monic, *r) / q;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    z
}

/// Newton refinement of a root on a (lower degree) factor.
pub fn polish_root(p: &Poly, r: Complex64) -> Complex64 {
    let c = p.to_complex();
    let dc = derivative_c(&c);
    let mut r = r;
    for _ in 0..5 {
        let q = eval_c(&dc, r);
        if q.norm() == 0.0 {
            break;
        }
        let step = eval_c(&c, r) / q;
        if !step.is_finite() {
            break;
        }
        r -= step;
    }
    r
}

/// Clears denominators of a rational polynomial and makes it primitive.
pub fn primitive_integer_part(p: &Poly) -> Poly {
    let den = crate::rational::common_denominator(p.coeffs());
    let scaled: Vec<Rational> = p.coeffs().iter().map(|c| c * Rational::from_integer(den.clone())).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c.numer()));
    if g.is_zero() {
        return p.clone();
    }
    let mut out = Poly::new(scaled.into_iter().map(|c| c / Rational::from_integer(g.clone())).collect());
    if out.leading().is_negative() {
        out = out.scale(&int(-1));
    }
    out
}
