//! Exact rational helpers shared by every module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `7`, `-3`, `2/5` or `-10/4`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| err())?;
            let den: BigInt = b.trim().parse().map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators: scale both parts down before dividing.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only when it lies within `tol` of `x`.
pub fn reconstruct(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut y = x.abs();
    // Convergents h/k of the continued fraction of y.
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut best: Option<Rational> = None;
    for _ in 0..64 {
        let a = y.floor();
        let a_int = BigInt::from(a as i128);
        let h_next = &a_int * &h + &h_prev;
        let k_next = &a_int * &k + &k_prev;
        if k_next > BigInt::from(max_den) {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let cand = Rational::new(h.clone(), k.clone());
        if (to_f64(&cand) - x.abs()).abs() <= tol {
            best = Some(cand);
            break;
        }
        let fracp = y - a;
        if fracp < 1e-300 {
            break;
        }
        y = 1.0 / fracp;
    }
    best.map(|r| if neg { -r } else { r })
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Wrapper that displays a rational as `p/q`.
pub struct Frac<'a>(pub &'a Rational);

impl fmt::Display for Frac<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-10/4").unwrap(), frac(-5, 2));
        assert_eq!(format_rational(&frac(-5, 2)), "-5/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reconstruct_simple_fractions() {
        assert_eq!(reconstruct(0.1, 1_000_000_000_000, 1e-12), Some(frac(1, 10)));
        assert_eq!(reconstruct(-2.0 / 3.0, 1000, 1e-12), Some(frac(-2, 3)));
        assert_eq!(reconstruct(0.0, 10, 1e-12), Some(int(0)));
        assert_eq!(reconstruct(5f64.sqrt(), 1000, 1e-12), None);
    }
}
