use std::collections::BTreeSet;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, int, Rational};

/// A length-n vector of exact rationals indexed by the points of Ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(entries: I) -> Self {
        Self(entries.into_iter().map(int).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![Rational::one(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    /// Characteristic vector of a subset (0-based points).
    pub fn indicator(n: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(n);
        for p in points {
            v.0[p] = Rational::one();
        }
        v
    }

    /// Multiplicity vector of a multiset (0-based points; repeats add up).
    pub fn multiplicities(n: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(n);
        for p in points {
            v.0[p] += Rational::one();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    /// `v · 𝟙`.
    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|x| x.is_zero()).count()
    }

    pub fn distinct_values(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    /// At least two distinct entries, and at most `n − 2` of them zero.
    pub fn is_nontrivial(&self) -> bool {
        let n = self.len();
        self.distinct_values() >= 2 && self.zero_count() + 2 <= n
    }

    /// Entries as machine integers, when every entry is an integer that fits.
    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
            .collect()
    }

    /// Support as sorted 0-based indices.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Expands a nonnegative integer vector into its multiset of 1-based labels.
    pub fn to_multiset_labels(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (i, x) in self.0.iter().enumerate() {
            if !x.is_integer() || x.is_negative() {
                return None;
            }
            let m = x.numer().to_usize()?;
            out.extend(std::iter::repeat_n(i + 1, m));
        }
        Some(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    /// Multiplies through by the common denominator.
    pub fn clear_denominators(&self) -> (Self, BigInt) {
        let d = crate::rational::common_denominator(&self.0);
        let scale = Rational::from_integer(d.clone());
        (self.scale(&scale), d)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nontriviality() {
        assert!(!RationalVector::ones(5).is_nontrivial());
        assert!(!RationalVector::unit(5, 2).is_nontrivial());
        assert!(RationalVector::indicator(5, [0, 3]).is_nontrivial());
        assert!(!RationalVector::from_integers([2, 2, 2]).is_nontrivial());
        assert!(RationalVector::from_integers([1, 2, 2]).is_nontrivial());
    }

    #[test]
    fn multiset_labels_roundtrip() {
        let v = RationalVector::multiplicities(4, [0, 2, 2, 3]);
        assert_eq!(v.to_multiset_labels().unwrap(), vec![1, 3, 3, 4]);
    }
}
