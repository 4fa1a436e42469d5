//! Exact verification of witnesses for each level of the hierarchy
//! non-QI ⊇ nonspreading ⊇ nonseparating ⊇ nonsynchronising.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::idempotents::CentralIdempotentSet;
use crate::cc::CoherentConfiguration;
use crate::delsarte::constant_intersection_test;
use crate::perm::{inner_products_over, Permutation};
use crate::rational::{int, Rational};
use crate::vector::RationalVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    NonQi,
    NonSpreading,
    NonSeparating,
    NonSynchronising,
}

impl Level {
    /// The property name the witness refutes.
    pub fn property(self) -> &'static str {
        match self {
            Level::NonQi => "qi",
            Level::NonSpreading => "spreading",
            Level::NonSeparating => "separating",
            Level::NonSynchronising => "synchronising",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.property())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown level {0:?}; expected qi, spreading, separating or synchronising")]
pub struct ParseLevelError(pub String);

impl FromStr for Level {
    type Err = ParseLevelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qi" => Ok(Level::NonQi),
            "spreading" => Ok(Level::NonSpreading),
            "separating" => Ok(Level::NonSeparating),
            "synchronising" | "synchronizing" => Ok(Level::NonSynchronising),
            other => Err(ParseLevelError(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum Rejection {
    #[error("vector {index} has length {found}, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, found: usize },
    #[error("vector {index} is not a 0/1 vector")]
    NotBinary { index: usize },
    #[error("vector {index} has a negative or non-integer entry")]
    NegativeEntry { index: usize },
    #[error("vector {index} is trivial (needs two distinct entries and at most n-2 zeros)")]
    TrivialVector { index: usize },
    #[error("weight {sum} does not divide the degree {n}")]
    DivisibilityFails { sum: Rational, n: usize },
    #[error("(u.1)(v.1) = {product}, not the degree {n}")]
    ProductNotDegree { product: Rational, n: usize },
    #[error("the blocks do not sum to the all-ones vector")]
    NotAPartition,
    #[error("u.(v^g) is not constant: vD(u)v^T = {lhs}, constant case needs {rhs}")]
    NotConstantIntersection { lhs: Rational, rhs: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerificationMode {
    Identity,
    Oracle,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub level: Level,
    /// The constant value of `u·(v^g)`; one per block for partitions.
    pub lambda: Vec<Rational>,
    pub identity: String,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub traces: Vec<usize>,
    pub mode: VerificationMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub level: Level,
    pub u: RationalVector,
    /// The partner for pair levels. For nonsynchronising witnesses these are
    /// the partition blocks and `u` is the vector meeting each block once.
    pub others: Vec<RationalVector>,
    pub certificate: Certificate,
}

impl Witness {
    /// For pair levels, the second vector.
    pub fn partner(&self) -> &RationalVector {
        &self.others[0]
    }
}

const IDENTITY: &str = "vD(u)v^T = (u.1)^2 (v.1)^2 / n^2";

fn check_len(n: usize, index: usize, v: &RationalVector) -> Result<(), Rejection> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Rejection::LengthMismatch { index, expected: n, found: v.len() })
    }
}

fn check_binary(index: usize, v: &RationalVector) -> Result<(), Rejection> {
    if v.is_binary() {
        Ok(())
    } else {
        Err(Rejection::NotBinary { index })
    }
}

fn check_nonnegative_integral(index: usize, v: &RationalVector) -> Result<(), Rejection> {
    if v.is_nonnegative_integral() {
        Ok(())
    } else {
        Err(Rejection::NegativeEntry { index })
    }
}

fn check_nontrivial(index: usize, v: &RationalVector) -> Result<(), Rejection> {
    if v.is_nontrivial() {
        Ok(())
    } else {
        Err(Rejection::TrivialVector { index })
    }
}

/// Runs the exact identity; returns `(λ, lhs, rhs)`.
fn identity(cc: &CoherentConfiguration, u: &RationalVector, v: &RationalVector) -> Result<(Rational, Rational, Rational), Rejection> {
    let t = constant_intersection_test(cc, u, v);
    match t.value {
        Some(lambda) => Ok((lambda, t.lhs, t.rhs)),
        None => Err(Rejection::NotConstantIntersection { lhs: t.lhs, rhs: t.rhs }),
    }
}

fn pair_witness(
    level: Level,
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
    v: &RationalVector,
) -> Result<Witness, Rejection> {
    let (lambda, lhs, rhs) = identity(cc, u, v)?;
    Ok(Witness {
        level,
        u: u.clone(),
        others: vec![v.clone()],
        certificate: Certificate {
            level,
            lambda: vec![lambda],
            identity: IDENTITY.to_string(),
            lhs: vec![lhs],
            rhs: vec![rhs],
            traces: ids.traces(),
            mode: VerificationMode::Identity,
        },
    })
}

fn divides(s: &Rational, n: usize) -> bool {
    s.is_integer() && !s.is_zero() && (int(n as i64) / s).is_integer()
}

/// `u` binary, `w` a nonnegative integer vector with `(w·𝟙) | n`, both
/// nontrivial, and `u·(w^g)` constant.
pub fn verify_nonspreading(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
    w: &RationalVector,
) -> Result<Witness, Rejection> {
    let n = cc.n();
    check_len(n, 0, u)?;
    check_len(n, 1, w)?;
    check_binary(0, u)?;
    check_nonnegative_integral(1, w)?;
    check_nontrivial(0, u)?;
    check_nontrivial(1, w)?;
    let s = w.sum();
    if !divides(&s, n) {
        return Err(Rejection::DivisibilityFails { sum: s, n });
    }
    pair_witness(Level::NonSpreading, cc, ids, u, w)
}

/// Two nontrivial nonnegative integer vectors with `w·(x^g)` constant.
pub fn verify_nonqi(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    w: &RationalVector,
    x: &RationalVector,
) -> Result<Witness, Rejection> {
    let n = cc.n();
    check_len(n, 0, w)?;
    check_len(n, 1, x)?;
    check_nonnegative_integral(0, w)?;
    check_nonnegative_integral(1, x)?;
    check_nontrivial(0, w)?;
    check_nontrivial(1, x)?;
    pair_witness(Level::NonQi, cc, ids, w, x)
}

/// Two nontrivial 0/1 vectors with `(u·𝟙)(v·𝟙) = n` and constant intersection
/// (necessarily 1).
pub fn verify_nonseparating(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
    v: &RationalVector,
) -> Result<Witness, Rejection> {
    let n = cc.n();
    check_len(n, 0, u)?;
    check_len(n, 1, v)?;
    check_binary(0, u)?;
    check_binary(1, v)?;
    check_nontrivial(0, u)?;
    check_nontrivial(1, v)?;
    let product = u.sum() * v.sum();
    if product != int(n as i64) {
        return Err(Rejection::ProductNotDegree { product, n });
    }
    pair_witness(Level::NonSeparating, cc, ids, u, v)
}

/// A partition `{y_i}` of the points and a 0/1 vector `v`, each block meeting
/// every image of `v` in exactly one point.
pub fn verify_nonsynchronising(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    ys: &[RationalVector],
    v: &RationalVector,
) -> Result<Witness, Rejection> {
    let n = cc.n();
    check_len(n, 0, v)?;
    check_binary(0, v)?;
    check_nontrivial(0, v)?;
    for (i, y) in ys.iter().enumerate() {
        check_len(n, i + 1, y)?;
        check_binary(i + 1, y)?;
        check_nontrivial(i + 1, y)?;
    }
    let total = ys.iter().fold(RationalVector::zeros(n), |acc, y| acc.add(y));
    if total != RationalVector::ones(n) {
        return Err(Rejection::NotAPartition);
    }
    let mut cert = Certificate {
        level: Level::NonSynchronising,
        lambda: Vec::new(),
        identity: IDENTITY.to_string(),
        lhs: Vec::new(),
        rhs: Vec::new(),
        traces: ids.traces(),
        mode: VerificationMode::Identity,
    };
    for y in ys {
        let product = y.sum() * v.sum();
        if product != int(n as i64) {
            return Err(Rejection::ProductNotDegree { product, n });
        }
        let (lambda, lhs, rhs) = identity(cc, y, v)?;
        cert.lambda.push(lambda);
        cert.lhs.push(lhs);
        cert.rhs.push(rhs);
    }
    Ok(Witness { level: Level::NonSynchronising, u: v.clone(), others: ys.to_vec(), certificate: cert })
}

/// `(n/(w·𝟙)) w`, which sums to `n`.
pub fn normalize_witness(w: &RationalVector, n: usize) -> Result<RationalVector, Rejection> {
    let s = w.sum();
    if !divides(&s, n) {
        return Err(Rejection::DivisibilityFails { sum: s, n });
    }
    Ok(w.scale(&(int(n as i64) / s)))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleMismatch {
    #[error("group enumeration gives a non-constant multiset for pair {pair}")]
    NotConstant { pair: usize },
    #[error("group enumeration gives {oracle} for pair {pair}, identity gave {identity}")]
    ValueDiffers { pair: usize, identity: Rational, oracle: Rational },
}

/// Re-checks every pair of an accepted witness by enumerating the group;
/// marks the certificate `both` on agreement.
pub fn confirm_with_oracle(witness: &mut Witness, elements: &[Permutation]) -> Result<(), OracleMismatch> {
    let pairs: Vec<(&RationalVector, &RationalVector)> = match witness.level {
        Level::NonSynchronising => witness.others.iter().map(|y| (y, &witness.u)).collect(),
        _ => vec![(&witness.u, &witness.others[0])],
    };
    for (pair, ((a, b), lambda)) in pairs.into_iter().zip(&witness.certificate.lambda).enumerate() {
        let m = inner_products_over(elements, a, b);
        match m.constant_value() {
            None => return Err(OracleMismatch::NotConstant { pair }),
            Some(v) if v != lambda => {
                return Err(OracleMismatch::ValueDiffers { pair, identity: lambda.clone(), oracle: v.clone() })
            }
            Some(_) => {}
        }
    }
    witness.certificate.mode = VerificationMode::Both;
    Ok(())
}

/// `(u·𝟙)(v·𝟙)/n`, the only possible constant.
pub fn forced_lambda(u: &RationalVector, v: &RationalVector) -> Rational {
    let n = u.len().max(1);
    u.sum() * v.sum() / int(n as i64)
}

/// Whether the witness is for a level at least as strong as `level`.
pub fn implies(witness_level: Level, level: Level) -> bool {
    witness_level >= level
}
