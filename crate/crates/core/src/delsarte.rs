//! Outer distributions `D(u)`, the constant-intersection criterion, and
//! design-orthogonality with respect to central primitive idempotents.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::idempotents::{CentralIdempotentSet, FormValue};
use crate::algebra::matrix::RationalMatrix;
use crate::algebra::quadratic::QSqrt5;
use crate::cc::CoherentConfiguration;
use crate::rational::{int, to_f64, Rational};
use crate::vector::RationalVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelsarteError {
    #[error("a full basis of {expected} projections is required, got {found}")]
    MissingFixtureBasis { expected: usize, found: usize },
}

/// `D(u) = Σ_i (u A_iᵀ uᵀ / k_i) A_i`, stored by its coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionMatrix {
    pub coeffs: Vec<Rational>,
    pub source: RationalVector,
}

impl DistributionMatrix {
    pub fn matrix(&self, cc: &CoherentConfiguration) -> RationalMatrix {
        cc.combination_matrix(&self.coeffs)
    }

    /// `v D(u) vᵀ` from the class sums of `v`.
    pub fn evaluate(&self, cc: &CoherentConfiguration, v: &RationalVector) -> Rational {
        cc.class_sums(v.entries()).iter().zip(&self.coeffs).fold(Rational::zero(), |acc, (s, c)| acc + s * c)
    }
}

pub fn outer_distribution(cc: &CoherentConfiguration, u: &RationalVector) -> DistributionMatrix {
    let sums = cc.class_sums(u.entries());
    // u A_iᵀ uᵀ is a scalar, so it equals u A_i uᵀ.
    let coeffs = sums.iter().enumerate().map(|(i, s)| s / cc.frobenius_k(i)).collect();
    DistributionMatrix { coeffs, source: u.clone() }
}

/// Outcome of the constant-intersection identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTest {
    pub constant: bool,
    /// The forced constant `(u·𝟙)(v·𝟙)/n` when `constant`.
    pub value: Option<Rational>,
    /// `v D(u) vᵀ`.
    pub lhs: Rational,
    /// `(u·𝟙)²(v·𝟙)²/n²`.
    pub rhs: Rational,
}

/// `u·(v^g)` is constant over the group iff `v D(u) vᵀ = (uJuᵀ)(vJvᵀ)/n²`.
pub fn constant_intersection_test(cc: &CoherentConfiguration, u: &RationalVector, v: &RationalVector) -> IntersectionTest {
    let su = cc.class_sums(u.entries());
    let sv = cc.class_sums(v.entries());
    let lhs = su
        .iter()
        .zip(&sv)
        .enumerate()
        .fold(Rational::zero(), |acc, (i, (a, b))| acc + a * b / cc.frobenius_k(i));
    let n = int(cc.n() as i64);
    let (su1, sv1) = (u.sum(), v.sum());
    let rhs = &su1 * &su1 * &sv1 * &sv1 / (&n * &n);
    let constant = lhs == rhs;
    IntersectionTest { constant, value: constant.then(|| su1 * sv1 / n), lhs, rhs }
}

/// `(uΠ_tuᵀ)(vΠ_tvᵀ) = 0` for every nonprincipal `t`.
pub fn is_design_orthogonal(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
    v: &RationalVector,
) -> bool {
    let su = cc.class_sums(u.entries());
    let sv = cc.class_sums(v.entries());
    let scale = to_f64(&u.dot(u)) * to_f64(&v.dot(v));
    (0..ids.len())
        .filter(|&t| t != ids.principal_index())
        .all(|t| (ids.form(t, &su) * ids.form(t, &sv)).is_zero_within(ids.tol() * scale.max(1.0)))
}

/// The values `(uΠ_tuᵀ, vΠ_tvᵀ)` for every idempotent.
pub fn component_forms(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
) -> Vec<FormValue> {
    let su = cc.class_sums(u.entries());
    (0..ids.len()).map(|t| ids.form(t, &su)).collect()
}

/// Design-orthogonality implies constant intersection; returns whether the
/// implication holds for this pair.
pub fn design_orthogonal_implies_constant_check(
    cc: &CoherentConfiguration,
    ids: &CentralIdempotentSet,
    u: &RationalVector,
    v: &RationalVector,
) -> bool {
    !is_design_orthogonal(cc, ids, u, v) || constant_intersection_test(cc, u, v).constant
}

/// Exact positive semidefiniteness of `D(u)`.
pub fn psd_check(cc: &CoherentConfiguration, d: &DistributionMatrix) -> bool {
    d.matrix(cc).is_positive_semidefinite()
}

/// A complete basis `{E_j}` of the adjacency algebra in `ℚ(√5)`, given by
/// coefficient vectors over the `A_i`.
#[derive(Clone, Debug)]
pub struct ProjectionBasis<'a> {
    cc: &'a CoherentConfiguration,
    e: Vec<Vec<QSqrt5>>,
    m: Vec<QSqrt5>,
}

impl<'a> ProjectionBasis<'a> {
    pub fn new(cc: &'a CoherentConfiguration, e: Vec<Vec<QSqrt5>>) -> Result<Self, DelsarteError> {
        if e.len() != cc.rank() || e.iter().any(|c| c.len() != cc.rank()) {
            return Err(DelsarteError::MissingFixtureBasis { expected: cc.rank(), found: e.len() });
        }
        let n = QSqrt5::rational(int(cc.n() as i64));
        let m = e.iter().map(|ej| n.clone() * frobenius_inner(cc, ej, ej)).collect();
        Ok(Self { cc, e, m })
    }

    /// `m_j = n⟨E_j, E_j⟩`.
    pub fn m(&self) -> &[QSqrt5] {
        &self.m
    }

    pub fn e(&self) -> &[Vec<QSqrt5>] {
        &self.e
    }
}

/// `⟨X, Y⟩ = tr(X Yᵀ) = Σ_i x_i y_i · n · valency_i` for real coefficient vectors.
pub fn frobenius_inner(cc: &CoherentConfiguration, x: &[QSqrt5], y: &[QSqrt5]) -> QSqrt5 {
    x.iter().zip(y).enumerate().fold(QSqrt5::zero(), |acc, (i, (a, b))| {
        acc + a.clone() * b.clone() * QSqrt5::rational(cc.frobenius_k(i))
    })
}

fn form_q(e: &[QSqrt5], sums: &[Rational]) -> QSqrt5 {
    e.iter().zip(sums).fold(QSqrt5::zero(), |acc, (c, s)| acc + c.scale(s))
}

/// `Σ_i (1/k_i)(xA_iᵀxᵀ)(yA_iyᵀ) = n Σ_j (1/m_j)(xE_jᵀxᵀ)(yE_jyᵀ)`, exactly.
pub fn projection_identity_check(basis: &ProjectionBasis<'_>, x: &RationalVector, y: &RationalVector) -> bool {
    let cc = basis.cc;
    let sx = cc.class_sums(x.entries());
    let sy = cc.class_sums(y.entries());
    let lhs = sx
        .iter()
        .zip(&sy)
        .enumerate()
        .fold(Rational::zero(), |acc, (i, (a, b))| acc + a * b / cc.frobenius_k(i));
    let n = QSqrt5::rational(int(cc.n() as i64));
    let mut rhs = QSqrt5::zero();
    for (ej, mj) in basis.e.iter().zip(&basis.m) {
        let term = form_q(&cc.transpose_coeffs(ej), &sx) * form_q(ej, &sy);
        if term.is_zero() {
            continue;
        }
        rhs = rhs + term * mj.inv_or_zero();
    }
    QSqrt5::rational(lhs) == n * rhs
}

/// The matrix identity `Σ_i (1/k_i)(xA_iᵀyᵀ)A_i = n Σ_j (1/m_j)(xE_jᵀyᵀ)E_j`,
/// compared coefficientwise over the `A_i`.
pub fn projection_matrix_identity_check(basis: &ProjectionBasis<'_>, x: &RationalVector, y: &RationalVector) -> bool {
    let cc = basis.cc;
    let r = cc.rank();
    let bil = cc.class_bilinear(x.entries(), y.entries());
    // x A_iᵀ yᵀ = x A_{i*} yᵀ.
    let lhs: Vec<QSqrt5> = (0..r)
        .map(|i| QSqrt5::rational(bil[cc.converse()[i]].clone() / cc.frobenius_k(i)))
        .collect();
    let n = QSqrt5::rational(int(cc.n() as i64));
    let mut rhs = vec![QSqrt5::zero(); r];
    for (ej, mj) in basis.e.iter().zip(&basis.m) {
        let coeff = form_q(&cc.transpose_coeffs(ej), &bil) * mj.inv_or_zero() * n.clone();
        for (o, c) in rhs.iter_mut().zip(ej) {
            *o = o.clone() + coeff.clone() * c.clone();
        }
    }
    lhs == rhs
}

trait InvOrZero {
    fn inv_or_zero(&self) -> Self;
}

impl InvOrZero for QSqrt5 {
    fn inv_or_zero(&self) -> Self {
        use crate::algebra::scalar::Field;
        self.inv().unwrap_or_else(QSqrt5::zero)
    }
}

/// `D(𝟙) = J`.
pub fn all_ones_distribution(cc: &CoherentConfiguration) -> DistributionMatrix {
    DistributionMatrix { coeffs: vec![Rational::one(); cc.rank()], source: RationalVector::ones(cc.n()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::idempotents::{central_primitive_idempotents, SplitOptions};
    use crate::constructions::groups;
    use crate::perm::{orbit_inner_products, orbitals};

    fn cc_of(g: &crate::perm::GeneratorSet) -> CoherentConfiguration {
        CoherentConfiguration::from_orbitals(orbitals(g).unwrap()).unwrap()
    }

    #[test]
    fn distribution_of_ones_is_j() {
        let cc = cc_of(&groups::agl1_5_on_pairs());
        let d = outer_distribution(&cc, &RationalVector::ones(10));
        assert_eq!(d, all_ones_distribution(&cc));
        assert!(psd_check(&cc, &d));
        let zero = outer_distribution(&cc, &RationalVector::zeros(10));
        assert!(zero.matrix(&cc).is_zero());
    }

    #[test]
    fn ones_intersect_everything_constantly() {
        let cc = cc_of(&groups::alternating_on_pairs(5));
        let v = RationalVector::from_integers([3, 0, -1, 2, 5, 0, 0, 1, 1, 4]);
        let t = constant_intersection_test(&cc, &RationalVector::ones(10), &v);
        assert!(t.constant);
        assert_eq!(t.value, Some(v.sum()));
        let ids = central_primitive_idempotents(&cc, &SplitOptions::default()).unwrap();
        assert!(is_design_orthogonal(&cc, &ids, &RationalVector::ones(10), &v));
    }

    #[test]
    fn j_minus_two_i_is_not_psd() {
        let j = RationalMatrix::from_fn(10, 10, |_, _| int(1));
        let m = j.sub(&RationalMatrix::identity(10).scale(&int(2)));
        assert!(!m.is_positive_semidefinite());
    }

    #[test]
    fn identity_matches_oracle_on_small_group() {
        let g = groups::dihedral_natural(6);
        let cc = cc_of(&g);
        let u = RationalVector::from_integers([1, 0, 1, 0, 1, 0]);
        let v = RationalVector::from_integers([1, 1, 0, 0, 0, 0]);
        let t = constant_intersection_test(&cc, &u, &v);
        let oracle = orbit_inner_products(&g, &u, &v, 100).unwrap();
        assert_eq!(t.constant, oracle.is_constant());
        assert_eq!(t.value.as_ref(), oracle.constant_value());
    }
}
