//! Homogeneous coherent configurations: axiom validation, intersection
//! numbers, symmetrisation and the commutative/symmetric/stratifiable flags.
//!
//! Intersection numbers follow the matrix convention
//! `A_i A_j = Σ_k p_ij^k A_k`, i.e. `p_ij^k = #{z : (x,z) ∈ R_i, (z,y) ∈ R_j}`
//! for any `(x,y) ∈ R_k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::matrix::RationalMatrix;
use crate::algebra::scalar::Scalar;
use crate::rational::{int, Rational};

/// Which coherent-configuration axiom failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// The diagonal is exactly one class, labelled 0.
    I,
    /// Every class label is used, so the classes partition `Ω×Ω`.
    II,
    /// Converses of classes are classes.
    III,
    /// Intersection numbers are constant on each class.
    IV,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::I => "i",
            Axiom::II => "ii",
            Axiom::III => "iii",
            Axiom::IV => "iv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CcError {
    #[error("relation matrix has {len} entries, expected {n}x{n}")]
    NotSquare { n: usize, len: usize },
    #[error("relation matrix is empty")]
    Empty,
    #[error("axiom ({axiom}) fails at cell ({}, {}): {detail}", cell.0, cell.1)]
    AxiomViolation { axiom: Axiom, cell: (usize, usize), detail: String },
}

/// An `n×n` matrix of class labels `0..=d`.
#[derive(Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    n: usize,
    classes: usize,
    data: Vec<u32>,
}

impl RelationMatrix {
    /// Wraps raw row-major labels. Labels must be contiguous from 0.
    pub fn from_raw(n: usize, data: Vec<u32>) -> Result<Self, CcError> {
        if n == 0 {
            return Err(CcError::Empty);
        }
        if data.len() != n * n {
            return Err(CcError::NotSquare { n, len: data.len() });
        }
        let classes = data.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut used = vec![false; classes];
        for &c in &data {
            used[c as usize] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(CcError::AxiomViolation {
                axiom: Axiom::II,
                cell: (0, 0),
                detail: format!("class label {missing} is unused (labels must be contiguous)"),
            });
        }
        Ok(Self { n, classes, data })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, CcError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CcError::NotSquare { n, len: rows.iter().map(Vec::len).sum() });
        }
        Self::from_raw(n, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes including the diagonal (`d + 1`).
    pub fn class_count(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.data[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    /// Relabels classes through `map` (old label → new label).
    pub fn relabel(&self, map: &[usize]) -> Result<Self, CcError> {
        Self::from_raw(self.n, self.data.iter().map(|&c| map[c as usize] as u32).collect())
    }

    /// CSV dump of the class indices, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 3);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(u32::to_string).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for RelationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RelationMatrix n={} classes={}", self.n, self.classes)?;
        for x in 0..self.n {
            writeln!(f, "  {:?}", self.row(x))?;
        }
        Ok(())
    }
}

/// A validated homogeneous coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentConfiguration {
    rel: RelationMatrix,
    valency: Vec<usize>,
    converse: Vec<usize>,
    /// Flattened `p[(i * r + j) * r + k]`.
    p: Vec<u32>,
}

impl CoherentConfiguration {
    /// Validates axioms (i)–(iv) exhaustively and computes the invariants.
    /// Cost is `O(n³)`.
    pub fn from_relation_matrix(rel: RelationMatrix) -> Result<Self, CcError> {
        let (valency, converse) = check_first_three(&rel)?;
        let p = base_point_intersections(&rel)?;
        let cc = Self { rel, valency, converse, p };
        cc.check_intersections_everywhere()?;
        Ok(cc)
    }

    /// Builds the configuration of orbitals of a transitive group. The group
    /// action guarantees axioms (iii) and (iv), so intersection numbers are
    /// read off the rows through point 0 in `O(n²)`.
    pub fn from_orbitals(rel: RelationMatrix) -> Result<Self, CcError> {
        let (valency, converse) = check_first_three(&rel)?;
        let p = base_point_intersections(&rel)?;
        Ok(Self { rel, valency, converse, p })
    }

    pub fn n(&self) -> usize {
        self.rel.n
    }

    /// Number of non-identity classes.
    pub fn d(&self) -> usize {
        self.rel.classes - 1
    }

    /// Number of classes including the diagonal.
    pub fn rank(&self) -> usize {
        self.rel.classes
    }

    pub fn relations(&self) -> &RelationMatrix {
        &self.rel
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valency
    }

    pub fn valency(&self, i: usize) -> usize {
        self.valency[i]
    }

    pub fn converse(&self) -> &[usize] {
        &self.converse
    }

    #[inline]
    pub fn p(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.p[(i * r + j) * r + k]
    }

    /// The full tensor as `p[i][j][k]`.
    pub fn intersection_numbers(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| self.p(i, j, k)).collect()).collect()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (i + 1..r).all(|j| (0..r).all(|k| self.p(i, j, k) == self.p(j, i, k))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.converse.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// `⟨A_i, A_i⟩ = tr(A_i A_iᵀ) = n · valency_i`.
    pub fn frobenius_k(&self, i: usize) -> Rational {
        int((self.n() * self.valency[i]) as i64)
    }

    pub fn adjacency_matrix(&self, i: usize) -> RationalMatrix {
        let n = self.n();
        RationalMatrix::from_fn(n, n, |x, y| if self.rel.get(x, y) == i { int(1) } else { int(0) })
    }

    /// Dense matrix of `Σ_i c_i A_i`.
    pub fn combination_matrix(&self, coeffs: &[Rational]) -> RationalMatrix {
        let n = self.n();
        RationalMatrix::from_fn(n, n, |x, y| coeffs[self.rel.get(x, y)].clone())
    }

    /// Product of `Σ a_i A_i` and `Σ b_j A_j` through the structure constants.
    pub fn multiply<T: Scalar>(&self, a: &[T], b: &[T]) -> Vec<T> {
        let r = self.rank();
        let mut out = vec![T::zero(); r];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.clone() * bj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let pk = self.p(i, j, k);
                    if pk != 0 {
                        *o = o.clone() + ab.clone() * T::from_int(pk as i64);
                    }
                }
            }
        }
        out
    }

    /// Coefficients of the transpose `(Σ c_i A_i)ᵀ = Σ c_i A_{i*}`.
    pub fn transpose_coeffs<T: Clone>(&self, c: &[T]) -> Vec<T> {
        let mut out = c.to_vec();
        for (i, &ic) in self.converse.iter().enumerate() {
            out[ic] = c[i].clone();
        }
        out
    }

    /// `s_i(u) = Σ_{(x,y) ∈ R_i} u_x u_y = u A_i uᵀ` for every class.
    pub fn class_sums(&self, u: &[Rational]) -> Vec<Rational> {
        self.class_bilinear(u, u)
    }

    /// `u A_i vᵀ` for every class.
    pub fn class_bilinear(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        assert_eq!(u.len(), n);
        assert_eq!(v.len(), n);
        let mut sums = vec![Rational::from_integer(0.into()); self.rank()];
        for (x, ux) in u.iter().enumerate() {
            if num_traits::Zero::is_zero(ux) {
                continue;
            }
            let row = self.rel.row(x);
            for (y, vy) in v.iter().enumerate() {
                if num_traits::Zero::is_zero(vy) {
                    continue;
                }
                sums[row[y] as usize] += ux * vy;
            }
        }
        sums
    }

    pub fn symmetrise(&self) -> SymmetrisedPartition {
        let r = self.rank();
        // Merged pairs take the smaller label; survivors keep relative order.
        let mut old_to_new = vec![usize::MAX; r];
        let mut next = 0;
        for i in 0..r {
            let c = self.converse[i];
            if c < i {
                old_to_new[i] = old_to_new[c];
            } else {
                old_to_new[i] = next;
                next += 1;
            }
        }
        let rel = self.rel.relabel(&old_to_new).expect("merged labels stay contiguous");
        let mut members = vec![Vec::new(); next];
        for (i, &m) in old_to_new.iter().enumerate() {
            members[m].push(i);
        }
        // Axiom (iv) for the fused partition, evaluated in the structure constants.
        let mut p = vec![0u32; next * next * next];
        let mut failure = None;
        'outer: for a in 0..next {
            for b in 0..next {
                for c in 0..next {
                    let mut value: Option<u32> = None;
                    for &k in &members[c] {
                        let s: u32 = members[a]
                            .iter()
                            .flat_map(|&i| members[b].iter().map(move |&j| (i, j)))
                            .map(|(i, j)| self.p(i, j, k))
                            .sum();
                        match value {
                            None => value = Some(s),
                            Some(v) if v != s => {
                                failure = Some((a, b, c, k));
                                break 'outer;
                            }
                            _ => {}
                        }
                    }
                    p[(a * next + b) * next + c] = value.unwrap_or(0);
                }
            }
        }
        let valency: Vec<usize> = members.iter().map(|m| m.iter().map(|&i| self.valency[i]).sum()).collect();
        let violation = failure.map(|(a, b, c, k)| {
            let cell = find_cell(&self.rel, k);
            CcError::AxiomViolation {
                axiom: Axiom::IV,
                cell,
                detail: format!(
                    "intersection count for merged classes ({a}, {b}) varies within merged class {c}"
                ),
            }
        });
        let coherent = violation.is_none().then(|| CoherentConfiguration {
            rel: rel.clone(),
            valency: valency.clone(),
            converse: (0..next).collect(),
            p,
        });
        SymmetrisedPartition { rel, class_map: old_to_new, valency, coherent, violation }
    }

    pub fn is_stratifiable(&self) -> bool {
        self.symmetrise().is_coherent()
    }

    pub fn summary(&self) -> CcSummary {
        CcSummary {
            n: self.n(),
            d: self.d(),
            rank: self.rank(),
            valencies: self.valency.clone(),
            converse: self.converse.clone(),
            commutative: self.is_commutative(),
            symmetric: self.is_symmetric(),
            stratifiable: self.is_stratifiable(),
        }
    }

    fn check_intersections_everywhere(&self) -> Result<(), CcError> {
        let n = self.n();
        let r = self.rank();
        let mut counts = vec![0u32; n * r * r];
        for x in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            let row_x = self.rel.row(x);
            for z in 0..n {
                let i = row_x[z] as usize;
                let row_z = self.rel.row(z);
                for y in 0..n {
                    counts[(y * r + i) * r + row_z[y] as usize] += 1;
                }
            }
            for y in 0..n {
                let k = row_x[y] as usize;
                for i in 0..r {
                    for j in 0..r {
                        let got = counts[(y * r + i) * r + j];
                        let want = self.p(i, j, k);
                        if got != want {
                            return Err(CcError::AxiomViolation {
                                axiom: Axiom::IV,
                                cell: (x, y),
                                detail: format!("p_{i}{j}^{k} is {got} here but {want} elsewhere"),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn find_cell(rel: &RelationMatrix, k: usize) -> (usize, usize) {
    let n = rel.n;
    (0..n * n).find(|&c| rel.data[c] as usize == k).map_or((0, 0), |c| (c / n, c % n))
}

/// Axioms (i)–(iii) plus constant row counts; returns valencies and converse map.
fn check_first_three(rel: &RelationMatrix) -> Result<(Vec<usize>, Vec<usize>), CcError> {
    let n = rel.n;
    let r = rel.classes;
    for x in 0..n {
        for y in 0..n {
            let c = rel.get(x, y);
            if (x == y) != (c == 0) {
                let detail = if x == y {
                    format!("diagonal cell has class {c}")
                } else {
                    "class 0 appears off the diagonal".to_string()
                };
                return Err(CcError::AxiomViolation { axiom: Axiom::I, cell: (x, y), detail });
            }
        }
    }
    let mut converse = vec![usize::MAX; r];
    for x in 0..n {
        for y in 0..n {
            let (c, t) = (rel.get(x, y), rel.get(y, x));
            if converse[c] == usize::MAX {
                converse[c] = t;
            } else if converse[c] != t {
                return Err(CcError::AxiomViolation {
                    axiom: Axiom::III,
                    cell: (y, x),
                    detail: format!("transpose of class {c} meets classes {} and {t}", converse[c]),
                });
            }
        }
    }
    let mut valency = vec![0usize; r];
    for &c in rel.row(0) {
        valency[c as usize] += 1;
    }
    for x in 1..n {
        let mut counts = vec![0usize; r];
        for &c in rel.row(x) {
            counts[c as usize] += 1;
        }
        if let Some(i) = (0..r).find(|&i| counts[i] != valency[i]) {
            return Err(CcError::AxiomViolation {
                axiom: Axiom::IV,
                cell: (x, x),
                detail: format!("class {i} has {} cells in row {x} but {} in row 0", counts[i], valency[i]),
            });
        }
    }
    Ok((valency, converse))
}

/// `p_ij^k` counted at `(0, y)` for the first `y` of each class.
fn base_point_intersections(rel: &RelationMatrix) -> Result<Vec<u32>, CcError> {
    let n = rel.n;
    let r = rel.classes;
    let mut p = vec![0u32; r * r * r];
    let mut done = vec![false; r];
    let row0 = rel.row(0);
    for y in 0..n {
        let k = row0[y] as usize;
        if done[k] {
            continue;
        }
        done[k] = true;
        for z in 0..n {
            let i = row0[z] as usize;
            let j = rel.get(z, y);
            p[(i * r + j) * r + k] += 1;
        }
    }
    if let Some(k) = done.iter().position(|&d| !d) {
        return Err(CcError::AxiomViolation {
            axiom: Axiom::IV,
            cell: (0, 0),
            detail: format!("class {k} does not meet row 0 (configuration is not homogeneous)"),
        });
    }
    Ok(p)
}

/// Result of merging each non-symmetric class with its converse.
#[derive(Clone, Debug)]
pub struct SymmetrisedPartition {
    pub rel: RelationMatrix,
    /// Original class label → merged label.
    pub class_map: Vec<usize>,
    pub valency: Vec<usize>,
    coherent: Option<CoherentConfiguration>,
    violation: Option<CcError>,
}

impl SymmetrisedPartition {
    pub fn is_coherent(&self) -> bool {
        self.coherent.is_some()
    }

    /// The merged configuration when it is coherent.
    pub fn configuration(&self) -> Option<&CoherentConfiguration> {
        self.coherent.as_ref()
    }

    /// The failed axiom when it is not.
    pub fn violation(&self) -> Option<&CcError> {
        self.violation.as_ref()
    }

    pub fn class_count(&self) -> usize {
        self.valency.len()
    }
}

/// JSON-facing summary of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcSummary {
    pub n: usize,
    pub d: usize,
    pub rank: usize,
    pub valencies: Vec<usize>,
    pub converse: Vec<usize>,
    pub commutative: bool,
    pub symmetric: bool,
    pub stratifiable: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::groups;
    use crate::perm::{induced_pair_action, orbitals};

    fn cc_of(g: &crate::perm::GeneratorSet) -> CoherentConfiguration {
        CoherentConfiguration::from_relation_matrix(orbitals(g).unwrap()).unwrap()
    }

    #[test]
    fn agl15_is_valid_noncommutative_nonstratifiable() {
        let cc = cc_of(&groups::agl1_5_on_pairs());
        assert_eq!(cc.d(), 5);
        let mut v = cc.valencies().to_vec();
        v.sort_unstable();
        assert_eq!(v, vec![1, 1, 2, 2, 2, 2]);
        assert!(!cc.is_commutative());
        assert!(!cc.is_symmetric());
        assert!(!cc.is_stratifiable());
        let sym = cc.symmetrise();
        let full = CoherentConfiguration::from_relation_matrix(sym.rel.clone());
        assert!(matches!(full, Err(CcError::AxiomViolation { axiom: Axiom::IV, .. })));
        assert!(matches!(sym.violation(), Some(CcError::AxiomViolation { axiom: Axiom::IV, .. })));
    }

    #[test]
    fn trivial_configuration() {
        let rel = RelationMatrix::from_raw(1, vec![0]).unwrap();
        let cc = CoherentConfiguration::from_relation_matrix(rel).unwrap();
        assert_eq!(cc.d(), 0);
        assert!(cc.is_symmetric());
        assert_eq!(cc.p(0, 0, 0), 1);
    }

    #[test]
    fn axiom_violations_are_named() {
        let bad_diag = RelationMatrix::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(
            CoherentConfiguration::from_relation_matrix(bad_diag),
            Err(CcError::AxiomViolation { axiom: Axiom::I, .. })
        ));
        let gap = RelationMatrix::from_rows(&[vec![0, 2], vec![2, 0]]);
        assert!(matches!(gap, Err(CcError::AxiomViolation { axiom: Axiom::II, .. })));
        let bad_conv =
            RelationMatrix::from_rows(&[vec![0, 1, 1], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        assert!(matches!(
            CoherentConfiguration::from_relation_matrix(bad_conv),
            Err(CcError::AxiomViolation { axiom: Axiom::III, .. })
        ));
        // Path on 3 points: degrees differ between the middle and the ends.
        let path = RelationMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
        assert!(matches!(
            CoherentConfiguration::from_relation_matrix(path),
            Err(CcError::AxiomViolation { axiom: Axiom::IV, .. })
        ));
    }

    #[test]
    fn johnson_scheme_matrix_identity() {
        let cc = cc_of(&induced_pair_action(&groups::alternating_natural(5)));
        assert!(cc.is_symmetric());
        assert!(cc.is_commutative());
        assert_eq!(cc.rank(), 3);
        for i in 0..cc.rank() {
            for j in 0..cc.rank() {
                let lhs = cc.adjacency_matrix(i).mul(&cc.adjacency_matrix(j));
                let coeffs: Vec<Rational> = (0..cc.rank()).map(|k| int(cc.p(i, j, k) as i64)).collect();
                assert_eq!(lhs, cc.combination_matrix(&coeffs));
            }
        }
        // The class of valency 6 in J(5,2) is the disjoint-pairs-complement graph:
        // adjacent pairs share a point, with 3 common neighbours.
        let one = (1..3).find(|&i| cc.valency(i) == 6).unwrap();
        assert_eq!(cc.p(one, one, one), 3);
    }

    #[test]
    fn sl25_symmetrisation() {
        let cc = cc_of(&groups::sl2_5_on_vectors());
        let mut v = cc.valencies().to_vec();
        v.sort_unstable();
        assert_eq!(v, vec![1, 1, 1, 1, 5, 5, 5, 5]);
        assert!(!cc.is_commutative());
        let sym = cc.symmetrise();
        assert!(sym.is_coherent());
        let mut sv = sym.valency.clone();
        sv.sort_unstable();
        assert_eq!(sv, vec![1, 1, 2, 10, 10]);
        let direct = CoherentConfiguration::from_relation_matrix(sym.rel.clone()).unwrap();
        assert_eq!(&direct, sym.configuration().unwrap());
    }

    #[test]
    fn frobenius_k_values() {
        let cc = cc_of(&groups::agl1_5_on_pairs());
        assert_eq!(cc.frobenius_k(0), int(10));
        for i in 0..cc.rank() {
            assert_eq!(cc.frobenius_k(i), int(10 * cc.valency(i) as i64));
            let a = cc.adjacency_matrix(i);
            assert_eq!(a.mul(&a.transpose()).trace(), cc.frobenius_k(i));
        }
    }

    #[test]
    fn symmetric_configuration_symmetrises_to_itself() {
        let cc = cc_of(&groups::symmetric_natural(5));
        let sym = cc.symmetrise();
        assert!(sym.is_coherent());
        assert_eq!(&sym.rel, cc.relations());
    }
}
