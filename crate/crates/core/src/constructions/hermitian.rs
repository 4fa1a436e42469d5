//! The 165 points of the Hermitian generalised quadrangle `H(4,4)` and the
//! action of the unitary group generated by its transvections.

use super::gf::{gf, FiniteField};
use crate::perm::{GeneratorSet, Permutation};

pub type Point5 = [u32; 5];

#[derive(Clone, Debug)]
pub struct HermitianPoints {
    pub field: FiniteField,
    /// Normalised isotropic points, sorted.
    pub points: Vec<Point5>,
    /// Projective points of `PG(4,4)` scanned.
    pub scanned: usize,
    pub generators: GeneratorSet,
}

/// `(q^{n+1} − (−1)^{n+1})(q^n − (−1)^n)/(q² − 1)` isotropic points of a
/// nondegenerate Hermitian form on `GF(q²)^{n+1}`.
pub fn hermitian_point_count(q: i64, n: u32) -> i64 {
    let sign = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
    (q.pow(n + 1) - sign(n + 1)) * (q.pow(n) - sign(n)) / (q * q - 1)
}

struct Form<'a> {
    f: &'a FiniteField,
}

impl Form<'_> {
    /// `h(x, y) = Σ x_i ȳ_i` with `ȳ = y²` over `GF(4)`.
    fn h(&self, x: &Point5, y: &Point5) -> u32 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.f.add(acc, self.f.mul(a, self.f.frobenius(b))))
    }

    fn normalise(&self, p: Point5) -> Point5 {
        let lead = p.iter().copied().find(|&c| c != 0).expect("nonzero vector");
        let inv = self.f.inv(lead).unwrap();
        p.map(|c| self.f.mul(c, inv))
    }

    /// The transvection `x ↦ x + h(x, v) v`, unitary for isotropic `v` in characteristic 2.
    fn transvect(&self, v: &Point5, x: &Point5) -> Point5 {
        let c = self.h(x, v);
        let mut out = *x;
        for (o, &vi) in out.iter_mut().zip(v) {
            *o = self.f.add(*o, self.f.mul(c, vi));
        }
        out
    }
}

fn projective_points(q: u32) -> Vec<Point5> {
    let mut out = Vec::new();
    for lead in 0..5 {
        let free = 4 - lead;
        for code in 0..q.pow(free as u32) {
            let mut p = [0u32; 5];
            p[lead] = 1;
            let mut c = code;
            for slot in p.iter_mut().skip(lead + 1) {
                *slot = c % q;
                c /= q;
            }
            out.push(p);
        }
    }
    out
}

/// Isotropic points of `h(x, x) = Σ x_i³` on `GF(4)^5`, acted on by the
/// transvections centred at every isotropic point (which generate `SU(5,2)`).
pub fn hermitian_points() -> HermitianPoints {
    let field = gf(4).expect("GF(4) is supported");
    let form = Form { f: &field };
    let all = projective_points(4);
    let mut points: Vec<Point5> = all.iter().copied().filter(|p| form.h(p, p) == 0).collect();
    points.sort_unstable();
    let index = |p: Point5| points.binary_search(&form.normalise(p)).expect("isotropic points are preserved");
    let gens = points
        .iter()
        .map(|v| Permutation::new(points.iter().map(|x| index(form.transvect(v, x))).collect()).expect("bijection"))
        .filter(|g| !g.is_identity())
        .collect();
    let generators = GeneratorSet::new(points.len(), gens).expect("generators share the degree");
    HermitianPoints { field, scanned: all.len(), points, generators }
}
