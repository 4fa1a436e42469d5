//! `PGL(2,q)` on the external points of the conic `y² = xz` in `PG(2,q)`.

use serde::{Deserialize, Serialize};

use super::gf::{gf, FieldError, FiniteField};
use super::graph::Graph;
use crate::perm::{GeneratorSet, PermError, Permutation};

type Point = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConicError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("q = {0} is not an odd prime power in 5..=27")]
    OutOfRange(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Counts that hold for every odd `q`; checked exhaustively by the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicCounts {
    pub plane_points: usize,
    pub conic_points: usize,
    pub external_points: usize,
    pub internal_points: usize,
    /// External points on each tangent line (the same for all tangents).
    pub external_per_tangent: usize,
    /// External points on each secant line.
    pub external_per_secant: usize,
    /// External points on each passant line.
    pub external_per_passant: usize,
}

#[derive(Clone, Debug)]
pub struct ConicAction {
    pub q: usize,
    pub field: FiniteField,
    /// Normalised homogeneous coordinates of the external points.
    pub points: Vec<Point>,
    /// External points adjacent when the line joining them is a tangent.
    pub graph: Graph,
    pub generators: GeneratorSet,
    /// The external points of the tangent line at `(1,0,0)`.
    pub clique: Vec<usize>,
    /// The external points of the first passant line.
    pub coclique: Vec<usize>,
    /// The external points of the first secant line (pairwise non-adjacent).
    pub secant_coclique: Vec<usize>,
    pub counts: ConicCounts,
}

struct Plane<'a> {
    f: &'a FiniteField,
}

impl Plane<'_> {
    /// First nonzero coordinate scaled to 1.
    fn normalise(&self, p: Point) -> Option<Point> {
        let lead = p.iter().copied().find(|&c| c != 0)?;
        let inv = self.f.inv(lead)?;
        Some(p.map(|c| self.f.mul(c, inv)))
    }

    fn points(&self) -> Vec<Point> {
        let q = self.f.order() as u32;
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                out.push([1, a, b]);
            }
        }
        for b in 0..q {
            out.push([0, 1, b]);
        }
        out.push([0, 0, 1]);
        out
    }

    fn dot(&self, a: Point, b: Point) -> u32 {
        let f = self.f;
        f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
    }

    fn cross(&self, a: Point, b: Point) -> Point {
        let f = self.f;
        let m = |x: u32, y: u32, z: u32, w: u32| f.sub(f.mul(x, y), f.mul(z, w));
        [m(a[1], b[2], a[2], b[1]), m(a[2], b[0], a[0], b[2]), m(a[0], b[1], a[1], b[0])]
    }

    fn on_conic(&self, p: Point) -> bool {
        self.f.mul(p[1], p[1]) == self.f.mul(p[0], p[2])
    }

    /// Tangent line at a conic point `P` of `y² − xz`: `−z_P x + 2y_P y − x_P z = 0`.
    fn tangent(&self, p: Point) -> Point {
        let f = self.f;
        [f.neg(p[2]), f.add(p[1], p[1]), f.neg(p[0])]
    }

    fn apply(&self, m: &[[u32; 3]; 3], p: Point) -> Point {
        let f = self.f;
        let row = |r: &[u32; 3]| f.add(f.add(f.mul(r[0], p[0]), f.mul(r[1], p[1])), f.mul(r[2], p[2]));
        self.normalise([row(&m[0]), row(&m[1]), row(&m[2])]).expect("invertible")
    }
}

/// The action on `(s², st, t²)` induced by `(s,t) ↦ (as + bt, cs + dt)`.
fn sym2(f: &FiniteField, a: u32, b: u32, c: u32, d: u32) -> [[u32; 3]; 3] {
    let two = f.from_int(2);
    [
        [f.mul(a, a), f.mul(two, f.mul(a, b)), f.mul(b, b)],
        [f.mul(a, c), f.add(f.mul(a, d), f.mul(b, c)), f.mul(b, d)],
        [f.mul(c, c), f.mul(two, f.mul(c, d)), f.mul(d, d)],
    ]
}

pub fn conic_external_action(q: usize) -> Result<ConicAction, ConicError> {
    if !(5..=27).contains(&q) || q.is_multiple_of(2) {
        return Err(ConicError::OutOfRange(q));
    }
    let field = gf(q)?;
    let plane = Plane { f: &field };
    let all = plane.points();
    let conic: Vec<Point> = all.iter().copied().filter(|&p| plane.on_conic(p)).collect();
    let tangents: Vec<Point> = conic.iter().map(|&p| plane.normalise(plane.tangent(p)).unwrap()).collect();
    let on_tangents = |p: Point| tangents.iter().filter(|&&l| plane.dot(l, p) == 0).count();
    let mut points = Vec::new();
    let mut internal = 0;
    for &p in &all {
        if plane.on_conic(p) {
            continue;
        }
        match on_tangents(p) {
            2 => points.push(p),
            0 => internal += 1,
            k => unreachable!("a point off the conic lies on {k} tangents for odd q"),
        }
    }
    points.sort_unstable();
    let n = points.len();
    let index = |p: Point| points.binary_search(&p).ok();

    let conic_on_line = |l: Point| conic.iter().filter(|&&c| plane.dot(l, c) == 0).count();
    let graph = Graph::from_fn(n, |i, j| conic_on_line(plane.cross(points[i], points[j])) == 1).expect("symmetric");

    let externals_on = |l: Point| -> Vec<usize> { (0..n).filter(|&i| plane.dot(l, points[i]) == 0).collect() };
    let clique = externals_on(plane.normalise(plane.tangent([1, 0, 0])).unwrap());
    let lines = all.clone();
    let passant = lines.iter().copied().find(|&l| conic_on_line(l) == 0).expect("passant lines exist");
    let secant = lines.iter().copied().find(|&l| conic_on_line(l) == 2).expect("secant lines exist");
    let coclique = externals_on(passant);
    let secant_coclique = externals_on(secant);

    let per = |k: usize| -> usize {
        let counts: Vec<usize> =
            lines.iter().filter(|&&l| conic_on_line(l) == k).map(|&l| externals_on(l).len()).collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "lines of one type carry different external counts");
        counts[0]
    };
    let counts = ConicCounts {
        plane_points: all.len(),
        conic_points: conic.len(),
        external_points: n,
        internal_points: internal,
        external_per_tangent: per(1),
        external_per_secant: per(2),
        external_per_passant: per(0),
    };

    let w = field.primitive_element();
    let mats = [sym2(&field, 1, 1, 0, 1), sym2(&field, w, 0, 0, 1), sym2(&field, 0, 1, 1, 0)];
    let mut gens = Vec::new();
    for m in mats {
        let images = points.iter().map(|&p| index(plane.apply(&m, p)).expect("external points are preserved")).collect();
        gens.push(Permutation::new(images)?);
    }
    if field.degree() > 1 {
        let images = points
            .iter()
            .map(|&p| index(p.map(|c| field.frobenius(c))).expect("external points are preserved"))
            .collect();
        gens.push(Permutation::new(images)?);
    }
    let generators = GeneratorSet::new(n, gens)?;
    Ok(ConicAction { q, field, points, graph, generators, clique, coclique, secant_coclique, counts })
}
