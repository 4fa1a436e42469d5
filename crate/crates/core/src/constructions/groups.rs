//! Small named permutation groups used as fixtures and test subjects.

use crate::perm::{induced_pair_action, GeneratorSet, Permutation};

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(n, &[points.into_iter().collect()]).expect("valid cycle")
}

fn gens(n: usize, gens: Vec<Permutation>) -> GeneratorSet {
    GeneratorSet::new(n, gens).expect("generators share a degree")
}

/// `S_n` on `{0, …, n−1}`, generated by a transposition and an `n`-cycle.
pub fn symmetric_natural(n: usize) -> GeneratorSet {
    if n < 2 {
        return GeneratorSet::trivial(n.max(1));
    }
    gens(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)])
}

/// `A_n` on `{0, …, n−1}`, generated by `(0 1 2)` and an even long cycle.
pub fn alternating_natural(n: usize) -> GeneratorSet {
    if n < 3 {
        return GeneratorSet::trivial(n.max(1));
    }
    if n == 3 {
        return gens(3, vec![cycle(3, 0..3)]);
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    gens(n, vec![cycle(n, [0, 1, 2]), long])
}

/// `A_n` on the lexicographically ordered 2-subsets.
pub fn alternating_on_pairs(n: usize) -> GeneratorSet {
    induced_pair_action(&alternating_natural(n))
}

/// `S_n` on the lexicographically ordered 2-subsets.
pub fn symmetric_on_pairs(n: usize) -> GeneratorSet {
    induced_pair_action(&symmetric_natural(n))
}

/// The regular action of the cyclic group of order `n`.
pub fn cyclic_regular(n: usize) -> GeneratorSet {
    if n < 2 {
        return GeneratorSet::trivial(n.max(1));
    }
    gens(n, vec![cycle(n, 0..n)])
}

/// The dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral_natural(n: usize) -> GeneratorSet {
    let reflection = Permutation::new((0..n).map(|i| (n - i) % n).collect()).expect("bijection");
    gens(n, vec![cycle(n, 0..n), reflection])
}

/// `AGL(1, p)` on `Z_p` for a prime `p`, generated by `x ↦ x+1` and `x ↦ ωx`
/// for a primitive root `ω`.
pub fn affine_line(p: usize, primitive_root: usize) -> GeneratorSet {
    let shift = Permutation::new((0..p).map(|x| (x + 1) % p).collect()).expect("bijection");
    let scale = Permutation::new((0..p).map(|x| (x * primitive_root) % p).collect()).expect("bijection");
    gens(p, vec![shift, scale])
}

/// `AGL(1, 5)` on the ten lexicographically ordered 2-subsets of `Z_5`.
pub fn agl1_5_on_pairs() -> GeneratorSet {
    induced_pair_action(&affine_line(5, 2))
}

/// The 24 nonzero vectors of `F_5²` in lexicographic order.
pub fn f5_nonzero_vectors() -> Vec<(usize, usize)> {
    (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect()
}

/// `SL(2, 5)` acting on the 24 nonzero column vectors of `F_5²`.
pub fn sl2_5_on_vectors() -> GeneratorSet {
    let vecs = f5_nonzero_vectors();
    let index = |v: (usize, usize)| vecs.iter().position(|&w| w == v).expect("nonzero vector");
    let act = |m: [[usize; 2]; 2]| {
        let images = vecs
            .iter()
            .map(|&(a, b)| index(((m[0][0] * a + m[0][1] * b) % 5, (m[1][0] * a + m[1][1] * b) % 5)))
            .collect();
        Permutation::new(images).expect("invertible matrix")
    };
    gens(24, vec![act([[1, 1], [0, 1]]), act([[0, 4], [1, 0]])])
}
