//! Permutations, finitely generated transitive actions, orbits and orbitals,
//! and the brute-force group oracles used to cross-check the algebraic tests.
//!
//! Points are 0-based internally. Group files are 1-based.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cc::RelationMatrix;
use crate::rational::Rational;
pub use crate::vector::RationalVector;

/// Enumeration cap used when the caller does not choose one.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("point {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("images do not form a bijection on {0} points")]
    NotBijection(usize),
    #[error("generator of degree {found} in a set of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a generator set needs at least one generator")]
    EmptyGeneratorSet,
    #[error("group closure exceeded the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("action is not transitive ({orbits} orbits)")]
    NotTransitive { orbits: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group file line {line}: {message}")]
pub struct GroupFileError {
    pub line: usize,
    pub message: String,
}

/// A bijection of `{0, …, n−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Self { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(PermError::IndexOutOfRange { index: a, degree: n });
                }
                if touched[a] {
                    return Err(PermError::NotBijection(n));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> Result<usize, PermError> {
        self.images
            .get(i)
            .map(|&x| x as usize)
            .ok_or(PermError::IndexOutOfRange { index: i, degree: self.degree() })
    }

    /// Unchecked image of a point.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// The image `v^g` of a vector under the coordinate action: `(v^g)_{g(i)} = v_i`.
    pub fn act_on_vector(&self, v: &RationalVector) -> RationalVector {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.entries().iter().enumerate() {
            out[self.image(i)] = x.clone();
        }
        RationalVector::new(out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_cycles(self))
    }
}

/// Generators of a permutation group acting on `degree` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if gens.is_empty() {
            return Err(PermError::EmptyGeneratorSet);
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(Self { degree, gens })
    }

    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self { degree: n, gens: vec![Permutation::identity(n)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn is_transitive(&self) -> bool {
        orbits(self).blocks().len() <= 1
    }
}

/// Orbits of a group on its points, ordered by least representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn apply(p: &Permutation, i: usize) -> Result<usize, PermError> {
    p.apply(i)
}

pub fn orbits(g: &GeneratorSet) -> OrbitPartition {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut block = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for gen in &g.gens {
                let y = gen.image(x);
                if !seen[y] {
                    seen[y] = true;
                    block.push(y);
                    queue.push_back(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition { blocks }
}

/// All elements of `⟨gens⟩`, breadth-first from the identity.
pub fn enumerate_elements(g: &GeneratorSet, cap: usize) -> Result<Vec<Permutation>, PermError> {
    let id = Permutation::identity(g.degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for gen in &g.gens {
            let y = x.then(gen);
            if !seen.contains(&y) {
                if elements.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

/// Orbitals of a transitive group as a relation-index matrix. Class 0 is the
/// diagonal; the other classes are numbered by their least pair `(x, y)`.
pub fn orbitals(g: &GeneratorSet) -> Result<RelationMatrix, PermError> {
    let orbs = orbits(g);
    if orbs.len() != 1 {
        return Err(PermError::NotTransitive { orbits: orbs.len() });
    }
    let n = g.degree();
    const UNSET: u32 = u32::MAX;
    let mut label = vec![UNSET; n * n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..n * n {
        if label[start] != UNSET {
            continue;
        }
        label[start] = next;
        queue.push_back(start);
        while let Some(pair) = queue.pop_front() {
            let (x, y) = (pair / n, pair % n);
            for gen in &g.gens {
                let img = gen.image(x) * n + gen.image(y);
                if label[img] == UNSET {
                    label[img] = next;
                    queue.push_back(img);
                }
            }
        }
        next += 1;
    }
    Ok(RelationMatrix::from_raw(n, label).expect("orbital labels are contiguous"))
}

/// Index of the unordered pair `{a, b}` (a < b) among the lexicographically
/// ordered 2-subsets of `{0, …, n−1}`.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// The lexicographically ordered 2-subsets of `{0, …, n−1}`.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// The action induced on unordered pairs, pairs ordered by `(min, max)`.
pub fn induced_pair_action(g: &GeneratorSet) -> GeneratorSet {
    let n = g.degree();
    let ps = pairs(n);
    let gens = g
        .gens
        .iter()
        .map(|p| {
            let images = ps.iter().map(|&(a, b)| pair_index(n, p.image(a), p.image(b))).collect();
            Permutation::new(images).expect("induced action is a bijection")
        })
        .collect();
    GeneratorSet { degree: ps.len(), gens }
}

/// `(1/|G|) Σ_g v^g`.
pub fn group_average(g: &GeneratorSet, v: &RationalVector, cap: usize) -> Result<RationalVector, PermError> {
    let elements = enumerate_elements(g, cap)?;
    let n = g.degree();
    let mut acc = vec![Rational::zero(); n];
    for e in &elements {
        for (i, x) in v.entries().iter().enumerate() {
            acc[e.image(i)] += x;
        }
    }
    let order = Rational::from_integer(BigInt::from(elements.len()));
    Ok(RationalVector::new(acc.into_iter().map(|x| x / &order).collect()))
}

/// The multiset `{ u·(v^g) : g ∈ G }` as value → multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductMultiset {
    counts: BTreeMap<Rational, usize>,
}

impl InnerProductMultiset {
    pub fn is_constant(&self) -> bool {
        self.counts.len() == 1
    }

    /// The common value when the multiset is constant.
    pub fn constant_value(&self) -> Option<&Rational> {
        if self.is_constant() {
            self.counts.keys().next()
        } else {
            None
        }
    }

    pub fn counts(&self) -> &BTreeMap<Rational, usize> {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

pub fn orbit_inner_products(
    g: &GeneratorSet,
    u: &RationalVector,
    v: &RationalVector,
    cap: usize,
) -> Result<InnerProductMultiset, PermError> {
    let elements = enumerate_elements(g, cap)?;
    Ok(inner_products_over(&elements, u, v))
}

/// Same as [`orbit_inner_products`] over an already enumerated group.
pub fn inner_products_over(elements: &[Permutation], u: &RationalVector, v: &RationalVector) -> InnerProductMultiset {
    let mut counts = BTreeMap::new();
    match (u.as_i64(), v.as_i64()) {
        (Some(ui), Some(vi)) => {
            let mut ints: BTreeMap<i128, usize> = BTreeMap::new();
            for e in elements {
                // u · v^g = Σ_i u_{g(i)} v_i
                let s: i128 = vi.iter().enumerate().map(|(i, &x)| ui[e.image(i)] as i128 * x as i128).sum();
                *ints.entry(s).or_default() += 1;
            }
            for (k, c) in ints {
                counts.insert(Rational::from_integer(BigInt::from(k)), c);
            }
        }
        _ => {
            for e in elements {
                let s = v
                    .entries()
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (i, x)| acc + &u[e.image(i)] * x);
                *counts.entry(s).or_default() += 1;
            }
        }
    }
    InnerProductMultiset { counts }
}

pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect()
}

/// Group file text: `degree n` then one generator per line in cycle notation.
pub fn format_group_file(g: &GeneratorSet, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("degree {}\n", g.degree()));
    for p in &g.gens {
        out.push_str(&format_cycles(p));
        out.push('\n');
    }
    out
}

pub fn parse_group_file(text: &str) -> Result<GeneratorSet, GroupFileError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = lineno + 1;
        let err = |m: String| GroupFileError { line: ln, message: m };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(n) = degree else {
            let rest = line
                .strip_prefix("degree")
                .ok_or_else(|| err("expected `degree n` as the first line".into()))?;
            let n: usize = rest.trim().parse().map_err(|_| err(format!("bad degree `{}`", rest.trim())))?;
            if n == 0 {
                return Err(err("degree must be positive".into()));
            }
            degree = Some(n);
            continue;
        };
        let p = if line.starts_with('[') {
            parse_image_notation(line, n)
        } else if line.starts_with('(') {
            parse_cycle_notation(line, n)
        } else {
            Err(format!("cannot read generator `{line}`"))
        }
        .map_err(err)?;
        gens.push(p);
    }
    let n = degree.ok_or(GroupFileError { line: 0, message: "missing `degree n` line".into() })?;
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    GeneratorSet::new(n, gens).map_err(|e| GroupFileError { line: 0, message: e.to_string() })
}

fn parse_label(tok: &str, n: usize) -> Result<usize, String> {
    let v: usize = tok.trim().parse().map_err(|_| format!("bad point label `{}`", tok.trim()))?;
    if v == 0 || v > n {
        return Err(format!("point {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

fn parse_image_notation(line: &str, n: usize) -> Result<Permutation, String> {
    let inner = line
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("unterminated image list `{line}`"))?;
    let images = inner
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_label(t, n))
        .collect::<Result<Vec<_>, _>>()?;
    if images.len() != n {
        return Err(format!("image list has {} entries, degree is {n}", images.len()));
    }
    Permutation::new(images).map_err(|e| e.to_string())
}

fn parse_cycle_notation(line: &str, n: usize) -> Result<Permutation, String> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` in `{line}`"))?;
        let close = body.find(')').ok_or_else(|| format!("unterminated cycle in `{line}`"))?;
        let cyc = &body[..close];
        if !cyc.is_empty() {
            cycles.push(cyc.split(',').map(|t| parse_label(t, n)).collect::<Result<Vec<_>, _>>()?);
        }
        rest = &body[close + 1..];
    }
    Permutation::from_cycles(n, &cycles).map_err(|e| e.to_string())
}
