//! Simple undirected graphs with exact clique and independence numbers.

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is adjacent to itself")]
    Loop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn from_adjacency(adj: Vec<Vec<bool>>) -> Result<Self, GraphError> {
        let n = adj.len();
        for i in 0..n {
            if adj[i][i] {
                return Err(GraphError::Loop(i));
            }
            for j in 0..n {
                if adj[i][j] != adj[j][i] {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(Self { n, adj })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self, GraphError> {
        Self::from_adjacency((0..n).map(|i| (0..n).map(|j| i != j && f(i, j)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|i| self.degree(i) == d).then_some(d)
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, adj: (0..self.n).map(|i| (0..self.n).map(|j| i != j && !self.adj[i][j]).collect()).collect() }
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(a, &x)| vs[a + 1..].iter().all(|&y| self.adj[x][y]))
    }

    pub fn is_coclique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(a, &x)| vs[a + 1..].iter().all(|&y| x != y && !self.adj[x][y]))
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n
            && (0..self.n).all(|i| (0..self.n).all(|j| self.adj[i][j] == self.adj[g.image(i)][g.image(j)]))
    }

    /// A maximum clique, by branch and bound with greedy-colouring bounds.
    pub fn max_clique(&self) -> Vec<usize> {
        let words = self.n.div_ceil(64);
        let rows: Vec<Vec<u64>> = (0..self.n)
            .map(|i| {
                let mut r = vec![0u64; words];
                for j in 0..self.n {
                    if self.adj[i][j] {
                        r[j / 64] |= 1 << (j % 64);
                    }
                }
                r
            })
            .collect();
        let mut all = vec![0u64; words];
        for j in 0..self.n {
            all[j / 64] |= 1 << (j % 64);
        }
        let mut best = Vec::new();
        let mut current = Vec::new();
        expand(&rows, &mut current, all, &mut best);
        best.sort_unstable();
        best
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    pub fn max_coclique(&self) -> Vec<usize> {
        self.complement().max_clique()
    }

    pub fn independence_number(&self) -> usize {
        self.max_coclique().len()
    }

    /// A partition of the vertices into cocliques of size `k`, by exhaustive
    /// search (lowest uncovered vertex first).
    pub fn coclique_partition(&self, k: usize) -> Option<Vec<Vec<usize>>> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return None;
        }
        let mut covered = vec![false; self.n];
        let mut blocks = Vec::new();
        self.partition_step(k, &mut covered, &mut blocks).then_some(blocks)
    }

    fn partition_step(&self, k: usize, covered: &mut [bool], blocks: &mut Vec<Vec<usize>>) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        let cands: Vec<usize> = (first + 1..self.n).filter(|&v| !covered[v] && !self.adj[first][v]).collect();
        let mut block = vec![first];
        self.extend_block(k, &cands, 0, &mut block, covered, blocks)
    }

    fn extend_block(
        &self,
        k: usize,
        cands: &[usize],
        from: usize,
        block: &mut Vec<usize>,
        covered: &mut [bool],
        blocks: &mut Vec<Vec<usize>>,
    ) -> bool {
        if block.len() == k {
            for &v in block.iter() {
                covered[v] = true;
            }
            blocks.push(block.clone());
            if self.partition_step(k, covered, blocks) {
                return true;
            }
            blocks.pop();
            for &v in block.iter() {
                covered[v] = false;
            }
            return false;
        }
        for i in from..cands.len() {
            let v = cands[i];
            if block.iter().all(|&b| !self.adj[b][v]) {
                block.push(v);
                if self.extend_block(k, cands, i + 1, block, covered, blocks) {
                    return true;
                }
                block.pop();
            }
        }
        false
    }
}

fn members(set: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &bits) in set.iter().enumerate() {
        let mut b = bits;
        while b != 0 {
            let t = b.trailing_zeros() as usize;
            out.push(w * 64 + t);
            b &= b - 1;
        }
    }
    out
}

/// Greedy colouring of `cand`; returns vertices with their colour bound, in
/// nondecreasing colour order.
fn colour_order(rows: &[Vec<u64>], cand: &[u64]) -> Vec<(usize, usize)> {
    let mut uncoloured = cand.to_vec();
    let mut order = Vec::new();
    let mut colour = 0;
    while uncoloured.iter().any(|&w| w != 0) {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = members(&q).first().copied() {
            uncoloured[v / 64] &= !(1 << (v % 64));
            q[v / 64] &= !(1 << (v % 64));
            for (qw, rw) in q.iter_mut().zip(&rows[v]) {
                *qw &= !rw;
            }
            order.push((v, colour));
        }
    }
    order
}

fn expand(rows: &[Vec<u64>], current: &mut Vec<usize>, mut cand: Vec<u64>, best: &mut Vec<usize>) {
    let order = colour_order(rows, &cand);
    for &(v, c) in order.iter().rev() {
        if current.len() + c <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<u64> = cand.iter().zip(&rows[v]).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(rows, current, next, best);
        }
        current.pop();
        cand[v / 64] &= !(1 << (v % 64));
    }
}
