//! Exact rational LP feasibility and depth-first branch-and-bound.
//!
//! Feasibility has no objective, so every basis is dual feasible and the
//! solver is a bounded-variable dual simplex: it starts from the slack and
//! artificial basis and repairs bound violations with Bland's rule (least
//! violated basic variable leaves, least eligible nonbasic variable enters).
//! Children of a branch-and-bound node start from the parent's tableau.
//! Integer problems first check that the equality rows have any integer
//! solution at all, ignoring bounds.

use std::rc::Rc;
use std::time::Duration;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `Σ_j coeffs_j x_j (relation) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self { coeffs, relation, rhs }
    }
}

/// Variables are nonnegative; optional integer upper bounds and integrality.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityProblem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub upper: Vec<Option<i64>>,
    pub integral: bool,
}

impl FeasibilityProblem {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, constraints: Vec::new(), upper: vec![None; num_vars], integral: false }
    }

    /// `{M w = 0, w ≥ 0, w·𝟙 = s}`, optionally integral.
    pub fn kernel_with_sum(rows: &[Vec<Rational>], n: usize, s: i64, integral: bool) -> Self {
        let mut p = Self::new(n);
        for r in rows {
            p.constraints.push(Constraint::new(r.clone(), Relation::Eq, Rational::zero()));
        }
        p.constraints.push(Constraint::new(vec![Rational::one(); n], Relation::Eq, int(s)));
        p.integral = integral;
        p
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    /// Whether `x` satisfies every constraint, bound and integrality requirement.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars || x.iter().any(Signed::is_negative) {
            return false;
        }
        if self.integral && !x.iter().all(|v| v.is_integer()) {
            return false;
        }
        if x.iter().zip(&self.upper).any(|(v, u)| u.is_some_and(|u| *v > int(u))) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = c.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    }
}

/// Node and wall-clock limits. The clock is only read when a time limit is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_nodes: 1_000_000, max_time: Some(Duration::from_secs(60)) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible,
    BudgetExhausted,
}

impl LpOutcome {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LpStats {
    pub nodes: u64,
    pub pivots: u64,
    /// Rejected by the integer-lattice check before any simplex work.
    pub lattice_infeasible: bool,
}

pub fn lp_feasible(problem: &FeasibilityProblem, budget: &Budget) -> LpOutcome {
    lp_feasible_with_stats(problem, budget).0
}

/// Tableau snapshots kept on the branch-and-bound stack; pending nodes
/// beyond this restart from the root tableau.
const MAX_SNAPSHOTS: usize = 48;

type Bounds = Vec<Option<Rational>>;

struct Node {
    lo: Bounds,
    hi: Bounds,
    start: Option<Rc<Tableau>>,
}

/// Branches on the lowest-index fractional variable, floor branch first.
pub fn lp_feasible_with_stats(problem: &FeasibilityProblem, budget: &Budget) -> (LpOutcome, LpStats) {
    let clock = budget.max_time.map(|t| Clock(std::time::Instant::now(), t));
    let mut stats = LpStats::default();
    let n = problem.num_vars;
    if problem.integral && !equalities_have_integer_solution(problem) {
        stats.nodes = 1;
        stats.lattice_infeasible = true;
        return (LpOutcome::Infeasible, stats);
    }
    let root = Rc::new(Tableau::new(problem));
    let mut stack = vec![Node { lo: root.lo.clone(), hi: root.hi.clone(), start: None }];
    let mut snapshots = 0usize;
    while let Some(node) = stack.pop() {
        if stats.nodes >= budget.max_nodes || clock.as_ref().is_some_and(Clock::expired) {
            return (LpOutcome::BudgetExhausted, stats);
        }
        stats.nodes += 1;
        let mut tab = match node.start {
            Some(s) => {
                snapshots -= 1;
                Rc::try_unwrap(s).unwrap_or_else(|s| (*s).clone())
            }
            None => (*root).clone(),
        };
        tab.set_bounds(node.lo, node.hi);
        match tab.repair(&mut stats.pivots, clock.as_ref()) {
            Repair::Feasible => {}
            Repair::Infeasible => continue,
            Repair::Stalled => return (LpOutcome::BudgetExhausted, stats),
        }
        let Some(j) = (0..n).find(|&j| problem.integral && !tab.x[j].is_integer()) else {
            return (LpOutcome::Feasible(tab.x[..n].to_vec()), stats);
        };
        let fl = Rational::from_integer(tab.x[j].floor().to_integer());
        let (mut up_lo, up_hi) = (tab.lo.clone(), tab.hi.clone());
        up_lo[j] = Some(&fl + Rational::one());
        let (down_lo, mut down_hi) = (tab.lo.clone(), tab.hi.clone());
        down_hi[j] = Some(fl);
        let shared = Rc::new(tab);
        // Depth-first: the floor branch is pushed last so it is popped first.
        if up_hi[j].as_ref().is_none_or(|h| Some(h) >= up_lo[j].as_ref()) {
            let start = (snapshots < MAX_SNAPSHOTS).then(|| shared.clone());
            snapshots += start.is_some() as usize;
            stack.push(Node { lo: up_lo, hi: up_hi, start });
        }
        if down_hi[j].as_ref().is_some_and(|h| Some(h) >= down_lo[j].as_ref()) {
            snapshots += 1;
            stack.push(Node { lo: down_lo, hi: down_hi, start: Some(shared) });
        }
    }
    (LpOutcome::Infeasible, stats)
}

struct Clock(std::time::Instant, Duration);

impl Clock {
    fn expired(&self) -> bool {
        self.0.elapsed() > self.1
    }
}

enum Repair {
    Feasible,
    Infeasible,
    Stalled,
}

/// Rows read `x_B + Σ_N t_ij x_j = const`. Columns are the structural
/// variables followed by one slack, surplus or fixed artificial per row.
#[derive(Clone, Debug)]
struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    x: Vec<Rational>,
    lo: Bounds,
    hi: Bounds,
}

impl Tableau {
    fn new(p: &FeasibilityProblem) -> Self {
        let n = p.num_vars;
        let m = p.constraints.len();
        let cols = n + m;
        let mut t = vec![vec![Rational::zero(); cols]; m];
        let lo: Bounds = vec![Some(Rational::zero()); cols];
        let mut hi: Bounds = p.upper.iter().map(|u| u.map(int)).collect();
        let mut x = vec![Rational::zero(); cols];
        for (i, c) in p.constraints.iter().enumerate() {
            // The extra column gets coefficient +1: a slack for Le, a surplus
            // for Ge (row negated), an artificial fixed at 0 for Eq.
            let sign = if c.relation == Relation::Ge { -Rational::one() } else { Rational::one() };
            for (j, a) in c.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    t[i][j] = a * &sign;
                }
            }
            t[i][n + i] = Rational::one();
            x[n + i] = &c.rhs * &sign;
            hi.push(if c.relation == Relation::Eq { Some(Rational::zero()) } else { None });
        }
        let basis: Vec<usize> = (n..cols).collect();
        let mut is_basic = vec![false; cols];
        for &b in &basis {
            is_basic[b] = true;
        }
        Self { t, basis, is_basic, x, lo, hi }
    }

    /// Replaces the bounds, moving nonbasic columns back inside them.
    fn set_bounds(&mut self, lo: Bounds, hi: Bounds) {
        self.lo = lo;
        self.hi = hi;
        for j in 0..self.x.len() {
            if self.is_basic[j] {
                continue;
            }
            let target = match (&self.lo[j], &self.hi[j]) {
                (Some(l), _) if self.x[j] < *l => l.clone(),
                (_, Some(h)) if self.x[j] > *h => h.clone(),
                _ => continue,
            };
            let delta = &target - &self.x[j];
            for (row, &b) in self.t.iter().zip(&self.basis) {
                if !row[j].is_zero() {
                    self.x[b] -= &row[j] * &delta;
                }
            }
            self.x[j] = target;
        }
    }

    fn violation(&self, j: usize) -> Option<Rational> {
        match (&self.lo[j], &self.hi[j]) {
            (Some(l), _) if self.x[j] < *l => Some(l.clone()),
            (_, Some(h)) if self.x[j] > *h => Some(h.clone()),
            _ => None,
        }
    }

    fn can_increase(&self, j: usize) -> bool {
        self.hi[j].as_ref().is_none_or(|h| self.x[j] < *h)
    }

    fn can_decrease(&self, j: usize) -> bool {
        self.lo[j].as_ref().is_none_or(|l| self.x[j] > *l)
    }

    /// Pivots until every basic variable is within bounds. A single repair
    /// can run long on big exact tableaux, so the clock is read every pivot.
    fn repair(&mut self, pivots: &mut u64, clock: Option<&Clock>) -> Repair {
        let cols = self.x.len();
        let cap = 50 * (self.t.len() + cols) as u64 + 1000;
        let mut local = 0u64;
        loop {
            let leaving = (0..self.basis.len())
                .filter_map(|r| self.violation(self.basis[r]).map(|target| (self.basis[r], r, target)))
                .min_by_key(|(b, _, _)| *b);
            let Some((b, r, target)) = leaving else {
                return Repair::Feasible;
            };
            let raise = target > self.x[b];
            // x_B = const − Σ t_rj x_j, so raising x_B needs some t_rj x_j to fall.
            let entering = (0..cols).find(|&j| {
                if self.is_basic[j] || self.t[r][j].is_zero() {
                    return false;
                }
                if raise == self.t[r][j].is_positive() {
                    self.can_decrease(j)
                } else {
                    self.can_increase(j)
                }
            });
            // No column can move x_B towards its bound: the row certifies infeasibility.
            let Some(j) = entering else {
                return Repair::Infeasible;
            };
            if local >= cap || clock.is_some_and(Clock::expired) {
                return Repair::Stalled;
            }
            local += 1;
            *pivots += 1;
            let theta = (&self.x[b] - &target) / &self.t[r][j];
            for (row, &bi) in self.t.iter().zip(&self.basis) {
                if !row[j].is_zero() {
                    self.x[bi] -= &row[j] * &theta;
                }
            }
            self.x[j] += &theta;
            self.x[b] = target;
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        let mut pivot_row = std::mem::take(&mut self.t[r]);
        if !p.is_one() {
            for v in pivot_row.iter_mut().filter(|v| !v.is_zero()) {
                *v /= &p;
            }
        }
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in self.t.iter_mut() {
            if row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        self.t[r] = pivot_row;
        self.is_basic[self.basis[r]] = false;
        self.basis[r] = c;
        self.is_basic[c] = true;
    }
}

/// Whether the equality rows admit an integer solution, ignoring bounds.
/// Unimodular column operations bring the scaled integer system to lower
/// echelon form, which is then solved by forward substitution.
fn equalities_have_integer_solution(p: &FeasibilityProblem) -> bool {
    let n = p.num_vars;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for c in p.constraints.iter().filter(|c| c.relation == Relation::Eq) {
        let scale = Rational::from_integer(common_denominator(c.coeffs.iter().chain(std::iter::once(&c.rhs))));
        rows.push(c.coeffs.iter().map(|a| (a * &scale).to_integer()).collect());
        rhs.push((&c.rhs * &scale).to_integer());
    }
    let mut next_col = 0;
    let mut pivots: Vec<Option<usize>> = Vec::new();
    for i in 0..rows.len() {
        loop {
            let nonzero: Vec<usize> = (next_col..n).filter(|&j| !rows[i][j].is_zero()).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&j| rows[i][j].abs()) else {
                pivots.push(None);
                break;
            };
            if nonzero.len() == 1 {
                if best != next_col {
                    for row in rows.iter_mut() {
                        row.swap(best, next_col);
                    }
                }
                pivots.push(Some(next_col));
                next_col += 1;
                break;
            }
            let a = rows[i][best].clone();
            for &j in nonzero.iter().filter(|&&j| j != best) {
                let q = rows[i][j].div_floor(&a);
                // Earlier rows are zero from `next_col` on, so they are unaffected.
                for row in rows.iter_mut().skip(i) {
                    let v = &row[best] * &q;
                    row[j] -= v;
                }
            }
        }
    }
    let mut y: Vec<BigInt> = vec![BigInt::zero(); n];
    for (i, pc) in pivots.iter().enumerate() {
        let partial: BigInt = (0..next_col).filter(|&j| Some(j) != *pc).map(|j| &rows[i][j] * &y[j]).sum();
        let residual = &rhs[i] - partial;
        match pc {
            Some(c) => {
                let (q, r) = residual.div_rem(&rows[i][*c]);
                if !r.is_zero() {
                    return false;
                }
                y[*c] = q;
            }
            None if !residual.is_zero() => return false,
            None => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unbounded() -> Budget {
        Budget { max_nodes: 100_000, max_time: None }
    }

    #[test]
    fn zero_matrix_with_full_sum() {
        let rows = vec![vec![Rational::zero(); 4]];
        let p = FeasibilityProblem::kernel_with_sum(&rows, 4, 4, true);
        let x = lp_feasible(&p, &unbounded());
        assert!(p.is_satisfied_by(x.solution().unwrap()));
    }

    #[test]
    fn identity_forces_zero() {
        let rows: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect();
        let p = FeasibilityProblem::kernel_with_sum(&rows, 3, 2, false);
        assert_eq!(lp_feasible(&p, &unbounded()), LpOutcome::Infeasible);
    }

    #[test]
    fn integrality_cuts_off_fractional_point() {
        // 2x + 2y = 3 has rational but no integer solutions.
        let mut p = FeasibilityProblem::new(2);
        p.push(vec![int(2), int(2)], Relation::Eq, int(3));
        assert!(matches!(lp_feasible(&p, &unbounded()), LpOutcome::Feasible(_)));
        p.integral = true;
        p.upper = vec![Some(5), Some(5)];
        let (out, stats) = lp_feasible_with_stats(&p, &unbounded());
        assert_eq!(out, LpOutcome::Infeasible);
        assert!(stats.lattice_infeasible);
    }

    #[test]
    fn branching_proves_bounded_infeasibility() {
        // x + y = 3/2 + z/2 has integer points only for odd z, and z ≤ 0.
        let mut p = FeasibilityProblem::new(3);
        p.push(vec![int(2), int(2), int(-1)], Relation::Eq, int(3));
        p.push(vec![int(0), int(0), int(1)], Relation::Le, int(0));
        p.integral = true;
        p.upper = vec![Some(4), Some(4), Some(4)];
        let (out, stats) = lp_feasible_with_stats(&p, &unbounded());
        assert_eq!(out, LpOutcome::Infeasible);
        assert!(!stats.lattice_infeasible);
        assert!(stats.nodes > 1);
    }

    #[test]
    fn node_budget_is_reported() {
        let mut p = FeasibilityProblem::new(3);
        p.push(vec![int(2), int(2), int(-1)], Relation::Eq, int(3));
        p.push(vec![int(0), int(0), int(1)], Relation::Le, int(0));
        p.integral = true;
        p.upper = vec![Some(40), Some(40), Some(40)];
        let tight = Budget { max_nodes: 2, max_time: None };
        assert_eq!(lp_feasible(&p, &tight), LpOutcome::BudgetExhausted);
        let no_time = Budget { max_nodes: u64::MAX, max_time: Some(Duration::ZERO) };
        assert_eq!(lp_feasible(&p, &no_time), LpOutcome::BudgetExhausted);
    }

    #[test]
    fn mixed_relations() {
        let mut p = FeasibilityProblem::new(3);
        p.push(vec![int(1), int(1), int(1)], Relation::Ge, int(1));
        p.push(vec![int(1), int(-1), int(0)], Relation::Le, int(-1));
        p.push(vec![int(0), int(0), int(1)], Relation::Eq, int(0));
        p.integral = true;
        p.upper = vec![Some(1), Some(1), Some(1)];
        let x = lp_feasible(&p, &unbounded());
        assert!(p.is_satisfied_by(x.solution().unwrap()));
        // Needing two of three binaries with y ≥ x + 1 and z = 0 is impossible.
        p.constraints[0].rhs = int(2);
        assert_eq!(lp_feasible(&p, &unbounded()), LpOutcome::Infeasible);
    }

    #[test]
    fn lattice_check_on_small_systems() {
        let mut p = FeasibilityProblem::new(4);
        p.push(vec![int(2), int(4), int(0), int(6)], Relation::Eq, int(8));
        p.push(vec![int(0), int(3), int(9), int(0)], Relation::Eq, int(6));
        assert!(equalities_have_integer_solution(&p));
        p.constraints[0].rhs = int(7);
        assert!(!equalities_have_integer_solution(&p));
        // Dependent rows must agree.
        let mut q = FeasibilityProblem::new(2);
        q.push(vec![int(1), int(1)], Relation::Eq, int(1));
        q.push(vec![int(2), int(2)], Relation::Eq, int(3));
        assert!(!equalities_have_integer_solution(&q));
    }
}
