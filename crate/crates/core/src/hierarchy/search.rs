//! Search for nonspreading witnesses through design-orthogonal pairs, and the
//! critically-nonspreading probe.
//!
//! For a bipartition `(T_u, T_w)` of the nonprincipal rational components the
//! search looks for a 0/1 vector `u` killed by every `Π_t`, `t ∈ T_w`, and a
//! nonnegative integer `w` killed by every `Π_t`, `t ∈ T_u`. Such a pair is
//! design-orthogonal, and every candidate is re-checked with the exact
//! constant-intersection identity before it is reported.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::idempotents::{split, AlgebraError, CentralIdempotentSet, SplitOptions};
use crate::algebra::matrix::RationalMatrix;
use crate::cc::{CcError, CoherentConfiguration};
use crate::hierarchy::lp::{lp_feasible_with_stats, Budget, FeasibilityProblem, LpOutcome, Relation};
use crate::hierarchy::witness::{verify_nonspreading, Witness};
use crate::perm::{orbitals, GeneratorSet, PermError, DEFAULT_ENUM_CAP};
use crate::rational::{common_denominator, int, Rational};
use crate::vector::RationalVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Worker threads; 1 runs inline.
    pub threads: usize,
    /// Branch-and-bound nodes per feasibility problem.
    pub budget_nodes: u64,
    /// Wall-clock limit per feasibility problem; `None` disables the clock.
    pub budget_time: Option<Duration>,
    /// Restrict `w·𝟙` to this divisor of `n`.
    pub target_sum: Option<usize>,
    pub enum_cap: usize,
    /// Refuse configurations with more nonprincipal components than this.
    pub max_components: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            threads: 1,
            budget_nodes: 1_000_000,
            budget_time: Some(Duration::from_secs(60)),
            target_sum: None,
            enum_cap: DEFAULT_ENUM_CAP,
            max_components: 16,
        }
    }
}

impl SearchConfig {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget_nodes, max_time: self.budget_time }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.budget_nodes == 0 {
            return Err(SearchError::InvalidConfig("node budget must be positive".into()));
        }
        if self.budget_time.is_some_and(|t| t.is_zero()) {
            return Err(SearchError::InvalidConfig("time budget must be positive".into()));
        }
        if self.enum_cap == 0 {
            return Err(SearchError::InvalidConfig("enumeration cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cc(#[from] CcError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("{count} nonprincipal components exceed the limit of {max}")]
    TooManyComponents { count: usize, max: usize },
}

/// Which adjacency algebra supplies the idempotents that drive the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchEngine {
    Configuration,
    Symmetrisation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found(Box<Witness>),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub engine: SearchEngine,
    /// Whether `NotFound` rules out every witness (commutative configuration
    /// with a complete rational split), not only design-orthogonal ones.
    pub complete: bool,
    pub bipartitions: usize,
    pub nodes: u64,
    pub traces: Vec<usize>,
}

impl SearchReport {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// The configuration, the engine algebra and its rational idempotents.
pub struct SearchContext {
    cc: CoherentConfiguration,
    engine_cc: Option<CoherentConfiguration>,
    engine: SearchEngine,
    ids: CentralIdempotentSet,
    complete: bool,
    rows: Mutex<HashMap<Vec<usize>, Arc<Vec<Vec<Rational>>>>>,
    /// Settled `u` searches keyed by the components that must kill `u`.
    u_cache: Mutex<HashMap<Vec<usize>, Option<RationalVector>>>,
}

impl SearchContext {
    /// Commutative configurations use their own split; stratifiable ones use
    /// the symmetrisation; anything else falls back to the (possibly coarse)
    /// rational split of the configuration itself.
    pub fn new(cc: CoherentConfiguration, seed: u64) -> Result<Self, SearchError> {
        let opts = SplitOptions { seed, ..SplitOptions::default() };
        if cc.is_commutative() {
            let ids = split(&cc, &opts)?.rational;
            let complete = ids.is_primitive();
            return Ok(Self::assemble(cc, None, SearchEngine::Configuration, ids, complete));
        }
        let sym = cc.symmetrise();
        if let Some(s) = sym.configuration() {
            let s = s.clone();
            let ids = split(&s, &opts)?.rational;
            return Ok(Self::assemble(cc, Some(s), SearchEngine::Symmetrisation, ids, false));
        }
        let ids = split(&cc, &opts)?.rational;
        Ok(Self::assemble(cc, None, SearchEngine::Configuration, ids, false))
    }

    fn assemble(
        cc: CoherentConfiguration,
        engine_cc: Option<CoherentConfiguration>,
        engine: SearchEngine,
        ids: CentralIdempotentSet,
        complete: bool,
    ) -> Self {
        Self { cc, engine_cc, engine, ids, complete, rows: Mutex::default(), u_cache: Mutex::default() }
    }

    pub fn from_group(g: &GeneratorSet, seed: u64) -> Result<Self, SearchError> {
        let rel = orbitals(g)?;
        Self::new(CoherentConfiguration::from_orbitals(rel)?, seed)
    }

    pub fn configuration(&self) -> &CoherentConfiguration {
        &self.cc
    }

    pub fn idempotents(&self) -> &CentralIdempotentSet {
        &self.ids
    }

    pub fn engine(&self) -> SearchEngine {
        self.engine
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn engine_cc(&self) -> &CoherentConfiguration {
        self.engine_cc.as_ref().unwrap_or(&self.cc)
    }

    fn nonprincipal(&self) -> Vec<usize> {
        (0..self.ids.len()).filter(|&t| t != self.ids.principal_index()).collect()
    }

    /// Integer row basis of `Σ_{t∈T} Π_t`; `xΠ_t = 0` for all `t ∈ T` iff
    /// every row is orthogonal to `x`.
    fn kernel_rows(&self, ts: &[usize]) -> Arc<Vec<Vec<Rational>>> {
        if let Some(r) = self.rows.lock().expect("row cache poisoned").get(ts) {
            return r.clone();
        }
        let rows = Arc::new(self.compute_kernel_rows(ts));
        self.rows.lock().expect("row cache poisoned").insert(ts.to_vec(), rows.clone());
        rows
    }

    fn compute_kernel_rows(&self, ts: &[usize]) -> Vec<Vec<Rational>> {
        let cc = self.engine_cc();
        let mut coeffs = vec![Rational::zero(); cc.rank()];
        for &t in ts {
            let c = self.ids.get(t).coeffs.as_exact().expect("rational split is exact");
            for (a, b) in coeffs.iter_mut().zip(c) {
                *a += b;
            }
        }
        let m: RationalMatrix = cc.combination_matrix(&coeffs);
        m.row_basis().into_iter().map(primitive_row).collect()
    }
}

fn primitive_row(row: Vec<Rational>) -> Vec<Rational> {
    let d = common_denominator(&row);
    let scaled: Vec<Rational> = row.iter().map(|x| x * Rational::from_integer(d.clone())).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x.numer()));
    if g.is_zero() || g.is_one() {
        return scaled;
    }
    let g = Rational::from_integer(g);
    scaled.into_iter().map(|x| x / &g).collect()
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

enum PartResult {
    Found(RationalVector, RationalVector),
    Nothing,
    Exhausted,
}

fn find_u(ctx: &SearchContext, t_w: &[usize], budget: &Budget, nodes: &mut u64) -> Result<Option<RationalVector>, ()> {
    if let Some(u) = ctx.u_cache.lock().expect("u cache poisoned").get(t_w) {
        return Ok(u.clone());
    }
    let n = ctx.cc.n();
    let mut p = FeasibilityProblem::new(n);
    for r in ctx.kernel_rows(t_w).iter() {
        p.push(r.clone(), Relation::Eq, Rational::zero());
    }
    let mut e0 = vec![Rational::zero(); n];
    e0[0] = Rational::one();
    p.push(e0, Relation::Eq, Rational::one());
    p.push(vec![Rational::one(); n], Relation::Ge, int(2));
    p.push(vec![Rational::one(); n], Relation::Le, int(n as i64 - 1));
    p.upper = vec![Some(1); n];
    p.integral = true;
    let u = solve(&p, budget, nodes)?;
    ctx.u_cache.lock().expect("u cache poisoned").insert(t_w.to_vec(), u.clone());
    Ok(u)
}

fn find_w(ctx: &SearchContext, t_u: &[usize], s: usize, budget: &Budget, nodes: &mut u64) -> Result<Option<RationalVector>, ()> {
    let n = ctx.cc.n();
    let mut p = FeasibilityProblem::kernel_with_sum(&ctx.kernel_rows(t_u), n, s as i64, true);
    p.upper = vec![Some(s as i64 - 1); n];
    // Translating w by the group keeps the pair a witness, so one entry can
    // be pinned: a nonconstant w summing to n has a zero, any w has a nonzero.
    let mut e0 = vec![Rational::zero(); n];
    e0[0] = Rational::one();
    if s == n {
        p.push(e0, Relation::Eq, Rational::zero());
    } else {
        p.push(e0, Relation::Ge, Rational::one());
    }
    solve(&p, budget, nodes)
}

fn solve(p: &FeasibilityProblem, budget: &Budget, nodes: &mut u64) -> Result<Option<RationalVector>, ()> {
    let (outcome, stats) = lp_feasible_with_stats(p, budget);
    *nodes += stats.nodes;
    match outcome {
        LpOutcome::Feasible(x) => Ok(Some(RationalVector::new(x))),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::BudgetExhausted => Err(()),
    }
}

fn sums_to_try(n: usize, cfg: &SearchConfig) -> Result<Vec<usize>, SearchError> {
    match cfg.target_sum {
        Some(s) if s >= 2 && n.is_multiple_of(s) => Ok(vec![s]),
        Some(s) => Err(SearchError::InvalidConfig(format!("target sum {s} is not a divisor of {n} that is at least 2"))),
        None => Ok(divisors(n).into_iter().filter(|&s| s >= 2).collect()),
    }
}

fn run_bipartition(ctx: &SearchContext, comps: &[usize], mask: u64, sums: &[usize], budget: &Budget) -> (PartResult, u64) {
    let mut nodes = 0;
    let (t_w, t_u): (Vec<usize>, Vec<usize>) = {
        let (a, b): (Vec<(usize, &usize)>, Vec<(usize, &usize)>) =
            comps.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        (a.into_iter().map(|x| *x.1).collect(), b.into_iter().map(|x| *x.1).collect())
    };
    let u = match find_u(ctx, &t_w, budget, &mut nodes) {
        Ok(Some(u)) => u,
        Ok(None) => return (PartResult::Nothing, nodes),
        Err(()) => return (PartResult::Exhausted, nodes),
    };
    let mut exhausted = false;
    for &s in sums {
        match find_w(ctx, &t_u, s, budget, &mut nodes) {
            Ok(Some(w)) => return (PartResult::Found(u, w), nodes),
            Ok(None) => {}
            Err(()) => exhausted = true,
        }
    }
    (if exhausted { PartResult::Exhausted } else { PartResult::Nothing }, nodes)
}

/// Searches every bipartition and reports the lexicographically least
/// verified `(u, w)`, so the result does not depend on thread scheduling.
pub fn search_in_context(ctx: &SearchContext, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    cfg.validate()?;
    let n = ctx.cc.n();
    let comps = ctx.nonprincipal();
    if comps.len() > cfg.max_components {
        return Err(SearchError::TooManyComponents { count: comps.len(), max: cfg.max_components });
    }
    let sums = sums_to_try(n, cfg)?;
    let budget = cfg.budget();
    let masks: Vec<u64> = if comps.len() < 2 { Vec::new() } else { (1..(1u64 << comps.len()) - 1).collect() };
    let threads = cfg.threads.max(1).min(masks.len().max(1));

    let results: Vec<(PartResult, u64)> = if threads == 1 {
        masks.iter().map(|&m| run_bipartition(ctx, &comps, m, &sums, &budget)).collect()
    } else {
        let mut slots: Vec<Option<(PartResult, u64)>> = (0..masks.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let (masks, comps, sums, budget) = (&masks, &comps, &sums, &budget);
                    scope.spawn(move || {
                        (w..masks.len())
                            .step_by(threads)
                            .map(|i| (i, run_bipartition(ctx, comps, masks[i], sums, budget)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("search worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every bipartition is assigned")).collect()
    };

    let mut nodes = 0;
    let mut exhausted = false;
    let mut best: Option<Witness> = None;
    for (r, k) in results {
        nodes += k;
        match r {
            PartResult::Found(u, w) => {
                if let Ok(wit) = verify_nonspreading(&ctx.cc, &ctx.ids, &u, &w) {
                    let better = best
                        .as_ref()
                        .is_none_or(|b| (wit.u.entries(), wit.partner().entries()) < (b.u.entries(), b.partner().entries()));
                    if better {
                        best = Some(wit);
                    }
                }
            }
            PartResult::Nothing => {}
            PartResult::Exhausted => exhausted = true,
        }
    }
    let outcome = match best {
        Some(w) => SearchOutcome::Found(Box::new(w)),
        None if exhausted => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::NotFound,
    };
    Ok(SearchReport {
        outcome,
        engine: ctx.engine,
        complete: ctx.complete,
        bipartitions: masks.len(),
        nodes,
        traces: ctx.ids.traces(),
    })
}

pub fn search_nonspreading(g: &GeneratorSet, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    cfg.validate()?;
    let ctx = SearchContext::from_group(g, cfg.seed)?;
    search_in_context(&ctx, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criticality {
    Critical,
    NotCritical,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DivisorOutcome {
    Found(Box<Witness>),
    Infeasible,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorProbe {
    pub sum: usize,
    pub outcome: DivisorOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub criticality: Criticality,
    /// One entry per divisor `s ≥ 2` of `n`, in increasing order, ending with `s = n`.
    pub divisors: Vec<DivisorProbe>,
    pub complete: bool,
}

/// Critical iff no witness has `w·𝟙` a proper divisor of `n` while one with
/// `w·𝟙 = n` exists. A sum of 1 is never possible for a nontrivial `w`.
pub fn critically_nonspreading_probe(g: &GeneratorSet, cfg: &SearchConfig) -> Result<ProbeReport, SearchError> {
    cfg.validate()?;
    let ctx = SearchContext::from_group(g, cfg.seed)?;
    probe_in_context(&ctx, cfg)
}

pub fn probe_in_context(ctx: &SearchContext, cfg: &SearchConfig) -> Result<ProbeReport, SearchError> {
    let n = ctx.cc.n();
    let mut divisors_out = Vec::new();
    for s in divisors(n).into_iter().filter(|&s| s >= 2) {
        let sub = SearchConfig { target_sum: Some(s), ..cfg.clone() };
        let report = search_in_context(ctx, &sub)?;
        let outcome = match report.outcome {
            SearchOutcome::Found(w) => DivisorOutcome::Found(w),
            SearchOutcome::NotFound => DivisorOutcome::Infeasible,
            SearchOutcome::BudgetExhausted => DivisorOutcome::BudgetExhausted,
        };
        divisors_out.push(DivisorProbe { sum: s, outcome });
    }
    let (proper, full) = divisors_out.split_at(divisors_out.len().saturating_sub(1));
    let proper_found = proper.iter().any(|d| matches!(d.outcome, DivisorOutcome::Found(_)));
    let proper_all_infeasible = proper.iter().all(|d| d.outcome == DivisorOutcome::Infeasible);
    let full_found = full.iter().any(|d| matches!(d.outcome, DivisorOutcome::Found(_)));
    let criticality = if proper_found {
        Criticality::NotCritical
    } else if proper_all_infeasible && full_found && ctx.complete {
        Criticality::Critical
    } else {
        Criticality::Unknown
    };
    Ok(ProbeReport { criticality, divisors: divisors_out, complete: ctx.complete })
}
