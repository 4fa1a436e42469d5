//! The analysis pipeline: group → orbitals → configuration → idempotents.

use serde::{Deserialize, Serialize};

use crate::algebra::idempotents::{isotypic_dimensions, split, AlgebraError, SplitOptions};
use crate::cc::{CcError, CoherentConfiguration};
use crate::perm::{orbitals, GeneratorSet, PermError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cc(#[from] CcError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub transitive: bool,
    /// Every orbital is self-paired; for orbitals this is the same as `symmetric`.
    pub generously_transitive: bool,
    pub symmetric: bool,
    pub commutative: bool,
    pub stratifiable: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub orbitals_ms: f64,
    pub configuration_ms: f64,
    pub split_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_sha256: Option<String>,
    pub degree: usize,
    pub rank: usize,
    pub valencies: Vec<usize>,
    pub converse: Vec<usize>,
    pub flags: Flags,
    pub center_dim: usize,
    /// Traces of the central primitive idempotents, principal first.
    pub isotypic_traces: Vec<usize>,
    /// Traces of the rational central idempotents.
    pub rational_traces: Vec<usize>,
    /// Whether the rational split is known to be primitive.
    pub rational_split_complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Runs the pipeline. With `timed`, wall-clock durations are recorded;
/// leave it off where no clock exists.
pub fn analyze(g: &GeneratorSet, opts: &SplitOptions, timed: bool) -> Result<AnalysisReport, AnalyzeError> {
    let mut stopwatch = Stopwatch::new(timed);
    let rel = orbitals(g)?;
    let orbitals_ms = stopwatch.lap();
    let cc = CoherentConfiguration::from_orbitals(rel)?;
    let configuration_ms = stopwatch.lap();
    let s = split(&cc, opts)?;
    let traces = isotypic_dimensions(&s.complex)?;
    let split_ms = stopwatch.lap();
    let summary = cc.summary();
    Ok(AnalysisReport {
        group_sha256: None,
        degree: summary.n,
        rank: summary.rank,
        valencies: summary.valencies,
        converse: summary.converse,
        flags: Flags {
            transitive: true,
            generously_transitive: summary.symmetric,
            symmetric: summary.symmetric,
            commutative: summary.commutative,
            stratifiable: summary.stratifiable,
        },
        center_dim: s.center_dim,
        isotypic_traces: traces,
        rational_traces: s.rational.traces(),
        rational_split_complete: s.rational.is_primitive(),
        timings: timed.then_some(Timings { orbitals_ms, configuration_ms, split_ms }),
    })
}

struct Stopwatch(Option<std::time::Instant>);

impl Stopwatch {
    fn new(on: bool) -> Self {
        Stopwatch(on.then(std::time::Instant::now))
    }

    fn lap(&mut self) -> f64 {
        match &mut self.0 {
            Some(t) => {
                let ms = t.elapsed().as_secs_f64() * 1e3;
                *t = std::time::Instant::now();
                ms
            }
            None => 0.0,
        }
    }
}
