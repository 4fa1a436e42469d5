use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::Args;
use cohconf::hierarchy::search::{
    critically_nonspreading_probe, search_nonspreading, Criticality, DivisorOutcome, SearchConfig, SearchError,
    SearchOutcome,
};
use cohconf::hierarchy::witness::verify_nonqi;
use cohconf::hierarchy::{Level, Witness};
use cohconf::io::{format_witness_pair, witness_file_name, CertificateJson};
use cohconf::GeneratorSet;
use serde::Serialize;

use crate::output::{load_group, to_json, write_file, Failure, BAD_INPUT, BUDGET_EXHAUSTED, REJECTED};
use crate::verify::{configuration, oracle_check};
use crate::Common;

#[derive(Args, Clone, Debug)]
pub struct BudgetArgs {
    /// Worker threads for the bipartition search.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Branch-and-bound nodes per feasibility problem.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget_nodes: u64,
    /// Seconds per feasibility problem.
    #[arg(long, default_value_t = 60)]
    pub budget_secs: u64,
}

#[derive(Serialize)]
struct SearchSummary<'a> {
    outcome: &'a str,
    engine: cohconf::hierarchy::search::SearchEngine,
    complete: bool,
    bipartitions: usize,
    nodes: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    files: Vec<PathBuf>,
}

#[derive(Serialize)]
struct DivisorLine {
    sum: usize,
    outcome: &'static str,
}

#[derive(Serialize)]
struct ProbeSummary {
    criticality: Criticality,
    complete: bool,
    divisors: Vec<DivisorLine>,
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Perm(e) => e.into(),
        SearchError::Cc(e) => e.into(),
        SearchError::Algebra(e) => e.into(),
        SearchError::InvalidConfig(m) => Failure::new(BAD_INPUT, m),
        e @ SearchError::TooManyComponents { .. } => Failure::new(BUDGET_EXHAUSTED, e),
    }
}

pub fn run(
    group: &Path,
    level: Level,
    common: &Common,
    budget: &BudgetArgs,
    target_sum: Option<usize>,
    critical: bool,
    id: usize,
) -> Result<u8, Failure> {
    if !matches!(level, Level::NonQi | Level::NonSpreading) {
        return Err(Failure::new(BAD_INPUT, format!("search covers the spreading and qi levels, not {level}")));
    }
    let (g, _) = load_group(group)?;
    let cfg = SearchConfig {
        seed: common.seed,
        threads: budget.threads,
        budget_nodes: budget.budget_nodes,
        budget_time: Some(Duration::from_secs(budget.budget_secs)),
        target_sum,
        enum_cap: common.enum_cap,
        ..SearchConfig::default()
    };
    if critical {
        return probe(&g, &cfg);
    }
    let report = search_nonspreading(&g, &cfg).map_err(search_failure)?;
    let (outcome, code, files) = match &report.outcome {
        SearchOutcome::Found(w) => {
            let files = emit(&g, level, w, common, id)?;
            ("found", 0, files)
        }
        SearchOutcome::NotFound => ("not-found", REJECTED, Vec::new()),
        SearchOutcome::BudgetExhausted => ("budget-exhausted", BUDGET_EXHAUSTED, Vec::new()),
    };
    let summary = SearchSummary {
        outcome,
        engine: report.engine,
        complete: report.complete,
        bipartitions: report.bipartitions,
        nodes: report.nodes,
        files,
    };
    print!("{}", to_json(&summary));
    Ok(code)
}

/// Writes the two-list witness file and its certificate.
fn emit(g: &GeneratorSet, level: Level, w: &Witness, common: &Common, id: usize) -> Result<Vec<PathBuf>, Failure> {
    let n = g.degree();
    let mut witness = w.clone();
    if level == Level::NonQi {
        let (cc, ids) = configuration(g, common.seed)?;
        witness = verify_nonqi(&cc, &ids, &w.u, w.partner())
            .map_err(|e| Failure::new(REJECTED, format!("found pair failed re-verification: {e}")))?;
    }
    if !oracle_check(g, &mut witness, common.enum_cap)? {
        return Err(Failure::new(REJECTED, "the enumeration oracle disagrees with the identity"));
    }
    let set: Vec<usize> = witness.u.support().iter().map(|i| i + 1).collect();
    let multiset = witness.partner().to_multiset_labels().expect("nonnegative integer multiset");
    let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let name = witness_file_name(n, id);
    let cert_name = name.replace(".txt", ".json");
    Ok(vec![
        write_file(&dir, &name, &format_witness_pair(&set, &multiset))?,
        write_file(&dir, &cert_name, &to_json(&CertificateJson::from(&witness.certificate)))?,
    ])
}

fn probe(g: &GeneratorSet, cfg: &SearchConfig) -> Result<u8, Failure> {
    let report = critically_nonspreading_probe(g, cfg).map_err(search_failure)?;
    let divisors = report
        .divisors
        .iter()
        .map(|d| DivisorLine {
            sum: d.sum,
            outcome: match d.outcome {
                DivisorOutcome::Found(_) => "found",
                DivisorOutcome::Infeasible => "infeasible",
                DivisorOutcome::BudgetExhausted => "budget-exhausted",
            },
        })
        .collect();
    print!("{}", to_json(&ProbeSummary { criticality: report.criticality, complete: report.complete, divisors }));
    Ok(if report.criticality == Criticality::Unknown { BUDGET_EXHAUSTED } else { 0 })
}
