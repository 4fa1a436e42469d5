//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes text in the CLI file formats and returns pretty JSON.
//! Nothing here reads the clock: time budgets and timings are off because
//! `Instant` is unavailable on `wasm32-unknown-unknown`.

use cohconf::algebra::idempotents::{split, SplitOptions};
use cohconf::hierarchy::search::{search_nonspreading, SearchConfig, SearchOutcome};
use cohconf::hierarchy::witness::{verify_nonqi, verify_nonseparating, verify_nonspreading, verify_nonsynchronising};
use cohconf::hierarchy::Level;
use cohconf::io::{format_witness_pair, parse_vectors, CertificateJson};
use cohconf::perm::{orbitals, parse_group_file};
use cohconf::report::analyze;
use cohconf::{CoherentConfiguration, GeneratorSet};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Node cap for a browser search; a single thread with no clock.
pub const SEARCH_NODES: u64 = 20_000;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn group(text: &str) -> Result<GeneratorSet, String> {
    let g = parse_group_file(text).map_err(|e| e.to_string())?;
    if !g.is_transitive() {
        return Err("the group is not transitive".into());
    }
    Ok(g)
}

pub fn analyze_text(group_text: &str, seed: u64) -> Result<String, String> {
    let g = group(group_text)?;
    let report = analyze(&g, &SplitOptions { seed, ..SplitOptions::default() }, false).map_err(|e| e.to_string())?;
    Ok(json(&report))
}

#[derive(Serialize)]
struct VerifyResult {
    accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
}

/// For `synchronising` the first list is the meeting set and the rest are
/// the blocks; every other level takes exactly two lists.
pub fn verify_text(group_text: &str, level: &str, lists: &str) -> Result<String, String> {
    let g = group(group_text)?;
    let level: Level = level.trim_start_matches("non-").parse().map_err(|e| format!("{e}"))?;
    let vs = parse_vectors(lists, g.degree()).map_err(|e| e.to_string())?;
    let cc = CoherentConfiguration::from_orbitals(orbitals(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let ids = split(&cc, &SplitOptions::default()).map_err(|e| e.to_string())?.rational;
    let result = match (level, vs.as_slice()) {
        (Level::NonSynchronising, [v, ys @ ..]) if !ys.is_empty() => verify_nonsynchronising(&cc, &ids, ys, v),
        (Level::NonSynchronising, _) => return Err("synchronising needs the meeting set and at least one block".into()),
        (_, [u, v]) => match level {
            Level::NonQi => verify_nonqi(&cc, &ids, u, v),
            Level::NonSpreading => verify_nonspreading(&cc, &ids, u, v),
            _ => verify_nonseparating(&cc, &ids, u, v),
        },
        _ => return Err(format!("{level} needs exactly two lists, got {}", vs.len())),
    };
    let out = match result {
        Ok(w) => VerifyResult { accepted: true, reason: None, certificate: Some(CertificateJson::from(&w.certificate)) },
        Err(e) => VerifyResult { accepted: false, reason: Some(e.to_string()), certificate: None },
    };
    Ok(json(&out))
}

#[derive(Serialize)]
struct SearchResult {
    outcome: &'static str,
    complete: bool,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

pub fn search_text(group_text: &str, seed: u64) -> Result<String, String> {
    let g = group(group_text)?;
    let cfg = SearchConfig { seed, threads: 1, budget_nodes: SEARCH_NODES, budget_time: None, ..SearchConfig::default() };
    let report = search_nonspreading(&g, &cfg).map_err(|e| e.to_string())?;
    let (outcome, witness) = match &report.outcome {
        SearchOutcome::Found(w) => {
            let set: Vec<usize> = w.u.support().iter().map(|i| i + 1).collect();
            let multiset = w.partner().to_multiset_labels().ok_or("witness is not a multiset")?;
            ("found", Some(format_witness_pair(&set, &multiset).trim_end().to_string()))
        }
        SearchOutcome::NotFound => ("not-found", None),
        SearchOutcome::BudgetExhausted => ("budget-exhausted", None),
    };
    Ok(json(&SearchResult { outcome, complete: report.complete, nodes: report.nodes, witness }))
}

/// Orbital configuration, flags and isotypic dimensions of a group file.
#[wasm_bindgen(js_name = analyzeGroup)]
pub fn analyze_group(group_text: &str, seed: u64) -> Result<String, JsError> {
    analyze_text(group_text, seed).map_err(|e| JsError::new(&e))
}

/// Checks a witness given as a nested label list such as `[ [ 1, 2 ], [ 3, 3 ] ]`.
#[wasm_bindgen(js_name = verifyWitness)]
pub fn verify_witness(group_text: &str, level: &str, lists: &str) -> Result<String, JsError> {
    verify_text(group_text, level, lists).map_err(|e| JsError::new(&e))
}

/// Searches for a non-spreading witness under a node cap.
#[wasm_bindgen(js_name = searchWitness)]
pub fn search_witness(group_text: &str, seed: u64) -> Result<String, JsError> {
    search_text(group_text, seed).map_err(|e| JsError::new(&e))
}
