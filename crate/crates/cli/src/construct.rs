use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cohconf::constructions::conic::ConicCounts;
use cohconf::constructions::{agl15_fixture, conic_external_action, groups, hermitian_points};
use cohconf::io::format_labels;
use cohconf::perm::format_group_file;
use serde::Serialize;

use crate::output::{to_json, write_file, Failure, BAD_INPUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Name {
    ConicExternal,
    HermitianGq,
    TwoSubsets,
    Agl15Fixture,
}

fn labels(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

#[derive(Serialize)]
struct ConicGeometry {
    q: usize,
    degree: usize,
    /// Homogeneous coordinates, field elements as integer codes.
    points: Vec<[u32; 3]>,
    graph_degree: Option<usize>,
    clique: Vec<usize>,
    coclique: Vec<usize>,
    secant_coclique: Vec<usize>,
    counts: ConicCounts,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct HermitianGeometry {
    degree: usize,
    points: Vec<[u32; 5]>,
}

#[derive(Serialize)]
struct FixtureBundle {
    ordering: &'static str,
    /// Point label → 2-subset of {1..5}.
    pairs: Vec<(usize, usize)>,
    valencies: Vec<usize>,
    e: Vec<Vec<String>>,
    e_tilde: Vec<Vec<String>>,
    u: Vec<String>,
    v: Vec<String>,
    w: Vec<String>,
}

pub fn run(name: Name, q: usize, n: usize, alternating: bool, out: &Path) -> Result<u8, Failure> {
    let written = match name {
        Name::ConicExternal => conic(q, out)?,
        Name::HermitianGq => hermitian(out)?,
        Name::TwoSubsets => two_subsets(n, alternating, out)?,
        Name::Agl15Fixture => fixture(out)?,
    };
    for p in written {
        println!("{}", p.display());
    }
    Ok(0)
}

fn conic(q: usize, out: &Path) -> Result<Vec<PathBuf>, Failure> {
    let c = conic_external_action(q).map_err(|e| Failure::new(BAD_INPUT, e))?;
    let stem = format!("conic_external_{q}");
    let mut notes = Vec::new();
    if c.counts.external_per_secant != q.div_ceil(2) {
        notes.push(format!(
            "secant lines carry {} external points, not (q+1)/2 = {}; the coclique is taken from a passant line",
            c.counts.external_per_secant,
            q.div_ceil(2)
        ));
    }
    let geometry = ConicGeometry {
        q,
        degree: c.points.len(),
        points: c.points.clone(),
        graph_degree: c.graph.regular_degree(),
        clique: labels(&c.clique),
        coclique: labels(&c.coclique),
        secant_coclique: labels(&c.secant_coclique),
        counts: c.counts.clone(),
        notes,
    };
    let comment = format!("PGL(2,{q}) on the {} external points of a conic", c.points.len());
    Ok(vec![
        write_file(out, &format!("{stem}.group"), &format_group_file(&c.generators, Some(&comment)))?,
        write_file(out, &format!("{stem}.json"), &to_json(&geometry))?,
        write_file(out, &format!("{stem}_clique.txt"), &(format_labels(&labels(&c.clique)) + "\n"))?,
        write_file(out, &format!("{stem}_coclique.txt"), &(format_labels(&labels(&c.coclique)) + "\n"))?,
    ])
}

fn hermitian(out: &Path) -> Result<Vec<PathBuf>, Failure> {
    let h = hermitian_points();
    let comment = "SU(5,2) on the 165 points of the Hermitian quadrangle H(4,4)";
    let geometry = HermitianGeometry { degree: h.points.len(), points: h.points.clone() };
    Ok(vec![
        write_file(out, "hermitian_gq.group", &format_group_file(&h.generators, Some(comment)))?,
        write_file(out, "hermitian_gq.json", &to_json(&geometry))?,
    ])
}

fn two_subsets(n: usize, alternating: bool, out: &Path) -> Result<Vec<PathBuf>, Failure> {
    if n < 4 {
        return Err(Failure::new(BAD_INPUT, "two-subsets needs n >= 4"));
    }
    let (g, name) = if alternating {
        (groups::alternating_on_pairs(n), format!("A{n}"))
    } else {
        (groups::symmetric_on_pairs(n), format!("S{n}"))
    };
    let comment = format!("{name} on the {} two-subsets of {{1..{n}}}, lexicographic order", g.degree());
    let prefix = if alternating { "alternating_" } else { "" };
    Ok(vec![write_file(out, &format!("{prefix}two_subsets_{n}.group"), &format_group_file(&g, Some(&comment)))?])
}

fn fixture(out: &Path) -> Result<Vec<PathBuf>, Failure> {
    // Loading runs the full self-validation.
    let f = agl15_fixture().map_err(|e| Failure::new(BAD_INPUT, e))?;
    let strings = |rows: &[Vec<cohconf::algebra::quadratic::QSqrt5>]| {
        rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    };
    let bundle = FixtureBundle {
        ordering: f.ordering_name,
        pairs: f.ordering.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
        valencies: f.cc.valencies().to_vec(),
        e: strings(&f.e),
        e_tilde: strings(&f.e_tilde),
        u: f.u.to_strings(),
        v: f.v.to_strings(),
        w: f.w.to_strings(),
    };
    let comment = format!("AGL(1,5) on the 2-subsets of {{1..5}}, {} order", f.ordering_name);
    Ok(vec![
        write_file(out, "agl15_on_pairs.group", &format_group_file(&f.group, Some(&comment)))?,
        write_file(out, "agl15_relations.csv", &f.cc.relations().to_csv())?,
        write_file(out, "agl15_fixture.json", &to_json(&bundle))?,
    ])
}
