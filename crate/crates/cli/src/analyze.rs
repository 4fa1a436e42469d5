use std::path::Path;

use cohconf::algebra::idempotents::SplitOptions;
use cohconf::report::{analyze, AnalyzeError};

use crate::output::{load_group, to_json, write_file, Failure};
use crate::Common;

pub fn run(group: &Path, common: &Common, timings: bool) -> Result<u8, Failure> {
    let (g, hash) = load_group(group)?;
    let opts = SplitOptions { seed: common.seed, ..SplitOptions::default() };
    let mut report = analyze(&g, &opts, timings).map_err(|e| match e {
        AnalyzeError::Perm(e) => Failure::from(e),
        AnalyzeError::Cc(e) => Failure::from(e),
        AnalyzeError::Algebra(e) => Failure::from(e),
    })?;
    report.group_sha256 = Some(hash);
    let json = to_json(&report);
    if let Some(dir) = &common.out {
        write_file(dir, "analysis.json", &json)?;
    }
    print!("{json}");
    Ok(0)
}
