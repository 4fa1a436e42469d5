use std::path::{Path, PathBuf};

use cohconf::algebra::idempotents::{split, CentralIdempotentSet, SplitOptions};
use cohconf::hierarchy::witness::{
    confirm_with_oracle, verify_nonqi, verify_nonseparating, verify_nonspreading, verify_nonsynchronising,
};
use cohconf::hierarchy::{Level, Witness};
use cohconf::io::{parse_vector, parse_vectors, CertificateJson};
use cohconf::perm::{enumerate_elements, orbitals, PermError};
use cohconf::{CoherentConfiguration, GeneratorSet, RationalVector};

use crate::output::{load_group, read_text, to_json, write_file, Failure, BAD_INPUT, REJECTED};
use crate::Common;

/// The orbital configuration and its rational central idempotents.
pub fn configuration(g: &GeneratorSet, seed: u64) -> Result<(CoherentConfiguration, CentralIdempotentSet), Failure> {
    let cc = CoherentConfiguration::from_orbitals(orbitals(g)?)?;
    let ids = split(&cc, &SplitOptions { seed, ..SplitOptions::default() })?.rational;
    Ok((cc, ids))
}

/// Upgrades the certificate to `both` when the group is small enough to
/// enumerate. Returns false if the oracle disagrees.
pub fn oracle_check(g: &GeneratorSet, witness: &mut Witness, cap: usize) -> Result<bool, Failure> {
    match enumerate_elements(g, cap) {
        Ok(elements) => Ok(confirm_with_oracle(witness, &elements).is_ok()),
        Err(PermError::CapExceeded { .. }) => Ok(true),
        Err(e) => Err(e.into()),
    }
}

fn vectors(files: &[PathBuf], n: usize) -> Result<Vec<RationalVector>, Failure> {
    let mut out = Vec::new();
    for f in files {
        let text = read_text(f)?;
        let parsed = if files.len() == 1 { parse_vectors(&text, n) } else { parse_vector(&text, n).map(|v| vec![v]) };
        out.extend(parsed.map_err(|e| Failure::new(BAD_INPUT, format!("{}: {e}", f.display())))?);
    }
    Ok(out)
}

pub fn run(group: &Path, level: Level, files: &[PathBuf], common: &Common) -> Result<u8, Failure> {
    let (g, _) = load_group(group)?;
    let n = g.degree();
    let (cc, ids) = configuration(&g, common.seed)?;
    let result = if level == Level::NonSynchronising {
        let (first, rest) = files.split_first().expect("clap requires one file");
        if rest.is_empty() {
            return Err(Failure::new(BAD_INPUT, "synchronising needs the meeting set and at least one block file"));
        }
        let v = vectors(std::slice::from_ref(first), n)?;
        if v.len() != 1 {
            return Err(Failure::new(BAD_INPUT, "the meeting-set file must hold a single list"));
        }
        let ys = if rest.len() == 1 { vectors(rest, n)? } else { rest.iter().map(|f| vectors(std::slice::from_ref(f), n)).collect::<Result<Vec<_>, _>>()?.concat() };
        verify_nonsynchronising(&cc, &ids, &ys, &v[0])
    } else {
        let vs = vectors(files, n)?;
        if vs.len() != 2 {
            return Err(Failure::new(BAD_INPUT, format!("{level} needs exactly two vectors, got {}", vs.len())));
        }
        let (u, v) = (&vs[0], &vs[1]);
        match level {
            Level::NonQi => verify_nonqi(&cc, &ids, u, v),
            Level::NonSpreading => verify_nonspreading(&cc, &ids, u, v),
            Level::NonSeparating => verify_nonseparating(&cc, &ids, u, v),
            Level::NonSynchronising => unreachable!(),
        }
    };
    let mut witness = match result {
        Ok(w) => w,
        Err(reason) => {
            eprintln!("rejected: {reason}");
            return Ok(REJECTED);
        }
    };
    if !oracle_check(&g, &mut witness, common.enum_cap)? {
        eprintln!("rejected: the enumeration oracle disagrees with the identity");
        return Ok(REJECTED);
    }
    let json = to_json(&CertificateJson::from(&witness.certificate));
    if let Some(dir) = &common.out {
        write_file(dir, "certificate.json", &json)?;
    }
    print!("{json}");
    Ok(0)
}
