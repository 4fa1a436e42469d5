//! Exit codes, input loading and file output shared by the subcommands.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use cohconf::algebra::idempotents::AlgebraError;
use cohconf::perm::{parse_group_file, PermError};
use cohconf::GeneratorSet;
use sha2::{Digest, Sha256};

pub const REJECTED: u8 = 1;
pub const BAD_INPUT: u8 = 2;
pub const NOT_TRANSITIVE: u8 = 3;
pub const SPLIT_FAILURE: u8 = 4;
pub const BUDGET_EXHAUSTED: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Display) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        let code = match e {
            PermError::NotTransitive { .. } => NOT_TRANSITIVE,
            _ => BAD_INPUT,
        };
        Failure::new(code, e)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::new(SPLIT_FAILURE, e)
    }
}

impl From<cohconf::CcError> for Failure {
    fn from(e: cohconf::CcError) -> Self {
        Failure::new(SPLIT_FAILURE, e)
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(BAD_INPUT, format!("{}: {e}", path.display())))
}

/// The parsed group and the SHA-256 of the file bytes.
pub fn load_group(path: &Path) -> Result<(GeneratorSet, String), Failure> {
    let text = read_text(path)?;
    let g = parse_group_file(&text).map_err(|e| Failure::new(BAD_INPUT, format!("{}: {e}", path.display())))?;
    Ok((g, hex::encode(Sha256::digest(text.as_bytes()))))
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, Failure> {
    let io = |e: std::io::Error| Failure::new(BAD_INPUT, format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(io)?;
    Ok(path)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}
