//! Text formats: 1-based label lists such as `[ 1, 2, 7 ]`, the two-list
//! witness files `[ [ ... ], [ ... ] ]`, and explicit vectors.

use serde::{Deserialize, Serialize};

use crate::hierarchy::witness::{Certificate, VerificationMode};
use crate::rational::{format_rational, parse_rational};
use crate::vector::RationalVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("expected {expected} at offset {offset}")]
    Syntax { expected: &'static str, offset: usize },
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("vector has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("bad entry `{0}`")]
    BadEntry(String),
    #[error("expected {expected} lists, found {found}")]
    WrongListCount { expected: usize, found: usize },
}

/// A bracketed list that is either flat labels or a list of label lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelLists {
    Flat(Vec<usize>),
    Nested(Vec<Vec<usize>>),
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), IoError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(IoError::Syntax { expected: what, offset: self.pos })
        }
    }

    fn number(&mut self) -> Result<usize, IoError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(IoError::Syntax { expected: "a positive integer label", offset: start })
    }

    /// `[` item (`,` item)* `]` or `[ ]`.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, IoError>) -> Result<Vec<T>, IoError> {
        self.expect(b'[', "`[`")?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(IoError::Syntax { expected: "`,` or `]`", offset: self.pos }),
            }
        }
    }

    fn finish(&mut self) -> Result<(), IoError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(IoError::Syntax { expected: "end of input", offset: self.pos }),
        }
    }
}

/// Braces are accepted as brackets, so `{1, 2, 7}` reads like `[ 1, 2, 7 ]`.
pub fn parse_label_lists(text: &str) -> Result<LabelLists, IoError> {
    let text = &text.replace('{', "[").replace('}', "]");
    let nested = {
        let mut probe = Cursor { s: text.as_bytes(), pos: 0 };
        probe.expect(b'[', "`[`")?;
        probe.peek() == Some(b'[')
    };
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let out = if nested {
        LabelLists::Nested(c.list(|c| c.list(Cursor::number))?)
    } else {
        LabelLists::Flat(c.list(Cursor::number)?)
    };
    c.finish()?;
    Ok(out)
}

/// Multiplicity vector of 1-based labels.
pub fn labels_to_vector(labels: &[usize], n: usize) -> Result<RationalVector, IoError> {
    if let Some(&label) = labels.iter().find(|&&l| l == 0 || l > n) {
        return Err(IoError::LabelOutOfRange { label, n });
    }
    Ok(RationalVector::multiplicities(n, labels.iter().map(|l| l - 1)))
}

/// `[ 1, 2, 7 ]`; an empty list prints as `[  ]`.
pub fn format_labels(labels: &[usize]) -> String {
    let body: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("[ {} ]", body.join(", "))
}

/// The witness-file line `[ [ set ], [ multiset ] ]`, newline-terminated.
pub fn format_witness_pair(set: &[usize], multiset: &[usize]) -> String {
    format!("[ {}, {} ]\n", format_labels(set), format_labels(multiset))
}

pub fn witness_file_name(n: usize, id: usize) -> String {
    format!("NonSpreadingWitness_{n}_{id}.txt")
}

fn is_list(text: &str) -> bool {
    text.trim_start().starts_with(['[', '{'])
}

/// Reads a vector either as a bracketed label list or as `n` explicit
/// entries separated by whitespace or commas (`3`, `-1`, `2/5`).
pub fn parse_vector(text: &str, n: usize) -> Result<RationalVector, IoError> {
    if is_list(text) {
        return match parse_label_lists(text)? {
            LabelLists::Flat(l) => labels_to_vector(&l, n),
            LabelLists::Nested(ls) => Err(IoError::WrongListCount { expected: 1, found: ls.len() }),
        };
    }
    let entries = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).map_err(|_| IoError::BadEntry(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != n {
        return Err(IoError::WrongLength { expected: n, found: entries.len() });
    }
    Ok(RationalVector::new(entries))
}

/// Every list of a nested file as a multiplicity vector; a flat file gives one.
pub fn parse_vectors(text: &str, n: usize) -> Result<Vec<RationalVector>, IoError> {
    if !is_list(text) {
        return Ok(vec![parse_vector(text, n)?]);
    }
    match parse_label_lists(text)? {
        LabelLists::Flat(l) => Ok(vec![labels_to_vector(&l, n)?]),
        LabelLists::Nested(ls) => ls.iter().map(|l| labels_to_vector(l, n)).collect(),
    }
}

/// JSON form of a certificate, with rationals as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub level: String,
    pub lambda: Vec<String>,
    pub identity: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub traces: Vec<usize>,
    pub mode: VerificationMode,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let strs = |v: &[crate::Rational]| v.iter().map(format_rational).collect();
        Self {
            level: format!("non-{}", c.level),
            lambda: strs(&c.lambda),
            identity: c.identity.clone(),
            lhs: strs(&c.lhs),
            rhs: strs(&c.rhs),
            traces: c.traces.clone(),
            mode: c.mode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DATA_FILE: &str = "[ [ 1, 2, 7, 8, 10 ], [ 1, 5, 5, 6, 6, 7, 7, 8, 9, 10 ] ]\n";

    #[test]
    fn witness_file_round_trip() {
        let LabelLists::Nested(ls) = parse_label_lists(DATA_FILE).unwrap() else {
            panic!("nested");
        };
        assert_eq!(ls[0], vec![1, 2, 7, 8, 10]);
        assert_eq!(format_witness_pair(&ls[0], &ls[1]), DATA_FILE);
    }

    #[test]
    fn labels_become_multiplicities() {
        let v = parse_vectors(DATA_FILE, 10).unwrap();
        assert_eq!(v[1], RationalVector::from_integers([1, 0, 0, 0, 2, 2, 2, 1, 1, 1]));
        assert_eq!(v[1].to_multiset_labels().unwrap(), vec![1, 5, 5, 6, 6, 7, 7, 8, 9, 10]);
    }

    #[test]
    fn explicit_entries() {
        let v = parse_vector("1 0, -2 3/4", 4).unwrap();
        assert_eq!(v.entries()[3], crate::rational::frac(3, 4));
        assert_eq!(parse_vector("1 2", 3), Err(IoError::WrongLength { expected: 3, found: 2 }));
    }

    #[test]
    fn rejects_malformed_lists() {
        assert!(parse_label_lists("[ 1, 2").is_err());
        assert!(parse_label_lists("[ 1, , 2 ]").is_err());
        assert!(parse_label_lists("[ 1 ] x").is_err());
        assert_eq!(parse_vector("[ 0 ]", 3), Err(IoError::LabelOutOfRange { label: 0, n: 3 }));
        assert_eq!(parse_vector("[ 4 ]", 3), Err(IoError::LabelOutOfRange { label: 4, n: 3 }));
    }

    #[test]
    fn set_notation() {
        assert_eq!(parse_vector("{1,2,7}", 8).unwrap(), parse_vector("[ 1, 2, 7 ]", 8).unwrap());
        assert_eq!(parse_vector("1\n0\n-1/2\n", 3).unwrap().entries()[2], crate::rational::frac(-1, 2));
    }

    #[test]
    fn empty_list() {
        assert_eq!(parse_label_lists("[ ]").unwrap(), LabelLists::Flat(vec![]));
        assert_eq!(format_labels(&[]), "[  ]");
    }
}
