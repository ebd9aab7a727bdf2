//! Input formats: scheme descriptors (JSON), codeword files, and Johnson
//! subset files. Point-set files live in the spherical module.

use crate::named::{hamming_scheme, johnson_scheme};
use crate::scheme::{johnson_rank, AssociationScheme, SchemeError, VertexSet};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("bad scheme descriptor: {0}")]
    BadDescriptor(String),
    #[error("line {line}: {reason}")]
    BadLine { line: usize, reason: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// JSON scheme descriptor:
/// {"family":"hamming","n":N,"q":Q} | {"family":"johnson","v":V,"k":K}
/// | {"explicit":{"relations":[[...],...]}}
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SchemeDescriptor {
    Family(FamilySpec),
    Explicit { explicit: ExplicitSpec },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Hamming { n: u32, q: u32 },
    Johnson { v: u32, k: u32 },
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExplicitSpec {
    pub relations: Vec<Vec<u8>>,
}

pub fn parse_scheme_descriptor(text: &str) -> Result<SchemeDescriptor, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::BadDescriptor(e.to_string()))
}

pub fn build_scheme(desc: &SchemeDescriptor) -> Result<AssociationScheme, InputError> {
    Ok(match desc {
        SchemeDescriptor::Family(FamilySpec::Hamming { n, q }) => hamming_scheme(*n, *q)?,
        SchemeDescriptor::Family(FamilySpec::Johnson { v, k }) => johnson_scheme(*v, *k)?,
        SchemeDescriptor::Explicit { explicit } => {
            AssociationScheme::verify_explicit(&explicit.relations)?
        }
    })
}

pub fn describe_scheme(scheme: &AssociationScheme) -> String {
    match scheme.vertex_set() {
        VertexSet::Hamming { n, q } => format!("H({n},{q})"),
        VertexSet::Johnson { v, k } => format!("J({v},{k})"),
        VertexSet::Explicit { n, .. } => format!("explicit({n})"),
    }
}

/// Parses a subset file for the given scheme. Hamming: one word per line,
/// n digits from 0..q-1, leftmost digit is the highest-order coordinate.
/// Johnson: k distinct 1-based ground-set elements per line. `#` comments
/// and blank lines are ignored.
pub fn parse_subset_file(
    scheme: &AssociationScheme,
    text: &str,
) -> Result<Vec<u64>, InputError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let vertex = match scheme.vertex_set() {
            VertexSet::Hamming { n, q } => parse_word(line, *n, *q).map_err(|reason| {
                InputError::BadLine {
                    line: lineno + 1,
                    reason,
                }
            })?,
            VertexSet::Johnson { v, k } => {
                parse_subset_line(line, *v, *k).map_err(|reason| InputError::BadLine {
                    line: lineno + 1,
                    reason,
                })?
            }
            VertexSet::Explicit { n, .. } => {
                let idx: u64 = line.parse().map_err(|_| InputError::BadLine {
                    line: lineno + 1,
                    reason: format!("expected a vertex index below {n}"),
                })?;
                idx
            }
        };
        out.push(vertex);
    }
    if out.is_empty() {
        return Err(InputError::BadLine {
            line: 0,
            reason: "no vertices in file".into(),
        });
    }
    Ok(out)
}

fn parse_word(line: &str, n: u32, q: u32) -> Result<u64, String> {
    if q > 10 {
        return Err(format!("word files support q <= 10, scheme has q = {q}"));
    }
    let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.len() != n as usize {
        return Err(format!("expected {n} digits, found {}", chars.len()));
    }
    let mut id: u64 = 0;
    for &c in &chars {
        let digit = c.to_digit(10).filter(|&v| v < q).ok_or_else(|| {
            format!("invalid digit '{c}' for alphabet 0..{}", q - 1)
        })?;
        id = id * q as u64 + digit as u64;
    }
    Ok(id)
}

fn parse_subset_line(line: &str, v: u32, k: u32) -> Result<u64, String> {
    let mut mask = 0u64;
    let mut count = 0u32;
    for tok in line.split_whitespace() {
        let e: u32 = tok
            .parse()
            .map_err(|_| format!("invalid element '{tok}'"))?;
        if e < 1 || e > v {
            return Err(format!("element {e} outside 1..{v}"));
        }
        let bit = 1u64 << (e - 1);
        if mask & bit != 0 {
            return Err(format!("repeated element {e}"));
        }
        mask |= bit;
        count += 1;
    }
    if count != k {
        return Err(format!("expected {k} elements, found {count}"));
    }
    Ok(johnson_rank(mask))
}

/// Renders a Hamming vertex id back to its word (inverse of `parse_word`).
pub fn format_word(id: u64, n: u32, q: u32) -> String {
    let mut digits = vec![0u8; n as usize];
    let mut v = id;
    for slot in digits.iter_mut().rev() {
        *slot = (v % q as u64) as u8;
        v /= q as u64;
    }
    digits.iter().map(|d| (b'0' + d) as char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::hamming_scheme;

    #[test]
    fn descriptor_parsing() {
        let d = parse_scheme_descriptor(r#"{"family":"hamming","n":3,"q":2}"#).unwrap();
        let scheme = build_scheme(&d).unwrap();
        assert_eq!(scheme.num_vertices(), 8);
        let d = parse_scheme_descriptor(r#"{"family":"johnson","v":5,"k":2}"#).unwrap();
        let scheme = build_scheme(&d).unwrap();
        assert_eq!(scheme.num_vertices(), 10);
        let d = parse_scheme_descriptor(r#"{"explicit":{"relations":[[0,1],[1,0]]}}"#).unwrap();
        let scheme = build_scheme(&d).unwrap();
        assert_eq!(scheme.num_classes(), 1);
        assert!(parse_scheme_descriptor("{}").is_err());
    }

    #[test]
    fn word_files() {
        let h = hamming_scheme(3, 2).unwrap();
        let ids = parse_subset_file(&h, "# repetition\n000\n111\n").unwrap();
        assert_eq!(ids, vec![0, 7]);
        assert_eq!(format_word(5, 3, 2), "101");
        assert_eq!(parse_word("101", 3, 2).unwrap(), 5);
        assert!(parse_subset_file(&h, "121\n").is_err());
        assert!(parse_subset_file(&h, "0000\n").is_err());
    }

    #[test]
    fn johnson_files() {
        let j = crate::named::johnson_scheme(5, 2).unwrap();
        let ids = parse_subset_file(&j, "1 2\n4 5\n").unwrap();
        assert_eq!(ids.len(), 2);
        assert_eq!(j.relation_of(ids[0], ids[1]), 2); // disjoint pairs
        assert!(parse_subset_file(&j, "1 1\n").is_err());
        assert!(parse_subset_file(&j, "1 6\n").is_err());
    }
}
