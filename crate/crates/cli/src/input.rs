//! Input handling: matroid files, weight and normal lists, and digests.
//!
//! A matroid file holds one object in any of five shapes: an explicit flat
//! list `{"n": 7, "flats": [[1], [2,3], ...]}`, a basis list
//! `{"n": 4, "bases": [[1,2], ...]}`, or a named family
//! `{"type": "uniform", "r": 2, "n": 4}`, `{"type": "fano"}`,
//! `{"type": "graphic", "edges": [[1,2], [2,3]]}`. Ground elements and
//! graph vertices are 1-based in files and in reports.

use std::fs;

use serde_json::Value;
use sha2::{Digest, Sha256};
use tropical_lefschetz::bergman::Halfspace;
use tropical_lefschetz::matroid::Matroid;
use tropical_lefschetz::subset::Subset;
use tropical_lefschetz::weight::{parse_rational, Weight};

/// An input problem: unreadable files, malformed objects, bad parameters.
/// These exit with code 2, as opposed to failed checks, which exit with 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

/// Convenience conversion for the many core error types.
pub fn input_err<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

/// Hex digest of raw bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn as_u32(v: &Value, what: &str) -> Result<u32, InputError> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| InputError(format!("{what} must be a small nonnegative integer")))
}

/// Reads one 1-based element list into a subset over `n` elements.
fn as_subset(v: &Value, n: u32, what: &str) -> Result<Subset, InputError> {
    let arr = v
        .as_array()
        .ok_or_else(|| InputError(format!("{what} must be a list of elements")))?;
    let mut elems = Vec::with_capacity(arr.len());
    for e in arr {
        let e = as_u32(e, what)?;
        if e < 1 || e > n {
            return Err(InputError(format!(
                "{what} lists element {e}, outside 1..={n}"
            )));
        }
        elems.push(e);
    }
    Ok(Subset::from_elems(&elems, n))
}

fn subset_list(v: &Value, n: u32, what: &str) -> Result<Vec<Subset>, InputError> {
    let arr = v
        .as_array()
        .ok_or_else(|| InputError(format!("{what} must be a list of lists")))?;
    arr.iter().map(|s| as_subset(s, n, what)).collect()
}

/// Loads and validates a matroid file. Returns the matroid and the digest
/// of the file bytes.
pub fn load_matroid(path: &str) -> Result<(Matroid, String), InputError> {
    let bytes =
        fs::read(path).map_err(|e| InputError(format!("cannot read {path}: {e}")))?;
    let digest = sha256_hex(&bytes);
    let v: Value = serde_json::from_slice(&bytes)
        .map_err(|e| InputError(format!("{path}: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| InputError(format!("{path}: the top level must be an object")))?;

    let m = if let Some(kind) = obj.get("type") {
        let kind = kind
            .as_str()
            .ok_or_else(|| InputError(format!("{path}: \"type\" must be a string")))?;
        match kind {
            "uniform" => {
                let r = as_u32(
                    obj.get("r")
                        .ok_or_else(|| InputError(format!("{path}: uniform needs \"r\"")))?,
                    "\"r\"",
                )?;
                let n = as_u32(
                    obj.get("n")
                        .ok_or_else(|| InputError(format!("{path}: uniform needs \"n\"")))?,
                    "\"n\"",
                )?;
                Matroid::uniform(r, n).map_err(input_err)?
            }
            "fano" => Matroid::fano(),
            "graphic" => {
                let edges = obj
                    .get("edges")
                    .and_then(|e| e.as_array())
                    .ok_or_else(|| {
                        InputError(format!("{path}: graphic needs \"edges\" as a list"))
                    })?;
                let mut pairs = Vec::with_capacity(edges.len());
                for e in edges {
                    let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                        InputError(format!("{path}: each edge must be a pair of vertices"))
                    })?;
                    pairs.push((as_u32(&pair[0], "a vertex")?, as_u32(&pair[1], "a vertex")?));
                }
                Matroid::graphic(&pairs).map_err(input_err)?
            }
            other => {
                return Err(InputError(format!(
                    "{path}: unknown type \"{other}\" (expected uniform, fano, or graphic)"
                )))
            }
        }
    } else if obj.contains_key("flats") {
        let n = as_u32(
            obj.get("n")
                .ok_or_else(|| InputError(format!("{path}: a flat list needs \"n\"")))?,
            "\"n\"",
        )?;
        let flats = subset_list(&obj["flats"], n, "a flat")?;
        Matroid::from_flats(n, &flats).map_err(input_err)?
    } else if obj.contains_key("bases") {
        let n = as_u32(
            obj.get("n")
                .ok_or_else(|| InputError(format!("{path}: a basis list needs \"n\"")))?,
            "\"n\"",
        )?;
        let bases = subset_list(&obj["bases"], n, "a basis")?;
        Matroid::from_bases(n, &bases).map_err(input_err)?
    } else {
        return Err(InputError(format!(
            "{path}: expected \"type\", \"flats\", or \"bases\""
        )));
    };
    Ok((m, digest))
}

/// Splits a comma-separated list of exact rationals.
fn rational_list(list: &str, what: &str) -> Result<Vec<String>, InputError> {
    let parts: Vec<String> = list.split(',').map(|p| p.trim().to_string()).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(InputError(format!("{what} has an empty entry")));
    }
    Ok(parts)
}

/// Parses `--omega`, checking the length against the ground set.
pub fn parse_weight_arg(list: &str, n: u32) -> Result<Weight, InputError> {
    let parts = rational_list(list, "--omega")?;
    if parts.len() != n as usize {
        return Err(InputError(format!(
            "--omega has {} entries, the ground set has {n}",
            parts.len()
        )));
    }
    Weight::parse_list(&parts).map_err(input_err)
}

/// Parses `--normal`, checking the length against the ambient dimension
/// `n - 1` of the fan.
pub fn parse_normal_arg(list: &str, n: u32) -> Result<Halfspace, InputError> {
    let parts = rational_list(list, "--normal")?;
    if parts.len() + 1 != n as usize {
        return Err(InputError(format!(
            "--normal has {} coordinates, the fan lives in dimension {}",
            parts.len(),
            n - 1
        )));
    }
    let coords = parts
        .iter()
        .map(|p| parse_rational(p).map_err(input_err))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Halfspace::new(coords))
}

/// Parses `--t`.
pub fn parse_t_arg(s: &str) -> Result<num_rational::BigRational, InputError> {
    parse_rational(s.trim()).map_err(input_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().expect("temp file");
        f.write_all(content.as_bytes()).expect("write");
        f
    }

    #[test]
    fn typed_files_load() {
        let f = write_temp(r#"{"type": "uniform", "r": 2, "n": 4}"#);
        let (m, digest) = load_matroid(f.path().to_str().unwrap()).expect("load");
        assert_eq!((m.rank(), m.n()), (2, 4));
        assert_eq!(digest.len(), 64);

        let f = write_temp(r#"{"type": "fano"}"#);
        let (m, _) = load_matroid(f.path().to_str().unwrap()).expect("load");
        assert_eq!((m.rank(), m.n()), (3, 7));

        let f = write_temp(r#"{"type": "graphic", "edges": [[1,2],[2,3],[1,3]]}"#);
        let (m, _) = load_matroid(f.path().to_str().unwrap()).expect("load");
        assert_eq!((m.rank(), m.n()), (2, 3));
    }

    #[test]
    fn explicit_lists_load_one_based() {
        let f = write_temp(r#"{"n": 3, "bases": [[1,2],[1,3],[2,3]]}"#);
        let (m, _) = load_matroid(f.path().to_str().unwrap()).expect("load");
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());

        let f = write_temp(r#"{"n": 2, "flats": [[], [1], [2], [1,2]]}"#);
        let (m, _) = load_matroid(f.path().to_str().unwrap()).expect("load");
        assert_eq!(m, Matroid::boolean(2).unwrap());
    }

    #[test]
    fn malformed_files_are_rejected() {
        let cases = [
            "not json at all",
            r#"{"n": 3}"#,
            r#"{"type": "mystery"}"#,
            r#"{"n": 3, "flats": [[0]]}"#,
            r#"{"n": 3, "bases": [[1,2],[4,5]]}"#,
        ];
        for c in cases {
            let f = write_temp(c);
            assert!(load_matroid(f.path().to_str().unwrap()).is_err(), "{c}");
        }
    }

    #[test]
    fn argument_lists_parse_exactly() {
        let w = parse_weight_arg("4,-3/2, 0", 3).expect("weight");
        assert_eq!(w.len(), 3);
        assert!(parse_weight_arg("1,2", 3).is_err());
        assert!(parse_weight_arg("1,,2", 3).is_err());
        let h = parse_normal_arg("2,-1", 3).expect("normal");
        assert_eq!(h.normal().len(), 2);
        assert!(parse_normal_arg("2,-1,5", 3).is_err());
        assert!(parse_t_arg("-7/3").is_ok());
        assert!(parse_t_arg("x").is_err());
    }

}
