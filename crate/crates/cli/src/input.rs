//! Matrix input files: `{"n":3,"matrix":[["1","0","1"],["0","1","0"],["1","0","1"]]}`.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use skewdg::{Error, Mat, Result, Scalar};

/// An entry may be written as a string ("3/2") or as a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputSpec {
    n: usize,
    matrix: Vec<Vec<Entry>>,
}

pub fn parse_matrix(text: &str) -> Result<Mat> {
    let spec: InputSpec = serde_json::from_str(text).map_err(|e| Error::Input(format!("bad input JSON: {e}")))?;
    if spec.n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    if spec.matrix.len() != spec.n || spec.matrix.iter().any(|r| r.len() != spec.n) {
        return Err(Error::Input(format!("matrix must be {0}x{0}", spec.n)));
    }
    let rows = spec
        .matrix
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Text(s) => s.parse::<Scalar>(),
                    Entry::Int(i) => Ok(Scalar::from_int(i)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<Mat> {
    parse_matrix(&read_file(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_strings_and_integers() {
        let m = parse_matrix(r#"{"n":2,"matrix":[["1/2",0],["-3","4"]]}"#).unwrap();
        assert_eq!(m[(0, 0)], Scalar::new(1, 2).unwrap());
        assert_eq!(m[(1, 0)], Scalar::from_int(-3));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix(r#"{"n":2,"matrix":[["1","0"]]}"#).is_err());
        assert!(parse_matrix(r#"{"n":1,"matrix":[["1/0"]]}"#).is_err());
        assert!(parse_matrix(r#"{"n":1,"matrix":[["x"]]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }
}
