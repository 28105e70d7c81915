//! Serialization of triangles, sequences and Jacobi parameters.
//!
//! Every value is written as its canonical [`Scalar`] string, so parsing and
//! re-serializing a document reproduces it byte for byte.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::orthopoly::{JacobiParams, OrthoError};
use crate::riordan::ProductionMatrix;
use crate::scalars::{PolyZ, Rational, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("b-file line {line}: {reason}")]
    Bfile { line: usize, reason: String },
    #[error("entry {position}: {source}")]
    Entry {
        position: String,
        #[source]
        source: ScalarError,
    },
    #[error("row {row} has {got} entries, expected at most {max}")]
    RowShape { row: usize, got: usize, max: usize },
    #[error(transparent)]
    Jacobi(#[from] OrthoError),
}

fn parse_entry(text: &str, position: impl FnOnce() -> String) -> Result<Scalar, IoError> {
    Scalar::from_str(text).map_err(|source| IoError::Entry {
        position: position(),
        source,
    })
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

/// Row `n` of a lower-triangular array, entries `0..=n`.
pub fn triangle_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.dim()).map(|n| m.row(n)[..=n].to_vec()).collect()
}

/// Determined rows `0..N` of a production matrix, entries `0..=i+1`.
pub fn production_rows(p: &ProductionMatrix) -> Vec<Vec<Scalar>> {
    let m = p.entries();
    (0..p.valid_rows())
        .map(|i| m.row(i)[..=(i + 1).min(m.dim() - 1)].to_vec())
        .collect()
}

/// `{"order": N, "rows": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDoc {
    pub order: usize,
    pub rows: Vec<Vec<String>>,
}

impl TriangleDoc {
    pub fn new(order: usize, rows: &[Vec<Scalar>]) -> Self {
        TriangleDoc {
            order,
            rows: rows.iter().map(|r| strings(r)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string table serializes")
    }

    /// Parsed entries; row `n` may hold at most `n + 2` values.
    pub fn scalars(&self) -> Result<Vec<Vec<Scalar>>, IoError> {
        self.rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                if row.len() > n + 2 {
                    return Err(IoError::RowShape {
                        row: n,
                        got: row.len(),
                        max: n + 2,
                    });
                }
                row.iter()
                    .enumerate()
                    .map(|(k, s)| parse_entry(s, || format!("({n},{k})")))
                    .collect()
            })
            .collect()
    }

    /// Square matrix with the rows zero-padded.
    pub fn to_matrix(&self) -> Result<Matrix, IoError> {
        let mut rows = self.scalars()?;
        let dim = rows.iter().map(Vec::len).max().unwrap_or(0).max(rows.len());
        rows.resize(dim, Vec::new());
        Ok(Matrix::from_rows(rows))
    }
}

/// `{"a0": s, "alpha": [...], "beta": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiDoc {
    pub a0: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

impl From<&JacobiParams> for JacobiDoc {
    fn from(j: &JacobiParams) -> Self {
        JacobiDoc {
            a0: j.a0.to_string(),
            alpha: strings(&j.alpha),
            beta: strings(&j.beta),
        }
    }
}

impl JacobiDoc {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string table serializes")
    }

    pub fn params(&self) -> Result<JacobiParams, IoError> {
        let a0 = parse_entry(&self.a0, || "a0".into())?;
        let alpha = self
            .alpha
            .iter()
            .enumerate()
            .map(|(i, s)| parse_entry(s, || format!("alpha[{i}]")))
            .collect::<Result<_, _>>()?;
        let beta = self
            .beta
            .iter()
            .enumerate()
            .map(|(i, s)| parse_entry(s, || format!("beta[{i}]")))
            .collect::<Result<_, _>>()?;
        Ok(JacobiParams::new(a0, alpha, beta)?)
    }
}

pub fn sequence_to_json(values: &[Scalar]) -> String {
    serde_json::to_string(&strings(values)).expect("string list serializes")
}

pub fn sequence_from_json(text: &str) -> Result<Vec<Scalar>, IoError> {
    let raw: Vec<String> = serde_json::from_str(text)?;
    raw.iter()
        .enumerate()
        .map(|(i, s)| parse_entry(s, || format!("[{i}]")))
        .collect()
}

/// Reads `n value` lines; `#` comments and blank lines are skipped. Indices
/// must be consecutive.
pub fn read_bfile(text: &str) -> Result<Vec<Scalar>, IoError> {
    let mut out = Vec::new();
    let mut next_index: Option<i64> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| IoError::Bfile {
            line: lineno + 1,
            reason,
        };
        let (idx, value) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("expected `n value`".into()))?;
        let idx: i64 = idx
            .parse()
            .map_err(|_| err(format!("bad index `{idx}`")))?;
        if let Some(expected) = next_index {
            if idx != expected {
                return Err(err(format!("index {idx} out of sequence, expected {expected}")));
            }
        }
        next_index = Some(idx + 1);
        let value = value.trim();
        out.push(Scalar::from_str(value).map_err(|e| err(format!("bad value `{value}`: {e}")))?);
    }
    Ok(out)
}

/// `n value` lines starting at index `offset`.
pub fn write_bfile(values: &[Scalar], offset: usize) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + offset, v);
    }
    out
}

/// `n k value` lines.
pub fn write_triples(rows: &[Vec<Scalar>]) -> String {
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{n} {k} {v}");
        }
    }
    out
}

/// One line per row, entries joined by `", "`.
pub fn write_plain(rows: &[Vec<Scalar>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&strings(row).join(", "));
        out.push('\n');
    }
    out
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub fn latex_poly(p: &PolyZ) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = mag.is_one();
        if d == 0 || !unit {
            out.push_str(&latex_rational(&mag));
        }
        match d {
            0 => {}
            1 => out.push('z'),
            _ => {
                let _ = write!(out, "z^{{{d}}}");
            }
        }
    }
    out
}

pub fn latex_scalar(s: &Scalar) -> String {
    if s.is_polynomial() {
        latex_poly(s.numer())
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_poly(s.numer()), latex_poly(s.denom()))
    }
}

/// `pmatrix` environment; ragged rows are padded with zeros.
pub fn latex_pmatrix(rows: &[Vec<Scalar>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::from("\\begin{pmatrix}\n");
    for (i, row) in rows.iter().enumerate() {
        let mut cells: Vec<String> = row.iter().map(latex_scalar).collect();
        cells.resize(width, "0".into());
        out.push_str(&cells.join(" & "));
        if i + 1 < rows.len() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

/// Entry that has a pole at the requested `z`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("entry ({row},{col}): {source}")]
pub struct SpecializeError {
    pub row: usize,
    pub col: usize,
    #[source]
    pub source: ScalarError,
}

/// Evaluates every entry at `z = v`.
pub fn specialize(rows: &[Vec<Scalar>], v: &Rational) -> Result<Vec<Vec<Scalar>>, SpecializeError> {
    rows.iter()
        .enumerate()
        .map(|(row, r)| {
            r.iter()
                .enumerate()
                .map(|(col, s)| {
                    s.eval_z(v)
                        .map(Scalar::from_rational)
                        .map_err(|source| SpecializeError { row, col, source })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn triangle_document() {
        let rows = vec![vec![s("1")], vec![s("z"), s("1")], vec![s("z^2 + z"), s("2*z"), s("1")]];
        let doc = TriangleDoc::new(2, &rows);
        let json = doc.to_json();
        assert_eq!(
            json,
            r#"{"order":2,"rows":[["1"],["z","1"],["z^2 + z","2*z","1"]]}"#
        );
        let back = TriangleDoc::from_json(&json).unwrap();
        assert_eq!(back.scalars().unwrap(), rows);
        assert_eq!(TriangleDoc::new(back.order, &back.scalars().unwrap()).to_json(), json);
        assert_eq!(back.to_matrix().unwrap().dim(), 3);
    }

    #[test]
    fn triangle_errors() {
        let bad = TriangleDoc::from_json(r#"{"order":1,"rows":[["1","2","3"]]}"#).unwrap();
        assert!(matches!(bad.scalars(), Err(IoError::RowShape { row: 0, got: 3, max: 2 })));
        let bad = TriangleDoc::from_json(r#"{"order":1,"rows":[["1"],["x"]]}"#).unwrap();
        let err = bad.scalars().unwrap_err();
        assert!(err.to_string().starts_with("entry (1,0)"), "{err}");
        assert!(matches!(TriangleDoc::from_json("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn jacobi_document() {
        let j = JacobiParams::new(s("1"), vec![s("z"), s("z + 1")], vec![s("z")]).unwrap();
        let doc = JacobiDoc::from(&j);
        let json = doc.to_json();
        assert_eq!(json, r#"{"a0":"1","alpha":["z","z + 1"],"beta":["z"]}"#);
        assert_eq!(JacobiDoc::from_json(&json).unwrap().params().unwrap(), j);
        let short = JacobiDoc::from_json(r#"{"a0":"1","alpha":["1","2"],"beta":[]}"#).unwrap();
        assert!(matches!(short.params(), Err(IoError::Jacobi(_))));
    }

    #[test]
    fn bfile_reading() {
        let text = "# Bell numbers\n0 1\n1 1\n\n2 2\n3 5\n4 15\n";
        let v = read_bfile(text).unwrap();
        assert_eq!(v, [1, 1, 2, 5, 15].map(Scalar::from_int));
        assert_eq!(write_bfile(&v[..2], 0), "0 1\n1 1\n");
        let offset = read_bfile("1 1\n2 3\n").unwrap();
        assert_eq!(offset.len(), 2);
        let err = read_bfile("0 1\n2 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(read_bfile("0\n").is_err());
        assert!(read_bfile("0 abc\n").is_err());
    }

    #[test]
    fn plain_and_triples() {
        let rows = vec![vec![s("1")], vec![s("1"), s("1")]];
        assert_eq!(write_plain(&rows), "1\n1, 1\n");
        assert_eq!(write_triples(&rows), "0 0 1\n1 0 1\n1 1 1\n");
    }

    #[test]
    fn latex() {
        assert_eq!(latex_scalar(&s("z^3 + 3*z^2 + z")), "z^{3} + 3z^{2} + z");
        assert_eq!(latex_scalar(&s("-1/2*z + 1")), "-\\frac{1}{2}z + 1");
        assert_eq!(latex_scalar(&s("(1)/(z - 1)")), "\\frac{1}{z - 1}");
        let rows = vec![vec![s("1")], vec![s("-1"), s("1")]];
        assert_eq!(
            latex_pmatrix(&rows),
            "\\begin{pmatrix}\n1 & 0 \\\\\n-1 & 1\n\\end{pmatrix}\n"
        );
    }

    #[test]
    fn specialization() {
        let rows = vec![vec![s("z^2 + z"), s("(1)/(z - 1)")]];
        let at2 = specialize(&rows, &rat(2, 1)).unwrap();
        assert_eq!(at2, vec![vec![s("6"), s("1")]]);
        let err = specialize(&rows, &rat(1, 1)).unwrap_err();
        assert_eq!((err.row, err.col), (0, 1));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            proptest::collection::vec(-5i64..=5, 1..4),
            proptest::collection::vec(-5i64..=5, 1..3),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                Scalar::new(PolyZ::from_ints(&n), PolyZ::from_ints(&d)).ok()
            })
    }

    proptest! {
        #[test]
        fn sequence_json_round_trip(values in proptest::collection::vec(arb_scalar(), 0..6)) {
            let json = sequence_to_json(&values);
            let back = sequence_from_json(&json).unwrap();
            prop_assert_eq!(&back, &values);
            prop_assert_eq!(sequence_to_json(&back), json);
            prop_assert_eq!(read_bfile(&write_bfile(&values, 0)).unwrap(), values);
        }
    }
}
