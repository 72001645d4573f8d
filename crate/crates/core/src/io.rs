//! File and wire formats: point sets, ideals, sequences, matrices and series.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::parse_polynomial;
use crate::matrix::{Axis, ExactMatrix};
use crate::mindex::MultiIndex;
use crate::pointset::{MonomialIdeal, PointSet};
use crate::poly::Polynomial;
use crate::series::TruncatedSeries;

fn json_error(e: serde_json::Error) -> Error {
    let pos = e.column().saturating_sub(1);
    Error::Syntax {
        pos,
        msg: e.to_string(),
    }
}

fn to_indices(n: usize, raw: Vec<Vec<u32>>) -> Result<Vec<MultiIndex>> {
    raw.into_iter()
        .map(|e| {
            if e.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: e.len() });
            }
            MultiIndex::new(e)
        })
        .collect()
}

/// Parses a JSON array of integer arrays. `n` is required only when the array is empty.
pub fn parse_point_set(text: &str, n: Option<usize>) -> Result<PointSet> {
    let raw: Vec<Vec<u32>> = serde_json::from_str(text).map_err(json_error)?;
    let n = match (raw.first(), n) {
        (Some(p), _) => p.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(Error::InvalidMultiIndex("empty set needs an explicit dimension".into())),
    };
    PointSet::new(n, to_indices(n, raw)?)
}

#[derive(Deserialize)]
struct IdealFile {
    n: usize,
    generators: Vec<Vec<u32>>,
}

/// Parses `{"n": …, "generators": [[…], …]}`.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let f: IdealFile = serde_json::from_str(text).map_err(json_error)?;
    MonomialIdeal::new(f.n, to_indices(f.n, f.generators)?)
}

/// Parses a generator list given inline as a JSON array.
pub fn parse_generators(text: &str, n: usize) -> Result<MonomialIdeal> {
    let raw: Vec<Vec<u32>> = serde_json::from_str(text).map_err(json_error)?;
    MonomialIdeal::new(n, to_indices(n, raw)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RawEntry {
    k: Vec<u32>,
    value: RawValue,
}

#[derive(Deserialize)]
struct SequenceFile {
    n: usize,
    values: Vec<RawEntry>,
}

/// A sequence indexed by multi-indices; values are polynomials in `x0, …, xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    pub n: usize,
    pub values: BTreeMap<MultiIndex, Polynomial>,
}

/// Parses `{"n": …, "values": [{"k": […], "value": "…"}, …]}`; a value is an
/// integer or a polynomial expression in `x0, …, xn`.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let f: SequenceFile = serde_json::from_str(text).map_err(json_error)?;
    let nvars = f.n + 1;
    let mut values = BTreeMap::new();
    for e in f.values {
        let k = to_indices(f.n, vec![e.k])?.pop().expect("one index");
        let v = match e.value {
            RawValue::Int(i) => Polynomial::from_int(nvars, i),
            RawValue::Text(s) => parse_polynomial(&s, nvars)?,
        };
        if values.insert(k.clone(), v).is_some() {
            return Err(Error::InvalidMultiIndex(format!("duplicate sequence entry at {k}")));
        }
    }
    Ok(Sequence { n: f.n, values })
}

pub fn sequence_to_json(seq: &Sequence) -> Value {
    let values: Vec<Value> = seq
        .values
        .iter()
        .map(|(k, v)| json!({"k": k.exps(), "value": v.to_string()}))
        .collect();
    json!({"n": seq.n, "values": values})
}

/// Matrix JSON: `{"n", "index", "cols", "entries"}` with entries as strings.
/// `cols` is `"index"` when columns share the row labels, else the column count.
pub fn matrix_to_json<T: Display>(m: &ExactMatrix<T>) -> Value {
    let (n, index) = match m.row_axis() {
        Axis::Points(r) => (r.dim(), json!(r.to_exps())),
        Axis::Range(len) => (0, json!((0..*len).collect::<Vec<_>>())),
    };
    let cols = match m.col_axis() {
        Axis::Points(c) if Some(c) == m.row_axis().points() => json!("index"),
        Axis::Points(c) => json!(c.to_exps()),
        Axis::Range(len) => json!(len),
    };
    let entries: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    json!({"n": n, "index": index, "cols": cols, "entries": entries})
}

/// CSV with a header row of column labels followed by one line per matrix row.
pub fn matrix_to_csv<T: Display>(m: &ExactMatrix<T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = (0..m.ncols()).map(|j| m.col_axis().label(j)).collect();
    w.write_record(&header).expect("in-memory write");
    for row in m.rows() {
        w.write_record(row.iter().map(ToString::to_string)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Right-aligned columns, one line per row.
pub fn matrix_to_text<T: Display>(m: &ExactMatrix<T>) -> String {
    let cells: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let widths: Vec<usize> = (0..m.ncols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SeriesCoeff {
    exp: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesFile {
    n: usize,
    cap: u32,
    coeffs: Vec<SeriesCoeff>,
}

/// Series JSON: `{"n", "cap", "coeffs": [{"exp", "num", "den"}, …]}`.
pub fn series_to_json(s: &TruncatedSeries) -> Value {
    let coeffs = s
        .terms()
        .map(|(k, c)| SeriesCoeff {
            exp: k.exps().to_vec(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect();
    serde_json::to_value(SeriesFile {
        n: s.nvars(),
        cap: s.cap(),
        coeffs,
    })
    .expect("plain data")
}

pub fn parse_series_json(text: &str) -> Result<TruncatedSeries> {
    let f: SeriesFile = serde_json::from_str(text).map_err(json_error)?;
    let big = |s: &str| -> Result<BigInt> {
        s.parse()
            .map_err(|_| Error::Syntax { pos: 0, msg: format!("invalid integer '{s}'") })
    };
    let mut terms = Vec::new();
    for c in f.coeffs {
        let den = big(&c.den)?;
        if den == BigInt::from(0) {
            return Err(Error::Syntax { pos: 0, msg: "zero denominator".into() });
        }
        let k = to_indices(f.n, vec![c.exp])?.pop().expect("one index");
        terms.push((k, BigRational::new(big(&c.num)?, den)));
    }
    TruncatedSeries::from_terms(f.n, f.cap, terms)
}
