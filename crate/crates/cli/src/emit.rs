//! Canonical JSON values and atomic artifact writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{Number, Value};
use svlab_core::polyalg::{fmt_rational, GaussScalar, MultiPoly, UniPoly};

/// C-style `%.17g`.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A float as a JSON number with 17 significant digits, or a string for
/// non-finite values.
pub fn float(x: f64) -> Value {
    let text = g17(x);
    if x.is_finite() {
        Value::Number(text.parse::<Number>().expect("g17 output is a JSON number"))
    } else {
        Value::String(text)
    }
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float).collect())
}

pub fn exact(r: &BigRational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn exacts(rs: &[BigRational]) -> Value {
    Value::Array(rs.iter().map(exact).collect())
}

pub fn scalar(s: &GaussScalar) -> Value {
    Value::String(s.to_string())
}

pub fn uni(p: &UniPoly) -> Value {
    Value::String(p.to_text())
}

pub fn multi(p: &MultiPoly) -> Value {
    Value::String(p.to_text())
}

pub fn complex(c: Complex64) -> Value {
    Value::Array(vec![float(c.re), float(c.im)])
}

/// Writes `bytes` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> std::io::Result<PathBuf> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| e.error)?;
    Ok(target)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s.into_bytes()
}

/// An RFC 4180 table with a header row.
#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}
