//! JSON run configuration: parsing and validation.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use svlab_core::nevan::{RationalCurve, DEFAULT_TOL};
use svlab_core::nochka::DEFAULT_SEED;
use svlab_core::polyalg::{parse_poly, parse_unipoly, MultiPoly, UniPoly};
use svlab_core::variety::{HypersurfaceFamily, VarietyModel};

pub const DEFAULT_HILBERT_MAX_DEGREE: u32 = 6;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariety {
    #[serde(default)]
    generators: Vec<String>,
    k: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypersurface {
    poly: String,
    degree: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurves {
    f: Option<Vec<String>>,
    g: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    r_min: f64,
    r_max: f64,
    points: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    quadrature: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCaps {
    degree_cap: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJensen {
    numerator: String,
    denominator: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    description: Option<String>,
    ambient_n: usize,
    #[serde(default)]
    variety: RawVariety,
    #[serde(default)]
    hypersurfaces: Vec<RawHypersurface>,
    n_subgeneral: Option<usize>,
    #[serde(default)]
    curves: RawCurves,
    r_grid: Option<RawGrid>,
    #[serde(default)]
    tolerances: RawTolerances,
    seed: Option<u64>,
    #[serde(default)]
    caps: RawCaps,
    hilbert_max_degree: Option<u32>,
    jensen: Option<RawJensen>,
    samples: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    strict: bool,
}

/// One problem found in a configuration, located by its field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// A validated configuration.
#[derive(Debug)]
pub struct Config {
    pub description: Option<String>,
    pub variety: VarietyModel,
    pub family: Option<HypersurfaceFamily>,
    pub f: Option<RationalCurve>,
    pub g: Option<RationalCurve>,
    pub r_grid: Option<Vec<f64>>,
    pub quadrature_tol: f64,
    pub seed: u64,
    pub degree_cap: Option<u32>,
    pub hilbert_max_degree: u32,
    pub jensen: Option<(UniPoly, UniPoly)>,
    pub samples: Option<Vec<Vec<Complex64>>>,
    pub strict: bool,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Invalid(Vec<Diagnostic>),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => f.write_str(m),
            LoadError::Invalid(ds) => {
                let parts: Vec<String> = ds.iter().map(Diagnostic::to_string).collect();
                f.write_str(&parts.join("; "))
            }
        }
    }
}

/// `points` radii from `r_min` to `r_max`, evenly spaced in `log r`.
pub fn geometric_grid(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![r_min];
    }
    let ratio = (r_max / r_min).ln();
    (0..points)
        .map(|i| {
            if i + 1 == points {
                r_max
            } else {
                r_min * (ratio * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn parse_curve(
    field: &str,
    comps: &[String],
    n: usize,
    diags: &mut Vec<Diagnostic>,
) -> Option<RationalCurve> {
    if comps.len() != n + 1 {
        diags.push(Diagnostic::new(
            field,
            format!("expected {} components, got {}", n + 1, comps.len()),
        ));
        return None;
    }
    let mut parsed = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        match parse_unipoly(c) {
            Ok(p) => parsed.push(p),
            Err(e) => diags.push(Diagnostic::new(format!("{field}[{i}]"), e.to_string())),
        }
    }
    if parsed.len() != comps.len() {
        return None;
    }
    match RationalCurve::reduce_representation(parsed) {
        Ok(c) => Some(c),
        Err(e) => {
            diags.push(Diagnostic::new(field, e.to_string()));
            None
        }
    }
}

fn positive(field: &str, x: f64, diags: &mut Vec<Diagnostic>) {
    if !(x > 0.0 && x.is_finite()) {
        diags.push(Diagnostic::new(field, "must be a positive finite number"));
    }
}

fn build(raw: RawConfig, diags: &mut Vec<Diagnostic>) -> Option<Config> {
    let n = raw.ambient_n;
    if n == 0 {
        diags.push(Diagnostic::new("ambient_n", "must be at least 1"));
        return None;
    }
    let n_vars = n + 1;

    let mut gens = Vec::new();
    for (i, g) in raw.variety.generators.iter().enumerate() {
        match parse_poly(g, n_vars) {
            Ok(p) => gens.push(p),
            Err(e) => diags.push(Diagnostic::new(format!("variety.generators[{i}]"), e.to_string())),
        }
    }
    let k = match raw.variety.k {
        Some(k) => Some(k),
        None if raw.variety.generators.is_empty() => Some(n),
        None => {
            diags.push(Diagnostic::new("variety.k", "is required when generators are given"));
            None
        }
    };
    let variety = match k {
        Some(k) if gens.len() == raw.variety.generators.len() => match VarietyModel::new(n, k, gens) {
            Ok(v) => Some(v),
            Err(e) => {
                diags.push(Diagnostic::new("variety", e.to_string()));
                None
            }
        },
        _ => None,
    };

    let mut members: Vec<MultiPoly> = Vec::new();
    for (i, h) in raw.hypersurfaces.iter().enumerate() {
        let field = format!("hypersurfaces[{i}]");
        match parse_poly(&h.poly, n_vars) {
            Ok(p) => {
                match p.homogeneous_degree().filter(|&d| d > 0) {
                    None => diags.push(Diagnostic::new(
                        format!("{field}.poly"),
                        "must be a nonconstant homogeneous form",
                    )),
                    Some(d) => {
                        if let Some(declared) = h.degree.filter(|&dd| dd != d) {
                            diags.push(Diagnostic::new(
                                format!("{field}.degree"),
                                format!("declared {declared} but the form has degree {d}"),
                            ));
                        }
                    }
                }
                members.push(p);
            }
            Err(e) => diags.push(Diagnostic::new(format!("{field}.poly"), e.to_string())),
        }
    }
    let family = if raw.hypersurfaces.is_empty() {
        if raw.n_subgeneral.is_some() {
            diags.push(Diagnostic::new("n_subgeneral", "given without hypersurfaces"));
        }
        None
    } else {
        match raw.n_subgeneral {
            None => {
                diags.push(Diagnostic::new("n_subgeneral", "is required when hypersurfaces are given"));
                None
            }
            Some(nn) => {
                if let Some(k) = k {
                    if nn < k {
                        diags.push(Diagnostic::new("n_subgeneral", format!("must be at least k = {k}")));
                    }
                }
                if raw.hypersurfaces.len() < nn + 1 {
                    diags.push(Diagnostic::new(
                        "hypersurfaces",
                        format!("need at least N + 1 = {} members", nn + 1),
                    ));
                }
                if members.len() == raw.hypersurfaces.len() {
                    HypersurfaceFamily::new(members, nn)
                        .map_err(|e| diags.push(Diagnostic::new("hypersurfaces", e.to_string())))
                        .ok()
                } else {
                    None
                }
            }
        }
    };

    let f = raw.curves.f.as_ref().and_then(|c| parse_curve("curves.f", c, n, diags));
    let g = raw.curves.g.as_ref().and_then(|c| parse_curve("curves.g", c, n, diags));

    let r_grid = raw.r_grid.as_ref().map(|grid| {
        if !(grid.r_min > 1.0) {
            diags.push(Diagnostic::new("r_grid.r_min", "r_min must exceed 1"));
        }
        if !(grid.r_max >= grid.r_min) || !grid.r_max.is_finite() {
            diags.push(Diagnostic::new("r_grid.r_max", "r_max must be finite and at least r_min"));
        }
        if grid.points < 2 {
            diags.push(Diagnostic::new("r_grid.points", "need at least 2 points"));
        }
        geometric_grid(grid.r_min, grid.r_max, grid.points)
    });

    let quadrature_tol = raw.tolerances.quadrature.unwrap_or(DEFAULT_TOL);
    positive("tolerances.quadrature", quadrature_tol, diags);

    let jensen = raw.jensen.as_ref().and_then(|j| {
        let num = parse_unipoly(&j.numerator)
            .map_err(|e| diags.push(Diagnostic::new("jensen.numerator", e.to_string())))
            .ok();
        let den = parse_unipoly(&j.denominator)
            .map_err(|e| diags.push(Diagnostic::new("jensen.denominator", e.to_string())))
            .ok();
        match (num, den) {
            (Some(_), Some(d)) if d.is_zero() => {
                diags.push(Diagnostic::new("jensen.denominator", "must be nonzero"));
                None
            }
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    });

    let samples = raw.samples.as_ref().map(|ss| {
        ss.iter()
            .enumerate()
            .map(|(i, s)| {
                if s.len() != n_vars {
                    diags.push(Diagnostic::new(
                        format!("samples[{i}]"),
                        format!("expected {n_vars} coordinates, got {}", s.len()),
                    ));
                }
                s.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
            })
            .collect()
    });

    if raw.caps.degree_cap == Some(0) {
        diags.push(Diagnostic::new("caps.degree_cap", "must be positive"));
    }

    Some(Config {
        description: raw.description,
        variety: variety?,
        family,
        f,
        g,
        r_grid,
        quadrature_tol,
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        degree_cap: raw.caps.degree_cap,
        hilbert_max_degree: raw.hilbert_max_degree.unwrap_or(DEFAULT_HILBERT_MAX_DEGREE),
        jensen,
        samples,
        strict: raw.strict,
    })
}

/// Parses and checks `text`, returning every problem found.
pub fn parse_config(text: &str) -> Result<Config, Vec<Diagnostic>> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        let offset = byte_offset(text, e.line(), e.column());
        let message = e.to_string();
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        vec![Diagnostic::new("config", format!("{message} at byte {offset}"))]
    })?;
    let mut diags = Vec::new();
    let config = build(raw, &mut diags);
    match config {
        Some(c) if diags.is_empty() => Ok(c),
        _ => {
            if diags.is_empty() {
                diags.push(Diagnostic::new("config", "invalid configuration"));
            }
            Err(diags)
        }
    }
}

pub fn load(path: &Path) -> Result<Config, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(LoadError::Invalid)
}

/// All diagnostics for the file at `path`; empty when it is valid.
pub fn validate(path: &Path) -> Vec<Diagnostic> {
    match load(path) {
        Ok(_) => Vec::new(),
        Err(LoadError::Io(m)) => vec![Diagnostic::new("config", m)],
        Err(LoadError::Invalid(ds)) => ds,
    }
}
