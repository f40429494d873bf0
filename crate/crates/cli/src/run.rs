//! Command dispatch: configuration in, report values and tables out.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use svlab_core::nevan::jensen_residual;
use svlab_core::nochka::{generalized_weights_in_position, GeneralizedWeights, WeightCertificate};
use svlab_core::polyalg::fmt_rational;
use svlab_core::variety::{check_subgeneral, Emptiness, PositionReport, PositionVerdict};
use svlab_core::verify::{
    estimate_alpha_beta, growth_ratio, inequality_52_check, smt_verify, uniqueness_check, ExactComparison,
    SharedZeroReport, Side, SmtOptions, SmtReport, UniquenessReport, VerifyError,
};

use crate::config::{load, Config, LoadError};
use crate::emit::{complex, exact, exacts, float, floats, g17, json_bytes, multi, scalar, uni, write_atomic, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Position,
    Weights,
    Smt,
    Unique,
    Jensen,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Hilbert,
        Command::Position,
        Command::Weights,
        Command::Smt,
        Command::Unique,
        Command::Jensen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Position => "position",
            Command::Weights => "weights",
            Command::Smt => "smt",
            Command::Unique => "unique",
            Command::Jensen => "jensen",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Command-line settings that take precedence over the configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub deep: bool,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Io(String),
    Config(String),
    Precondition(String),
    Lemma(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) | Failure::Config(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Lemma(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Io(_) => "io",
            Failure::Config(_) => "config",
            Failure::Precondition(_) => "precondition",
            Failure::Lemma(_) => "lemma-violation",
        }
    }

    fn reason(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Config(m) | Failure::Precondition(m) | Failure::Lemma(m) => m,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.reason().replace('\n', " "))
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::LemmaViolation(m) => Failure::Lemma(m),
            VerifyError::Precondition(m) => Failure::Precondition(m),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

/// Everything a command produces before it touches the filesystem.
#[derive(Clone, Debug)]
pub struct Artifacts {
    pub report: Value,
    pub tables: Vec<Table>,
    /// Places where a valid input contradicts a theorem or lemma.
    pub defects: Vec<String>,
}

#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    /// Single-line reason for a nonzero exit.
    pub reason: Option<String>,
    pub files: Vec<PathBuf>,
}

fn require<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T, Failure> {
    x.as_ref().ok_or_else(|| Failure::Config(format!("this command needs {what} in the config")))
}

fn subset_text(s: &[usize]) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn bool_text(b: bool) -> String {
    b.to_string()
}

fn base_report(cmd: Command, cfg: &Config) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(cmd.name()));
    m.insert("description".into(), json!(cfg.description));
    m.insert(
        "variety".into(),
        json!({
            "ambient_n": cfg.variety.n(),
            "k": cfg.variety.k(),
            "generators": cfg.variety.generators().iter().map(multi).collect::<Vec<_>>(),
        }),
    );
    if let Some(fam) = &cfg.family {
        m.insert(
            "family".into(),
            json!({
                "n_subgeneral": fam.n_subgeneral(),
                "members": fam.members().iter().map(|h| json!({"poly": multi(&h.poly), "degree": h.degree})).collect::<Vec<_>>(),
                "common_degree": fam.common_degree(),
            }),
        );
    }
    m
}

/// Runs `cmd` on a validated configuration without writing anything.
pub fn execute(cmd: Command, cfg: &Config, ov: &Overrides) -> Result<Artifacts, Failure> {
    let seed = ov.seed.unwrap_or(cfg.seed);
    let tol = ov.tol.unwrap_or(cfg.quadrature_tol);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Config("--tol must be a positive finite number".into()));
    }
    let mut report = base_report(cmd, cfg);
    let mut tables = Vec::new();
    let mut defects = Vec::new();
    match cmd {
        Command::Hilbert => {
            let mut t = Table::new("hilbert.csv", &["degree", "hilbert"]);
            let rows: Vec<Value> = (0..=cfg.hilbert_max_degree)
                .map(|d| {
                    let h = cfg.variety.hilbert_function(d);
                    t.push(vec![d.to_string(), h.to_string()]);
                    json!({"degree": d, "value": h})
                })
                .collect();
            report.insert("hilbert".into(), Value::Array(rows));
            report.insert("dimension_warning".into(), json!(cfg.variety.dimension_warning()));
            tables.push(t);
        }
        Command::Position => {
            let fam = require(&cfg.family, "hypersurfaces")?;
            fam.check_on(&cfg.variety).map_err(|e| Failure::Precondition(e.to_string()))?;
            let pos = check_subgeneral(&cfg.variety, fam, cfg.degree_cap)
                .map_err(|e| Failure::Precondition(e.to_string()))?;
            tables.push(position_table(&pos));
            report.insert("position".into(), position_json(&pos));
        }
        Command::Weights => {
            let fam = require(&cfg.family, "hypersurfaces")?;
            fam.check_on(&cfg.variety).map_err(|e| Failure::Precondition(e.to_string()))?;
            let pos = check_subgeneral(&cfg.variety, fam, cfg.degree_cap)
                .map_err(|e| Failure::Precondition(e.to_string()))?;
            match &pos.verdict {
                PositionVerdict::InPosition => {}
                PositionVerdict::NotInPosition { violating } => {
                    return Err(Failure::Precondition(format!(
                        "family is not in {}-subgeneral position: subset {violating:?} meets V",
                        fam.n_subgeneral()
                    )))
                }
                PositionVerdict::Inconclusive { subset } => {
                    return Err(Failure::Precondition(format!(
                        "position check inconclusive for subset {subset:?}"
                    )))
                }
            }
            let w = generalized_weights_in_position(&cfg.variety, fam, seed).map_err(VerifyError::from)?;
            if !w.certificate.all_hold() {
                defects.push("weight certificate has failing checks".into());
            }
            if !w.witness.verified() {
                defects.push("witness subspace does not preserve ranks".into());
            }
            tables.extend(weights_tables(&w.certificate));
            report.insert("seed".into(), json!(seed));
            report.insert("weights".into(), weights_json(&w));
        }
        Command::Smt => {
            let fam = require(&cfg.family, "hypersurfaces")?;
            let f = require(&cfg.f, "curves.f")?;
            let grid = require(&cfg.r_grid, "r_grid")?;
            let opts = SmtOptions {
                deep: ov.deep,
                tol,
                seed,
                degree_cap: cfg.degree_cap,
            };
            let rep = smt_verify(&cfg.variety, fam, f, grid, &opts)?;
            defects.extend(rep.defects());
            tables.extend(smt_tables(&rep));
            report.insert("seed".into(), json!(seed));
            report.insert("tol".into(), float(tol));
            report.insert("deep".into(), json!(ov.deep));
            for (k, v) in smt_json(&rep) {
                report.insert(k, v);
            }
            if let Some(samples) = &cfg.samples {
                let est = match estimate_alpha_beta(&cfg.variety, &fam.normalized(), samples) {
                    Ok(e) => json!({
                        "label": "ESTIMATE",
                        "alpha_hat": float(e.alpha_hat),
                        "beta_hat": float(e.beta_hat),
                        "samples": e.samples,
                    }),
                    Err(e) => json!({"label": "ESTIMATE", "error": e.to_string()}),
                };
                report.insert("alpha_beta".into(), est);
            }
        }
        Command::Unique => {
            let fam = require(&cfg.family, "hypersurfaces")?;
            let f = require(&cfg.f, "curves.f")?;
            let g = require(&cfg.g, "curves.g")?;
            let rep = uniqueness_check(&cfg.variety, fam, f, g, cfg.strict, cfg.degree_cap)?;
            if !rep.consistent {
                defects.push("all hypotheses hold above the threshold but f != g".into());
            }
            tables.extend(uniqueness_tables(&rep));
            report.insert("uniqueness".into(), uniqueness_json(&rep));
            let growth = growth_ratio(f, g)?;
            report.insert(
                "growth".into(),
                json!({"slope_f": growth.slope_f, "slope_g": growth.slope_g, "ratio": exact(&growth.ratio)}),
            );
            if rep.hypothesis_i && rep.hypothesis_ii && !rep.equal {
                let empty = Vec::new();
                let grid = cfg.r_grid.as_ref().unwrap_or(&empty);
                let sz = inequality_52_check(f, g, fam, grid, tol)?;
                if !sz.shared.holds() {
                    defects.push(format!("shared-zero slope margin {}", fmt_rational(&sz.shared.margin)));
                }
                if !sz.jensen.holds() {
                    defects.push(format!("minor degree exceeds deg f + deg g by {}", fmt_rational(&-sz.jensen.margin.clone())));
                }
                tables.push(shared_zero_table(&sz));
                report.insert("shared_zero".into(), shared_zero_json(&sz));
            }
            report.insert("tol".into(), float(tol));
        }
        Command::Jensen => {
            let (num, den) = require(&cfg.jensen, "jensen")?;
            let grid = require(&cfg.r_grid, "r_grid")?;
            let res = jensen_residual(num, den, grid, tol).map_err(|e| Failure::Precondition(e.to_string()))?;
            let mut t = Table::new("jensen.csv", &["r", "residual"]);
            for (r, x) in grid.iter().zip(&res) {
                t.push(vec![g17(*r), g17(*x)]);
            }
            let lo = res.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = res.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            report.insert(
                "jensen".into(),
                json!({
                    "numerator": uni(num),
                    "denominator": uni(den),
                    "radii": floats(grid),
                    "residuals": floats(&res),
                    "spread": float(hi - lo),
                }),
            );
            report.insert("tol".into(), float(tol));
            tables.push(t);
        }
    }
    report.insert("defects".into(), json!(defects));
    Ok(Artifacts {
        report: Value::Object(report),
        tables,
        defects,
    })
}

/// Writes `report.json` and every table into `out`, creating it if needed.
pub fn write_artifacts(out: &Path, a: &Artifacts) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out)?;
    let mut files = vec![write_atomic(out, "report.json", &json_bytes(&a.report))?];
    for t in &a.tables {
        files.push(write_atomic(out, &t.name, &t.to_bytes())?);
    }
    Ok(files)
}

/// Loads the configuration, runs the command and writes its artifacts.
pub fn run(cmd: Command, config_path: &Path, out: &Path, ov: &Overrides) -> Outcome {
    let fail = |f: Failure| Outcome {
        exit_code: f.exit_code(),
        reason: Some(f.to_string()),
        files: Vec::new(),
    };
    let cfg = match load(config_path) {
        Ok(c) => c,
        Err(LoadError::Io(m)) => return fail(Failure::Io(m)),
        Err(e @ LoadError::Invalid(_)) => return fail(Failure::Config(e.to_string())),
    };
    let artifacts = match execute(cmd, &cfg, ov) {
        Ok(a) => a,
        Err(f) => return fail(f),
    };
    let files = match write_artifacts(out, &artifacts) {
        Ok(f) => f,
        Err(e) => return fail(Failure::Io(format!("{}: {e}", out.display()))),
    };
    if artifacts.defects.is_empty() {
        Outcome {
            exit_code: 0,
            reason: None,
            files,
        }
    } else {
        Outcome {
            exit_code: 3,
            reason: Some(Failure::Lemma(artifacts.defects.join("; ")).to_string()),
            files,
        }
    }
}

fn emptiness_parts(e: &Emptiness) -> (&'static str, u32) {
    match e {
        Emptiness::Empty { degree } => ("empty", *degree),
        Emptiness::NonEmpty { from_degree, .. } => ("nonempty", *from_degree),
        Emptiness::Inconclusive { cap } => ("inconclusive", *cap),
    }
}

fn position_table(p: &PositionReport) -> Table {
    let mut t = Table::new("position.csv", &["subset", "verdict", "witness_degree"]);
    for row in &p.rows {
        let (verdict, degree) = emptiness_parts(&row.emptiness);
        t.push(vec![subset_text(&row.subset), verdict.into(), degree.to_string()]);
    }
    t
}

fn position_json(p: &PositionReport) -> Value {
    serde_json::to_value(p).expect("position reports serialize")
}

fn certificate_json(c: &WeightCertificate) -> Value {
    json!({
        "q": c.q,
        "n_subgeneral": c.n_subgeneral,
        "k": c.k,
        "omega": exacts(&c.omega),
        "omega_tilde": exact(&c.omega_tilde),
        "pinned": c.pinned,
        "epsilon": exact(&c.epsilon),
        "all_hold": c.all_hold(),
        "transcript": c.transcript.iter().map(|ch| json!({
            "name": ch.name,
            "lhs": exact(&ch.lhs),
            "relation": ch.relation.to_string(),
            "rhs": exact(&ch.rhs),
            "holds": ch.holds,
        })).collect::<Vec<_>>(),
    })
}

fn weights_json(w: &GeneralizedWeights) -> Value {
    json!({
        "certificate": certificate_json(&w.certificate),
        "degree": w.degree,
        "hilbert": w.hilbert,
        "classes": w.classes.iter().map(|c| c.iter().map(scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "witness": {
            "ambient_dim": w.witness.ambient_dim,
            "dim": w.witness.dim,
            "basis": w.witness.basis.iter().map(|b| b.iter().map(scalar).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "seed": w.witness.seed,
            "attempts": w.witness.attempts,
            "verified": w.witness.verified(),
            "rank_checks": w.witness.verification.iter().map(|c| json!({
                "subset": c.subset, "original": c.original, "restricted": c.restricted,
            })).collect::<Vec<_>>(),
        },
    })
}

fn weights_tables(c: &WeightCertificate) -> Vec<Table> {
    let mut w = Table::new("weights.csv", &["index", "omega"]);
    for (i, o) in c.omega.iter().enumerate() {
        w.push(vec![i.to_string(), fmt_rational(o)]);
    }
    let mut t = Table::new("transcript.csv", &["name", "lhs", "relation", "rhs", "holds"]);
    for ch in &c.transcript {
        t.push(vec![
            ch.name.clone(),
            fmt_rational(&ch.lhs),
            ch.relation.to_string(),
            fmt_rational(&ch.rhs),
            bool_text(ch.holds),
        ]);
    }
    vec![w, t]
}

fn comparison_json(c: &ExactComparison) -> Value {
    json!({"lhs": exact(&c.lhs), "rhs": exact(&c.rhs), "margin": exact(&c.margin), "holds": c.holds()})
}

fn smt_json(rep: &SmtReport) -> Map<String, Value> {
    let s = &rep.setup;
    let mut m = Map::new();
    m.insert(
        "setup".into(),
        json!({
            "q": s.q,
            "n_subgeneral": s.n_subgeneral,
            "k": s.k,
            "degree": s.degree,
            "member_degrees": s.member_degrees,
            "hilbert": s.hilbert,
            "curve_degree": s.curve_degree,
            "position": position_json(&s.position),
            "nondegeneracy": {"rank": s.nondegeneracy.rank, "hilbert": s.nondegeneracy.hilbert},
        }),
    );
    let sl = &rep.slope;
    m.insert(
        "slope_ledger".into(),
        json!({
            "coefficient": exact(&sl.coefficient),
            "lhs": exact(&sl.lhs),
            "rhs": exact(&sl.rhs),
            "margin": exact(&sl.margin),
            "rhs_normalized": exact(&sl.rhs_normalized),
            "terms": sl.terms.iter().map(|t| json!({
                "index": t.index,
                "degree": t.degree,
                "zeros": t.zeros,
                "truncated_zeros": t.truncated_zeros,
                "contribution": exact(&t.contribution),
                "first_main_holds": t.first_main_holds,
            })).collect::<Vec<_>>(),
        }),
    );
    let nl = &rep.numeric;
    m.insert(
        "numeric_ledger".into(),
        json!({
            "truncation": nl.truncation,
            "r": nl.rows.iter().map(|r| float(r.r)).collect::<Vec<_>>(),
            "characteristic": nl.rows.iter().map(|r| float(r.characteristic)).collect::<Vec<_>>(),
            "counting": nl.rows.iter().map(|r| floats(&r.counting)).collect::<Vec<_>>(),
            "lhs": nl.rows.iter().map(|r| float(r.lhs)).collect::<Vec<_>>(),
            "rhs": nl.rows.iter().map(|r| float(r.rhs)).collect::<Vec<_>>(),
            "margin": nl.rows.iter().map(|r| float(r.margin)).collect::<Vec<_>>(),
            "excluded_radii": floats(&nl.excluded_radii),
        }),
    );
    if let Some(d) = &rep.deep {
        m.insert(
            "deep".into(),
            json!({
                "weights": weights_json(&d.weights),
                "completion": {
                    "polys": d.completion.polys.iter().map(multi).collect::<Vec<_>>(),
                    "target_rank": d.completion.target_rank,
                    "seed": d.completion.seed,
                    "attempts": d.completion.attempts,
                    "verification": d.completion.verification.iter().map(|(s, r)| json!({"subset": s, "rank": r})).collect::<Vec<_>>(),
                },
                "wronskian": uni(&d.wronskian),
                "proportionality": d.proportionality.iter().map(|p| json!({
                    "subset": p.subset,
                    "constant": p.constant.as_ref().map(scalar),
                })).collect::<Vec<_>>(),
                "weighted_inequality": comparison_json(&d.weighted),
                "claim_slope": comparison_json(&d.claim_slope),
                "claim_rows": d.claim_rows.iter().map(|r| json!({
                    "factor": uni(&r.factor),
                    "locations": r.locations.iter().map(|c| complex(*c)).collect::<Vec<_>>(),
                    "multiplicities": r.multiplicities,
                    "wronskian_multiplicity": r.wronskian_multiplicity,
                    "excess": exact(&r.excess),
                    "vanishing": r.vanishing,
                    "holds": r.holds,
                    "within_subgeneral": r.within_subgeneral,
                    "status": if r.violated() { "VIOLATED" } else { "ok" },
                })).collect::<Vec<_>>(),
            }),
        );
    }
    m
}

fn smt_tables(rep: &SmtReport) -> Vec<Table> {
    let mut out = Vec::new();
    let mut slope = Table::new(
        "slope.csv",
        &["index", "degree", "zeros", "truncated_zeros", "contribution", "first_main_holds"],
    );
    for t in &rep.slope.terms {
        slope.push(vec![
            t.index.to_string(),
            t.degree.to_string(),
            t.zeros.to_string(),
            t.truncated_zeros.to_string(),
            fmt_rational(&t.contribution),
            bool_text(t.first_main_holds),
        ]);
    }
    out.push(slope);
    let q = rep.setup.q;
    let mut header = vec!["r".to_string(), "characteristic".into()];
    header.extend((0..q).map(|i| format!("counting_{i}")));
    header.extend(["lhs".into(), "rhs".into(), "margin".into()]);
    let mut numeric = Table {
        name: "numeric.csv".into(),
        header,
        rows: Vec::new(),
    };
    for r in &rep.numeric.rows {
        let mut row = vec![g17(r.r), g17(r.characteristic)];
        row.extend(r.counting.iter().map(|c| g17(*c)));
        row.extend([g17(r.lhs), g17(r.rhs), g17(r.margin)]);
        numeric.push(row);
    }
    out.push(numeric);
    if let Some(d) = &rep.deep {
        let mut claim = Table::new(
            "claim.csv",
            &["factor", "multiplicities", "wronskian_multiplicity", "excess", "vanishing", "status"],
        );
        for r in &d.claim_rows {
            claim.push(vec![
                r.factor.to_text(),
                subset_text(&r.multiplicities),
                r.wronskian_multiplicity.to_string(),
                fmt_rational(&r.excess),
                r.vanishing.to_string(),
                if r.violated() { "VIOLATED" } else { "ok" }.into(),
            ]);
        }
        out.push(claim);
    }
    out
}

fn side_text(s: Side) -> &'static str {
    match s {
        Side::F => "f",
        Side::G => "g",
    }
}

fn uniqueness_json(rep: &UniquenessReport) -> Value {
    json!({
        "q": rep.q,
        "n_subgeneral": rep.n_subgeneral,
        "k": rep.k,
        "degree": rep.degree,
        "hilbert": rep.hilbert,
        "hypothesis_i": rep.hypothesis_i,
        "hypothesis_ii": rep.hypothesis_ii,
        "threshold": exact(&rep.threshold),
        "threshold_holds": rep.threshold_holds,
        "equal": rep.equal,
        "consistent": rep.consistent,
        "pairs": rep.pairs.iter().map(|p| json!({
            "side": side_text(p.side),
            "i": p.i,
            "j": p.j,
            "common_factor": p.common_factor.as_ref().map(uni),
        })).collect::<Vec<_>>(),
        "agreement": rep.agreement.iter().map(|a| json!({
            "side": side_text(a.side),
            "index": a.index,
            "zero_set": uni(&a.zero_set),
            "offending": a.offending.as_ref().map(uni),
        })).collect::<Vec<_>>(),
    })
}

fn uniqueness_tables(rep: &UniquenessReport) -> Vec<Table> {
    let mut pairs = Table::new("pairs.csv", &["side", "i", "j", "common_factor"]);
    for p in &rep.pairs {
        pairs.push(vec![
            side_text(p.side).into(),
            p.i.to_string(),
            p.j.to_string(),
            p.common_factor.as_ref().map(|c| c.to_text()).unwrap_or_default(),
        ]);
    }
    let mut agree = Table::new("agreement.csv", &["side", "index", "zero_set", "offending"]);
    for a in &rep.agreement {
        agree.push(vec![
            side_text(a.side).into(),
            a.index.to_string(),
            a.zero_set.to_text(),
            a.offending.as_ref().map(|c| c.to_text()).unwrap_or_default(),
        ]);
    }
    vec![pairs, agree]
}

fn shared_zero_json(sz: &SharedZeroReport) -> Value {
    json!({
        "minor_index": [sz.minor_index.0, sz.minor_index.1],
        "minor": uni(&sz.minor),
        "shared": comparison_json(&sz.shared),
        "jensen": comparison_json(&sz.jensen),
        "r": sz.rows.iter().map(|r| float(r.r)).collect::<Vec<_>>(),
        "margin_shared": sz.rows.iter().map(|r| float(r.margin_shared)).collect::<Vec<_>>(),
        "margin_jensen": sz.rows.iter().map(|r| float(r.margin_jensen)).collect::<Vec<_>>(),
        "excluded_radii": floats(&sz.excluded_radii),
    })
}

fn shared_zero_table(sz: &SharedZeroReport) -> Table {
    let mut t = Table::new(
        "shared_zero.csv",
        &["r", "counting_h", "counting_shared", "characteristic_f", "characteristic_g", "margin_shared", "margin_jensen"],
    );
    for r in &sz.rows {
        t.push(
            [r.r, r.counting_h, r.counting_shared, r.characteristic_f, r.characteristic_g, r.margin_shared, r.margin_jensen]
                .iter()
                .map(|x| g17(*x))
                .collect(),
        );
    }
    t
}
