//! Reports that evaluate the second main theorem and the uniqueness theorem
//! on concrete polynomial curves.
//!
//! For a polynomial curve every functional is `slope · log r + O(1)`, and the
//! `o(T_f(r))` error terms vanish at slope level. The slope ledgers are
//! therefore exact rational comparisons; the numeric ledgers report raw
//! margins at finite radii.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::nevan::{
    characteristic, counting_function, nondegenerate_over_id, wronskian, zero_divisor, Divisor, NevanError,
    Nondegeneracy, Norm, RationalCurve,
};
use crate::nochka::{
    basis_completion, generalized_weights_in_position, BasisCompletion, GeneralizedWeights, NochkaError,
};
use crate::polyalg::{complex_roots, coprime_basis, squarefree_decomp, GaussScalar, MultiPoly, UniPoly, ROOT_TOL};
use crate::variety::{check_subgeneral, HypersurfaceFamily, PositionReport, PositionVerdict, VarietyError, VarietyModel};

/// Radii closer than this to the modulus of a zero are left out of numeric ledgers.
pub const RADIUS_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error(transparent)]
    Nevan(#[from] NevanError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

impl From<NochkaError> for VerifyError {
    fn from(e: NochkaError) -> Self {
        match e {
            NochkaError::LemmaViolation(_) | NochkaError::RetryCap { .. } => VerifyError::LemmaViolation(e.to_string()),
            NochkaError::Variety(v) => VerifyError::Variety(v),
            other => VerifyError::Precondition(other.to_string()),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_u(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(2N − k + 1)·H / (k + 1)`.
pub fn defect_bound(n_subgeneral: usize, k: usize, hilbert: usize) -> BigRational {
    BigRational::new(
        BigInt::from((2 * n_subgeneral + 1 - k) * hilbert),
        BigInt::from(k + 1),
    )
}

/// `q − (2N − k + 1)·H / (k + 1)`, the coefficient of `T_f(r)`.
pub fn smt_coefficient(q: usize, n_subgeneral: usize, k: usize, hilbert: usize) -> BigRational {
    rat_u(q) - defect_bound(n_subgeneral, k, hilbert)
}

/// Number of zeros of `p` counted with multiplicity truncated at `trunc`.
pub fn truncated_zero_count(p: &UniPoly, trunc: usize) -> usize {
    if p.is_constant() {
        return 0;
    }
    squarefree_decomp(p)
        .expect("nonzero")
        .iter()
        .map(|(f, m)| f.degree().unwrap_or(0) * (*m).min(trunc))
        .sum()
}

fn check_arity(v: &VarietyModel, f: &RationalCurve, label: &str) -> Result<(), VerifyError> {
    if f.n() != v.n() {
        return Err(VerifyError::Precondition(format!(
            "curve {label} has {} components, the ambient space needs {}",
            f.n() + 1,
            v.n() + 1
        )));
    }
    Ok(())
}

fn require_in_variety(v: &VarietyModel, f: &RationalCurve, label: &str) -> Result<(), VerifyError> {
    for (i, g) in v.generators().iter().enumerate() {
        if !f.pullback(g)?.is_zero() {
            return Err(VerifyError::Precondition(format!(
                "curve {label} does not lie in V: generator {i} does not vanish on it"
            )));
        }
    }
    Ok(())
}

/// `Q_i(f)` for the original members, rejecting identically zero ones.
fn pullbacks(family: &HypersurfaceFamily, f: &RationalCurve, label: &str) -> Result<Vec<UniPoly>, VerifyError> {
    family
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let p = f.pullback(&m.poly)?;
            if p.is_zero() {
                Err(VerifyError::Precondition(format!("{label} lies in Q_{i}")))
            } else {
                Ok(p)
            }
        })
        .collect()
}

fn require_nondegenerate(
    f: &RationalCurve,
    v: &VarietyModel,
    d: u32,
    label: &str,
) -> Result<Nondegeneracy, VerifyError> {
    let nd = nondegenerate_over_id(f, v, d)?;
    if !nd.nondegenerate {
        let w = nd.witness.as_ref().map(MultiPoly::to_text).unwrap_or_default();
        return Err(VerifyError::Precondition(format!(
            "curve {label} is degenerate over I_{d}(V): witness {w}"
        )));
    }
    Ok(nd)
}

fn require_position(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    degree_cap: Option<u32>,
) -> Result<PositionReport, VerifyError> {
    family.check_on(v)?;
    let report = check_subgeneral(v, family, degree_cap)?;
    match &report.verdict {
        PositionVerdict::InPosition => Ok(report),
        PositionVerdict::NotInPosition { violating } => Err(VerifyError::Precondition(format!(
            "family is not in {}-subgeneral position: subset {violating:?} meets V",
            family.n_subgeneral()
        ))),
        PositionVerdict::Inconclusive { subset } => Err(VerifyError::Precondition(format!(
            "position check inconclusive for subset {subset:?}"
        ))),
    }
}

fn check_radii(r_grid: &[f64]) -> Result<Vec<f64>, VerifyError> {
    let mut grid = r_grid.to_vec();
    if let Some(r) = grid.iter().find(|r| !(**r > 1.0) || !r.is_finite()) {
        return Err(VerifyError::Precondition(format!("radius {r} must exceed 1")));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

fn near_support(divs: &[&Divisor], r: f64) -> bool {
    divs.iter().any(|d| d.distance_to_support(r) < RADIUS_EXCLUSION)
}

#[derive(Clone, Debug)]
pub struct SmtOptions {
    pub deep: bool,
    pub tol: f64,
    pub seed: u64,
    /// Degree cap for the position check; `None` uses the default.
    pub degree_cap: Option<u32>,
}

impl Default for SmtOptions {
    fn default() -> Self {
        SmtOptions {
            deep: false,
            tol: crate::nevan::DEFAULT_TOL,
            seed: crate::nochka::DEFAULT_SEED,
            degree_cap: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SmtSetup {
    pub q: usize,
    pub n_subgeneral: usize,
    pub k: usize,
    /// `d = lcm(d_i)`.
    pub degree: u32,
    pub member_degrees: Vec<u32>,
    pub hilbert: usize,
    pub curve_degree: usize,
    pub position: PositionReport,
    pub nondegeneracy: Nondegeneracy,
}

/// Contribution of one hypersurface to the slope ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeTerm {
    pub index: usize,
    pub degree: u32,
    /// Zeros of `Q_i(f)` with multiplicity.
    pub zeros: usize,
    /// Zeros with multiplicity truncated at `H_V(d) − 1`.
    pub truncated_zeros: usize,
    /// `truncated_zeros / d_i`.
    pub contribution: BigRational,
    /// First main theorem at slope level: `zeros ≤ d_i · deg f`.
    pub first_main_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeLedger {
    pub coefficient: BigRational,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub margin: BigRational,
    pub terms: Vec<SlopeTerm>,
    /// `Σ (1/d) · (truncated zeros of Q_i^{d/d_i}(f))`, which never exceeds `rhs`.
    pub rhs_normalized: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericRow {
    pub r: f64,
    pub characteristic: f64,
    /// `N^{[H_V(d)−1]}_{Q_i(f)}(r)` per member.
    pub counting: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericLedger {
    pub truncation: usize,
    pub rows: Vec<NumericRow>,
    pub excluded_radii: Vec<f64>,
}

/// Per-zero record of the Claim, grouped by an irreducible-over-Q(i)-free
/// coprime factor: all roots of `factor` share these multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimRow {
    pub factor: UniPoly,
    pub locations: Vec<Complex64>,
    /// `ν_{Q_i^{d/d_i}(f)}` at these zeros, per member.
    pub multiplicities: Vec<usize>,
    pub wronskian_multiplicity: usize,
    /// `Σ ω_i · max(ν_i − H_V(d) + 1, 0)`.
    pub excess: BigRational,
    pub vanishing: usize,
    pub holds: bool,
    pub within_subgeneral: bool,
}

impl ClaimRow {
    pub fn violated(&self) -> bool {
        !(self.holds && self.within_subgeneral)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactComparison {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub margin: BigRational,
}

impl ExactComparison {
    fn new(lhs: BigRational, rhs: BigRational) -> Self {
        let margin = &rhs - &lhs;
        ExactComparison { lhs, rhs, margin }
    }

    pub fn holds(&self) -> bool {
        !self.margin.is_negative()
    }
}

/// `W_{R°} = C · W` for a completed subset `R°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proportionality {
    pub subset: Vec<usize>,
    pub constant: Option<GaussScalar>,
}

#[derive(Clone, Debug)]
pub struct DeepLedger {
    pub weights: GeneralizedWeights,
    pub completion: BasisCompletion,
    pub wronskian: UniPoly,
    pub proportionality: Vec<Proportionality>,
    /// Slope form of the weighted inequality before truncation.
    pub weighted: ExactComparison,
    pub claim_rows: Vec<ClaimRow>,
    /// `Σ ω_i deg Q_i(f) − deg W ≤ Σ ω_i · (truncated zeros)`.
    pub claim_slope: ExactComparison,
}

#[derive(Clone, Debug)]
pub struct SmtReport {
    pub setup: SmtSetup,
    pub slope: SlopeLedger,
    pub numeric: NumericLedger,
    pub deep: Option<DeepLedger>,
}

impl SmtReport {
    /// Every place where the report contradicts the theorem or its proof.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.slope.margin.is_negative() {
            out.push(format!("negative slope margin {}", self.slope.margin));
        }
        for t in &self.slope.terms {
            if !t.first_main_holds {
                out.push(format!("Q_{} has more zeros than d_i * deg f", t.index));
            }
        }
        if let Some(deep) = &self.deep {
            if !deep.weighted.holds() {
                out.push(format!("weighted inequality margin {}", deep.weighted.margin));
            }
            if !deep.claim_slope.holds() {
                out.push(format!("claim slope margin {}", deep.claim_slope.margin));
            }
            for row in deep.claim_rows.iter().filter(|r| r.violated()) {
                out.push(format!("claim row VIOLATED at zeros of {}", row.factor.to_text()));
            }
            for p in deep.proportionality.iter().filter(|p| p.constant.is_none()) {
                out.push(format!("Wronskian of subset {:?} is not proportional to W", p.subset));
            }
        }
        out
    }
}

/// Second main theorem report for `f` against `family` on `V`.
pub fn smt_verify(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    f: &RationalCurve,
    r_grid: &[f64],
    opts: &SmtOptions,
) -> Result<SmtReport, VerifyError> {
    check_arity(v, f, "f")?;
    let grid = check_radii(r_grid)?;
    require_in_variety(v, f, "f")?;
    let pulled = pullbacks(family, f, "f")?;
    let d = family.common_degree();
    let nondegeneracy = require_nondegenerate(f, v, d, "f")?;
    let position = require_position(v, family, opts.degree_cap)?;
    let (q, n, k) = (family.q(), family.n_subgeneral(), v.k());
    let hilbert = v.hilbert_function(d);
    let coefficient = smt_coefficient(q, n, k, hilbert);
    if !coefficient.is_positive() {
        return Err(VerifyError::Precondition(format!(
            "q = {q} does not exceed (2N-k+1)H/(k+1) = {}",
            defect_bound(n, k, hilbert)
        )));
    }
    let deg_f = f.degree();
    let trunc = hilbert - 1;

    let terms: Vec<SlopeTerm> = pulled
        .iter()
        .zip(family.members())
        .enumerate()
        .map(|(index, (p, m))| {
            let zeros = p.degree().unwrap_or(0);
            let truncated_zeros = truncated_zero_count(p, trunc);
            SlopeTerm {
                index,
                degree: m.degree,
                zeros,
                truncated_zeros,
                contribution: BigRational::new(BigInt::from(truncated_zeros), BigInt::from(m.degree)),
                first_main_holds: zeros <= m.degree as usize * deg_f,
            }
        })
        .collect();
    let lhs = &coefficient * rat_u(deg_f);
    let rhs: BigRational = terms.iter().map(|t| t.contribution.clone()).sum();
    let normalized: Vec<UniPoly> = pulled
        .iter()
        .zip(family.members())
        .map(|(p, m)| p.pow(d / m.degree))
        .collect();
    let rhs_normalized: BigRational = normalized
        .iter()
        .map(|p| BigRational::new(BigInt::from(truncated_zero_count(p, trunc)), BigInt::from(d)))
        .sum();
    let slope = SlopeLedger {
        margin: &rhs - &lhs,
        coefficient: coefficient.clone(),
        lhs,
        rhs,
        terms,
        rhs_normalized,
    };

    let divisors: Vec<Divisor> = pulled.iter().map(zero_divisor).collect::<Result<_, _>>()?;
    let div_refs: Vec<&Divisor> = divisors.iter().collect();
    let coeff_f = crate::polyalg::rat_to_f64(&coefficient);
    let mut rows = Vec::new();
    let mut excluded_radii = Vec::new();
    for &r in &grid {
        if near_support(&div_refs, r) {
            excluded_radii.push(r);
            continue;
        }
        let t = characteristic(f, r, opts.tol, Norm::Euclidean)?;
        let counting: Vec<f64> = divisors
            .iter()
            .map(|dv| counting_function(dv, r, Some(trunc)))
            .collect::<Result<_, _>>()?;
        let lhs = coeff_f * t;
        let rhs: f64 = counting
            .iter()
            .zip(family.members())
            .map(|(c, m)| c / m.degree as f64)
            .sum();
        rows.push(NumericRow {
            r,
            characteristic: t,
            counting,
            lhs,
            rhs,
            margin: rhs - lhs,
        });
    }
    let numeric = NumericLedger {
        truncation: trunc,
        rows,
        excluded_radii,
    };

    let deep = if opts.deep {
        Some(deep_ledger(v, family, f, &normalized, hilbert, opts.seed)?)
    } else {
        None
    };

    Ok(SmtReport {
        setup: SmtSetup {
            q,
            n_subgeneral: n,
            k,
            degree: d,
            member_degrees: family.members().iter().map(|m| m.degree).collect(),
            hilbert,
            curve_degree: deg_f,
            position,
            nondegeneracy,
        },
        slope,
        numeric,
        deep,
    })
}

fn deep_ledger(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    f: &RationalCurve,
    normalized: &[UniPoly],
    hilbert: usize,
    seed: u64,
) -> Result<DeepLedger, VerifyError> {
    let d = family.common_degree();
    let (q, n, k) = (family.q(), family.n_subgeneral(), v.k());
    let weights = generalized_weights_in_position(v, family, seed)?;
    let completion = basis_completion(v, family, seed)?;
    let basis_pulled: Vec<UniPoly> = v
        .complement_basis(d)
        .iter()
        .map(|a| f.pullback(a))
        .collect::<Result<_, _>>()?;
    let w = wronskian(&basis_pulled);
    if w.is_zero() {
        return Err(VerifyError::LemmaViolation(
            "Wronskian of a basis vanishes for a nondegenerate curve".into(),
        ));
    }
    let t_pulled: Vec<UniPoly> = completion
        .polys
        .iter()
        .map(|t| f.pullback(t))
        .collect::<Result<_, _>>()?;
    let proportionality = completion
        .verification
        .iter()
        .map(|(subset, _)| {
            let mut fs: Vec<UniPoly> = subset.iter().map(|&i| normalized[i].clone()).collect();
            fs.extend(t_pulled.iter().cloned());
            let wr = wronskian(&fs);
            let constant = match (wr.leading(), w.leading()) {
                (Some(a), Some(b)) => {
                    let c = a / b;
                    (wr == w.scale(&c)).then_some(c)
                }
                _ => None,
            };
            Proportionality {
                subset: subset.clone(),
                constant,
            }
        })
        .collect();

    let omega = &weights.certificate.omega;
    let omega_tilde = &weights.certificate.omega_tilde;
    let deg_f = rat_u(f.degree());
    let deg_w = rat_u(w.degree().unwrap_or(0));
    let weighted_lhs = rat(d as i64)
        * (rat(q as i64 - 2 * n as i64 + k as i64 - 1) - rat_u(hilbert - k - 1) / omega_tilde)
        * &deg_f;
    let weighted_rhs: BigRational = omega
        .iter()
        .zip(normalized)
        .map(|(wi, p)| wi / omega_tilde * rat_u(p.degree().unwrap_or(0)))
        .sum::<BigRational>()
        - &deg_w / omega_tilde;
    let weighted = ExactComparison::new(weighted_lhs, weighted_rhs);

    let trunc = hilbert - 1;
    let mut all: Vec<UniPoly> = normalized.to_vec();
    all.push(w.clone());
    let mut claim_rows = Vec::new();
    for factor in coprime_basis(&all) {
        let multiplicities: Vec<usize> = normalized.iter().map(|p| p.multiplicity_of(&factor)).collect();
        let vanishing = multiplicities.iter().filter(|&&m| m > 0).count();
        if vanishing == 0 {
            continue;
        }
        let wronskian_multiplicity = w.multiplicity_of(&factor);
        let excess: BigRational = omega
            .iter()
            .zip(&multiplicities)
            .map(|(wi, &m)| wi * rat_u(m.saturating_sub(trunc)))
            .sum();
        let locations = complex_roots(&factor, ROOT_TOL)
            .map_err(NevanError::from)?
            .into_iter()
            .map(|r| r.value)
            .collect();
        claim_rows.push(ClaimRow {
            holds: excess <= rat_u(wronskian_multiplicity),
            within_subgeneral: vanishing <= n,
            factor,
            locations,
            multiplicities,
            wronskian_multiplicity,
            excess,
            vanishing,
        });
    }
    let claim_lhs: BigRational = omega
        .iter()
        .zip(normalized)
        .map(|(wi, p)| wi * rat_u(p.degree().unwrap_or(0)))
        .sum::<BigRational>()
        - &deg_w;
    let claim_rhs: BigRational = omega
        .iter()
        .zip(normalized)
        .map(|(wi, p)| wi * rat_u(truncated_zero_count(p, trunc)))
        .sum();
    Ok(DeepLedger {
        weights,
        completion,
        wronskian: w,
        proportionality,
        weighted,
        claim_rows,
        claim_slope: ExactComparison::new(claim_lhs, claim_rhs),
    })
}

/// Sampled estimates of the constants bounding `max_i |Q_i(x)| / ‖x‖^d`
/// on `V`. These are the sample minimum and maximum, not certified extrema.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaBetaEstimate {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub samples: usize,
}

pub const SAMPLE_TOL: f64 = 1e-9;

pub fn estimate_alpha_beta(
    v: &VarietyModel,
    qs: &[MultiPoly],
    samples: &[Vec<Complex64>],
) -> Result<AlphaBetaEstimate, VerifyError> {
    if samples.is_empty() {
        return Err(VerifyError::Precondition("no samples".into()));
    }
    let family = HypersurfaceFamily::new(qs.to_vec(), qs.len().saturating_sub(1))?;
    let d = family.common_degree();
    if family.members().iter().any(|m| m.degree != d) {
        return Err(VerifyError::Precondition("hypersurfaces must share one degree".into()));
    }
    match v.is_empty_on_variety(qs, None)? {
        crate::variety::Emptiness::Empty { .. } => {}
        other => {
            return Err(VerifyError::Precondition(format!(
                "common zero set on V is not shown empty: {other:?}"
            )))
        }
    }
    let mut alpha = f64::INFINITY;
    let mut beta = 0.0f64;
    for (index, x) in samples.iter().enumerate() {
        if x.len() != v.n_vars() {
            return Err(VerifyError::Precondition(format!("sample {index} has wrong length")));
        }
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(VerifyError::Precondition(format!("sample {index} is the zero vector")));
        }
        let unit: Vec<Complex64> = x.iter().map(|c| c / norm).collect();
        if v.generators().iter().any(|g| g.eval_c64(&unit).norm() > SAMPLE_TOL) {
            return Err(VerifyError::Precondition(format!("sample {index} is off the variety")));
        }
        let h = qs.iter().map(|q| q.eval_c64(&unit).norm()).fold(0.0, f64::max);
        alpha = alpha.min(h);
        beta = beta.max(h);
    }
    Ok(AlphaBetaEstimate {
        alpha_hat: alpha,
        beta_hat: beta,
        samples: samples.len(),
    })
}

/// Which curve a hypothesis row refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F,
    G,
}

/// Hypothesis (i) for one pair: `Q_i(f)` and `Q_j(f)` have no common zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub side: Side,
    pub i: usize,
    pub j: usize,
    pub common_factor: Option<UniPoly>,
}

/// Hypothesis (ii) for one member: `f = g` at every zero of `Q_i(·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementCheck {
    pub side: Side,
    pub index: usize,
    /// Squarefree part of `Q_i(f)` or `Q_i(g)`.
    pub zero_set: UniPoly,
    /// Factor of `zero_set` whose roots are points where `f ≠ g`.
    pub offending: Option<UniPoly>,
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub q: usize,
    pub n_subgeneral: usize,
    pub k: usize,
    pub degree: u32,
    pub hilbert: usize,
    pub pairs: Vec<PairCheck>,
    pub agreement: Vec<AgreementCheck>,
    pub hypothesis_i: bool,
    pub hypothesis_ii: bool,
    /// `2(H−1)/d + (2N−k+1)H/(k+1)`.
    pub threshold: BigRational,
    pub threshold_holds: bool,
    pub equal: bool,
    pub consistent: bool,
}

/// `f_s g_t − f_t g_s` for `s < t`, lexicographic.
pub fn minors(f: &RationalCurve, g: &RationalCurve) -> Vec<((usize, usize), UniPoly)> {
    let (a, b) = (f.components(), g.components());
    let mut out = Vec::new();
    for s in 0..a.len() {
        for t in s + 1..a.len() {
            out.push(((s, t), &(&a[s] * &b[t]) - &(&a[t] * &b[s])));
        }
    }
    out
}

fn pair_checks(pulled: &[UniPoly], side: Side) -> Vec<PairCheck> {
    let mut out = Vec::new();
    for i in 0..pulled.len() {
        for j in i + 1..pulled.len() {
            let g = pulled[i].gcd(&pulled[j]);
            out.push(PairCheck {
                side,
                i,
                j,
                common_factor: (!g.is_constant()).then_some(g),
            });
        }
    }
    out
}

fn agreement_checks(pulled: &[UniPoly], minors_gcd: &UniPoly, side: Side) -> Vec<AgreementCheck> {
    pulled
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let zero_set = p.squarefree_part();
            let offending = if minors_gcd.is_zero() || zero_set.is_constant() {
                None
            } else {
                let shared = zero_set.gcd(minors_gcd);
                let rest = zero_set.exact_div(&shared).expect("gcd divides").monic();
                (!rest.is_constant()).then_some(rest)
            };
            AgreementCheck {
                side,
                index,
                zero_set,
                offending,
            }
        })
        .collect()
}

fn hypotheses(
    family: &HypersurfaceFamily,
    f: &RationalCurve,
    g: &RationalCurve,
    strict: bool,
) -> Result<(Vec<PairCheck>, Vec<AgreementCheck>), VerifyError> {
    let pf = pullbacks(family, f, "f")?;
    let pg = pullbacks(family, g, "g")?;
    let mut pairs = pair_checks(&pf, Side::F);
    if strict {
        pairs.extend(pair_checks(&pg, Side::G));
    }
    let minors_gcd = minors(f, g).iter().fold(UniPoly::zero(), |acc, (_, m)| acc.gcd(m));
    let mut agreement = agreement_checks(&pf, &minors_gcd, Side::F);
    agreement.extend(agreement_checks(&pg, &minors_gcd, Side::G));
    Ok((pairs, agreement))
}

/// Evaluates the hypotheses and threshold of the uniqueness theorem.
/// `strict` also checks hypothesis (i) for the pairs `Q_i(g), Q_j(g)`.
pub fn uniqueness_check(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    f: &RationalCurve,
    g: &RationalCurve,
    strict: bool,
    degree_cap: Option<u32>,
) -> Result<UniquenessReport, VerifyError> {
    check_arity(v, f, "f")?;
    check_arity(v, g, "g")?;
    require_in_variety(v, f, "f")?;
    require_in_variety(v, g, "g")?;
    let d = family.common_degree();
    require_nondegenerate(f, v, d, "f")?;
    require_nondegenerate(g, v, d, "g")?;
    require_position(v, family, degree_cap)?;
    let (q, n, k) = (family.q(), family.n_subgeneral(), v.k());
    let hilbert = v.hilbert_function(d);
    let (pairs, agreement) = hypotheses(family, f, g, strict)?;
    let hypothesis_i = pairs.iter().all(|p| p.common_factor.is_none());
    let hypothesis_ii = agreement.iter().all(|a| a.offending.is_none());
    let threshold = BigRational::new(BigInt::from(2 * (hilbert - 1)), BigInt::from(d)) + defect_bound(n, k, hilbert);
    let threshold_holds = rat_u(q) > threshold;
    let equal = minors(f, g).iter().all(|(_, m)| m.is_zero());
    let consistent = !(hypothesis_i && hypothesis_ii && threshold_holds && !equal);
    Ok(UniquenessReport {
        q,
        n_subgeneral: n,
        k,
        degree: d,
        hilbert,
        pairs,
        agreement,
        hypothesis_i,
        hypothesis_ii,
        threshold,
        threshold_holds,
        equal,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRatio {
    pub slope_f: usize,
    pub slope_g: usize,
    pub ratio: BigRational,
}

/// Slopes of `T_f` and `T_g` and their ratio.
pub fn growth_ratio(f: &RationalCurve, g: &RationalCurve) -> Result<GrowthRatio, VerifyError> {
    let (a, b) = (f.degree(), g.degree());
    if a == 0 || b == 0 {
        return Err(VerifyError::Precondition("growth ratio needs nonconstant curves".into()));
    }
    Ok(GrowthRatio {
        slope_f: a,
        slope_g: b,
        ratio: BigRational::new(BigInt::from(a), BigInt::from(b)),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharedZeroRow {
    pub r: f64,
    pub counting_h: f64,
    pub counting_shared: f64,
    pub characteristic_f: f64,
    pub characteristic_g: f64,
    /// `N_H − Σ N^{[1]}_{Q_i(f)}`.
    pub margin_shared: f64,
    /// `T_f + T_g − N_H`; the two sides differ by a bounded term at finite r.
    pub margin_jensen: f64,
}

#[derive(Clone, Debug)]
pub struct SharedZeroReport {
    pub minor_index: (usize, usize),
    pub minor: UniPoly,
    /// `deg H` against `Σ_i #distinct zeros of Q_i(f)`.
    pub shared: ExactComparison,
    /// `deg H` against `deg f + deg g`.
    pub jensen: ExactComparison,
    pub rows: Vec<SharedZeroRow>,
    pub excluded_radii: Vec<f64>,
}

/// Compares the counting function of the first nonzero minor with the
/// shared truncated counts, and with `T_f + T_g`.
pub fn inequality_52_check(
    f: &RationalCurve,
    g: &RationalCurve,
    family: &HypersurfaceFamily,
    r_grid: &[f64],
    tol: f64,
) -> Result<SharedZeroReport, VerifyError> {
    if f.n() != g.n() {
        return Err(VerifyError::Precondition("curves live in different spaces".into()));
    }
    let grid = check_radii(r_grid)?;
    let (pairs, agreement) = hypotheses(family, f, g, false)?;
    if let Some(p) = pairs.iter().find(|p| p.common_factor.is_some()) {
        return Err(VerifyError::Precondition(format!(
            "hypothesis (i) fails for Q_{} and Q_{}",
            p.i, p.j
        )));
    }
    if let Some(a) = agreement.iter().find(|a| a.offending.is_some()) {
        return Err(VerifyError::Precondition(format!(
            "hypothesis (ii) fails on the zeros of Q_{}",
            a.index
        )));
    }
    let Some((minor_index, minor)) = minors(f, g).into_iter().find(|(_, m)| !m.is_zero()) else {
        return Err(VerifyError::Precondition("identical maps".into()));
    };
    let pf = pullbacks(family, f, "f")?;
    let distinct: usize = pf.iter().map(|p| p.squarefree_part().degree().unwrap_or(0)).sum();
    let deg_h = minor.degree().unwrap_or(0);
    let shared = ExactComparison::new(rat_u(distinct), rat_u(deg_h));
    let jensen = ExactComparison::new(rat_u(deg_h), rat_u(f.degree() + g.degree()));

    let div_h = zero_divisor(&minor)?;
    let divs: Vec<Divisor> = pf.iter().map(zero_divisor).collect::<Result<_, _>>()?;
    let mut refs: Vec<&Divisor> = divs.iter().collect();
    refs.push(&div_h);
    let mut rows = Vec::new();
    let mut excluded_radii = Vec::new();
    for &r in &grid {
        if near_support(&refs, r) {
            excluded_radii.push(r);
            continue;
        }
        let counting_h = counting_function(&div_h, r, None)?;
        let counting_shared: f64 = divs
            .iter()
            .map(|dv| counting_function(dv, r, Some(1)))
            .sum::<Result<f64, _>>()?;
        let characteristic_f = characteristic(f, r, tol, Norm::Euclidean)?;
        let characteristic_g = characteristic(g, r, tol, Norm::Euclidean)?;
        rows.push(SharedZeroRow {
            r,
            counting_h,
            counting_shared,
            characteristic_f,
            characteristic_g,
            margin_shared: counting_h - counting_shared,
            margin_jensen: characteristic_f + characteristic_g - counting_h,
        });
    }
    Ok(SharedZeroReport {
        minor_index,
        minor,
        shared,
        jensen,
        rows,
        excluded_radii,
    })
}
