//! Nochka weights for hyperplanes and for hypersurfaces on a variety,
//! generic linear sections, and basis completion of quotient classes.
//!
//! Weights come from an exact linear program; every certificate is then
//! re-verified by [`check_certificate`], which enumerates subsets directly
//! and does not touch the solver.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polyalg::{fmt_rational, rank_of, rat_from_f64, GaussScalar, MultiPoly};
use crate::variety::{check_subgeneral, HypersurfaceFamily, PositionVerdict, VarietyError, VarietyModel};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const RETRY_CAP: usize = 16;
const EPSILON_HALVINGS: usize = 8;
const ENTRY_BOUND: i64 = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NochkaError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vector {index} is zero")]
    ZeroVector { index: usize },
    #[error("subset {subset:?} has rank {rank}, expected {expected}")]
    NotInPosition {
        subset: Vec<usize>,
        rank: usize,
        expected: usize,
    },
    #[error("position check inconclusive for subset {subset:?}")]
    PositionInconclusive { subset: Vec<usize> },
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("no valid draw after {cap} attempts (seed {seed})")]
    RetryCap { seed: u64, cap: usize },
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckRelation {
    Lt,
    Le,
    Eq,
}

impl fmt::Display for CheckRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckRelation::Lt => "<",
            CheckRelation::Le => "<=",
            CheckRelation::Eq => "=",
        })
    }
}

/// One verified constraint `lhs relation rhs` with exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: BigRational,
    pub relation: CheckRelation,
    pub rhs: BigRational,
    pub holds: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: BigRational, relation: CheckRelation, rhs: BigRational) -> Check {
        let holds = match relation {
            CheckRelation::Lt => lhs < rhs,
            CheckRelation::Le => lhs <= rhs,
            CheckRelation::Eq => lhs == rhs,
        };
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
            holds,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.name,
            fmt_rational(&self.lhs),
            self.relation,
            fmt_rational(&self.rhs),
            if self.holds { "ok" } else { "FAILED" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCertificate {
    pub q: usize,
    pub n_subgeneral: usize,
    pub k: usize,
    pub omega: Vec<BigRational>,
    pub omega_tilde: BigRational,
    /// Index whose weight was pinned to the maximum in the solve.
    pub pinned: usize,
    /// Lower bound imposed on every weight.
    pub epsilon: BigRational,
    pub transcript: Vec<Check>,
}

impl WeightCertificate {
    pub fn all_hold(&self) -> bool {
        self.transcript.iter().all(|c| c.holds)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn subset_name(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().join(","))
}

fn check_parameters(q: usize, n: usize, k: usize) -> Result<(), NochkaError> {
    if k < 1 || n < k {
        return Err(NochkaError::InvalidParameters(format!("need N >= k >= 1, got N = {n}, k = {k}")));
    }
    if q + k <= 2 * n + 1 {
        return Err(NochkaError::InvalidParameters(format!(
            "need q > 2N - k + 1 = {}, got q = {q}",
            2 * n + 1 - k
        )));
    }
    Ok(())
}

/// `(k+1)/(2N−k+1)` and `k/N`.
fn omega_tilde_bounds(n: usize, k: usize) -> (BigRational, BigRational) {
    (
        ratio(k as i64 + 1, (2 * n + 1 - k) as i64),
        ratio(k as i64, n as i64),
    )
}

fn rank_of_subset(vectors: &[Vec<GaussScalar>], subset: &[usize]) -> usize {
    let rows: Vec<&[GaussScalar]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
    rank_of(&rows)
}

/// Solves for weights with index `pinned` attaining the maximum `t`.
/// Variables are `ω_0 … ω_{q−1}, t`; the objective maximizes `t`.
fn solve_pinned(
    q: usize,
    n: usize,
    k: usize,
    rank_constraints: &[(Vec<usize>, usize)],
    eps: &BigRational,
    pinned: usize,
) -> Option<Vec<BigRational>> {
    let t = q;
    let one = rat(1);
    let mut lp = LinearProgram::new(q + 1);
    let mut objective = vec![BigRational::zero(); q + 1];
    objective[t] = one.clone();
    lp.set_objective(objective);
    for i in 0..q {
        if i == pinned {
            lp.add_sparse(&[(i, one.clone()), (t, -one.clone())], Relation::Eq, BigRational::zero());
        } else {
            lp.add_sparse(&[(i, one.clone()), (t, -one.clone())], Relation::Le, BigRational::zero());
        }
        lp.add_sparse(&[(i, one.clone())], Relation::Ge, eps.clone());
        lp.add_sparse(&[(i, one.clone())], Relation::Le, one.clone());
    }
    let (lo, hi) = omega_tilde_bounds(n, k);
    lp.add_sparse(&[(t, one.clone())], Relation::Ge, lo);
    lp.add_sparse(&[(t, one.clone())], Relation::Le, hi);
    let slope = q as i64 - 2 * n as i64 + k as i64 - 1;
    let mut sum: Vec<(usize, BigRational)> = (0..q).map(|i| (i, one.clone())).collect();
    sum.push((t, -rat(slope)));
    lp.add_sparse(&sum, Relation::Eq, rat(k as i64 + 1));
    for (subset, rank) in rank_constraints {
        let terms: Vec<(usize, BigRational)> = subset.iter().map(|&i| (i, one.clone())).collect();
        lp.add_sparse(&terms, Relation::Le, rat(*rank as i64));
    }
    match lp.maximize() {
        LpOutcome::Optimal { mut x, .. } => {
            x.truncate(q);
            Some(x)
        }
        _ => None,
    }
}

/// Nochka weights for `q` hyperplanes in `P^k`, given by their coefficient
/// vectors in `C^{k+1}`, in `N`-subgeneral position.
pub fn nochka_weights_hyperplanes(
    vectors: &[Vec<GaussScalar>],
    n_subgeneral: usize,
) -> Result<WeightCertificate, NochkaError> {
    let q = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    if dim < 2 {
        return Err(NochkaError::InvalidParameters("vectors must lie in C^{k+1} with k >= 1".into()));
    }
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(NochkaError::InvalidParameters("vectors have different lengths".into()));
    }
    let k = dim - 1;
    let n = n_subgeneral;
    check_parameters(q, n, k)?;
    if let Some(index) = vectors.iter().position(|v| v.iter().all(Zero::is_zero)) {
        return Err(NochkaError::ZeroVector { index });
    }
    for subset in (0..q).combinations(n + 1) {
        let rank = rank_of_subset(vectors, &subset);
        if rank != k + 1 {
            return Err(NochkaError::NotInPosition {
                subset,
                rank,
                expected: k + 1,
            });
        }
    }
    // Only rank-deficient subsets with rank <= k can bind beyond ω_i <= 1 and ω_i <= t <= k/N.
    let mut rank_constraints = Vec::new();
    for size in 2..=n {
        for subset in (0..q).combinations(size) {
            let rank = rank_of_subset(vectors, &subset);
            if rank < size && rank <= k {
                rank_constraints.push((subset, rank));
            }
        }
    }
    let mut eps = ratio(1, 4 * (q * (n + 1)) as i64);
    for _ in 0..=EPSILON_HALVINGS {
        for pinned in 0..q {
            let Some(omega) = solve_pinned(q, n, k, &rank_constraints, &eps, pinned) else {
                continue;
            };
            let omega_tilde = omega.iter().max().expect("q > 0").clone();
            let transcript = check_certificate(vectors, n, &omega, &omega_tilde);
            let cert = WeightCertificate {
                q,
                n_subgeneral: n,
                k,
                omega,
                omega_tilde,
                pinned,
                epsilon: eps.clone(),
                transcript,
            };
            if let Some(bad) = cert.transcript.iter().find(|c| !c.holds) {
                return Err(NochkaError::LemmaViolation(format!("solver output fails check {bad}")));
            }
            return Ok(cert);
        }
        eps /= rat(2);
    }
    Err(NochkaError::LemmaViolation(
        "no feasible weights for any pinned index".into(),
    ))
}

/// Re-verifies weight properties from scratch: positivity and `ω_i ≤ 1`,
/// the sum identity, the bounds on `ω̃`, and `Σ_R ω_i ≤ rank R` for every
/// `R` with `0 < #R ≤ N+1`.
pub fn check_certificate(
    vectors: &[Vec<GaussScalar>],
    n_subgeneral: usize,
    omega: &[BigRational],
    omega_tilde: &BigRational,
) -> Vec<Check> {
    let q = vectors.len();
    let k = vectors.first().map_or(1, Vec::len).saturating_sub(1);
    let n = n_subgeneral;
    let mut out = Vec::new();
    for (i, w) in omega.iter().enumerate() {
        out.push(Check::new(format!("omega[{i}] > 0"), BigRational::zero(), CheckRelation::Lt, w.clone()));
        out.push(Check::new(format!("omega[{i}] <= 1"), w.clone(), CheckRelation::Le, rat(1)));
    }
    let max = omega.iter().max().cloned().unwrap_or_else(BigRational::zero);
    out.push(Check::new("omega_tilde = max omega", omega_tilde.clone(), CheckRelation::Eq, max));
    let total: BigRational = omega.iter().sum();
    let slope = q as i64 - 2 * n as i64 + k as i64 - 1;
    out.push(Check::new(
        "sum omega = omega_tilde*(q-2N+k-1) + k+1",
        total,
        CheckRelation::Eq,
        omega_tilde * rat(slope) + rat(k as i64 + 1),
    ));
    if n >= k && 2 * n + 1 > k {
        let (lo, hi) = omega_tilde_bounds(n, k);
        out.push(Check::new("(k+1)/(2N-k+1) <= omega_tilde", lo, CheckRelation::Le, omega_tilde.clone()));
        out.push(Check::new("omega_tilde <= k/N", omega_tilde.clone(), CheckRelation::Le, hi));
    }
    for size in 1..=(n + 1).min(q) {
        for subset in (0..q).combinations(size) {
            let sum: BigRational = subset.iter().map(|&i| omega[i].clone()).sum();
            let rank = rank_of_subset(vectors, &subset);
            out.push(Check::new(
                format!("sum over {} <= rank", subset_name(&subset)),
                sum,
                CheckRelation::Le,
                rat(rank as i64),
            ));
        }
    }
    out
}

/// Finds `R° ⊂ R` with `#R° = rank R° = rank R` and
/// `∏_{i∈R} E_i^{ω_i} ≤ ∏_{i∈R°} E_i`.
///
/// Candidates are visited in lexicographic order. The inequality is tested
/// in the log domain with relative tolerance `1e-12`; the returned subset is
/// additionally confirmed by [`product_inequality_exact`], and candidates
/// failing the exact comparison are skipped.
pub fn select_subset(
    omega: &[BigRational],
    vectors: &[Vec<GaussScalar>],
    subset: &[usize],
    e: &[f64],
) -> Result<Vec<usize>, NochkaError> {
    if e.len() != vectors.len() || omega.len() != vectors.len() {
        return Err(NochkaError::InvalidParameters("weights, vectors and E differ in length".into()));
    }
    if let Some(&i) = subset.iter().find(|&&i| !(e[i] >= 1.0 && e[i].is_finite())) {
        return Err(NochkaError::InvalidParameters(format!("E[{i}] = {} is not a finite value >= 1", e[i])));
    }
    let rank = rank_of_subset(vectors, subset);
    let lhs: f64 = subset
        .iter()
        .map(|&i| crate::polyalg::rat_to_f64(&omega[i]) * e[i].ln())
        .sum();
    for cand in subset.iter().copied().combinations(rank) {
        if rank_of_subset(vectors, &cand) != rank {
            continue;
        }
        let rhs: f64 = cand.iter().map(|&i| e[i].ln()).sum();
        let tol = 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
        if lhs <= rhs + tol && product_inequality_exact(omega, subset, &cand, e) {
            return Ok(cand);
        }
    }
    Err(NochkaError::LemmaViolation(format!(
        "no subset of {} satisfies the product inequality",
        subset_name(subset)
    )))
}

/// Exact test of `∏_{i∈R} E_i^{ω_i} ≤ ∏_{i∈R°} E_i`, after raising both
/// sides to the least common denominator of the weights.
pub fn product_inequality_exact(omega: &[BigRational], subset: &[usize], chosen: &[usize], e: &[f64]) -> bool {
    let l = subset
        .iter()
        .fold(BigInt::one(), |acc, &i| acc.lcm(omega[i].denom()));
    let exponent = |w: &BigRational| -> u32 {
        let v = (w * BigRational::from_integer(l.clone())).to_integer();
        u32::try_from(v).expect("weights are in (0, 1], exponent fits u32")
    };
    let value = |i: usize| rat_from_f64(e[i]).expect("finite");
    let lhs = subset
        .iter()
        .fold(BigRational::one(), |acc, &i| acc * num_traits::pow(value(i), exponent(&omega[i]) as usize));
    let one = BigRational::one();
    let rhs = chosen
        .iter()
        .fold(BigRational::one(), |acc, &i| acc * num_traits::pow(value(i), exponent(&one) as usize));
    lhs <= rhs
}

/// Rank of a subset before and after restriction to the witness subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetRankCheck {
    pub subset: Vec<usize>,
    pub original: usize,
    pub restricted: usize,
}

/// Linear subspace `L ⊂ C^M` of dimension `k` preserving the ranks of all
/// small subsets of a family of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceWitness {
    pub ambient_dim: usize,
    pub dim: usize,
    /// `k` spanning vectors of `L`.
    pub basis: Vec<Vec<GaussScalar>>,
    pub verification: Vec<SubsetRankCheck>,
    pub seed: u64,
    pub attempts: usize,
}

impl SubspaceWitness {
    /// Coordinates of the restriction of `form` to `L`: `(form · b_j)_j`.
    pub fn restrict(&self, form: &[GaussScalar]) -> Vec<GaussScalar> {
        restrict_to(&self.basis, form)
    }

    pub fn verified(&self) -> bool {
        self.verification.iter().all(|c| c.original == c.restricted)
    }
}

fn restrict_to(basis: &[Vec<GaussScalar>], form: &[GaussScalar]) -> Vec<GaussScalar> {
    basis
        .iter()
        .map(|b| {
            b.iter()
                .zip(form)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(GaussScalar::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

fn verify_subspace(forms: &[Vec<GaussScalar>], basis: &[Vec<GaussScalar>], k: usize) -> Vec<SubsetRankCheck> {
    let restricted: Vec<Vec<GaussScalar>> = forms.iter().map(|f| restrict_to(basis, f)).collect();
    let mut out = Vec::new();
    for size in 1..=k.min(forms.len()) {
        for subset in (0..forms.len()).combinations(size) {
            out.push(SubsetRankCheck {
                original: rank_of_subset(forms, &subset),
                restricted: rank_of_subset(&restricted, &subset),
                subset,
            });
        }
    }
    out
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<GaussScalar> {
    (0..len)
        .map(|_| GaussScalar::from_int(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
        .collect()
}

/// A `k`-dimensional subspace on which every subset of at most `k` forms
/// keeps its rank and no form vanishes, by seeded random sampling.
pub fn generic_subspace(forms: &[Vec<GaussScalar>], k: usize, seed: u64) -> Result<SubspaceWitness, NochkaError> {
    let m = forms.first().map_or(0, Vec::len);
    if k < 1 || k > m {
        return Err(NochkaError::InvalidParameters(format!("need 1 <= k <= M, got k = {k}, M = {m}")));
    }
    if forms.iter().any(|f| f.len() != m) {
        return Err(NochkaError::InvalidParameters("forms have different lengths".into()));
    }
    if let Some(index) = forms.iter().position(|f| f.iter().all(Zero::is_zero)) {
        return Err(NochkaError::ZeroVector { index });
    }
    if k == m {
        let basis: Vec<Vec<GaussScalar>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { GaussScalar::one() } else { GaussScalar::zero() }).collect())
            .collect();
        return Ok(SubspaceWitness {
            ambient_dim: m,
            dim: k,
            verification: verify_subspace(forms, &basis, k),
            basis,
            seed,
            attempts: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_CAP {
        let basis: Vec<Vec<GaussScalar>> = (0..k).map(|_| random_vector(&mut rng, m)).collect();
        let basis_refs: Vec<&[GaussScalar]> = basis.iter().map(Vec::as_slice).collect();
        if rank_of(&basis_refs) != k {
            continue;
        }
        let verification = verify_subspace(forms, &basis, k);
        if verification.iter().all(|c| c.original == c.restricted) {
            return Ok(SubspaceWitness {
                ambient_dim: m,
                dim: k,
                basis,
                verification,
                seed,
                attempts: attempt,
            });
        }
    }
    Err(NochkaError::RetryCap { seed, cap: RETRY_CAP })
}

/// Nochka weights of a hypersurface family on `V`, with the witness
/// subspace used to reduce to hyperplanes.
#[derive(Clone, Debug)]
pub struct GeneralizedWeights {
    pub certificate: WeightCertificate,
    pub witness: SubspaceWitness,
    /// Common degree `d`.
    pub degree: u32,
    /// `H_V(d)`.
    pub hilbert: usize,
    /// Class coordinates of `Q_i^{d/d_i}` in `I_d(V)`.
    pub classes: Vec<Vec<GaussScalar>>,
}

/// Requires the family to be verified in `N`-subgeneral position on `V`.
fn require_position(v: &VarietyModel, family: &HypersurfaceFamily) -> Result<(), NochkaError> {
    family.check_on(v)?;
    match check_subgeneral(v, family, None)?.verdict {
        PositionVerdict::InPosition => Ok(()),
        PositionVerdict::NotInPosition { violating } => Err(NochkaError::NotInPosition {
            subset: violating,
            rank: 0,
            expected: v.k() + 1,
        }),
        PositionVerdict::Inconclusive { subset } => Err(NochkaError::PositionInconclusive { subset }),
    }
}

pub fn generalized_weights(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    seed: u64,
) -> Result<GeneralizedWeights, NochkaError> {
    check_parameters(family.q(), family.n_subgeneral(), v.k())?;
    require_position(v, family)?;
    generalized_weights_in_position(v, family, seed)
}

/// [`generalized_weights`] without re-running the position check; the
/// caller must already have verified it.
pub fn generalized_weights_in_position(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    seed: u64,
) -> Result<GeneralizedWeights, NochkaError> {
    let k = v.k();
    let n = family.n_subgeneral();
    check_parameters(family.q(), n, k)?;
    let degree = family.common_degree();
    let classes = v.class_vectors(&family.normalized())?;
    let hilbert = v.hilbert_function(degree);
    let witness = generic_subspace(&classes, k + 1, seed)?;
    let restricted: Vec<Vec<GaussScalar>> = classes.iter().map(|c| witness.restrict(c)).collect();
    let mut certificate = nochka_weights_hyperplanes(&restricted, n)?;
    for subset in (0..family.q()).combinations(n + 1) {
        let sum: BigRational = subset.iter().map(|&i| certificate.omega[i].clone()).sum();
        certificate.transcript.push(Check::new(
            format!("sum over {} <= k+1", subset_name(&subset)),
            sum,
            CheckRelation::Le,
            rat(k as i64 + 1),
        ));
    }
    if let Some(bad) = certificate.transcript.iter().find(|c| !c.holds) {
        return Err(NochkaError::LemmaViolation(format!("check {bad}")));
    }
    Ok(GeneralizedWeights {
        certificate,
        witness,
        degree,
        hilbert,
        classes,
    })
}

/// Extra hypersurfaces completing every full-rank `(k+1)`-subset of the
/// family to a basis of `I_d(V)`.
#[derive(Clone, Debug)]
pub struct BasisCompletion {
    pub polys: Vec<MultiPoly>,
    /// Class coordinates of `polys`.
    pub coords: Vec<Vec<GaussScalar>>,
    /// `(R, rank of R together with the completion)` for every qualifying `R`.
    pub verification: Vec<(Vec<usize>, usize)>,
    pub target_rank: usize,
    pub seed: u64,
    pub attempts: usize,
}

/// Vector form: `extra = M − rank` random integer vectors such that every
/// `rank`-subset of `classes` with full rank extends to rank `M`.
pub fn complete_classes(
    classes: &[Vec<GaussScalar>],
    rank: usize,
    seed: u64,
) -> Result<(Vec<Vec<GaussScalar>>, Vec<(Vec<usize>, usize)>, usize), NochkaError> {
    let m = classes.first().map_or(0, Vec::len);
    if rank > m {
        return Err(NochkaError::InvalidParameters(format!("rank {rank} exceeds dimension {m}")));
    }
    let qualifying: Vec<Vec<usize>> = (0..classes.len())
        .combinations(rank)
        .filter(|s| rank_of_subset(classes, s) == rank)
        .collect();
    let extra = m - rank;
    let verify = |t: &[Vec<GaussScalar>]| -> Vec<(Vec<usize>, usize)> {
        qualifying
            .iter()
            .map(|s| {
                let mut rows: Vec<&[GaussScalar]> = s.iter().map(|&i| classes[i].as_slice()).collect();
                rows.extend(t.iter().map(Vec::as_slice));
                (s.clone(), rank_of(&rows))
            })
            .collect()
    };
    if extra == 0 {
        return Ok((Vec::new(), verify(&[]), 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_CAP {
        let t: Vec<Vec<GaussScalar>> = (0..extra).map(|_| random_vector(&mut rng, m)).collect();
        let checks = verify(&t);
        if checks.iter().all(|(_, r)| *r == m) {
            return Ok((t, checks, attempt));
        }
    }
    Err(NochkaError::RetryCap { seed, cap: RETRY_CAP })
}

pub fn basis_completion(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    seed: u64,
) -> Result<BasisCompletion, NochkaError> {
    let degree = family.common_degree();
    let classes = v.class_vectors(&family.normalized())?;
    let target_rank = v.k() + 1;
    let (coords, verification, attempts) = complete_classes(&classes, target_rank, seed)?;
    let polys = coords.iter().map(|c| v.form_from_class(degree, c)).collect();
    Ok(BasisCompletion {
        polys,
        coords,
        verification,
        target_rank,
        seed,
        attempts,
    })
}
