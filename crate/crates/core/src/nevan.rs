//! Value-distribution functionals of polynomial curves `f : C → Pⁿ`:
//! zero divisors, counting, characteristic and proximity functions,
//! Wronskians and nondegeneracy over `I_d(V)`.
//!
//! Circle means are computed by trapezoid quadrature with doubling. For
//! `r ≥ 1` a polynomial of degree `D` is evaluated as
//! `r^D · Σ c_j u^j r^{j−D}` with `|u| = 1`, which keeps the logarithms
//! finite for large radii.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::polyalg::{complex_roots, ExactMatrix, GaussScalar, MultiPoly, PolyError, UniPoly, ROOT_TOL};
use crate::variety::VarietyModel;

pub const DEFAULT_TOL: f64 = 1e-8;
const MIN_POINTS: usize = 16;
const MIN_CONVERGED_POINTS: usize = 64;
const MAX_POINTS: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NevanError {
    #[error("all components of the curve are zero")]
    ZeroCurve,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("radius {r} is out of range (need {need})")]
    RadiusOutOfRange { r: f64, need: &'static str },
    #[error("quadrature did not converge within {points} points")]
    QuadratureCap { points: usize },
    #[error("pole of modulus {modulus} lies on the circle |z| = {r}")]
    PoleOnCircle { r: f64, modulus: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reduced representation `(f_0, …, f_n)` of a polynomial curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    components: Vec<UniPoly>,
}

impl RationalCurve {
    /// Divides out the common factor of all components.
    pub fn reduce_representation(components: Vec<UniPoly>) -> Result<RationalCurve, NevanError> {
        let g = components.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(NevanError::ZeroCurve);
        }
        let components = components
            .iter()
            .map(|c| c.exact_div(&g).expect("gcd divides every component"))
            .collect();
        Ok(RationalCurve { components })
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    /// Target dimension `n`.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    /// `deg f = max deg f_i`.
    pub fn degree(&self) -> usize {
        self.components.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    /// `Q(f) = Q(f_0, …, f_n)`.
    pub fn pullback(&self, q: &MultiPoly) -> Result<UniPoly, NevanError> {
        Ok(q.compose(&self.components)?)
    }

    /// `log ‖f(r e^{iθ})‖` for `r ≥ 1` in the chosen norm.
    fn log_norm(&self, scaled: &[ScaledPoly], r: f64, theta: f64, norm: Norm) -> f64 {
        let u = Complex64::from_polar(1.0, theta);
        let d = self.degree() as f64;
        let vals = scaled.iter().map(|p| p.eval_unit(u));
        let inner = match norm {
            Norm::Euclidean => vals.map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
            Norm::Max => vals.map(|v| v.norm()).fold(0.0, f64::max),
        };
        d * r.ln() + inner.ln()
    }
}

/// Polynomial prepared for evaluation on `|z| = r`, `r ≥ 1`: coefficients
/// `c_j r^{j−D}` where `D` is a fixed reference degree.
struct ScaledPoly {
    coeffs: Vec<Complex64>,
}

impl ScaledPoly {
    fn new(p: &UniPoly, r: f64, reference_degree: usize) -> ScaledPoly {
        let coeffs = p
            .to_c64()
            .iter()
            .enumerate()
            .map(|(j, c)| c * r.powi(j as i32 - reference_degree as i32))
            .collect();
        ScaledPoly { coeffs }
    }

    fn eval_unit(&self, u: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * u + c)
    }

    /// `log |p(r u)|` given the reference degree used in construction.
    fn log_abs(&self, u: Complex64, r: f64, reference_degree: usize) -> f64 {
        reference_degree as f64 * r.ln() + self.eval_unit(u).norm().ln()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Norm {
    #[default]
    Euclidean,
    /// `max_i |f_i|`; its characteristic differs from the Euclidean one by a
    /// bounded amount and satisfies Jensen's relation exactly.
    Max,
}

/// `(1/2π) ∫ g(θ) dθ` by trapezoid rule, doubling the point count until two
/// successive refinements each change the estimate by less than `tol`.
pub fn circle_mean(g: impl Fn(f64) -> f64, tol: f64) -> Result<f64, NevanError> {
    let mut n = MIN_POINTS;
    let mut sum: f64 = (0..n).map(|j| g(2.0 * PI * j as f64 / n as f64)).sum();
    let mut est = sum / n as f64;
    let mut settled = 0;
    while 2 * n <= MAX_POINTS {
        let m = 2 * n;
        let fresh: f64 = (0..n).map(|j| g(2.0 * PI * (2 * j + 1) as f64 / m as f64)).sum();
        sum += fresh;
        let next = sum / m as f64;
        let diff = (next - est).abs();
        est = next;
        n = m;
        if !est.is_finite() {
            break;
        }
        if diff < tol {
            settled += 1;
            if settled >= 2 && n >= MIN_CONVERGED_POINTS {
                return Ok(est);
            }
        } else {
            settled = 0;
        }
    }
    Err(NevanError::QuadratureCap { points: MAX_POINTS })
}

/// One zero of a divisor away from the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivisorEntry {
    pub location: Complex64,
    pub modulus: f64,
    pub multiplicity: usize,
}

/// Zero divisor of a polynomial, with the origin kept exact.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Divisor {
    pub entries: Vec<DivisorEntry>,
    pub origin_mult: usize,
}

impl Divisor {
    /// Total number of zeros with multiplicity.
    pub fn degree(&self) -> usize {
        self.origin_mult + self.entries.iter().map(|e| e.multiplicity).sum::<usize>()
    }

    /// `n(t)`: zeros in `|z| ≤ t` with multiplicity, truncated at `trunc`.
    pub fn count_in_disk(&self, t: f64, trunc: Option<usize>) -> usize {
        let cap = |m: usize| trunc.map_or(m, |c| m.min(c));
        cap(self.origin_mult)
            + self
                .entries
                .iter()
                .filter(|e| e.modulus <= t)
                .map(|e| cap(e.multiplicity))
                .sum::<usize>()
    }

    /// Smallest distance from a support modulus to `r`.
    pub fn distance_to_support(&self, r: f64) -> f64 {
        let origin = if self.origin_mult > 0 { r } else { f64::INFINITY };
        self.entries
            .iter()
            .map(|e| (e.modulus - r).abs())
            .fold(origin, f64::min)
    }
}

pub fn zero_divisor(phi: &UniPoly) -> Result<Divisor, NevanError> {
    if phi.is_zero() {
        return Err(NevanError::ZeroPolynomial);
    }
    if phi.is_constant() {
        return Ok(Divisor::default());
    }
    let mut div = Divisor::default();
    for root in complex_roots(phi, ROOT_TOL)? {
        if root.value.is_zero() {
            div.origin_mult = root.multiplicity;
        } else {
            div.entries.push(DivisorEntry {
                location: root.value,
                modulus: root.value.norm(),
                multiplicity: root.multiplicity,
            });
        }
    }
    Ok(div)
}

/// `N^{[M]}(r, ν) = ∫_1^r n^{[M]}(t)/t dt` in closed form; `trunc = None`
/// means no truncation.
pub fn counting_function(div: &Divisor, r: f64, trunc: Option<usize>) -> Result<f64, NevanError> {
    if !(r > 1.0) {
        return Err(NevanError::RadiusOutOfRange { r, need: "r > 1" });
    }
    let cap = |m: usize| trunc.map_or(m, |c| m.min(c)) as f64;
    let mut total = cap(div.origin_mult) * r.ln();
    for e in &div.entries {
        if e.modulus <= r {
            total += cap(e.multiplicity) * (r / e.modulus.max(1.0)).ln();
        }
    }
    Ok(total)
}

/// `T_f(r) = (1/2π) ∫ log ‖f(re^{iθ})‖ dθ − (same at r = 1)`.
pub fn characteristic(f: &RationalCurve, r: f64, tol: f64, norm: Norm) -> Result<f64, NevanError> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(NevanError::RadiusOutOfRange { r, need: "r >= 1" });
    }
    let at = |radius: f64| -> Result<f64, NevanError> {
        let d = f.degree();
        let scaled: Vec<ScaledPoly> = f.components.iter().map(|c| ScaledPoly::new(c, radius, d)).collect();
        circle_mean(|th| f.log_norm(&scaled, radius, th, norm), tol / 2.0)
    };
    Ok(at(r)? - at(1.0)?)
}

/// Asymptotic slope of `T_f(r)` against `log r`: the degree of `f`.
pub fn characteristic_slope(f: &RationalCurve) -> usize {
    f.degree()
}

/// Fails if a zero of `den` lies within `tol` of the circle `|z| = r`.
fn reject_poles_on_circle(den: &UniPoly, r: f64, tol: f64) -> Result<(), NevanError> {
    if den.is_constant() {
        return Ok(());
    }
    for root in complex_roots(den, ROOT_TOL)? {
        let modulus = root.value.norm();
        if (modulus - r).abs() <= tol {
            return Err(NevanError::PoleOnCircle { r, modulus });
        }
    }
    Ok(())
}

/// `m(r, φ) = (1/2π) ∫ log⁺ |φ(re^{iθ})| dθ` for `φ = num/den`.
pub fn proximity(num: &UniPoly, den: &UniPoly, r: f64, tol: f64) -> Result<f64, NevanError> {
    if den.is_zero() {
        return Err(NevanError::ZeroPolynomial);
    }
    if !(r >= 1.0) || !r.is_finite() {
        return Err(NevanError::RadiusOutOfRange { r, need: "r >= 1" });
    }
    if num.is_zero() {
        return Ok(0.0);
    }
    let g = num.gcd(den);
    let num = num.exact_div(&g).expect("gcd divides");
    let den = den.exact_div(&g).expect("gcd divides");
    reject_poles_on_circle(&den, r, tol)?;
    let (dn, dd) = (num.degree().unwrap_or(0), den.degree().unwrap_or(0));
    let sn = ScaledPoly::new(&num, r, dn);
    let sd = ScaledPoly::new(&den, r, dd);
    circle_mean(
        |th| {
            let u = Complex64::from_polar(1.0, th);
            (sn.log_abs(u, r, dn) - sd.log_abs(u, r, dd)).max(0.0)
        },
        tol,
    )
}

/// `T_φ(r) − N_{1/φ}(r) − m(r, φ)` on each radius, with `T_φ` the
/// characteristic of the curve `(den : num)` in the max norm and `N_{1/φ}`
/// the counting function of the poles of `φ`.
pub fn jensen_residual(num: &UniPoly, den: &UniPoly, r_grid: &[f64], tol: f64) -> Result<Vec<f64>, NevanError> {
    if den.is_zero() {
        return Err(NevanError::ZeroPolynomial);
    }
    let curve = RationalCurve::reduce_representation(vec![den.clone(), num.clone()])?;
    let poles = zero_divisor(&curve.components[0])?;
    r_grid
        .iter()
        .map(|&r| {
            let t = characteristic(&curve, r, tol, Norm::Max)?;
            let n = counting_function(&poles, r, None)?;
            let m = proximity(&curve.components[1], &curve.components[0], r, tol)?;
            Ok(t - n - m)
        })
        .collect()
}

/// Determinant of `(f_i^{(j)})_{j,i}` by fraction-free elimination.
pub fn wronskian(fs: &[UniPoly]) -> UniPoly {
    let n = fs.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut m: Vec<Vec<UniPoly>> = (0..n)
        .map(|j| fs.iter().map(|f| f.nth_derivative(j)).collect())
        .collect();
    let mut prev = UniPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Result of the nondegeneracy test over `I_d(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    /// Rank of `{A_i(f)}` for the canonical complement basis `{A_i}`.
    pub rank: usize,
    pub hilbert: usize,
    /// A form `Q` with `[Q] ≠ 0` and `Q(f) ≡ 0`, normalized so that its first
    /// nonzero class coordinate is 1.
    pub witness: Option<MultiPoly>,
}

pub fn nondegenerate_over_id(f: &RationalCurve, v: &VarietyModel, d: u32) -> Result<Nondegeneracy, NevanError> {
    let basis = v.complement_basis(d);
    let hilbert = basis.len();
    let pulled: Vec<UniPoly> = basis.iter().map(|a| f.pullback(a)).collect::<Result<_, _>>()?;
    let len = pulled.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
    // Columns are the A_i(f); a null vector is a relation Σ c_i A_i(f) = 0.
    let mut m = ExactMatrix::zeros(len, hilbert);
    for (i, p) in pulled.iter().enumerate() {
        for (row, c) in p.coeffs().iter().enumerate() {
            m.set(row, i, c.clone());
        }
    }
    let null = m.null_space();
    let rank = hilbert - null.len();
    let witness = null.first().map(|c| {
        let lead = c.iter().find(|x| !x.is_zero()).expect("null vectors are nonzero").clone();
        let inv = lead.inv().expect("nonzero");
        let coords: Vec<GaussScalar> = c.iter().map(|x| x * &inv).collect();
        v.form_from_class(d, &coords)
    });
    Ok(Nondegeneracy {
        nondegenerate: null.is_empty(),
        rank,
        hilbert,
        witness,
    })
}

/// `m(r, φ^{(k)}/φ)` with a flag for the degenerate case `φ^{(k)} ≡ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDerivative {
    pub value: f64,
    pub derivative_vanishes: bool,
}

/// Numerator `P_k` with `φ^{(k)} = P_k / den^{k+1}`.
fn derivative_numerator(num: &UniPoly, den: &UniPoly, order: usize) -> UniPoly {
    let dden = den.derivative();
    let mut p = num.clone();
    for k in 0..order {
        let c = GaussScalar::from_int(k as i64 + 1);
        p = &(&p.derivative() * den) - &(&p * &dden).scale(&c);
    }
    p
}

pub fn logderiv_proximity(
    num: &UniPoly,
    den: &UniPoly,
    order: usize,
    r: f64,
    tol: f64,
) -> Result<LogDerivative, NevanError> {
    if num.is_zero() || den.is_zero() {
        return Err(NevanError::ZeroPolynomial);
    }
    let p = derivative_numerator(num, den, order);
    if p.is_zero() {
        return Ok(LogDerivative {
            value: 0.0,
            derivative_vanishes: true,
        });
    }
    // φ^{(k)}/φ = P_k / (num · den^k).
    let q = num * &den.pow(order as u32);
    Ok(LogDerivative {
        value: proximity(&p, &q, r, tol)?,
        derivative_vanishes: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalKind {
    Counting,
    TruncatedCounting,
    Characteristic,
    Proximity,
}

/// A functional sampled on a radius grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub kind: FunctionalKind,
    pub truncation: Option<usize>,
    pub evaluations: Vec<(f64, f64)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, parse_unipoly};
    use proptest::prelude::*;

    fn up(s: &str) -> UniPoly {
        parse_unipoly(s).unwrap()
    }

    fn curve(cs: &[&str]) -> RationalCurve {
        RationalCurve::reduce_representation(cs.iter().map(|s| up(s)).collect()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(curve(&["z", "z^2", "z^3"]).components(), &[up("1"), up("z"), up("z^2")]);
        assert_eq!(curve(&["z^2 - 1", "z - 1", "0"]).components(), &[up("z + 1"), up("1"), up("0")]);
        assert_eq!(
            RationalCurve::reduce_representation(vec![UniPoly::zero(), UniPoly::zero()]),
            Err(NevanError::ZeroCurve)
        );
        assert_eq!(characteristic_slope(&curve(&["z^3 + 1", "z", "1"])), 3);
        assert_eq!(characteristic_slope(&curve(&["1", "1", "1"])), 0);
    }

    #[test]
    fn divisor_examples() {
        let d = zero_divisor(&up("z^3 - z^2")).unwrap();
        assert_eq!(d.origin_mult, 2);
        assert_eq!(d.entries.len(), 1);
        assert!((d.entries[0].location - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(zero_divisor(&up("7")).unwrap().entries.is_empty());
        let d = zero_divisor(&up("z^2 + 1").pow(2)).unwrap();
        assert_eq!(d.degree(), 4);
        assert!(d.entries.iter().all(|e| e.multiplicity == 2 && (e.modulus - 1.0).abs() < 1e-12));
    }

    #[test]
    fn counting_examples() {
        let pm1 = zero_divisor(&up("z^2 - 1")).unwrap();
        for r in [1.5, 3.0, 100.0] {
            assert!((counting_function(&pm1, r, None).unwrap() - 2.0 * f64::ln(r)).abs() < 1e-12);
        }
        let z3 = zero_divisor(&up("z^3")).unwrap();
        assert!((counting_function(&z3, std::f64::consts::E, Some(2)).unwrap() - 2.0).abs() < 1e-12);
        let p = zero_divisor(&up("z - 2").pow(5)).unwrap();
        assert!((counting_function(&p, 4.0, Some(4)).unwrap() - 4.0 * 2f64.ln()).abs() < 1e-9);
        assert!(counting_function(&p, 1.0, None).is_err());
    }

    #[test]
    fn characteristic_closed_form() {
        // ‖(1, z)‖ on |z| = r is constant: T(r) = ½ log((1 + r²)/2).
        let f = curve(&["1", "z"]);
        for r in [2.0, std::f64::consts::E.powi(3), 50.0] {
            let t = characteristic(&f, r, DEFAULT_TOL, Norm::Euclidean).unwrap();
            assert!((t - 0.5 * ((1.0 + r * r) / 2.0).ln()).abs() < 1e-9);
        }
        let c = curve(&["1", "1", "1"]);
        assert!(characteristic(&c, 10.0, DEFAULT_TOL, Norm::Euclidean).unwrap().abs() < 1e-12);
        assert!(characteristic(&f, 0.5, DEFAULT_TOL, Norm::Euclidean).is_err());
    }

    #[test]
    fn characteristic_slope_of_conic_curve() {
        let f = curve(&["1", "z", "z^2"]);
        let a = characteristic(&f, 1e3, DEFAULT_TOL, Norm::Euclidean).unwrap();
        let b = characteristic(&f, 1e6, DEFAULT_TOL, Norm::Euclidean).unwrap();
        assert!(((b - a) / 1e3f64.ln() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn proximity_examples() {
        let one = UniPoly::one();
        assert!((proximity(&up("5"), &one, 3.0, DEFAULT_TOL).unwrap() - 5f64.ln()).abs() < 1e-12);
        assert!((proximity(&up("z"), &one, 2.0, DEFAULT_TOL).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!(proximity(&one, &up("z"), 2.0, DEFAULT_TOL).unwrap().abs() < 1e-12);
        assert!(matches!(
            proximity(&one, &up("z - 2"), 2.0, DEFAULT_TOL),
            Err(NevanError::PoleOnCircle { .. })
        ));
    }

    #[test]
    fn jensen_residual_examples() {
        let grid = [2.0, 4.0, 8.0, 16.0];
        let tol = DEFAULT_TOL;
        let spread = |v: &[f64]| {
            v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
        };
        let res = jensen_residual(&up("z"), &UniPoly::one(), &grid, tol).unwrap();
        assert!(spread(&res) <= 2.0 * tol, "{res:?}");
        let res = jensen_residual(&up("3"), &UniPoly::one(), &grid, tol).unwrap();
        assert!(spread(&res) <= 2.0 * tol);
        assert!((res[0] + 3f64.ln()).abs() < 1e-9);
        let res = jensen_residual(&up("z^2 - 1"), &up("z"), &grid, tol).unwrap();
        assert!(spread(&res) <= 1e-6, "{res:?}");
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&[up("1"), up("z"), up("z^2")]), up("2"));
        assert_eq!(wronskian(&[up("z"), up("2*z")]), UniPoly::zero());
        assert_eq!(wronskian(&[up("1"), up("z"), up("z^3")]), up("6*z"));
        // Zero leading pivot forces a row swap.
        assert_eq!(wronskian(&[up("z"), up("1")]), up("-1"));
    }

    #[test]
    fn nondegeneracy_examples() {
        let conic = VarietyModel::new(2, 1, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap();
        let f = curve(&["1", "z", "z^2"]);
        let r = nondegenerate_over_id(&f, &conic, 2).unwrap();
        assert!(r.nondegenerate && r.rank == 5 && r.witness.is_none());
        let p2 = VarietyModel::projective_space(2);
        assert!(nondegenerate_over_id(&f, &p2, 1).unwrap().nondegenerate);
        let g = curve(&["1", "z", "z"]);
        let r = nondegenerate_over_id(&g, &p2, 1).unwrap();
        assert!(!r.nondegenerate);
        assert_eq!(r.witness, Some(parse_poly("x1 - x2", 3).unwrap()));
        // On P², (1, z, z²) satisfies x0*x2 - x1^2 = 0 in degree 2.
        let r = nondegenerate_over_id(&f, &p2, 2).unwrap();
        assert_eq!(r.witness, Some(parse_poly("x0*x2 - x1^2", 3).unwrap()));
    }

    #[test]
    fn logderiv_examples() {
        let one = UniPoly::one();
        let v = logderiv_proximity(&up("z"), &one, 1, 2.0, DEFAULT_TOL).unwrap();
        assert!(v.value.abs() < 1e-12 && !v.derivative_vanishes);
        let v = logderiv_proximity(&up("4"), &one, 1, 2.0, DEFAULT_TOL).unwrap();
        assert!(v.derivative_vanishes && v.value == 0.0);
        let v = logderiv_proximity(&up("z^2 - 1"), &one, 1, 10.0, DEFAULT_TOL).unwrap();
        assert!(v.value.abs() < 1e-12);
        // φ = 1/z: φ'/φ = -1/z.
        let v = logderiv_proximity(&one, &up("z"), 1, 2.0, DEFAULT_TOL).unwrap();
        assert!(v.value.abs() < 1e-12);
        // φ = z^3: φ''/φ = 6/z^2, |·| = 6/r^2 on |z| = r.
        let v = logderiv_proximity(&up("z^3"), &one, 2, 2.0, DEFAULT_TOL).unwrap();
        assert!((v.value - 1.5f64.ln()).abs() < 1e-12);
    }

    fn arb_uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((-5i64..6, -2i64..3), 1..=max_deg + 1)
            .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(|(a, b)| GaussScalar::from_parts(a, b)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn wronskian_scaling_and_multiplier(
            fs in prop::collection::vec(arb_uni(4), 1..4),
            h in arb_uni(2),
            c in (-4i64..5, -3i64..4),
        ) {
            let c = GaussScalar::from_parts(c.0, c.1);
            let w = wronskian(&fs);
            let mut scaled = fs.clone();
            scaled[0] = scaled[0].scale(&c);
            prop_assert_eq!(wronskian(&scaled), w.scale(&c));
            let multiplied: Vec<UniPoly> = fs.iter().map(|f| &h * f).collect();
            prop_assert_eq!(wronskian(&multiplied), &h.pow(fs.len() as u32) * &w);
        }

        #[test]
        fn counting_is_monotone(roots in prop::collection::vec((-6i64..7, -6i64..7, 1u32..4), 1..5), r in 1.1f64..20.0) {
            let p = roots.iter().fold(UniPoly::one(), |acc, &(a, b, m)| {
                &acc * &UniPoly::from_roots(&[GaussScalar::from_parts(a, b)]).pow(m)
            });
            let div = zero_divisor(&p).unwrap();
            let mut prev = 0.0;
            for m in 1..5 {
                let v = counting_function(&div, r, Some(m)).unwrap();
                prop_assert!(v >= prev - 1e-12);
                prev = v;
            }
            prop_assert!(prev <= counting_function(&div, r, None).unwrap() + 1e-12);
            prop_assert!(counting_function(&div, r * 1.5, Some(2)).unwrap() >= counting_function(&div, r, Some(2)).unwrap());
        }
    }

    #[test]
    fn slope_law_on_random_curves() {
        // The characteristic grows like deg f · log r; the difference quotient
        // between r = 1e3 and r = 1e6 removes the bounded term.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..4);
            let comps: Vec<UniPoly> = (0..=n)
                .map(|_| {
                    let deg = rng.gen_range(0..=6);
                    UniPoly::from_coeffs((0..=deg).map(|_| GaussScalar::from_parts(rng.gen_range(-5..6), rng.gen_range(-5..6))).collect())
                })
                .collect();
            let Ok(f) = RationalCurve::reduce_representation(comps) else { continue };
            let a = characteristic(&f, 1e3, DEFAULT_TOL, Norm::Euclidean).unwrap();
            let b = characteristic(&f, 1e6, DEFAULT_TOL, Norm::Euclidean).unwrap();
            let slope = (b - a) / 1e3f64.ln();
            assert!((slope - characteristic_slope(&f) as f64).abs() <= 0.01, "slope {slope} for {f:?}");
        }
    }
}
