//! Squarefree decomposition and numeric root location.

use num_complex::Complex64;
use num_traits::Zero;

use super::unipoly::UniPoly;
use super::PolyError;

/// Default root tolerance.
pub const ROOT_TOL: f64 = 1e-12;

const MAX_ITER: usize = 2000;

/// Yun's squarefree decomposition: monic, pairwise coprime, squarefree
/// factors with multiplicities such that `p = lead · ∏ factorᵐ`.
/// Constants decompose to the empty list.
pub fn squarefree_decomp(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0).expect("gcd divides p").monic();
    let mut c = dp.exact_div(&a0).expect("gcd divides p'");
    // c was scaled along with p; rescale so that b and c stay consistent.
    let lead = p.leading().expect("nonzero").clone();
    c = c.scale(&lead.inv().expect("nonzero lead"));
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Pairwise coprime, squarefree, monic polynomials `b_1, …, b_s` such that
/// every nonzero input is a constant times `∏ b_j^{e_j}`. Inputs are split
/// through their squarefree decompositions first, so each `b_j` has a single
/// multiplicity in every input. Zero and constant inputs contribute nothing.
pub fn coprime_basis(polys: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_constant()) {
        for (factor, _) in squarefree_decomp(p).expect("nonzero") {
            let mut rest = factor;
            let mut next = Vec::with_capacity(basis.len() + 1);
            for b in basis.drain(..) {
                let g = b.gcd(&rest);
                if g.is_constant() {
                    next.push(b);
                    continue;
                }
                let other = b.exact_div(&g).expect("gcd divides").monic();
                rest = rest.exact_div(&g).expect("gcd divides").monic();
                next.push(g);
                if !other.is_constant() {
                    next.push(other);
                }
            }
            if !rest.is_constant() {
                next.push(rest.monic());
            }
            basis = next;
        }
    }
    basis.sort_by_key(|b| (b.degree(), b.to_text()));
    basis
}

/// One distinct root with its exact multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootApprox {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Locates every distinct root of `p`.
///
/// Multiplicities come from [`squarefree_decomp`]; locations from Aberth
/// iteration on each squarefree factor. Roots at the origin are detected
/// exactly. Output is sorted by modulus, then argument.
pub fn complex_roots(p: &UniPoly, tol: f64) -> Result<Vec<RootApprox>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(PolyError::ConstantPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomp(p)? {
        let mut g = factor;
        if g.order_at_zero() > 0 {
            out.push(RootApprox {
                value: Complex64::zero(),
                multiplicity: mult,
            });
            g = g.exact_div(&UniPoly::z()).expect("z divides");
        }
        if g.is_constant() {
            continue;
        }
        for z in aberth(&g, tol)? {
            out.push(RootApprox {
                value: z,
                multiplicity: mult,
            });
        }
    }
    out.sort_by(|a, b| {
        a.value
            .norm()
            .total_cmp(&b.value.norm())
            .then(a.value.arg().total_cmp(&b.value.arg()))
    });
    Ok(out)
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration on a squarefree polynomial.
fn aberth(g: &UniPoly, tol: f64) -> Result<Vec<Complex64>, PolyError> {
    let c = g.to_c64();
    let n = c.len() - 1;
    let lead = c[n];
    if n == 1 {
        return Ok(vec![-c[0] / lead]);
    }
    // Starting circle: geometric mean of the root moduli.
    let r0 = (c[0].norm() / lead.norm()).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r0, th)
        })
        .collect();
    let eps = f64::EPSILON;
    let abs_c: Vec<f64> = c.iter().map(|a| a.norm()).collect();
    // Rounding error bound of Horner evaluation at modulus t.
    let noise = |t: f64| 4.0 * (n as f64 + 1.0) * eps * abs_c.iter().rev().fold(0.0, |acc, a| acc * t + a);
    let mut frozen = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut done = true;
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&c, z[k]);
            if p.norm() <= noise(z[k].norm()) {
                frozen[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                done = false;
                z[k] += Complex64::new(1e-3, 1e-3);
                continue;
            }
            z[k] -= w;
            let scale = z[k].norm().max(1.0);
            if w.norm() > (1e-3 * tol * scale).max(16.0 * eps * scale) {
                done = false;
            } else {
                frozen[k] = true;
            }
        }
        if done {
            // Final Newton polish.
            for zk in z.iter_mut() {
                let (p, dp) = eval_with_derivative(&c, *zk);
                if !dp.is_zero() {
                    let step = p / dp;
                    if step.norm() < tol {
                        *zk -= step;
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(PolyError::RootIterationCap {
        factor: g.to_text(),
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::GaussScalar;
    use proptest::prelude::*;

    #[test]
    fn decomposition_examples() {
        let p = UniPoly::from_ints(&[0, 0, -1, 1]);
        let d = squarefree_decomp(&p).unwrap();
        assert_eq!(d, vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::z(), 2)]);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(squarefree_decomp(&q).unwrap(), vec![(q.clone(), 1)]);
        assert!(squarefree_decomp(&UniPoly::from_ints(&[5])).unwrap().is_empty());
        assert!(matches!(squarefree_decomp(&UniPoly::zero()), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        let a = &UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[-2, 1]);
        let b = &UniPoly::from_ints(&[-2, 1]) * &UniPoly::from_ints(&[0, 1]);
        let basis = coprime_basis(&[a.clone(), b.clone(), UniPoly::from_ints(&[3])]);
        assert_eq!(basis.len(), 3);
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                assert!(x.gcd(y).is_constant());
            }
        }
        let rebuilt = basis
            .iter()
            .fold(UniPoly::one(), |acc, f| &acc * &f.pow(a.multiplicity_of(f) as u32));
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn root_examples() {
        let r = complex_roots(&UniPoly::from_ints(&[-1, 0, 1]), ROOT_TOL).unwrap();
        assert_eq!(r.len(), 2);
        let mut re: Vec<f64> = r.iter().map(|x| x.value.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);

        let r = complex_roots(&UniPoly::from_ints(&[0, 0, 0, 1]), ROOT_TOL).unwrap();
        assert_eq!(r, vec![RootApprox { value: Complex64::zero(), multiplicity: 3 }]);

        // Quadratic-formula oracle: z^2 - 2z + 2 has roots 1 ± i.
        let r = complex_roots(&UniPoly::from_ints(&[2, -2, 1]), ROOT_TOL).unwrap();
        let expected = [Complex64::new(1.0, -1.0), Complex64::new(1.0, 1.0)];
        for e in expected {
            assert!(r.iter().any(|x| (x.value - e).norm() < 1e-12 && x.multiplicity == 1));
        }
    }

    #[test]
    fn clustered_real_roots_converge() {
        let p = UniPoly::from_roots(&[9, 10, 11, 12].map(GaussScalar::from_int));
        let r = complex_roots(&p, ROOT_TOL).unwrap();
        for (x, e) in r.iter().zip([9.0, 10.0, 11.0, 12.0]) {
            assert!((x.value - Complex64::new(e, 0.0)).norm() < 1e-9, "{:?}", x.value);
        }
        let sextic = UniPoly::from_ints(&[-504, 0, 191, 0, -24, 0, 1]);
        assert_eq!(complex_roots(&sextic, ROOT_TOL).unwrap().len(), 6);
    }

    #[test]
    fn repeated_complex_roots() {
        let q = UniPoly::from_ints(&[1, 0, 1]).pow(2);
        let r = complex_roots(&q, ROOT_TOL).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.multiplicity == 2 && (x.value.norm() - 1.0).abs() < 1e-12));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((-9i64..10, -3i64..4), 2..=max_deg + 1).prop_map(|cs| {
            UniPoly::from_coeffs(cs.into_iter().map(|(a, b)| GaussScalar::from_parts(a, b)).collect())
        })
    }

    /// Random polynomial with forced repeated factors.
    fn arb_structured() -> impl Strategy<Value = UniPoly> {
        (arb_poly(3), arb_poly(2), 1u32..3).prop_map(|(a, b, e)| &a.pow(e) * &b)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn decomposition_reconstructs(p in arb_structured()) {
            prop_assume!(!p.is_zero());
            let d = squarefree_decomp(&p).unwrap();
            let prod = d.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32));
            let rebuilt = prod.scale(p.leading().unwrap());
            prop_assert_eq!(rebuilt, p);
            for (i, (f, _)) in d.iter().enumerate() {
                prop_assert!(f.gcd(&f.derivative()).is_constant());
                for (g, _) in &d[i + 1..] {
                    prop_assert!(f.gcd(g).is_constant());
                }
            }
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(8), b in arb_poly(8), c in arb_poly(3)) {
            let pa = &a * &c;
            let pb = &b * &c;
            let g = pa.gcd(&pb);
            prop_assert!(g.divides(&pa) && g.divides(&pb));
            prop_assert!(c.monic().divides(&g));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn roots_are_roots(p in arb_structured()) {
            prop_assume!(!p.is_constant());
            let tol = ROOT_TOL;
            let roots = complex_roots(&p, tol).unwrap();
            let total: usize = roots.iter().map(|r| r.multiplicity).sum();
            prop_assert_eq!(total, p.degree().unwrap());
            for r in &roots {
                let v = p.eval_c64(r.value).norm();
                // Backward-error scale: the coefficient vector evaluated in magnitude.
                let scale: f64 = p
                    .to_c64()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.norm() * r.value.norm().powi(i as i32))
                    .sum();
                prop_assert!(v <= tol * (1.0 + scale), "|p(z)| = {v} at {}", r.value);
            }
        }
    }
}
