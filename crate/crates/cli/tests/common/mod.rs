//! Random valid configurations and an independent integer rank oracle.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use svlab_core::nevan::RationalCurve;
use svlab_core::polyalg::{parse_poly, GaussScalar, Monomial, MultiPoly, UniPoly};
use svlab_core::variety::{check_subgeneral, HypersurfaceFamily, PositionVerdict, VarietyModel};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// `(file stem, text)` for every shipped configuration, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, std::fs::read_to_string(&p).expect("readable"))
        })
        .collect();
    out.sort();
    out
}

/// Configurations that describe a second-main-theorem experiment.
pub fn is_smt_config(name: &str) -> bool {
    !name.starts_with("unique_") && !name.starts_with("jensen_")
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn to_int(s: &GaussScalar) -> i128 {
    assert_eq!(svlab_core::polyalg::rat_to_f64(&s.im), 0.0);
    let v = svlab_core::polyalg::rat_to_f64(&s.re);
    assert_eq!(v.fract(), 0.0);
    v as i128
}

pub fn int_vectors(vs: &[Vec<GaussScalar>]) -> Vec<Vec<i128>> {
    vs.iter().map(|v| v.iter().map(to_int).collect()).collect()
}

pub fn gauss_vectors(vs: &[Vec<i64>]) -> Vec<Vec<GaussScalar>> {
    vs.iter().map(|v| v.iter().map(|&x| GaussScalar::from_int(x)).collect()).collect()
}

pub fn linear_form(coeffs: &[i64]) -> MultiPoly {
    let n = coeffs.len();
    MultiPoly::from_terms(
        n,
        coeffs.iter().enumerate().map(|(i, &c)| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            (Monomial(e), GaussScalar::from_int(c))
        }),
    )
}

pub fn random_uni(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    let mut cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    if cs[deg] == 0 {
        cs[deg] = 1;
    }
    UniPoly::from_ints(&cs)
}

pub fn conic() -> VarietyModel {
    VarietyModel::new(2, 1, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap()
}

pub fn twisted_cubic() -> VarietyModel {
    let gens = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"];
    VarietyModel::new(3, 1, gens.iter().map(|g| parse_poly(g, 4).unwrap()).collect()).unwrap()
}

/// Form of degree `deg` in the parameter variables whose zeros on the
/// rational normal curve of that degree are the integer parameters `roots`.
fn normal_curve_section(roots: &[i64]) -> MultiPoly {
    let p = roots
        .iter()
        .fold(UniPoly::one(), |acc, &r| &acc * &UniPoly::from_ints(&[-r, 1]));
    let coeffs: Vec<i64> = p.coeffs().iter().map(|c| to_int(c) as i64).collect();
    linear_form(&coeffs)
}

/// A random configuration with the theorem's hypotheses satisfied by
/// construction or by check; `None` when a draw should be discarded.
pub struct RandomSetup {
    pub label: String,
    pub variety: VarietyModel,
    pub family: HypersurfaceFamily,
    pub f: RationalCurve,
}

fn in_position(v: &VarietyModel, fam: &HypersurfaceFamily) -> bool {
    fam.check_on(v).is_ok()
        && matches!(check_subgeneral(v, fam, None).map(|r| r.verdict), Ok(PositionVerdict::InPosition))
}

fn random_plane_lines(rng: &mut ChaCha8Rng) -> Option<RandomSetup> {
    let n_sub = rng.gen_range(2..=4usize);
    let q = rng.gen_range(2 * n_sub..=8);
    let mut lines: Vec<Vec<i64>> = Vec::new();
    while lines.len() < q {
        if n_sub >= 3 && lines.len() >= 2 && rng.gen_bool(0.3) {
            // A line through the intersection of two earlier ones.
            let (a, b) = (&lines[0], &lines[1]);
            let (s, t) = (rng.gen_range(1..=4), rng.gen_range(-4..=-1));
            lines.push(a.iter().zip(b).map(|(x, y)| s * x + t * y).collect());
        } else {
            lines.push((0..3).map(|_| rng.gen_range(-9..=9)).collect());
        }
    }
    let fam = HypersurfaceFamily::new(lines.iter().map(|l| linear_form(l)).collect(), n_sub).ok()?;
    let v = VarietyModel::projective_space(2);
    if !in_position(&v, &fam) {
        return None;
    }
    let comps = (0..3).map(|_| random_uni(rng, 3, 6)).collect();
    let f = RationalCurve::reduce_representation(comps).ok()?;
    Some(RandomSetup {
        label: format!("P2 lines q={q} N={n_sub}"),
        variety: v,
        family: fam,
        f,
    })
}

fn random_plane_quadrics(rng: &mut ChaCha8Rng) -> Option<RandomSetup> {
    let q = 7;
    let forms: Vec<MultiPoly> = (0..q)
        .map(|_| {
            let a = linear_form(&(0..3).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
            let b = linear_form(&(0..3).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
            &a * &b
        })
        .collect();
    let fam = HypersurfaceFamily::new(forms, 2).ok()?;
    let v = VarietyModel::projective_space(2);
    if !in_position(&v, &fam) {
        return None;
    }
    let comps = (0..3).map(|_| random_uni(rng, 3, 4)).collect();
    let f = RationalCurve::reduce_representation(comps).ok()?;
    Some(RandomSetup {
        label: "P2 quadrics q=7 N=2".into(),
        variety: v,
        family: fam,
        f,
    })
}

fn distinct_params(rng: &mut ChaCha8Rng, count: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    while out.len() < count {
        let x = rng.gen_range(-12..=12);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn random_normal_curve(rng: &mut ChaCha8Rng, degree: usize) -> Option<RandomSetup> {
    let v = if degree == 2 { conic() } else { twisted_cubic() };
    let hilbert = degree + 1;
    // N = 1 needs q > 2H/2 = H sections with pairwise disjoint zero sets.
    let q = rng.gen_range(hilbert + 1..=hilbert + 2);
    let params = distinct_params(rng, q * degree);
    let forms: Vec<MultiPoly> = params.chunks(degree).map(normal_curve_section).collect();
    let fam = HypersurfaceFamily::new(forms, 1).ok()?;
    if !in_position(&v, &fam) {
        return None;
    }
    let p = random_uni(rng, 2, 5);
    let s = random_uni(rng, 2, 5);
    let comps = (0..=degree)
        .map(|i| &p.pow((degree - i) as u32) * &s.pow(i as u32))
        .collect();
    let f = RationalCurve::reduce_representation(comps).ok()?;
    Some(RandomSetup {
        label: format!("rational normal curve of degree {degree}, q={q} N=1"),
        variety: v,
        family: fam,
        f,
    })
}

/// Draws one configuration of a randomly chosen kind.
pub fn random_setup(rng: &mut ChaCha8Rng) -> Option<RandomSetup> {
    match rng.gen_range(0..10) {
        0..=4 => random_plane_lines(rng),
        5 => random_plane_quadrics(rng),
        6 | 7 => random_normal_curve(rng, 2),
        _ => random_normal_curve(rng, 3),
    }
}

/// A second curve related to `f`: a scalar multiple, a perturbation
/// agreeing with `f` at prescribed points, or an unrelated curve.
pub fn random_partner(rng: &mut ChaCha8Rng, f: &RationalCurve) -> Option<RationalCurve> {
    let comps: Vec<UniPoly> = match rng.gen_range(0..3) {
        0 => {
            let c = UniPoly::from_ints(&[rng.gen_range(1..=5)]);
            f.components().iter().map(|x| &c * x).collect()
        }
        1 => {
            let h = random_uni(rng, 2, 3);
            let extra: Vec<UniPoly> = f.components().iter().map(|_| random_uni(rng, 1, 3)).collect();
            f.components().iter().zip(&extra).map(|(x, e)| x + &(&h * e)).collect()
        }
        _ => f.components().iter().map(|_| random_uni(rng, 3, 6)).collect(),
    };
    RationalCurve::reduce_representation(comps).ok()
}
