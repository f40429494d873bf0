//! Graded data of a projective variety `V ⊂ Pⁿ`: Hilbert function, classes
//! in the degree-`d` quotient `I_d(V)`, ranks of hypersurface families,
//! emptiness of intersections with `V` and the subgeneral-position test.
//!
//! The degree-`d` ideal piece is spanned by monomial multiples of the
//! supplied generators. It equals `(I(V))_d` when the generators generate
//! the saturated ideal in degree `d`; callers are responsible for supplying
//! such generators.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::polyalg::{binomial, mono_basis, ExactMatrix, GaussScalar, Monomial, MultiPoly, Rref};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("generator {index} is zero or not homogeneous")]
    BadGenerator { index: usize },
    #[error("polynomial has {got} variables, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("declared dimension {k} exceeds ambient dimension {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("polynomial {index} is zero or not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("polynomial {index} has degree {got}, expected {expected}")]
    DegreeMismatch { index: usize, expected: u32, got: u32 },
    #[error("family has {q} members but N+1 = {needed}")]
    TooFewMembers { q: usize, needed: usize },
    #[error("hypersurface {index} vanishes identically on V")]
    VanishesOnVariety { index: usize },
}

/// Cached linear algebra of one graded piece.
#[derive(Debug)]
pub struct GradedPiece {
    pub degree: u32,
    /// Monomial basis of `H_d`, descending graded-lex.
    pub basis: Vec<Monomial>,
    /// Reduced row-echelon form of the ideal piece.
    pub ideal: Rref,
    /// Columns of `basis` that are not pivots; the monomials there form the
    /// canonical basis of `I_d(V)`.
    pub complement: Vec<usize>,
    pub hilbert: usize,
}

/// Projective variety given by homogeneous generators and a declared dimension.
#[derive(Debug)]
pub struct VarietyModel {
    n: usize,
    k: usize,
    generators: Vec<MultiPoly>,
    cache: Mutex<BTreeMap<u32, Arc<GradedPiece>>>,
}

impl Clone for VarietyModel {
    fn clone(&self) -> Self {
        VarietyModel {
            n: self.n,
            k: self.k,
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

/// Class `[Q]` of a form in `I_d(V)`, in canonical complement coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    pub degree: u32,
    pub coords: Vec<GaussScalar>,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl VarietyModel {
    pub fn new(n: usize, k: usize, generators: Vec<MultiPoly>) -> Result<Self, VarietyError> {
        if k > n {
            return Err(VarietyError::DimensionOutOfRange { k, n });
        }
        for (index, g) in generators.iter().enumerate() {
            if g.n_vars() != n + 1 {
                return Err(VarietyError::ArityMismatch {
                    expected: n + 1,
                    got: g.n_vars(),
                });
            }
            if !g.is_homogeneous() {
                return Err(VarietyError::BadGenerator { index });
            }
        }
        Ok(VarietyModel {
            n,
            k,
            generators,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// `Pⁿ` itself: no generators, `k = n`.
    pub fn projective_space(n: usize) -> Self {
        VarietyModel::new(n, n, Vec::new()).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vars(&self) -> usize {
        self.n + 1
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// Rows `m·g` for generators `g` of degree `e ≤ d` and monomials `m` of
    /// degree `d − e`, in mono-basis coordinates.
    pub fn ideal_graded_piece(&self, d: u32) -> ExactMatrix {
        let cols = binomial(self.n + d as usize, self.n);
        let mut rows = Vec::new();
        for g in &self.generators {
            let e = g.homogeneous_degree().expect("checked in new");
            if e > d {
                continue;
            }
            for m in mono_basis(self.n_vars(), d - e) {
                rows.push(g.mul_monomial(&m).coords(d));
            }
        }
        ExactMatrix::from_rows(cols, rows)
    }

    pub fn graded(&self, d: u32) -> Arc<GradedPiece> {
        if let Some(p) = self.cache.lock().expect("cache lock").get(&d) {
            return p.clone();
        }
        // Computed outside the lock; concurrent fills produce identical values.
        let basis = mono_basis(self.n_vars(), d);
        let ideal = self.ideal_graded_piece(d).rref();
        let complement: Vec<usize> = (0..basis.len()).filter(|c| !ideal.pivot_cols.contains(c)).collect();
        let piece = Arc::new(GradedPiece {
            degree: d,
            hilbert: complement.len(),
            basis,
            ideal,
            complement,
        });
        self.cache
            .lock()
            .expect("cache lock")
            .entry(d)
            .or_insert(piece)
            .clone()
    }

    /// `H_V(d) = C(n+d, n) − rank (I(V))_d`.
    pub fn hilbert_function(&self, d: u32) -> usize {
        self.graded(d).hilbert
    }

    /// Monomials `A_i` whose classes form the canonical basis of `I_d(V)`.
    pub fn complement_basis(&self, d: u32) -> Vec<MultiPoly> {
        let g = self.graded(d);
        g.complement
            .iter()
            .map(|&c| MultiPoly::monomial(GaussScalar::from_int(1), g.basis[c].clone()))
            .collect()
    }

    /// Reduces a degree-`d` form (zero allowed) modulo the ideal piece.
    pub fn class_in_degree(&self, q: &MultiPoly, d: u32) -> QuotientClass {
        let g = self.graded(d);
        let mut v = q.coords(d);
        for (i, &pc) in g.ideal.pivot_cols.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for (c, x) in g.ideal.reduced.row(i).iter().enumerate() {
                if !x.is_zero() {
                    v[c] -= &(&f * x);
                }
            }
        }
        QuotientClass {
            degree: d,
            coords: g.complement.iter().map(|&c| v[c].clone()).collect(),
        }
    }

    /// `[Q]` for a nonzero form `Q`.
    pub fn class_coords(&self, q: &MultiPoly) -> Result<QuotientClass, VarietyError> {
        self.check_arity(q)?;
        let d = q
            .homogeneous_degree()
            .ok_or(VarietyError::NotHomogeneous { index: 0 })?;
        Ok(self.class_in_degree(q, d))
    }

    /// Form with the given complement coordinates.
    pub fn form_from_class(&self, d: u32, coords: &[GaussScalar]) -> MultiPoly {
        let g = self.graded(d);
        MultiPoly::from_terms(
            self.n_vars(),
            g.complement
                .iter()
                .zip(coords)
                .map(|(&c, a)| (g.basis[c].clone(), a.clone())),
        )
    }

    fn check_arity(&self, q: &MultiPoly) -> Result<(), VarietyError> {
        if q.n_vars() != self.n_vars() {
            return Err(VarietyError::ArityMismatch {
                expected: self.n_vars(),
                got: q.n_vars(),
            });
        }
        Ok(())
    }

    /// Class coordinates of a list of forms sharing one degree.
    pub fn class_vectors(&self, qs: &[MultiPoly]) -> Result<Vec<Vec<GaussScalar>>, VarietyError> {
        let mut degree = None;
        let mut out = Vec::with_capacity(qs.len());
        for (index, q) in qs.iter().enumerate() {
            self.check_arity(q)?;
            let d = q.homogeneous_degree().ok_or(VarietyError::NotHomogeneous { index })?;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(VarietyError::DegreeMismatch {
                        index,
                        expected: e,
                        got: d,
                    })
                }
                _ => {}
            }
            out.push(self.class_in_degree(q, d).coords);
        }
        Ok(out)
    }

    /// Rank of `{[Q_i]}` in `I_d(V)`.
    pub fn family_rank(&self, qs: &[MultiPoly]) -> Result<usize, VarietyError> {
        let vs = self.class_vectors(qs)?;
        let Some(first) = vs.first() else {
            return Ok(0);
        };
        Ok(ExactMatrix::from_rows(first.len(), vs.clone()).rank())
    }

    /// Default degree cap for emptiness checks on `V ∩ {Q = 0}`.
    pub fn default_degree_cap(&self, qs: &[MultiPoly]) -> u32 {
        let excess: u32 = self
            .generators
            .iter()
            .chain(qs)
            .map(|g| g.total_degree().unwrap_or(1).saturating_sub(1))
            .sum();
        excess + self.n as u32 + 1
    }

    /// Decides whether `V ∩ ⋂ {Q_i = 0}` is empty by looking for a degree in
    /// which the augmented ideal contains every monomial.
    ///
    /// `NonEmpty` is heuristic: the augmented Hilbert values are positive and
    /// constant over the last `k + 2` degrees up to the cap.
    pub fn is_empty_on_variety(
        &self,
        qs: &[MultiPoly],
        degree_cap: Option<u32>,
    ) -> Result<Emptiness, VarietyError> {
        for (index, q) in qs.iter().enumerate() {
            self.check_arity(q)?;
            if !q.is_homogeneous() {
                return Err(VarietyError::NotHomogeneous { index });
            }
        }
        let cap = degree_cap.unwrap_or_else(|| self.default_degree_cap(qs));
        let mut gens = self.generators.clone();
        gens.extend(qs.iter().cloned());
        let augmented = VarietyModel::new(self.n, self.k, gens)?;
        let mut values = Vec::with_capacity(cap as usize + 1);
        for d in 0..=cap {
            let h = augmented.hilbert_function(d);
            if h == 0 {
                return Ok(Emptiness::Empty { degree: d });
            }
            values.push(h);
        }
        let window = self.k + 2;
        if values.len() >= window {
            let tail = &values[values.len() - window..];
            if tail.iter().all(|&h| h == tail[0]) {
                return Ok(Emptiness::NonEmpty {
                    stable_value: tail[0],
                    from_degree: cap + 1 - window as u32,
                });
            }
        }
        Ok(Emptiness::Inconclusive { cap })
    }

    /// Checks the declared dimension against the growth of the Hilbert
    /// function: over `max(k+2, 4)` consecutive degrees starting past the
    /// generator degrees, the `k`-th differences must be a positive constant
    /// and the `(k+1)`-th differences zero. Returns a warning on mismatch.
    pub fn dimension_warning(&self) -> Option<String> {
        let start = self
            .generators
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(1)
            .max(1);
        let count = (self.k + 2).max(4);
        let mut diffs: Vec<i64> = (0..count as u32)
            .map(|i| self.hilbert_function(start + i) as i64)
            .collect();
        for _ in 0..self.k {
            diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let consistent = diffs.first().is_some_and(|&c| c > 0) && diffs.iter().all(|&x| x == diffs[0]);
        (!consistent).then(|| {
            format!(
                "declared dimension k = {} does not match Hilbert function growth from degree {start}",
                self.k
            )
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Emptiness {
    /// The augmented ideal contains all monomials of this degree.
    Empty { degree: u32 },
    /// Heuristic: augmented Hilbert values stabilised at a positive value.
    NonEmpty { stable_value: usize, from_degree: u32 },
    Inconclusive { cap: u32 },
}

/// One member `Q_i` of a family with its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    pub poly: MultiPoly,
    pub degree: u32,
}

/// `q` hypersurfaces together with the subgeneral-position parameter `N`.
#[derive(Clone, Debug)]
pub struct HypersurfaceFamily {
    members: Vec<Hypersurface>,
    n_subgeneral: usize,
    common_degree: u32,
}

impl HypersurfaceFamily {
    pub fn new(polys: Vec<MultiPoly>, n_subgeneral: usize) -> Result<Self, VarietyError> {
        let mut members = Vec::with_capacity(polys.len());
        for (index, poly) in polys.into_iter().enumerate() {
            let degree = poly
                .homogeneous_degree()
                .filter(|&d| d > 0)
                .ok_or(VarietyError::NotHomogeneous { index })?;
            members.push(Hypersurface { poly, degree });
        }
        let common_degree = members.iter().fold(1u32, |acc, m| acc.lcm(&m.degree));
        Ok(HypersurfaceFamily {
            members,
            n_subgeneral,
            common_degree,
        })
    }

    pub fn members(&self) -> &[Hypersurface] {
        &self.members
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.members.iter().map(|m| m.poly.clone()).collect()
    }

    pub fn q(&self) -> usize {
        self.members.len()
    }

    /// The subgeneral-position parameter `N`.
    pub fn n_subgeneral(&self) -> usize {
        self.n_subgeneral
    }

    /// `d = lcm(d_1, …, d_q)`.
    pub fn common_degree(&self) -> u32 {
        self.common_degree
    }

    /// `Q_i^{d/d_i}`, all of degree `d`.
    pub fn normalized(&self) -> Vec<MultiPoly> {
        self.members
            .iter()
            .map(|m| m.poly.pow(self.common_degree / m.degree))
            .collect()
    }

    /// Same family with every member replaced by `Q_i^{d/d_i}`.
    pub fn normalized_family(&self) -> HypersurfaceFamily {
        HypersurfaceFamily::new(self.normalized(), self.n_subgeneral).expect("powers of forms are forms")
    }

    /// Checks that no member vanishes identically on `V`.
    pub fn check_on(&self, v: &VarietyModel) -> Result<(), VarietyError> {
        let d = self.common_degree;
        for (index, q) in self.normalized().iter().enumerate() {
            if q.n_vars() != v.n_vars() {
                return Err(VarietyError::ArityMismatch {
                    expected: v.n_vars(),
                    got: q.n_vars(),
                });
            }
            if v.class_in_degree(q, d).is_zero() {
                return Err(VarietyError::VanishesOnVariety { index });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionRow {
    pub subset: Vec<usize>,
    pub emptiness: Emptiness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum PositionVerdict {
    InPosition,
    NotInPosition { violating: Vec<usize> },
    Inconclusive { subset: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionReport {
    pub n_subgeneral: usize,
    pub rows: Vec<PositionRow>,
    pub verdict: PositionVerdict,
}

impl PositionReport {
    pub fn in_position(&self) -> bool {
        self.verdict == PositionVerdict::InPosition
    }
}

/// Tests every `(N+1)`-subset of the normalized family for empty common
/// intersection with `V`. Subsets are visited in lexicographic order.
pub fn check_subgeneral(
    v: &VarietyModel,
    family: &HypersurfaceFamily,
    degree_cap: Option<u32>,
) -> Result<PositionReport, VarietyError> {
    let needed = family.n_subgeneral() + 1;
    if family.q() < needed {
        return Err(VarietyError::TooFewMembers { q: family.q(), needed });
    }
    let normalized = family.normalized();
    let mut rows = Vec::new();
    for subset in (0..family.q()).combinations(needed) {
        let qs: Vec<MultiPoly> = subset.iter().map(|&i| normalized[i].clone()).collect();
        let emptiness = v.is_empty_on_variety(&qs, degree_cap)?;
        rows.push(PositionRow { subset, emptiness });
    }
    let verdict = if let Some(r) = rows
        .iter()
        .find(|r| matches!(r.emptiness, Emptiness::Inconclusive { .. }))
    {
        PositionVerdict::Inconclusive {
            subset: r.subset.clone(),
        }
    } else if let Some(r) = rows
        .iter()
        .find(|r| matches!(r.emptiness, Emptiness::NonEmpty { .. }))
    {
        PositionVerdict::NotInPosition {
            violating: r.subset.clone(),
        }
    } else {
        PositionVerdict::InPosition
    };
    Ok(PositionReport {
        n_subgeneral: family.n_subgeneral(),
        rows,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn conic() -> VarietyModel {
        VarietyModel::new(2, 1, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 3).unwrap()
    }

    #[test]
    fn ideal_piece_ranks() {
        let v = conic();
        assert_eq!(v.ideal_graded_piece(2).rank(), 1);
        assert_eq!(v.ideal_graded_piece(3).rank(), 3);
        assert_eq!(VarietyModel::projective_space(3).ideal_graded_piece(4).rank(), 0);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(VarietyModel::projective_space(2).hilbert_function(2), 6);
        let v = conic();
        assert_eq!(v.hilbert_function(1), 3);
        assert_eq!(v.hilbert_function(2), 5);
        assert_eq!(v.hilbert_function(3), 7);
    }

    #[test]
    fn classes_on_conic() {
        let v = conic();
        assert!(v.class_coords(&p("x0*x2 - x1^2")).unwrap().is_zero());
        let a = v.class_coords(&p("x0*x2")).unwrap();
        let b = v.class_coords(&p("x1^2")).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
        let pn = VarietyModel::projective_space(2);
        let c = pn.class_coords(&p("x0^2")).unwrap();
        assert_eq!(c.coords.iter().filter(|x| !x.is_zero()).count(), 1);
        assert!(v.class_coords(&p("x0 + x1^2")).is_err());
    }

    #[test]
    fn family_ranks() {
        let v = conic();
        assert_eq!(v.family_rank(&[p("x1^2"), p("x0*x2")]).unwrap(), 1);
        let pn = VarietyModel::projective_space(2);
        assert_eq!(pn.family_rank(&[p("x0^2"), p("x1^2"), p("x2^2")]).unwrap(), 3);
        assert_eq!(pn.family_rank(&[p("x0 + x1"), p("2*x0 + 2*x1")]).unwrap(), 1);
        assert!(matches!(
            pn.family_rank(&[p("x0"), p("x1^2")]),
            Err(VarietyError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn emptiness_examples() {
        let v = conic();
        assert_eq!(
            v.is_empty_on_variety(&[p("x0"), p("x2")], None).unwrap(),
            Emptiness::Empty { degree: 2 }
        );
        // The tangent line x0 = 0 meets the conic doubly at (0:0:1).
        assert!(matches!(
            v.is_empty_on_variety(&[p("x0")], None).unwrap(),
            Emptiness::NonEmpty { stable_value: 2, .. }
        ));
        let p1 = VarietyModel::projective_space(1);
        assert!(matches!(
            p1.is_empty_on_variety(&[parse_poly("x0*x1", 2).unwrap()], None).unwrap(),
            Emptiness::NonEmpty { .. }
        ));
    }

    #[test]
    fn position_on_conic() {
        let v = conic();
        // Lines through pairs of points (1:t:t²) with disjoint parameter sets.
        let lines = ["6*x0 - 5*x1 + x2", "6*x0 + 5*x1 + x2", "x0 + x2", "20*x0 - 9*x1 + x2"];
        let fam = HypersurfaceFamily::new(lines.iter().map(|s| p(s)).collect(), 1).unwrap();
        let rep = check_subgeneral(&v, &fam, None).unwrap();
        assert_eq!(rep.verdict, PositionVerdict::InPosition);
        assert_eq!(rep.rows.len(), 6);

        // Two lines through (1:0:0), which lies on the conic.
        let fam = HypersurfaceFamily::new(vec![p("x1"), p("x2"), p("x0 + x2")], 1).unwrap();
        let rep = check_subgeneral(&v, &fam, None).unwrap();
        assert_eq!(rep.verdict, PositionVerdict::NotInPosition { violating: vec![0, 1] });
    }

    #[test]
    fn position_needs_enough_members() {
        let v = conic();
        let fam = HypersurfaceFamily::new(vec![p("x0")], 1).unwrap();
        assert!(matches!(
            check_subgeneral(&v, &fam, None),
            Err(VarietyError::TooFewMembers { q: 1, needed: 2 })
        ));
    }

    #[test]
    fn full_family_subset_when_n_is_q_minus_one() {
        let v = conic();
        let fam = HypersurfaceFamily::new(vec![p("x0"), p("x0 + x1")], 1).unwrap();
        let rep = check_subgeneral(&v, &fam, None).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].subset, vec![0, 1]);
    }

    #[test]
    fn mixed_degree_normalization() {
        let fam = HypersurfaceFamily::new(vec![p("x0"), p("x1^2 - x0*x2")], 1).unwrap();
        assert_eq!(fam.common_degree(), 2);
        assert_eq!(fam.normalized()[0], p("x0^2"));
        assert!(matches!(fam.check_on(&conic()), Err(VarietyError::VanishesOnVariety { index: 1 })));
    }

    #[test]
    fn dimension_cross_check() {
        assert!(conic().dimension_warning().is_none());
        let wrong = VarietyModel::new(2, 2, vec![p("x0*x2 - x1^2")]).unwrap();
        assert!(wrong.dimension_warning().is_some());
        assert!(VarietyModel::projective_space(3).dimension_warning().is_none());
    }

    #[test]
    fn concurrent_cache_reads_agree() {
        let v = Arc::new(conic());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let v = v.clone();
                std::thread::spawn(move || (1..6).map(|d| v.hilbert_function(d)).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), vec![3, 5, 7, 9, 11]);
        }
    }
}
