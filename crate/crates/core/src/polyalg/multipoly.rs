//! Sparse multivariate polynomials in `x0..xn` with graded-lex monomial order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::scalar::GaussScalar;
use super::unipoly::UniPoly;
use super::PolyError;

/// Exponent tuple `(i_0, …, i_n)`.
///
/// Ordered graded-lexicographically: total degree first, then the tuple with
/// the larger leading exponent is larger (`x0 > x1 > … > xn`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn to_text(&self) -> Option<String> {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        (!parts.is_empty()).then(|| parts.join("*"))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent tuples in `n_vars` variables of total degree `d`, in
/// descending graded-lex order. Length `C(n_vars − 1 + d, d)`.
pub fn mono_basis(n_vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(n_vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n_vars {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n_vars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n_vars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n_vars, d, &mut Vec::with_capacity(n_vars), &mut out);
    out
}

/// Binomial coefficient `C(n, k)` as `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Polynomial in `n_vars` variables with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: GaussScalar) -> Self {
        Self::from_terms(n_vars, [(Monomial(vec![0; n_vars]), c)])
    }

    /// The variable `x_i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self::from_terms(n_vars, [(Monomial(e), GaussScalar::one())])
    }

    pub fn monomial(c: GaussScalar, m: Monomial) -> Self {
        let n = m.n_vars();
        Self::from_terms(n, [(m, c)])
    }

    /// Builds from `(monomial, coefficient)` pairs, summing duplicates.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Monomial, GaussScalar)>) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        for (m, c) in terms {
            assert_eq!(m.n_vars(), n_vars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    /// Builds a degree-`d` form from coordinates on [`mono_basis`].
    pub fn from_coords(n_vars: usize, d: u32, coords: &[GaussScalar]) -> Self {
        Self::from_terms(n_vars, mono_basis(n_vars, d).into_iter().zip(coords.iter().cloned()))
    }

    fn add_term(&mut self, m: Monomial, c: &GaussScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussScalar {
        self.terms.get(m).cloned().unwrap_or_else(GaussScalar::zero)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms, if the polynomial is a nonzero form.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Coordinates on [`mono_basis`]`(n_vars, d)`. Terms of other degrees are ignored.
    pub fn coords(&self, d: u32) -> Vec<GaussScalar> {
        mono_basis(self.n_vars, d).iter().map(|m| self.coeff(m)).collect()
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::constant(self.n_vars, GaussScalar::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &[GaussScalar]) -> GaussScalar {
        let mut acc = GaussScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &xi.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(x)
                    .fold(c.to_complex(), |t, (&e, xi)| t * xi.powu(e))
            })
            .sum()
    }

    /// Substitutes univariate polynomials for the variables: `Q(f_0, …, f_n)`.
    pub fn compose(&self, f: &[UniPoly]) -> Result<UniPoly, PolyError> {
        if f.len() != self.n_vars {
            return Err(PolyError::ArityMismatch {
                expected: self.n_vars,
                got: f.len(),
            });
        }
        let max_exp: Vec<u32> = (0..self.n_vars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<UniPoly>> = f
            .iter()
            .zip(&max_exp)
            .map(|(fi, &e)| {
                let mut pw = vec![UniPoly::one()];
                for k in 1..=e as usize {
                    let next = &pw[k - 1] * fi;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Text in the polynomial grammar; leading term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            push_term(&mut out, c, m.to_text().as_deref());
        }
        out
    }
}

/// Appends `± coeff*mono` to a polynomial rendering.
pub(crate) fn push_term(out: &mut String, c: &GaussScalar, mono: Option<&str>) {
    let negative = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
    let mag = if negative { -c } else { c.clone() };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    match mono {
        Some(m) if mag.is_one() => out.push_str(m),
        Some(m) => {
            out.push_str(&mag.fmt_coefficient());
            out.push('*');
            out.push_str(m);
        }
        None => out.push_str(&mag.fmt_coefficient()),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.n_vars, self.to_text())
    }
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c);
        }
        p
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), &-c);
        }
        p
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut p = MultiPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                p.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        p
    }
}
