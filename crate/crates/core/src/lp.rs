//! Exact two-phase simplex over the rationals with Bland's pivoting rule.
//!
//! Variables are implicitly nonnegative. Bland's rule guarantees
//! termination without any tolerance, since every value is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// `maximize objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            objective: vec![BigRational::zero(); n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_objective(&mut self, c: Vec<BigRational>) {
        assert_eq!(c.len(), self.n_vars);
        self.objective = c;
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Adds `Σ_{i∈idx} x_i  rel  rhs`.
    pub fn add_sparse(&mut self, terms: &[(usize, BigRational)], relation: Relation, rhs: BigRational) {
        let mut coeffs = vec![BigRational::zero(); self.n_vars];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.add(coeffs, relation, rhs);
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective, self.n_vars)
    }
}

struct Tableau {
    /// `rows[i]` has one entry per column followed by the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    n_cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.n_vars;
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        // Normalize to nonnegative right-hand sides first.
        let normalized: Vec<(Vec<BigRational>, Relation, BigRational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let n_art = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let first_artificial = n + n_slack;
        let n_cols = first_artificial + n_art;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack, mut art) = (n, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = coeffs;
            row.resize(n_cols + 1, BigRational::zero());
            row[n_cols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = BigRational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -BigRational::one();
                    slack += 1;
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            n_cols,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [BigRational]) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex on reduced-cost row `obj` (entries `−c_j` eliminated
    /// against the basis; last entry is minus the objective value).
    /// Columns at or beyond `allowed` never enter. Returns false if unbounded.
    fn run(&mut self, obj: &mut [BigRational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.n_cols] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((leave, _)) = best else {
                return false;
            };
            self.pivot(leave, enter, obj);
        }
    }

    fn solve(mut self, objective: &[BigRational], n_vars: usize) -> LpOutcome {
        let width = self.n_cols + 1;
        if self.first_artificial < self.n_cols {
            // Phase one: minimize the sum of artificials, i.e. maximize its negation.
            let mut obj = vec![BigRational::zero(); width];
            for j in self.first_artificial..self.n_cols {
                obj[j] = BigRational::one();
            }
            for (i, &b) in self.basis.iter().enumerate() {
                if b >= self.first_artificial {
                    for j in 0..width {
                        obj[j] -= &self.rows[i][j];
                    }
                }
            }
            self.run(&mut obj, self.n_cols);
            if !obj[self.n_cols].is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining artificials out of the basis or drop redundant rows.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j, &mut obj),
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut obj = vec![BigRational::zero(); width];
        for (j, c) in objective.iter().enumerate() {
            obj[j] = -c;
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if !obj[b].is_zero() {
                let f = obj[b].clone();
                for j in 0..width {
                    obj[j] -= &f * &self.rows[i][j];
                }
            }
        }
        if !self.run(&mut obj, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![BigRational::zero(); n_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n_vars {
                x[b] = self.rows[i][self.n_cols].clone();
            }
        }
        LpOutcome::Optimal {
            x,
            value: obj[self.n_cols].clone(),
        }
    }
}
