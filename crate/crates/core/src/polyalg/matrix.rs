use num_traits::{One, Zero};

use super::scalar::GaussScalar;

/// Dense rectangular matrix of Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussScalar>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub reduced: ExactMatrix,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussScalar::one());
        }
        m
    }

    /// Stacks row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<GaussScalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        ExactMatrix { rows: n, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Gauss–Jordan elimination to reduced row-echelon form.
    ///
    /// Pivots are chosen column by column (first column with a nonzero entry
    /// below the current row), taking the first nonzero row in that column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..m.cols {
                    let v = m.get(row, c);
                    if !v.is_zero() {
                        let nv = v * &inv;
                        m.set(row, c, nv);
                    }
                }
            }
            let pivot_row: Vec<(usize, GaussScalar)> = (col..m.cols)
                .filter(|&c| !m.get(row, c).is_zero())
                .map(|c| (c, m.get(row, c).clone()))
                .collect();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for (c, pv) in &pivot_row {
                    let nv = m.get(r, *c) - &(&factor * pv);
                    m.set(r, *c, nv);
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref {
            rank: pivot_cols.len(),
            pivot_cols,
            reduced: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column, each with
    /// a `1` in its free coordinate.
    pub fn null_space(&self) -> Vec<Vec<GaussScalar>> {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![GaussScalar::zero(); self.cols];
                v[fc] = GaussScalar::one();
                for (i, &pc) in rr.pivot_cols.iter().enumerate() {
                    v[pc] = -rr.reduced.get(i, fc);
                }
                v
            })
            .collect()
    }
}

/// Rank of a list of equally long vectors.
pub fn rank_of(vectors: &[&[GaussScalar]]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    ExactMatrix::from_rows(cols, vectors.iter().map(|v| v.to_vec()).collect()).rank()
}
