//! Complex pentadiagonal matrices and their LU factorization.
//!
//! Vectors are 0-based: entry `i` belongs to mesh node `i + 1`. Column
//! indices that name a mesh node (as in [`BandedFactorization::inverse_column`])
//! are 1-based.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Pivots below this magnitude are treated as exact zeros.
pub const SINGULAR_PIVOT: f64 = 1e-300;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Square matrix with nonzeros on offsets `-2..=2`, stored by diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    // diags[d][i] = A[i][i + d - 2]
    diags: [Vec<Complex64>; 5],
}

impl BandedMatrix {
    /// Zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        Self { n, diags: core::array::from_fn(|_| vec![ZERO; n]) }
    }

    /// Compresses a dense matrix; fails if it has entries outside the band.
    pub fn from_dense(a: &DenseMatrix) -> Result<Self> {
        let n = a.order();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = a[(i, j)];
                if i.abs_diff(j) <= 2 {
                    m.set(i, j, v);
                } else if v != ZERO {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "entry ({i}, {j}) lies outside the pentadiagonal band"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// `A[i][j]`, zero outside the band.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i >= self.n || j >= self.n || i.abs_diff(j) > 2 {
            return ZERO;
        }
        self.diags[j + 2 - i][i]
    }

    /// Sets `A[i][j]`.
    ///
    /// # Panics
    /// If `(i, j)` is outside the band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(i < self.n && j < self.n && i.abs_diff(j) <= 2, "({i}, {j}) outside band");
        self.diags[j + 2 - i][i] = v;
    }

    /// Adds to `A[i][j]`.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// The diagonal at offset `d` in `-2..=2`; slots that fall outside the
    /// matrix are zero.
    pub fn diagonal(&self, d: isize) -> &[Complex64] {
        &self.diags[(d + 2) as usize]
    }

    /// Expands to a dense matrix.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in i.saturating_sub(2)..(i + 3).min(self.n) {
                a[(i, j)] = self.get(i, j);
            }
        }
        a
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok((0..self.n)
            .map(|i| {
                (i.saturating_sub(2)..(i + 3).min(self.n))
                    .map(|j| self.get(i, j) * x[j])
                    .sum()
            })
            .collect())
    }

    /// `max |A_ij - A_ji|` (no conjugation).
    pub fn max_asymmetry(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..(i + 3).min(self.n) {
                m = m.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        m
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (i.saturating_sub(2)..(i + 3).min(self.n)).map(|j| self.get(i, j).norm()).sum())
            .fold(0.0, f64::max)
    }

    /// LU factorization with partial pivoting.
    pub fn factor(&self) -> Result<BandedFactorization> {
        BandedFactorization::new(self)
    }
}

/// `P A = L U` for a pentadiagonal `A`: `L` has two sub-diagonals, `U` up to
/// four super-diagonals because of row exchanges.
#[derive(Debug, Clone)]
pub struct BandedFactorization {
    n: usize,
    // upper[j][c - j] = U[j][c], c in j..=j+4
    upper: Vec<[Complex64; 5]>,
    // lower[j][r - j - 1] = multiplier eliminating A[r][j]
    lower: Vec<[Complex64; 2]>,
    pivots: Vec<usize>,
}

impl BandedFactorization {
    fn new(a: &BandedMatrix) -> Result<Self> {
        let n = a.order();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        // work[r][c - r + 2] holds columns r-2..=r+4 of row r
        let mut work = vec![[ZERO; 7]; n];
        for (r, row) in work.iter_mut().enumerate() {
            for c in r.saturating_sub(2)..(r + 3).min(n) {
                row[c + 2 - r] = a.get(r, c);
            }
        }
        let mut upper = vec![[ZERO; 5]; n];
        let mut lower = vec![[ZERO; 2]; n];
        let mut pivots = vec![0; n];
        for j in 0..n {
            let last_row = (j + 2).min(n - 1);
            let last_col = (j + 4).min(n - 1);
            let p = (j..=last_row)
                .max_by(|&p, &q| work[p][j + 2 - p].norm().total_cmp(&work[q][j + 2 - q].norm()))
                .unwrap_or(j);
            if work[p][j + 2 - p].norm() < SINGULAR_PIVOT {
                return Err(Error::Singular { column: j });
            }
            pivots[j] = p;
            if p != j {
                for c in j..=last_col {
                    let tmp = work[j][c + 2 - j];
                    work[j][c + 2 - j] = work[p][c + 2 - p];
                    work[p][c + 2 - p] = tmp;
                }
            }
            let d = work[j][2];
            for r in j + 1..=last_row {
                let l = work[r][j + 2 - r] / d;
                lower[j][r - j - 1] = l;
                work[r][j + 2 - r] = ZERO;
                for c in j + 1..=last_col {
                    let v = work[j][c + 2 - j];
                    work[r][c + 2 - r] -= l * v;
                }
            }
            for c in j..=last_col {
                upper[j][c - j] = work[j][c + 2 - j];
            }
        }
        Ok(Self { n, upper, lower, pivots })
    }

    /// Order of the factored matrix.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let mut x = b.to_vec();
        for j in 0..n {
            x.swap(j, self.pivots[j]);
            let xj = x[j];
            for r in j + 1..=(j + 2).min(n - 1) {
                x[r] -= self.lower[j][r - j - 1] * xj;
            }
        }
        for j in (0..n).rev() {
            let mut s = x[j];
            for c in j + 1..=(j + 4).min(n - 1) {
                s -= self.upper[j][c - j] * x[c];
            }
            x[j] = s / self.upper[j][0];
        }
        Ok(x)
    }

    /// Column `m` (1-based) of `A^{-1}`.
    pub fn inverse_column(&self, m: usize) -> Result<Vec<Complex64>> {
        if m == 0 || m > self.n {
            return Err(Error::InvalidArgument(alloc::format!(
                "column {m} outside 1..={}",
                self.n
            )));
        }
        let mut e = vec![ZERO; self.n];
        e[m - 1] = Complex64::new(1.0, 0.0);
        self.solve(&e)
    }

    /// Multiplies the factors back together, undoing the row exchanges.
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.n;
        let mut m = DenseMatrix::zeros(n);
        for j in 0..n {
            for c in j..=(j + 4).min(n - 1) {
                m[(j, c)] = self.upper[j][c - j];
            }
        }
        for j in (0..n).rev() {
            for r in j + 1..=(j + 2).min(n - 1) {
                let l = self.lower[j][r - j - 1];
                for c in 0..n {
                    let v = m[(j, c)];
                    m[(r, c)] += l * v;
                }
            }
            let p = self.pivots[j];
            if p != j {
                for c in 0..n {
                    let tmp = m[(j, c)];
                    m[(j, c)] = m[(p, c)];
                    m[(p, c)] = tmp;
                }
            }
        }
        m
    }
}
