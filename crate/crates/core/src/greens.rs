//! The discrete Green's function `G_h = L_h^{-1}` in closed form.
//!
//! The characteristic equation of the interior stencil,
//! `gamma eta^-2 + R eta^-1 + 2S + R eta + gamma eta^2 = 0`, has the four
//! roots
//!
//! ```text
//!     eta_1 = e^{-i t_h^-},  eta_2 = e^{i t_h^-},  eta_3 = 1 / eta_4,
//!     eta_4 = c + sign(c) sqrt(c^2 - 1),   c = cos t_h^+,
//! ```
//!
//! and every column of `G_h` is a combination of their powers on each side of
//! the diagonal:
//!
//! ```text
//!     G_h[j][m] = sum_i A_{m,i} eta_i^j   (j < m),
//!     G_h[j][m] = sum_i B_{m,i} eta_i^j   (j >= m),    G_h[0][m] = 0.
//! ```
//!
//! The eight coefficients solve
//!
//! ```text
//!     [ -U_m  U_m ] [A_m]   [z]
//!     [  V_1  V_2 ] [B_m] = [0],     z = (-1/gamma, 0, 0, 0),
//! ```
//!
//! with `U_m(:, i) = eta_i^m (eta_i^-2, eta_i^-1, 1, eta_i)`,
//! `V_1(:, i) = (eta_i^-1 + eta_i, 1, 0, 0)` and `V_2(:, i) = (0, 0, a_i, b_i)`;
//! `a_i` and `b_i` encode the last two rows of `L_h`. For `m = 1` the
//! system reduces to `(V_1 + V_2) B_1 = z`.
//!
//! Because `|eta_4| > 3`, the raw coefficients span hundreds of orders of
//! magnitude for large `n`. Each coefficient is therefore stored relative to
//! a reference node `r`: `A_{m,i} eta_i^j = Â_{m,i} eta_i^{j - r}`, with
//! `r = m` for the growing root on the left of the diagonal, `r = m` for the
//! decaying root and `r = n` for the growing root on the right. Every power
//! that is evaluated then has modulus at most `|eta_4|^2`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::assembly::{StencilCoeffs, MIN_STENCIL_ORDER};
use crate::banded::BandedMatrix;
use crate::dense::DenseMatrix;
use crate::dispersion::{dispersion_roots, GAMMA_BOUND};
use crate::error::{Error, Result};
use crate::model::Problem;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Largest exponent of `|eta_4|` the unscaled coefficients may carry.
const MAX_LOG_MAGNITUDE: f64 = 700.0;

/// The four roots of the characteristic equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalRoots {
    /// `k h`.
    pub t: f64,
    /// Real penalty.
    pub gamma: f64,
    /// `t_h^-`.
    pub t_h_minus: f64,
    /// `cos t_h^+`.
    pub cos_plus: f64,
    /// `eta_1..eta_4`, with `|eta_4| > 1 > |eta_3|`.
    pub eta: [Complex64; 4],
}

impl FundamentalRoots {
    /// `|gamma eta^-2 + R eta^-1 + 2S + R eta + gamma eta^2|` divided by the
    /// sum of the moduli of its terms.
    pub fn characteristic_residual(&self, i: usize) -> f64 {
        let sc = StencilCoeffs::new(self.t, Complex64::new(self.gamma, 0.0));
        let e = self.eta[i];
        let inv = e.inv();
        let terms = [sc.gamma * inv * inv, sc.r * inv, sc.s * 2.0, sc.r * e, sc.gamma * e * e];
        let sum: Complex64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|v| v.norm()).sum();
        sum.norm() / scale
    }
}

/// Roots for `0 < |gamma| <= 1/6` and `0 < t <= 1`.
pub fn fundamental_roots(t: f64, gamma: f64) -> Result<FundamentalRoots> {
    if gamma == 0.0 || gamma.abs() > GAMMA_BOUND {
        return Err(Error::Unsupported(format!(
            "the fundamental system needs 0 < |gamma| <= 1/6, got {gamma}"
        )));
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Unsupported(format!("the fundamental system needs 0 < t <= 1, got {t}")));
    }
    let d = dispersion_roots(t, gamma)?;
    let th = d.t_h_minus.ok_or_else(|| Error::Unsupported(format!("no propagating mode at t = {t}")))?;
    let c = d.cos_plus.expect("gamma is nonzero");
    let big = c + c.signum() * (c * c - 1.0).sqrt();
    let eta = [
        Complex64::from_polar(1.0, -th),
        Complex64::from_polar(1.0, th),
        Complex64::new(1.0 / big, 0.0),
        Complex64::new(big, 0.0),
    ];
    Ok(FundamentalRoots { t, gamma, t_h_minus: th, cos_plus: c, eta })
}

/// Unscaled `a_i`, `b_i` for the matrix without boundary penalty:
///
/// ```text
///     a_i = (eta_i^-1 - 2 + eta_i) eta_i^n,
///     b_i = (1 - t^2/3 - (1 + t^2/6) eta_i^-1 + gamma (1 - eta_i^-1)^2 - i t) eta_i^n.
/// ```
///
/// Fails with [`Error::Overflow`] once `eta_4^n` leaves double range.
pub fn boundary_coefficients(roots: &FundamentalRoots, n: usize) -> Result<([Complex64; 4], [Complex64; 4])> {
    if n as f64 * roots.eta[3].norm().ln() > MAX_LOG_MAGNITUDE {
        return Err(Error::Overflow { n });
    }
    let (ra, rb) = reduced_boundary_coefficients(roots, false);
    let pw: [Complex64; 4] = core::array::from_fn(|i| roots.eta[i].powi(n as i32));
    Ok((core::array::from_fn(|i| ra[i] * pw[i]), core::array::from_fn(|i| rb[i] * pw[i])))
}

/// `a_i / eta_i^n` and `b_i / eta_i^n`, including the boundary penalty rows
/// when requested.
fn reduced_boundary_coefficients(roots: &FundamentalRoots, boundary_penalty: bool) -> ([Complex64; 4], [Complex64; 4]) {
    let t = roots.t;
    let g = roots.gamma;
    let mut a = [ZERO; 4];
    let mut b = [ZERO; 4];
    for i in 0..4 {
        let e = roots.eta[i];
        let inv = e.inv();
        a[i] = inv - 2.0 + e;
        let one_minus = ONE - inv;
        b[i] = Complex64::new(1.0 - t * t / 3.0, -t) - inv * (1.0 + t * t / 6.0) + one_minus * one_minus * g;
        if boundary_penalty {
            a[i] += Complex64::new(1.0, -t) - inv;
            b[i] += Complex64::new(g * (1.0 + t * t), 0.0) - Complex64::new(g, g * t) * inv;
        }
    }
    (a, b)
}

/// Coefficients of one column of `G_h`, stored relative to reference nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensColumn {
    /// Column index (1-based).
    pub m: usize,
    /// Scaled `Â_{m,i}`.
    pub a_scaled: [Complex64; 4],
    /// Scaled `B̂_{m,i}`.
    pub b_scaled: [Complex64; 4],
    /// Reference nodes of `Â`.
    pub a_ref: [i64; 4],
    /// Reference nodes of `B̂`.
    pub b_ref: [i64; 4],
}

impl GreensColumn {
    /// Unscaled `A_{m,i}`; may under- or overflow for large `n`.
    pub fn a(&self, roots: &FundamentalRoots, i: usize) -> Complex64 {
        self.a_scaled[i] * pow(roots.eta[i], -self.a_ref[i])
    }

    /// Unscaled `B_{m,i}`; may under- or overflow for large `n`.
    pub fn b(&self, roots: &FundamentalRoots, i: usize) -> Complex64 {
        self.b_scaled[i] * pow(roots.eta[i], -self.b_ref[i])
    }

    /// `sum_i A_{m,i} eta_i^p` evaluated in scaled form.
    pub fn a_series(&self, roots: &FundamentalRoots, p: i64) -> Complex64 {
        (0..4).map(|i| self.a_scaled[i] * pow(roots.eta[i], p - self.a_ref[i])).sum()
    }

    /// `sum_i B_{m,i} eta_i^p` evaluated in scaled form.
    pub fn b_series(&self, roots: &FundamentalRoots, p: i64) -> Complex64 {
        (0..4).map(|i| self.b_scaled[i] * pow(roots.eta[i], p - self.b_ref[i])).sum()
    }

    /// `G_h[j][m]` for `0 <= j <= n`.
    pub fn entry(&self, roots: &FundamentalRoots, j: usize) -> Complex64 {
        if j == 0 {
            ZERO
        } else if j < self.m {
            self.a_series(roots, j as i64)
        } else {
            self.b_series(roots, j as i64)
        }
    }
}

fn pow(z: Complex64, p: i64) -> Complex64 {
    z.powi(p as i32)
}

/// Closed-form discrete Green's function for one problem.
#[derive(Debug, Clone)]
pub struct DiscreteGreens {
    roots: FundamentalRoots,
    n: usize,
    gamma: f64,
    a_red: [Complex64; 4],
    b_red: [Complex64; 4],
}

impl DiscreteGreens {
    /// Sets up the fundamental system for a problem with real
    /// `0 < |gamma| <= 1/6`, `t <= 1` and at least five elements.
    pub fn new(problem: &Problem) -> Result<Self> {
        let gamma = problem.real_gamma()?;
        let n = problem.n();
        if n < MIN_STENCIL_ORDER {
            return Err(Error::Unsupported(format!("need at least {MIN_STENCIL_ORDER} elements, got {n}")));
        }
        let roots = fundamental_roots(problem.t(), gamma)?;
        let (a_red, b_red) = reduced_boundary_coefficients(&roots, problem.include_boundary_penalty());
        Ok(Self { roots, n, gamma, a_red, b_red })
    }

    /// The fundamental roots.
    pub fn roots(&self) -> &FundamentalRoots {
        &self.roots
    }

    /// Element count.
    pub fn n(&self) -> usize {
        self.n
    }

    fn references(&self, m: usize) -> ([i64; 4], [i64; 4]) {
        let (m, n) = (m as i64, self.n as i64);
        ([0, 0, 0, m], [0, 0, m, n])
    }

    /// Solves for the coefficients of column `m` (1-based).
    pub fn column(&self, m: usize) -> Result<GreensColumn> {
        let n = self.n;
        if m == 0 || m > n {
            return Err(Error::InvalidArgument(format!("column {m} outside 1..={n}")));
        }
        let eta = &self.roots.eta;
        let (a_ref, b_ref) = self.references(m);
        let (mi, ni) = (m as i64, n as i64);
        let rhs0 = Complex64::new(-1.0 / self.gamma, 0.0);

        if m == 1 {
            let mut v = DenseMatrix::zeros(4);
            for i in 0..4 {
                let s = pow(eta[i], -b_ref[i]);
                v[(0, i)] = (eta[i].inv() + eta[i]) * s;
                v[(1, i)] = s;
                let tail = pow(eta[i], ni - b_ref[i]);
                v[(2, i)] = self.a_red[i] * tail;
                v[(3, i)] = self.b_red[i] * tail;
            }
            let b = v.solve(&[rhs0, ZERO, ZERO, ZERO])?;
            return Ok(GreensColumn {
                m,
                a_scaled: [ZERO; 4],
                b_scaled: core::array::from_fn(|i| b[i]),
                a_ref,
                b_ref,
            });
        }

        let mut sys = DenseMatrix::zeros(8);
        for i in 0..4 {
            for (row, rho) in (-2i64..=1).enumerate() {
                sys[(row, i)] = -pow(eta[i], mi + rho - a_ref[i]);
                sys[(row, 4 + i)] = pow(eta[i], mi + rho - b_ref[i]);
            }
            let s = pow(eta[i], -a_ref[i]);
            sys[(4, i)] = (eta[i].inv() + eta[i]) * s;
            sys[(5, i)] = s;
            let tail = pow(eta[i], ni - b_ref[i]);
            sys[(6, 4 + i)] = self.a_red[i] * tail;
            sys[(7, 4 + i)] = self.b_red[i] * tail;
        }
        let mut rhs = [ZERO; 8];
        rhs[0] = rhs0;
        let x = sys.solve(&rhs)?;
        Ok(GreensColumn {
            m,
            a_scaled: core::array::from_fn(|i| x[i]),
            b_scaled: core::array::from_fn(|i| x[4 + i]),
            a_ref,
            b_ref,
        })
    }

    /// All columns, in order.
    pub fn columns(&self) -> Result<Vec<GreensColumn>> {
        (1..=self.n).map(|m| self.column(m)).collect()
    }

    /// The full `n x n` matrix `G_h` (row `j - 1`, column `m - 1`).
    pub fn matrix(&self) -> Result<DenseMatrix> {
        let n = self.n;
        let mut g = DenseMatrix::zeros(n);
        for col in self.columns()? {
            for j in 1..=n {
                g[(j - 1, col.m - 1)] = col.entry(&self.roots, j);
            }
        }
        Ok(g)
    }

    /// `G_h[j][m]` with `G_h[0][m] = 0`.
    pub fn entry(&self, col: &GreensColumn, j: usize) -> Complex64 {
        col.entry(&self.roots, j)
    }

    /// `H_h[j][m] = G_h[j][m] - G_h[j-1][m]` for `1 <= j <= n`.
    pub fn derivative_entry(&self, col: &GreensColumn, j: usize) -> Complex64 {
        col.entry(&self.roots, j) - col.entry(&self.roots, j - 1)
    }

    /// Leading term of `H_h[j][m]`: `cos(j t_h) e^{i m t_h}` for `j < m`,
    /// `i sin(m t_h) e^{i j t_h}` for `j >= m`.
    pub fn derivative_leading_term(&self, j: usize, m: usize) -> Complex64 {
        let th = self.roots.t_h_minus;
        if j < m {
            Complex64::from_polar((j as f64 * th).cos(), m as f64 * th)
        } else {
            I * Complex64::from_polar((m as f64 * th).sin(), j as f64 * th)
        }
    }

    /// `u_{h,j} = h sum_m G_h[j][m] F_m`.
    pub fn solve(&self, load: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if load.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: load.len() });
        }
        let h = 1.0 / n as f64;
        let mut u = alloc::vec![ZERO; n];
        for col in self.columns()? {
            let f = load[col.m - 1] * h;
            for j in 1..=n {
                u[j - 1] += col.entry(&self.roots, j) * f;
            }
        }
        Ok(u)
    }
}

/// `G_h` for any real-penalty problem: closed form where the fundamental
/// system exists, inverse columns from the banded solver for `gamma = 0`.
pub fn greens_matrix(problem: &Problem) -> Result<DenseMatrix> {
    if problem.real_gamma()? == 0.0 {
        let lu = crate::assembly::assemble_matrix(problem).factor()?;
        return inverse_by_columns(&lu, problem.n());
    }
    DiscreteGreens::new(problem)?.matrix()
}

fn inverse_by_columns(lu: &crate::banded::BandedFactorization, n: usize) -> Result<DenseMatrix> {
    let mut g = DenseMatrix::zeros(n);
    for m in 1..=n {
        for (j, v) in lu.inverse_column(m)?.into_iter().enumerate() {
            g[(j, m - 1)] = v;
        }
    }
    Ok(g)
}

/// Oracle helper: `max |L_h G - I|` entrywise.
pub fn identity_residual(l: &BandedMatrix, g: &DenseMatrix) -> f64 {
    let n = l.order();
    let mut worst = 0.0f64;
    for m in 0..n {
        let col: Vec<Complex64> = (0..n).map(|j| g[(j, m)]).collect();
        let prod = l.mul_vec(&col).expect("orders agree");
        for (j, v) in prod.into_iter().enumerate() {
            let e = if j == m { ONE } else { ZERO };
            worst = worst.max((v - e).norm());
        }
    }
    worst
}
