//! The linear system `L_h U = h F`.
//!
//! `L_h = h (a_h(phi_j, phi_i))` for the hat functions `phi_1..phi_n`, where
//!
//! ```text
//! a_h(u, v) = (u', v') - k^2 (u, v) - i k u(1) conj(v(1)) + J(u, v),
//! J(u, v)   = sum_{j=1}^{n-1} gamma h [u']_j conj([v']_j)
//!           + gamma h (u'(1) - i k u(1)) conj(v'(1) - i k v(1)),
//! ```
//!
//! the last term only when the boundary penalty is switched on. With `t = kh`,
//! `R = -1 - 4 gamma - t^2/6` and `S = 1 + 3 gamma - t^2/3`, interior rows
//! read `(gamma, R, 2S, R, gamma)`. Without the boundary penalty the last two
//! rows are
//!
//! ```text
//!     ... gamma   R          2S - gamma   R + 2 gamma
//!     ...         gamma      R + 2 gamma  S - 2 gamma - i t
//! ```
//!
//! and the boundary penalty adds `gamma`, `-gamma (1 - i t)`,
//! `-gamma (1 + i t)` and `gamma (1 + t^2)` to the entries `(n-1, n-1)`,
//! `(n-1, n)`, `(n, n-1)` and `(n, n)`. That correction is not symmetric, so
//! `L_h` is complex-symmetric only with the penalty off.
//!
//! [`assemble_dense_by_quadrature`] rebuilds the same matrix from the form
//! itself, basis function by basis function; it is the independent check on
//! the stencil formulas above.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::banded::BandedMatrix;
use crate::dense::DenseMatrix;
use crate::model::Problem;
use crate::quadrature::{GaussLegendre, DEFAULT_ORDER};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest order for which the stencil rows above do not overlap.
pub const MIN_STENCIL_ORDER: usize = 5;

/// The scalars defining the stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilCoeffs {
    /// `k h`.
    pub t: f64,
    /// Penalty.
    pub gamma: Complex64,
    /// `-1 - 4 gamma - t^2 / 6`.
    pub r: Complex64,
    /// `1 + 3 gamma - t^2 / 3`.
    pub s: Complex64,
}

impl StencilCoeffs {
    /// Computes `R` and `S`.
    pub fn new(t: f64, gamma: Complex64) -> Self {
        let t2 = t * t;
        Self {
            t,
            gamma,
            r: -gamma * 4.0 - 1.0 - t2 / 6.0,
            s: gamma * 3.0 + 1.0 - t2 / 3.0,
        }
    }
}

/// `F_m = (f, phi_m)`, `m = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadVector(pub Vec<Complex64>);

impl LoadVector {
    /// Entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    /// `h F`, the right-hand side of the linear system.
    pub fn scaled(&self, h: f64) -> Vec<Complex64> {
        self.0.iter().map(|f| f * h).collect()
    }
}

/// Assembles `L_h` from the stencil. Orders below [`MIN_STENCIL_ORDER`] go
/// through [`assemble_dense_by_quadrature`] instead.
pub fn assemble_matrix(problem: &Problem) -> BandedMatrix {
    let n = problem.n();
    if n < MIN_STENCIL_ORDER {
        let dense = assemble_dense_by_quadrature(problem);
        return BandedMatrix::from_dense(&dense).expect("form couples only nodes two apart");
    }
    let c = StencilCoeffs::new(problem.t(), problem.gamma());
    let (g, r, s, t) = (c.gamma, c.r, c.s, c.t);
    let mut a = BandedMatrix::zeros(n);
    for i in 0..n {
        a.set(i, i, s * 2.0);
        if i + 1 < n {
            a.set(i, i + 1, r);
            a.set(i + 1, i, r);
        }
        if i + 2 < n {
            a.set(i, i + 2, g);
            a.set(i + 2, i, g);
        }
    }
    a.set(0, 0, s * 2.0 - g);
    a.set(n - 2, n - 2, s * 2.0 - g);
    a.set(n - 2, n - 1, r + g * 2.0);
    a.set(n - 1, n - 2, r + g * 2.0);
    a.set(n - 1, n - 1, s - g * 2.0 - I * t);
    if problem.include_boundary_penalty() {
        a.add(n - 2, n - 2, g);
        a.add(n - 2, n - 1, -g * (1.0 - I * t));
        a.add(n - 1, n - 2, -g * (1.0 + I * t));
        a.add(n - 1, n - 1, g * (1.0 + t * t));
    }
    a
}

/// Hat function `phi_j` (1-based) on a uniform mesh with `n` elements.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hat {
    pub j: usize,
    pub n: usize,
}

impl Hat {
    fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Value at `x`.
    pub fn value(&self, x: f64) -> f64 {
        let xj = self.j as f64 / self.n as f64;
        (1.0 - (x - xj).abs() / self.h()).max(0.0)
    }

    /// Slope on element `e` (1-based).
    pub fn slope(&self, e: usize) -> f64 {
        if e == self.j {
            1.0 / self.h()
        } else if e == self.j + 1 && self.j < self.n {
            -1.0 / self.h()
        } else {
            0.0
        }
    }

    /// `[phi']_l = phi'(x_l-) - phi'(x_l+)` at an interior node `l`.
    pub fn jump(&self, l: usize) -> f64 {
        self.slope(l) - self.slope(l + 1)
    }
}

/// `h a_h(phi_j, phi_i)` for every pair, computed directly from the form:
/// element integrals by a two-point Gauss rule (exact for the products of
/// linear functions involved), derivative jumps from the one-sided slopes of
/// each hat function, boundary terms from point values at `x = 1`.
pub fn assemble_dense_by_quadrature(problem: &Problem) -> DenseMatrix {
    let n = problem.n();
    let h = problem.h();
    let k = problem.k();
    let gamma = problem.gamma();
    let rule = GaussLegendre::new(2);
    let hats: Vec<Hat> = (1..=n).map(|j| Hat { j, n }).collect();
    // boundary trace u'(1) - i k u(1) of each hat
    let trace: Vec<Complex64> = hats
        .iter()
        .map(|p| Complex64::new(p.slope(n), 0.0) - I * (k * p.value(1.0)))
        .collect();

    let mut a = DenseMatrix::zeros(n);
    for (i, test) in hats.iter().enumerate() {
        for (j, trial) in hats.iter().enumerate() {
            let mut stiff = 0.0;
            let mut mass = 0.0;
            for e in 1..=n {
                let (lo, hi) = ((e - 1) as f64 * h, e as f64 * h);
                stiff += trial.slope(e) * test.slope(e) * h;
                mass += rule.integrate(lo, hi, |x| trial.value(x) * test.value(x));
            }
            let jumps: f64 = (1..n).map(|l| trial.jump(l) * test.jump(l)).sum();
            let mut form = Complex64::new(stiff - k * k * mass, 0.0)
                - I * (k * trial.value(1.0) * test.value(1.0))
                + gamma * (h * jumps);
            if problem.include_boundary_penalty() {
                form += gamma * h * trace[j] * trace[i].conj();
            }
            a[(i, j)] = form * h;
        }
    }
    a
}

/// `F_m = (f, phi_m)`: exact for `f = -1`, otherwise a 10-point Gauss rule on
/// each element of the support.
pub fn assemble_load(problem: &Problem) -> LoadVector {
    let n = problem.n();
    let h = problem.h();
    if problem.rhs().is_constant_neg_one() {
        let mut f = alloc::vec![Complex64::new(-h, 0.0); n];
        f[n - 1] = Complex64::new(-0.5 * h, 0.0);
        return LoadVector(f);
    }
    let rule = GaussLegendre::new(DEFAULT_ORDER);
    let rhs = problem.rhs();
    let entries = (1..=n)
        .map(|m| {
            let hat = Hat { j: m, n };
            let lo = (m - 1) as f64 * h;
            let mut v: Complex64 = rule.integrate(lo, lo + h, |x| rhs.eval(x) * hat.value(x));
            if m < n {
                v += rule.integrate(lo + h, lo + 2.0 * h, |x| rhs.eval(x) * hat.value(x));
            }
            v
        })
        .collect();
    LoadVector(entries)
}
