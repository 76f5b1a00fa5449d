//! Norms, error functionals and the stability identity for imaginary penalty.
//!
//! A discrete function `v_h = sum_j v_j phi_j` is stored by its nodal values
//! `v_1..v_n` (`v_0 = 0`); on `K_j` its slope is `(v_j - v_{j-1}) / h`. The
//! mesh-dependent norm is
//!
//! ```text
//!     ||v||_{1,h}^2 = ||v'||^2 + sum_{j=1}^{n-1} |gamma| h |[v']_j|^2.
//! ```
//!
//! Error integrals use a Gauss rule on each element. When `kh > 1/8` the
//! elements are split into sub-panels so that the exact solution is still
//! sampled at about eight panels per unit of `k`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::assembly::{assemble_dense_by_quadrature, assemble_load, assemble_matrix};
use crate::error::{Error, Result};
use crate::exact::ExactSolution;
use crate::model::{Problem, UniformMesh};
use crate::quadrature::{GaussLegendre, DEFAULT_ORDER};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Piecewise-linear function given by its nodal values at `x_1..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    values: Vec<Complex64>,
}

impl DiscreteSolution {
    /// Wraps nodal values `v_1..v_n`.
    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a discrete function needs at least one node".into()));
        }
        Ok(Self { values })
    }

    /// Solves `L_h U = h F` with the banded solver.
    pub fn solve(problem: &Problem) -> Result<Self> {
        let lu = assemble_matrix(problem).factor()?;
        let rhs = assemble_load(problem).scaled(problem.h());
        Self::from_values(lu.solve(&rhs)?)
    }

    /// Element count.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Nodal values `v_1..v_n`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `v(x_j)` for `0 <= j <= n`.
    pub fn node_value(&self, j: usize) -> Complex64 {
        if j == 0 {
            ZERO
        } else {
            self.values[j - 1]
        }
    }

    /// Slopes on `K_1..K_n`.
    pub fn slopes(&self) -> Vec<Complex64> {
        let n = self.n() as f64;
        (1..=self.n()).map(|j| (self.node_value(j) - self.node_value(j - 1)) * n).collect()
    }

    /// Linear interpolation of the nodal values at `x` in `[0, 1]`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.n();
        let s = x.clamp(0.0, 1.0) * n as f64;
        let j = (s.floor() as usize).min(n - 1);
        let w = s - j as f64;
        self.node_value(j) * (1.0 - w) + self.node_value(j + 1) * w
    }
}

/// The nodal interpolant `u_I`, `u_I(x_j) = u(x_j)`.
pub fn nodal_interpolant(exact: &ExactSolution, mesh: &UniformMesh) -> DiscreteSolution {
    let values = mesh.nodes()[1..].iter().map(|&x| exact.value(x)).collect();
    DiscreteSolution { values }
}

/// Quadrature settings shared by every integral of one report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorOptions {
    /// Gauss points per panel.
    pub order: usize,
    /// Extra factor on the sub-panel count, for refinement checks.
    pub refine: usize,
}

impl Default for ErrorOptions {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, refine: 1 }
    }
}

struct ElementRule {
    rule: GaussLegendre,
    n: usize,
    sub: usize,
}

impl ElementRule {
    fn new(k: f64, n: usize, opts: ErrorOptions) -> Self {
        let sub = ((8.0 * k / n as f64).ceil() as usize).max(1) * opts.refine.max(1);
        Self { rule: GaussLegendre::new(opts.order), n, sub }
    }

    /// Calls `f(element, x, weight)` for every quadrature point.
    fn for_each(&self, mut f: impl FnMut(usize, f64, f64)) {
        let h = 1.0 / self.n as f64;
        let w = h / self.sub as f64;
        for e in 1..=self.n {
            let lo = (e - 1) as f64 * h;
            for p in 0..self.sub {
                let a = lo + p as f64 * w;
                for (x, wt) in self.rule.points(a, a + w) {
                    f(e, x, wt);
                }
            }
        }
    }
}

/// `|u|_1 = ||u'||`.
pub fn exact_h1_semi(exact: &ExactSolution, n: usize, opts: ErrorOptions) -> f64 {
    let mut acc = 0.0;
    ElementRule::new(exact.k(), n, opts).for_each(|_, x, w| acc += w * exact.derivative(x).norm_sqr());
    acc.sqrt()
}

/// `|u - v_h|_1` with the default rule.
pub fn h1_semi_error(exact: &ExactSolution, uh: &DiscreteSolution) -> f64 {
    h1_semi_error_with(exact, uh, ErrorOptions::default())
}

/// `|u - v_h|_1`.
pub fn h1_semi_error_with(exact: &ExactSolution, uh: &DiscreteSolution, opts: ErrorOptions) -> f64 {
    let slopes = uh.slopes();
    let mut acc = 0.0;
    ElementRule::new(exact.k(), uh.n(), opts)
        .for_each(|e, x, w| acc += w * (exact.derivative(x) - slopes[e - 1]).norm_sqr());
    acc.sqrt()
}

/// `||u - v_h||`.
pub fn l2_error_with(exact: &ExactSolution, uh: &DiscreteSolution, opts: ErrorOptions) -> f64 {
    let mut acc = 0.0;
    ElementRule::new(exact.k(), uh.n(), opts).for_each(|_, x, w| acc += w * (exact.value(x) - uh.eval(x)).norm_sqr());
    acc.sqrt()
}

/// `(sum_{j=1}^{n-1} |gamma| h |[v']_j|^2)^{1/2}` from element slopes.
pub fn jump_term(slopes: &[Complex64], gamma: Complex64) -> f64 {
    let h = 1.0 / slopes.len() as f64;
    let sum: f64 = slopes.windows(2).map(|s| (s[0] - s[1]).norm_sqr()).sum();
    (gamma.norm() * h * sum).sqrt()
}

/// `||v||_{1,h}` from element slopes.
pub fn norm_1h(slopes: &[Complex64], gamma: Complex64) -> f64 {
    let h = 1.0 / slopes.len() as f64;
    let semi: f64 = slopes.iter().map(|s| s.norm_sqr() * h).sum();
    let jump = jump_term(slopes, gamma);
    (semi + jump * jump).sqrt()
}

/// `J(v, v)`, including the boundary term when the problem enables it.
pub fn penalty_form(problem: &Problem, v: &DiscreteSolution) -> Complex64 {
    let h = problem.h();
    let slopes = v.slopes();
    let mut sum: f64 = slopes.windows(2).map(|s| (s[0] - s[1]).norm_sqr()).sum();
    if problem.include_boundary_penalty() {
        let trace = slopes[slopes.len() - 1] - I * problem.k() * v.node_value(v.n());
        sum += trace.norm_sqr();
    }
    problem.gamma() * (h * sum)
}

/// `a_h(u, v)` from the matrix built entry by entry from the form.
pub fn sesquilinear_form(problem: &Problem, u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    let n = problem.n();
    for len in [u.len(), v.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, found: len });
        }
    }
    let lu = assemble_dense_by_quadrature(problem).mul_vec(u);
    let s: Complex64 = lu.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
    Ok(s / problem.h())
}

/// `(f, v_h) = sum_m conj(v_m) F_m`.
pub fn load_pairing(problem: &Problem, v: &DiscreteSolution) -> Complex64 {
    let load = assemble_load(problem);
    load.as_slice().iter().zip(v.values()).map(|(f, x)| f * x.conj()).sum()
}

/// `| |J(v,v)| + k |v(1)|^2 + Im a_h(v,v) |` for a purely imaginary penalty
/// with negative imaginary part.
pub fn jstab_identity_residual(problem: &Problem, v: &[Complex64]) -> Result<f64> {
    let g = problem.gamma();
    if g.re != 0.0 || g.im >= 0.0 {
        return Err(Error::InvalidProblem(alloc::format!(
            "the identity needs gamma = i gamma_im with gamma_im < 0, got {g}"
        )));
    }
    let vh = DiscreteSolution::from_values(v.to_vec())?;
    let lhs = penalty_form(problem, &vh).norm() + problem.k() * vh.node_value(vh.n()).norm_sqr();
    let a = sesquilinear_form(problem, v, v)?;
    Ok((lhs + a.im).abs())
}

/// `||f||`, exactly 1 for `f = -1`.
pub fn f_norm(problem: &Problem) -> f64 {
    if problem.rhs().is_constant_neg_one() {
        return 1.0;
    }
    let mut acc = 0.0;
    ElementRule::new(problem.k(), problem.n(), ErrorOptions::default())
        .for_each(|_, x, w| acc += w * problem.rhs().eval(x).norm_sqr());
    acc.sqrt()
}

/// Every error functional for one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Wavenumber.
    pub k: f64,
    /// Element count.
    pub n: usize,
    /// Penalty.
    pub gamma: Complex64,
    /// `||u - u_h||`.
    pub l2_error: f64,
    /// `|u - u_h|_1`.
    pub h1_semi_error: f64,
    /// `(sum |gamma| h |[u_h']_j|^2)^{1/2}`.
    pub jump_term: f64,
    /// `||u - u_h||_{1,h}`.
    pub norm_1h_error: f64,
    /// `|u - u_I|_1`.
    pub best_approx_error: f64,
    /// `|u|_1`.
    pub exact_h1_semi: f64,
    /// `|u - u_I|_1 / |u|_1`.
    pub e_ba: f64,
    /// `|u - u_h|_1 / |u|_1`.
    pub e_c: f64,
    /// `e_c / e_ba`, absent when `e_ba < 1e-15`.
    pub ratio: Option<f64>,
    /// `||u_h||_{1,h}`.
    pub uh_norm_1h: f64,
    /// `||f||`.
    pub f_norm: f64,
}

/// Assembles, solves, interpolates and evaluates every field.
pub fn full_report(problem: &Problem) -> Result<ErrorReport> {
    full_report_with(problem, ErrorOptions::default())
}

/// [`full_report`] with explicit quadrature settings.
pub fn full_report_with(problem: &Problem, opts: ErrorOptions) -> Result<ErrorReport> {
    let uh = DiscreteSolution::solve(problem)?;
    let exact = ExactSolution::for_problem(problem);
    Ok(report_for(problem, &exact, &uh, opts))
}

/// Fills a report for a given discrete solution.
pub fn report_for(problem: &Problem, exact: &ExactSolution, uh: &DiscreteSolution, opts: ErrorOptions) -> ErrorReport {
    let n = problem.n();
    let gamma = problem.gamma();
    let ui = nodal_interpolant(exact, &problem.mesh());
    let slopes = uh.slopes();
    let h1 = h1_semi_error_with(exact, uh, opts);
    let jump = jump_term(&slopes, gamma);
    let ba = h1_semi_error_with(exact, &ui, opts);
    let semi = exact_h1_semi(exact, n, opts);
    let e_ba = ba / semi;
    let e_c = h1 / semi;
    ErrorReport {
        k: problem.k(),
        n,
        gamma,
        l2_error: l2_error_with(exact, uh, opts),
        h1_semi_error: h1,
        jump_term: jump,
        norm_1h_error: (h1 * h1 + jump * jump).sqrt(),
        best_approx_error: ba,
        exact_h1_semi: semi,
        e_ba,
        e_c,
        ratio: if e_ba < 1e-15 { None } else { Some(e_c / e_ba) },
        uh_norm_1h: norm_1h(&slopes, gamma),
        f_norm: f_norm(problem),
    }
}
