//! The exact solution of the boundary value problem.
//!
//! With `G(x, s) = sin(k min(x,s)) e^{i k max(x,s)} / k` the solution is
//! `u(x) = int_0^1 G(x, s) f(s) ds` and `u'(x) = int_0^1 H(x, s) f(s) ds`.
//! Because `G` separates into products, `u` can be written with two running
//! integrals
//!
//! ```text
//!     P(x) = int_0^x sin(k s) f(s) ds,    Q(x) = int_x^1 e^{i k s} f(s) ds,
//!     u(x)  = (e^{i k x} P(x) + sin(k x) Q(x)) / k,
//!     u'(x) = i e^{i k x} P(x) + cos(k x) Q(x),
//! ```
//!
//! which is what [`ExactSolution`] tabulates for a general right-hand side.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{Problem, RhsSpec};
use crate::quadrature::{GaussLegendre, DEFAULT_ORDER};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Maximum number of panel doublings in [`exact_by_quadrature`].
const MAX_DOUBLINGS: u32 = 4;

/// Panels per integration side: about eight per wavelength, at least 64.
pub fn panel_count(k: f64) -> usize {
    let per_wave = (8.0 * k).ceil() as usize;
    per_wave.max(64)
}

/// `G(x, s)`.
pub fn greens_kernel(x: f64, s: f64, k: f64) -> Complex64 {
    let (lo, hi) = if x <= s { (x, s) } else { (s, x) };
    Complex64::from_polar(1.0, k * hi) * ((k * lo).sin() / k)
}

/// `H(x, s) = d/dx G(x, s)`. Undefined on the diagonal, where it jumps by
/// `-1`.
pub fn derivative_kernel(x: f64, s: f64, k: f64) -> Result<Complex64> {
    if x < s {
        Ok(Complex64::from_polar((k * x).cos(), k * s))
    } else if x > s {
        Ok(I * Complex64::from_polar((k * s).sin(), k * x))
    } else {
        Err(Error::AmbiguousKernel(x))
    }
}

/// Closed-form `(u(x), u'(x))` for `f = -1`:
/// `u = (1 - cos kx) / k^2 + A sin kx` with `A = i (e^{ik} - 1) / k^2`.
pub fn exact_constant_f(k: f64, x: f64) -> (Complex64, Complex64) {
    let a = robin_constant(k);
    let (s, c) = (k * x).sin_cos();
    let u = Complex64::new((1.0 - c) / (k * k), 0.0) + a * s;
    let du = Complex64::new(s / k, 0.0) + a * (k * c);
    (u, du)
}

/// The constant `A` fixed by `u'(1) - i k u(1) = 0`.
fn robin_constant(k: f64) -> Complex64 {
    I * (Complex64::from_polar(1.0, k) - 1.0) / (k * k)
}

/// `(u(x), u'(x))` by composite Gauss-Legendre on `G f` and `H f`, split at
/// `s = x`. The panel count is doubled until two successive results agree.
pub fn exact_by_quadrature(problem: &Problem, x: f64) -> Result<(Complex64, Complex64)> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(alloc::format!("x = {x} outside [0, 1]")));
    }
    let k = problem.k();
    let rule = GaussLegendre::new(DEFAULT_ORDER);
    let rhs = problem.rhs();
    let eval = |panels: usize| -> (Complex64, Complex64) {
        let left = |s: f64| {
            let f = rhs.eval(s);
            // s < x
            (greens_kernel(x, s, k) * f, I * Complex64::from_polar((k * s).sin(), k * x) * f)
        };
        let right = |s: f64| {
            let f = rhs.eval(s);
            (greens_kernel(x, s, k) * f, Complex64::from_polar((k * x).cos(), k * s) * f)
        };
        let (u_l, du_l) = composite_pair(&rule, 0.0, x, panels, left);
        let (u_r, du_r) = composite_pair(&rule, x, 1.0, panels, right);
        (u_l + u_r, du_l + du_r)
    };

    let mut panels = panel_count(k);
    let mut prev = eval(panels);
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let next = eval(panels);
        let du = (next.0 - prev.0).norm() + (next.1 - prev.1).norm();
        let scale = 1.0 + next.0.norm() + next.1.norm();
        if du <= 1e-12 * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged { panels })
}

fn composite_pair<F>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    panels: usize,
    mut f: F,
) -> (Complex64, Complex64)
where
    F: FnMut(f64) -> (Complex64, Complex64),
{
    if b <= a {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let width = (b - a) / panels as f64;
    let mut acc = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == panels { b } else { lo + width };
        for (s, w) in rule.points(lo, hi) {
            let (g, h) = f(s);
            acc.0 += g * w;
            acc.1 += h * w;
        }
    }
    acc
}

/// Which evaluation path produced an [`ExactSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed form, only for `f = -1`.
    ClosedForm,
    /// Tabulated running integrals of the Green's representation.
    Quadrature,
}

/// Evaluator for `u`, `u'` and `u''` on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    k: f64,
    rhs: RhsSpec,
    table: Option<Table>,
}

#[derive(Debug, Clone)]
struct Table {
    rule: GaussLegendre,
    panels: usize,
    // P at the panel breakpoints, ascending
    p_cum: Vec<Complex64>,
    // Q at the panel breakpoints, ascending
    q_cum: Vec<Complex64>,
}

impl ExactSolution {
    /// Closed form when `f = -1`, tabulated quadrature otherwise.
    pub fn for_problem(problem: &Problem) -> Self {
        if problem.rhs().is_constant_neg_one() {
            Self::closed_form(problem.k())
        } else {
            Self::tabulated(problem.k(), problem.rhs().clone())
        }
    }

    /// The closed form for `f = -1`.
    pub fn closed_form(k: f64) -> Self {
        Self { k, rhs: RhsSpec::ConstantNegOne, table: None }
    }

    /// Tabulates the running integrals for an arbitrary right-hand side.
    pub fn tabulated(k: f64, rhs: RhsSpec) -> Self {
        let rule = GaussLegendre::new(DEFAULT_ORDER);
        let panels = panel_count(k);
        let width = 1.0 / panels as f64;
        let mut p_cum = Vec::with_capacity(panels + 1);
        let mut pieces = Vec::with_capacity(panels);
        p_cum.push(Complex64::new(0.0, 0.0));
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let (lo, hi) = (p as f64 * width, (p + 1) as f64 * width);
            acc += rule.integrate(lo, hi, |s| rhs.eval(s) * (k * s).sin());
            p_cum.push(acc);
            pieces.push(rule.integrate(lo, hi, |s| rhs.eval(s) * Complex64::from_polar(1.0, k * s)));
        }
        let mut q_cum = alloc::vec![Complex64::new(0.0, 0.0); panels + 1];
        for p in (0..panels).rev() {
            q_cum[p] = q_cum[p + 1] + pieces[p];
        }
        Self { k, rhs, table: Some(Table { rule, panels, p_cum, q_cum }) }
    }

    /// Wavenumber.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// How values are computed.
    pub fn provenance(&self) -> Provenance {
        if self.table.is_some() {
            Provenance::Quadrature
        } else {
            Provenance::ClosedForm
        }
    }

    /// `(u(x), u'(x))`.
    pub fn eval(&self, x: f64) -> (Complex64, Complex64) {
        let k = self.k;
        let Some(tab) = &self.table else {
            return exact_constant_f(k, x);
        };
        let x = x.clamp(0.0, 1.0);
        let width = 1.0 / tab.panels as f64;
        let i = ((x / width) as usize).min(tab.panels - 1);
        let lo = i as f64 * width;
        let hi = (i + 1) as f64 * width;
        let rhs = &self.rhs;
        let p = tab.p_cum[i] + tab.rule.integrate(lo, x, |s| rhs.eval(s) * (k * s).sin());
        let q = tab.q_cum[i + 1]
            + tab.rule.integrate(x, hi, |s| rhs.eval(s) * Complex64::from_polar(1.0, k * s));
        let (s, c) = (k * x).sin_cos();
        let e = Complex64::from_polar(1.0, k * x);
        let u = (e * p + q * s) / k;
        let du = I * e * p + q * c;
        (u, du)
    }

    /// `u(x)`.
    pub fn value(&self, x: f64) -> Complex64 {
        self.eval(x).0
    }

    /// `u'(x)`.
    pub fn derivative(&self, x: f64) -> Complex64 {
        self.eval(x).1
    }

    /// `u''(x) = -f(x) - k^2 u(x)`, taken from the differential equation.
    pub fn second_derivative(&self, x: f64) -> Complex64 {
        -self.rhs.eval(x) - self.value(x) * (self.k * self.k)
    }
}

/// Norms of the exact solution against the a priori bounds
/// `||u|| <= ||f|| / k`, `|u|_1 <= ||f||`, `|u|_2 <= (1 + k) ||f||`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityReport {
    /// `||f||`.
    pub f_norm: f64,
    /// `||u||`.
    pub l2: f64,
    /// `|u|_1`.
    pub h1_semi: f64,
    /// `|u|_2`.
    pub h2_semi: f64,
    /// `k ||u|| / ||f||`.
    pub l2_ratio: f64,
    /// `|u|_1 / ||f||`.
    pub h1_ratio: f64,
    /// `|u|_2 / ((1 + k) ||f||)`.
    pub h2_ratio: f64,
}

impl RegularityReport {
    /// True when every ratio is at most `1 + tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.l2_ratio <= 1.0 + tol && self.h1_ratio <= 1.0 + tol && self.h2_ratio <= 1.0 + tol
    }
}

/// Evaluates the three regularity ratios by composite quadrature.
pub fn check_regularity_bounds(problem: &Problem) -> RegularityReport {
    let exact = ExactSolution::for_problem(problem);
    let k = problem.k();
    let rule = GaussLegendre::new(DEFAULT_ORDER);
    let panels = panel_count(k);
    let (mut f2, mut u2, mut d2, mut dd2) = (0.0, 0.0, 0.0, 0.0);
    let width = 1.0 / panels as f64;
    for p in 0..panels {
        let lo = p as f64 * width;
        for (x, w) in rule.points(lo, lo + width) {
            let f = problem.rhs().eval(x);
            let (u, du) = exact.eval(x);
            let ddu = -f - u * (k * k);
            f2 += w * f.norm_sqr();
            u2 += w * u.norm_sqr();
            d2 += w * du.norm_sqr();
            dd2 += w * ddu.norm_sqr();
        }
    }
    let f_norm = f2.sqrt();
    let (l2, h1_semi, h2_semi) = (u2.sqrt(), d2.sqrt(), dd2.sqrt());
    RegularityReport {
        f_norm,
        l2,
        h1_semi,
        h2_semi,
        l2_ratio: k * l2 / f_norm,
        h1_ratio: h1_semi / f_norm,
        h2_ratio: h2_semi / ((1.0 + k) * f_norm),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RhsSpec;
    use approx_eq::close;

    mod approx_eq {
        use num_complex::Complex64;
        pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
            (a - b).norm() <= tol
        }
    }

    fn problem(k: f64) -> Problem {
        Problem::new(k, 10, Complex64::new(0.0, 0.0), RhsSpec::ConstantNegOne).unwrap()
    }

    #[test]
    fn kernel_vanishes_at_origin() {
        assert_eq!(greens_kernel(0.0, 0.5, 3.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn kernel_continuous_on_diagonal() {
        let expected = Complex64::from_polar(1.5f64.sin() / 3.0, 1.5);
        assert!(close(greens_kernel(0.5, 0.5, 3.0), expected, 1e-16));
        let eps = 1e-12;
        let l = greens_kernel(0.5 - eps, 0.5, 3.0);
        let r = greens_kernel(0.5 + eps, 0.5, 3.0);
        assert!(close(l, r, 1e-10));
    }

    #[test]
    fn kernel_symmetric() {
        let (x, s, k) = (0.25f64, 0.75f64, 2.0f64);
        let explicit = Complex64::from_polar(1.0, k * s) * ((k * x).sin() / k);
        assert!(close(greens_kernel(x, s, k), explicit, 1e-16));
        assert!(close(greens_kernel(s, x, k), explicit, 1e-16));
    }

    #[test]
    fn derivative_kernel_values() {
        assert!(close(derivative_kernel(0.0, 0.5, 4.0).unwrap(), Complex64::from_polar(1.0, 2.0), 1e-15));
        let expected = I * 0.5f64.sin() * Complex64::from_polar(1.0, 2.0);
        assert!(close(derivative_kernel(1.0, 0.25, 2.0).unwrap(), expected, 1e-15));
        assert_eq!(derivative_kernel(0.3, 0.3, 1.0), Err(Error::AmbiguousKernel(0.3)));
    }

    #[test]
    fn derivative_kernel_unit_jump() {
        // H(s+, s) - H(s-, s) = i sin(ks) e^{iks} - cos(ks) e^{iks} = -1
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let s = 0.05 + 0.9 * next();
            let k = 0.5 + 200.0 * next();
            let eps = 1e-13;
            let up = derivative_kernel(s + eps, s, k).unwrap();
            let down = derivative_kernel(s - eps, s, k).unwrap();
            let jump = I * Complex64::from_polar((k * s).sin(), k * s)
                - Complex64::from_polar((k * s).cos(), k * s);
            assert!(close(jump, Complex64::new(-1.0, 0.0), 1e-14));
            assert!(((up - down).norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_satisfies_problem() {
        for k in [0.3, 1.0, 2.0, 5.0, 10.0, 37.5, 100.0, 1000.0] {
            let (u0, _) = exact_constant_f(k, 0.0);
            assert_eq!(u0, Complex64::new(0.0, 0.0));
            let (u1, du1) = exact_constant_f(k, 1.0);
            assert!((du1 - I * k * u1).norm() <= 1e-10 * (1.0 + u1.norm()));
            let a = robin_constant(k);
            for x in [0.1, 0.37, 0.8] {
                let (u, _) = exact_constant_f(k, x);
                let ddu = Complex64::new((k * x).cos(), 0.0) - a * (k * k * (k * x).sin());
                let res = ddu + u * (k * k) - 1.0;
                assert!(res.norm() < 1e-12 * (1.0 + k * k * u.norm()), "k={k} x={x}: {res}");
            }
        }
    }

    #[test]
    fn quadrature_boundary_values() {
        let p = problem(1.0);
        let (u0, _) = exact_by_quadrature(&p, 0.0).unwrap();
        assert!(u0.norm() < 1e-16);
        let (u1, du1) = exact_by_quadrature(&p, 1.0).unwrap();
        assert!((du1 - I * u1).norm() < 1e-10);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for (k, x) in [(5.0, 0.7), (10.0, 0.3), (100.0, 0.55)] {
            let (u, du) = exact_by_quadrature(&problem(k), x).unwrap();
            let (uc, duc) = exact_constant_f(k, x);
            assert!(close(u, uc, 1e-10), "k={k}");
            assert!(close(du, duc, 1e-10), "k={k}");
        }
    }

    #[test]
    fn tabulated_matches_closed_form() {
        for k in [1.0, 10.0, 100.0] {
            let tab = ExactSolution::tabulated(k, RhsSpec::function(|_| Complex64::new(-1.0, 0.0)));
            let cf = ExactSolution::closed_form(k);
            assert_eq!(tab.provenance(), Provenance::Quadrature);
            for x in [0.0, 0.013, 0.5, 0.77, 1.0] {
                assert!(close(tab.value(x), cf.value(x), 1e-12));
                assert!(close(tab.derivative(x), cf.derivative(x), 1e-12));
            }
        }
    }

    #[test]
    fn tabulated_general_rhs_solves_ode() {
        // u'' + k^2 u = -f checked by central differences of the tabulated u'
        let k = 7.0;
        let tab = ExactSolution::tabulated(k, RhsSpec::function(|x| Complex64::new(x * x, (3.0 * x).sin())));
        let x = 0.4;
        let eps = 1e-5;
        let ddu = (tab.derivative(x + eps) - tab.derivative(x - eps)) / (2.0 * eps);
        let f = Complex64::new(x * x, (3.0 * x).sin());
        assert!((ddu + tab.value(x) * (k * k) + f).norm() < 1e-6);
        let (u1, du1) = tab.eval(1.0);
        assert!((du1 - I * k * u1).norm() < 1e-12);
        assert!(tab.value(0.0).norm() < 1e-15);
    }

    #[test]
    fn regularity_bounds() {
        for k in [1.0, 2.0, 5.0, 10.0, 50.0, 100.0] {
            let r = check_regularity_bounds(&problem(k));
            assert!((r.f_norm - 1.0).abs() < 1e-12);
            assert!(r.holds(1e-8), "k = {k}: {r:?}");
        }
    }
}
