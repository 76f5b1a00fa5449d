//! Gauss-Legendre quadrature.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

/// Points per element used by every error and load computation.
pub const DEFAULT_ORDER: usize = 10;

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n`, exploiting symmetry.
    ///
    /// # Panics
    /// If `order == 0`.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * (1.0 + x.abs()) {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Number of points.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Reference nodes on `[-1, 1]`, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Reference weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Mapped `(x, w)` pairs on `[a, b]`.
    pub fn points(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// `int_a^b f`.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: Zero + Add<Output = T> + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        self.points(a, b).fold(T::zero(), |acc, (x, w)| acc + f(x) * w)
    }

    /// Composite rule with `panels` equal panels on `[a, b]`.
    pub fn integrate_composite<T, F>(&self, a: f64, b: f64, panels: usize, mut f: F) -> T
    where
        T: Zero + Add<Output = T> + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        (0..panels).fold(T::zero(), |acc, p| {
            let lo = a + p as f64 * width;
            let hi = if p + 1 == panels { b } else { lo + width };
            acc + self.integrate(lo, hi, &mut f)
        })
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in 1..=20 {
            let g = GaussLegendre::new(n);
            let s: f64 = g.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n = {n}: {s}");
            assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ten_point_rule_exact_through_degree_19() {
        let g = GaussLegendre::new(10);
        for deg in 0..=19 {
            let got: f64 = g.integrate(0.0, 1.0, |x| x.powi(deg));
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((got - exact).abs() < 1e-14, "deg {deg}: {got} vs {exact}");
        }
        // degree 20 is no longer exact
        let got: f64 = g.integrate(0.0, 1.0, |x| x.powi(20));
        assert!((got - 1.0 / 21.0).abs() > 1e-12);
    }

    #[test]
    fn known_two_point_rule() {
        let g = GaussLegendre::new(2);
        let x = 1.0 / 3.0f64.sqrt();
        assert!((g.nodes()[1] - x).abs() < 1e-15);
        assert!((g.weights()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn composite_oscillatory() {
        let g = GaussLegendre::new(10);
        let k = 200.0;
        let got: f64 = g.integrate_composite(0.0, 1.0, 64, |x| (k * x).cos());
        assert!((got - k.sin() / k).abs() < 1e-13);
    }
}
