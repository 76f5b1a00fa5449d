//! Dispersion analysis of the interior stencil.
//!
//! A plane wave `v_j = e^{i t_h j}` solves the interior equations
//! `gamma v_{j-2} + R v_{j-1} + 2S v_j + R v_{j+1} + gamma v_{j+2} = 0` iff
//!
//! ```text
//!     2 gamma cos^2 t_h - (4 gamma + 1 + t^2/6) cos t_h + 2 gamma + 1 - t^2/3 = 0.
//! ```
//!
//! The root with `|cos t_h| <= 1` is the propagating mode `t_h^-`; the other
//! one (`|cos t_h^+| >= 1`) decays. All quantities are evaluated through
//! `1 - cos t_h^- = t^2 / (1 + t^2/6 + sqrt((1 + t^2/6)^2 + 4 gamma t^2))`,
//! which keeps full relative accuracy as `t -> 0`.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest `|gamma|` covered by the error analysis.
pub const GAMMA_BOUND: f64 = 1.0 / 6.0;

/// Two roots of the dispersion relation for one `(t, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionResult {
    /// `k h`.
    pub t: f64,
    /// Penalty.
    pub gamma: f64,
    /// `cos t_h^-`.
    pub cos_minus: f64,
    /// `1 - cos t_h^-`, computed without cancellation.
    pub one_minus_cos_minus: f64,
    /// `cos t_h^+`; absent for `gamma = 0`, where the relation is linear.
    pub cos_plus: Option<f64>,
    /// `t_h^-` in `(0, pi]` when `|cos t_h^-| <= 1`.
    pub t_h_minus: Option<f64>,
    /// Strictly inside the propagating band: `|cos t_h^-| < 1`.
    pub propagating: bool,
}

impl DispersionResult {
    /// Discrete wavenumber `k_h^- = t_h^- / h = k t_h^- / t`.
    pub fn k_h_minus(&self, k: f64) -> Option<f64> {
        self.t_h_minus.map(|th| th * k / self.t)
    }

    /// Whether `(t, gamma)` lies where the phase error bounds are proven:
    /// `t <= 1` and `|gamma| <= 1/6`.
    pub fn analyzed_regime(&self) -> bool {
        self.t <= 1.0 && self.gamma.abs() <= GAMMA_BOUND
    }
}

/// Both roots of the dispersion relation.
pub fn dispersion_roots(t: f64, gamma: f64) -> Result<DispersionResult> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!("t must be positive, got {t}")));
    }
    if !gamma.is_finite() {
        return Err(Error::InvalidArgument(alloc::format!("gamma must be finite, got {gamma}")));
    }
    let t2 = t * t;
    let p = 1.0 + t2 / 6.0;
    let disc = p * p + 4.0 * gamma * t2;
    if disc < 0.0 {
        return Err(Error::NoRealRoots { t, gamma });
    }
    let root = disc.sqrt();
    // the minus branch, free of cancellation for any gamma including 0
    let mut one_minus = t2 / (p + root);
    let mut cos_minus = 1.0 - one_minus;
    let mut cos_plus = if gamma == 0.0 {
        None
    } else {
        Some((4.0 * gamma + p + root) / (4.0 * gamma))
    };
    if let Some(cp) = cos_plus {
        if cos_minus.abs() > 1.0 && cp.abs() <= 1.0 {
            cos_plus = Some(cos_minus);
            cos_minus = cp;
            one_minus = 1.0 - cp;
        }
    }
    let t_h_minus = (cos_minus.abs() <= 1.0).then(|| {
        if cos_minus >= 0.0 {
            2.0 * (0.5 * one_minus).sqrt().asin()
        } else {
            cos_minus.acos()
        }
    });
    Ok(DispersionResult {
        t,
        gamma,
        cos_minus,
        one_minus_cos_minus: one_minus,
        cos_plus,
        t_h_minus,
        propagating: cos_minus.abs() < 1.0,
    })
}

/// The penalty that makes the discrete wavenumber exact:
///
/// ```text
///     gamma_o(t) = (6 cos t - 6 + t^2 cos t + 2 t^2) / (12 (1 - cos t)^2).
/// ```
///
/// For `t <= 1` the numerator is summed from its Taylor series, since the
/// closed form cancels down to `O(t^4)`.
pub fn optimal_gamma(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!("t must be positive, got {t}")));
    }
    let one_minus_cos = 2.0 * (0.5 * t).sin().powi(2);
    if one_minus_cos == 0.0 {
        return Err(Error::InvalidArgument(alloc::format!("t = {t} is a multiple of 2 pi")));
    }
    let numerator = if t <= 1.0 {
        optimal_gamma_numerator_series(t)
    } else {
        let c = t.cos();
        6.0 * c - 6.0 + t * t * c + 2.0 * t * t
    };
    Ok(numerator / (12.0 * one_minus_cos * one_minus_cos))
}

/// `sum_{m>=2} (-1)^m (6/(2m)! - 1/(2m-2)!) t^{2m}`.
fn optimal_gamma_numerator_series(t: f64) -> f64 {
    let t2 = t * t;
    // 1/(2m-2)! and 1/(2m)! for m = 2
    let mut inv_fact_lo = 0.5;
    let mut inv_fact_hi = 1.0 / 24.0;
    let mut power = t2 * t2;
    let mut sum = 0.0;
    for m in 2..40 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * (6.0 * inv_fact_hi - inv_fact_lo) * power;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        let mf = m as f64;
        inv_fact_lo = inv_fact_hi;
        inv_fact_hi /= (2.0 * mf + 1.0) * (2.0 * mf + 2.0);
        power *= t2;
    }
    sum
}

/// `t_c = sqrt(48 gamma + 12)`, where `cos t_h^-` reaches `-1`.
pub fn cutoff_frequency(gamma: f64) -> Result<f64> {
    if gamma.is_nan() || gamma < -0.25 {
        return Err(Error::InvalidArgument(alloc::format!(
            "no real cutoff for gamma = {gamma} < -1/4"
        )));
    }
    Ok((48.0 * gamma + 12.0).sqrt())
}

/// `|k_h^- - k|` on a mesh of size `h`.
pub fn phase_error(k: f64, h: f64, gamma: f64) -> Result<f64> {
    let t = k * h;
    let res = dispersion_roots(t, gamma)?;
    let th = res.t_h_minus.ok_or(Error::Unsupported(alloc::format!(
        "no propagating mode at t = {t}, gamma = {gamma}"
    )))?;
    Ok((th - t).abs() / h)
}

/// Predicted element count where the relative error leaves its plateau, for
/// a `t`-independent penalty:
///
/// ```text
///     N_c = (|12 gamma + 1| k^3 / 24)^{1/2}   (gamma != -1/12),
///     N_c = (k^5 / 720)^{1/4}                 (gamma  = -1/12).
/// ```
pub fn critical_dof(k: f64, gamma: f64) -> f64 {
    if (gamma + 1.0 / 12.0).abs() <= 1e-14 {
        (k.powi(5) / 720.0).powf(0.25)
    } else {
        ((12.0 * gamma + 1.0).abs() / 24.0 * k.powi(3)).sqrt()
    }
}
