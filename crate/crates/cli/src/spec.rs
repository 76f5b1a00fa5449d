//! Parsers for the value syntaxes accepted on the command line.

use std::str::FromStr;
use std::sync::Arc;

use exmex::prelude::*;
use helmholtz_cip::dispersion::optimal_gamma;
use helmholtz_cip::{Complex64, RhsSpec};

use crate::error::{CliError, CliResult};

/// A penalty: fixed, or `gamma_o(t)` resolved per run.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaSpec {
    Fixed(Complex64),
    Optimal,
}

impl GammaSpec {
    pub fn resolve(&self, t: f64) -> CliResult<Complex64> {
        match self {
            GammaSpec::Fixed(g) => Ok(*g),
            GammaSpec::Optimal => Ok(Complex64::new(optimal_gamma(t)?, 0.0)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GammaSpec::Optimal => "gamma_o".into(),
            GammaSpec::Fixed(g) if g.im == 0.0 => format!("{}", g.re),
            GammaSpec::Fixed(g) => format!("{g}"),
        }
    }
}

impl FromStr for GammaSpec {
    type Err = String;

    /// `gamma_o`, a real number, a fraction such as `-1/12`, or a complex
    /// literal such as `-0.1i` or `0.05-0.1i`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("gamma_o") || s.eq_ignore_ascii_case("opt") {
            return Ok(GammaSpec::Optimal);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(GammaSpec::Fixed(Complex64::new(num / den, 0.0)));
        }
        let g = Complex64::from_str(s).map_err(|_| format!("cannot parse penalty {s:?}"))?;
        if !(g.re.is_finite() && g.im.is_finite()) {
            return Err(format!("penalty must be finite, got {s:?}"));
        }
        Ok(GammaSpec::Fixed(g))
    }
}

/// The right-hand side: `neg-one` or a real expression in `x` and `k`.
#[derive(Debug, Clone)]
pub enum RhsArg {
    NegOne,
    Expr(String),
}

impl FromStr for RhsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "neg-one" || s == "-1" {
            return Ok(RhsArg::NegOne);
        }
        // parse once here so that typos surface as usage errors
        compile(s)?;
        Ok(RhsArg::Expr(s.to_string()))
    }
}

fn compile(text: &str) -> Result<FlatEx<f64>, String> {
    let expr = exmex::parse::<f64>(text).map_err(|e| format!("cannot parse right-hand side {text:?}: {e}"))?;
    if let Some(v) = expr.var_names().iter().find(|v| *v != "x" && *v != "k") {
        return Err(format!("unknown variable {v:?} in {text:?}; only x and k are available"));
    }
    Ok(expr)
}

impl RhsArg {
    pub fn to_spec(&self, k: f64) -> CliResult<RhsSpec> {
        match self {
            RhsArg::NegOne => Ok(RhsSpec::ConstantNegOne),
            RhsArg::Expr(text) => {
                let expr = Arc::new(compile(text).map_err(CliError::Config)?);
                let names: Vec<String> = expr.var_names().to_vec();
                Ok(RhsSpec::function(move |x| {
                    let vals: Vec<f64> = names.iter().map(|n| if n == "x" { x } else { k }).collect();
                    Complex64::new(expr.eval(&vals).unwrap_or(f64::NAN), 0.0)
                }))
            }
        }
    }
}

/// `a..b` range or comma-separated list of reals.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    List(Vec<f64>),
    Range(f64, f64),
}

impl FromStr for Values {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (num(a)?, num(b)?);
            if !(a.is_finite() && b.is_finite() && a <= b) {
                return Err(format!("empty or invalid range {s:?}"));
            }
            return Ok(Values::Range(a, b));
        }
        s.split(',').map(num).collect::<Result<Vec<_>, _>>().map(Values::List)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Spacing {
    Log,
    Lin,
}

impl Values {
    /// Expands a range into `points` values; lists are returned as given.
    pub fn expand(&self, points: usize, spacing: Spacing) -> CliResult<Vec<f64>> {
        match *self {
            Values::List(ref v) => Ok(v.clone()),
            Values::Range(a, b) => {
                if points < 2 || a == b {
                    return Ok(vec![a]);
                }
                let f = |i: usize| i as f64 / (points - 1) as f64;
                match spacing {
                    Spacing::Lin => Ok((0..points).map(|i| a + (b - a) * f(i)).collect()),
                    Spacing::Log => {
                        if a <= 0.0 {
                            return Err(CliError::Config("log spacing needs a positive range".into()));
                        }
                        let (la, lb) = (a.ln(), b.ln());
                        Ok((0..points).map(|i| (la + (lb - la) * f(i)).exp()).collect())
                    }
                }
            }
        }
    }
}

/// Mesh-size rule tying `n` to `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    /// `k h = c`.
    Kh(f64),
    /// `k^3 h^2 = c`.
    K3h2(f64),
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lhs, rhs) = s.split_once('=').ok_or_else(|| format!("expected kh=c or k3h2=c, got {s:?}"))?;
        let c: f64 = rhs.trim().parse().map_err(|_| format!("bad constant in {s:?}"))?;
        if !(c.is_finite() && c > 0.0) {
            return Err(format!("constraint constant must be positive, got {s:?}"));
        }
        match lhs.trim() {
            "kh" => Ok(Constraint::Kh(c)),
            "k3h2" | "k^3h^2" => Ok(Constraint::K3h2(c)),
            other => Err(format!("unknown constraint {other:?}; use kh or k3h2")),
        }
    }
}

impl Constraint {
    /// Smallest `n >= 2` with the constrained quantity at most `c`.
    pub fn elements(&self, k: f64) -> usize {
        let n = match *self {
            Constraint::Kh(c) => k / c,
            Constraint::K3h2(c) => (k * k * k / c).sqrt(),
        };
        // guard against k / c landing a hair above an integer
        let r = n.round();
        let n = if (n - r).abs() <= 1e-9 * r { r } else { n.ceil() };
        (n as usize).max(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_syntaxes() {
        assert_eq!("gamma_o".parse::<GammaSpec>().unwrap(), GammaSpec::Optimal);
        assert_eq!("-1/12".parse::<GammaSpec>().unwrap(), GammaSpec::Fixed(Complex64::new(-1.0 / 12.0, 0.0)));
        assert_eq!("-0.1i".parse::<GammaSpec>().unwrap(), GammaSpec::Fixed(Complex64::new(0.0, -0.1)));
        assert_eq!("0.05-0.1i".parse::<GammaSpec>().unwrap(), GammaSpec::Fixed(Complex64::new(0.05, -0.1)));
        assert_eq!("0".parse::<GammaSpec>().unwrap(), GammaSpec::Fixed(Complex64::new(0.0, 0.0)));
        assert!("1/0".parse::<GammaSpec>().is_err());
        assert!("abc".parse::<GammaSpec>().is_err());
    }

    #[test]
    fn rhs_expression() {
        let spec = "sin(k*x) + x^2".parse::<RhsArg>().unwrap().to_spec(2.0).unwrap();
        let v = spec.eval(0.5);
        assert!((v.re - (1.0f64.sin() + 0.25)).abs() < 1e-14);
        assert!("y + 1".parse::<RhsArg>().is_err());
        assert!(matches!("neg-one".parse::<RhsArg>().unwrap(), RhsArg::NegOne));
    }

    #[test]
    fn ranges() {
        let v: Values = "1..1000".parse().unwrap();
        let pts = v.expand(4, Spacing::Log).unwrap();
        assert!((pts[1] - 10.0).abs() < 1e-9 && (pts[3] - 1000.0).abs() < 1e-9);
        assert_eq!("1,2,5".parse::<Values>().unwrap().expand(9, Spacing::Lin).unwrap(), vec![1.0, 2.0, 5.0]);
        assert!("5..1".parse::<Values>().is_err());
    }

    #[test]
    fn constraints() {
        assert_eq!("kh=1".parse::<Constraint>().unwrap().elements(1000.0), 1000);
        assert_eq!("k3h2=1".parse::<Constraint>().unwrap().elements(100.0), 1000);
        assert_eq!("kh=0.5".parse::<Constraint>().unwrap().elements(10.3), 21);
        assert!("kh=0".parse::<Constraint>().is_err());
        assert!("nk=1".parse::<Constraint>().is_err());
    }
}
