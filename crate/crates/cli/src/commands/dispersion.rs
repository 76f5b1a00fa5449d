use helmholtz_cip::dispersion::{cutoff_frequency, dispersion_roots};

use crate::error::{CliError, CliResult};
use crate::spec::{GammaSpec, Spacing};
use crate::table::TableWriter;
use crate::DispersionArgs;

pub fn run(a: &DispersionArgs) -> CliResult<()> {
    let ts: Vec<f64> = a.t.expand(a.points, Spacing::Lin)?.into_iter().filter(|&t| t > 0.0).collect();
    if ts.is_empty() {
        return Err(CliError::Config("no positive t values requested".into()));
    }
    let mut w = TableWriter::create(a.output.out.as_deref(), a.output.format)?;
    w.header(&["gamma_spec", "gamma", "t", "cos_t", "cos_t_h_minus", "t_h_minus", "propagating", "cutoff"])?;
    for spec in &a.gamma {
        for &t in &ts {
            let g = spec.resolve(t)?;
            if g.im != 0.0 {
                return Err(CliError::Config(format!("dispersion needs a real penalty, got {}", spec.label())));
            }
            let d = dispersion_roots(t, g.re)?;
            let cutoff = match spec {
                GammaSpec::Optimal => f64::NAN,
                GammaSpec::Fixed(_) => cutoff_frequency(g.re).unwrap_or(f64::NAN),
            };
            w.row(vec![
                spec.label().into(),
                g.re.into(),
                t.into(),
                t.cos().into(),
                d.cos_minus.into(),
                d.t_h_minus.unwrap_or(f64::NAN).into(),
                d.propagating.into(),
                cutoff.into(),
            ])?;
        }
    }
    w.finish()?;
    Ok(())
}
