use helmholtz_cip::analysis::{full_report, ErrorReport};
use helmholtz_cip::dispersion::critical_dof;
use log::{debug, info};
use rayon::prelude::*;

use crate::commands::build_problem;
use crate::error::{CliError, CliResult};
use crate::spec::GammaSpec;
use crate::table::TableWriter;
use crate::SweepArgs;

fn predicted_nc(gamma: &GammaSpec, report: &ErrorReport) -> f64 {
    match gamma {
        // the optimal penalty leaves only the resolution limit of about k / pi
        GammaSpec::Optimal => report.k / std::f64::consts::PI,
        GammaSpec::Fixed(g) if g.im == 0.0 => critical_dof(report.k, g.re),
        GammaSpec::Fixed(_) => f64::NAN,
    }
}

fn runs(a: &SweepArgs) -> CliResult<Vec<(f64, usize)>> {
    let ks = a.k.expand(a.points, a.spacing)?;
    if a.dof_scan {
        let [k] = ks[..] else {
            return Err(CliError::Config("--dof-scan takes a single --k".into()));
        };
        let ns = a.n.as_ref().expect("clap enforces --n").expand(a.points, a.spacing)?;
        let mut ns: Vec<usize> = ns.into_iter().map(|n| n.round() as usize).collect();
        ns.dedup();
        return Ok(ns.into_iter().map(|n| (k, n)).collect());
    }
    match (&a.constraint, &a.n) {
        (Some(c), None) => Ok(ks.iter().map(|&k| (k, c.elements(k))).collect()),
        (None, Some(ns)) => {
            let ns = ns.expand(a.points, a.spacing)?;
            Ok(ks.iter().flat_map(|&k| ns.iter().map(move |&n| (k, n.round() as usize))).collect())
        }
        _ => Err(CliError::Config("give either --constraint or --n".into())),
    }
}

pub fn run(a: &SweepArgs) -> CliResult<()> {
    let runs = runs(a)?;
    info!("sweep over {} configurations", runs.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    // collect keeps the input order whatever order the workers finish in
    let reports: Vec<CliResult<ErrorReport>> = pool.install(|| {
        runs.par_iter()
            .map(|&(k, n)| {
                let p = build_problem(k, n, &a.penalty)?;
                debug!("k={k} n={n}");
                Ok(full_report(&p)?)
            })
            .collect()
    });

    let mut w = TableWriter::create(a.output.out.as_deref(), a.output.format)?;
    w.header(&[
        "k", "n", "t", "gamma_re", "gamma_im", "e_ba", "e_c", "ratio", "h1_semi_error", "norm_1h_error", "uh_norm_1h",
        "predicted_nc",
    ])?;
    for r in reports {
        let r = r?;
        w.row(vec![
            r.k.into(),
            r.n.into(),
            (r.k / r.n as f64).into(),
            r.gamma.re.into(),
            r.gamma.im.into(),
            r.e_ba.into(),
            r.e_c.into(),
            r.ratio.unwrap_or(f64::NAN).into(),
            r.h1_semi_error.into(),
            r.norm_1h_error.into(),
            r.uh_norm_1h.into(),
            predicted_nc(&a.penalty.gamma, &r).into(),
        ])?;
    }
    w.finish()?;
    Ok(())
}
