use helmholtz_cip::analysis::{report_for, DiscreteSolution, ErrorOptions};
use helmholtz_cip::exact::ExactSolution;
use log::info;

use crate::commands::build_problem;
use crate::error::{CliError, CliResult};
use crate::table::{Cell, TableWriter};
use crate::SolveArgs;

pub fn run(a: &SolveArgs) -> CliResult<()> {
    if a.refine == 0 {
        return Err(CliError::Config("--refine must be at least 1".into()));
    }
    let p = build_problem(a.k, a.n, &a.penalty)?;
    info!("solving k={} n={} gamma={}", p.k(), p.n(), p.gamma());
    let uh = DiscreteSolution::solve(&p)?;
    let exact = ExactSolution::for_problem(&p);

    let mut w = TableWriter::create(a.output.out.as_deref(), a.output.format)?;
    w.header(&["x", "re_uh", "im_uh", "re_u", "im_u"])?;
    let samples = p.n() * a.refine;
    for i in 0..=samples {
        let x = i as f64 / samples as f64;
        let (v, u) = (uh.eval(x), exact.value(x));
        w.row(vec![x.into(), v.re.into(), v.im.into(), u.re.into(), u.im.into()])?;
    }
    w.finish()?;

    let r = report_for(&p, &exact, &uh, ErrorOptions::default());
    let fields: [(&str, Cell); 14] = [
        ("k", r.k.into()),
        ("n", r.n.into()),
        ("gamma_re", r.gamma.re.into()),
        ("gamma_im", r.gamma.im.into()),
        ("l2_error", r.l2_error.into()),
        ("h1_semi_error", r.h1_semi_error.into()),
        ("jump_term", r.jump_term.into()),
        ("norm_1h_error", r.norm_1h_error.into()),
        ("best_approx_error", r.best_approx_error.into()),
        ("e_ba", r.e_ba.into()),
        ("e_c", r.e_c.into()),
        ("ratio", r.ratio.unwrap_or(f64::NAN).into()),
        ("uh_norm_1h", r.uh_norm_1h.into()),
        ("f_norm", r.f_norm.into()),
    ];
    match &a.report {
        Some(path) => {
            let mut rw = TableWriter::create(Some(path), a.output.format)?;
            rw.header(&["quantity", "value"])?;
            for (name, v) in fields {
                rw.row(vec![name.into(), v])?;
            }
            rw.finish()?;
        }
        None => info!("e_ba={:.6e} e_c={:.6e} ratio={:?}", r.e_ba, r.e_c, r.ratio),
    }
    Ok(())
}
