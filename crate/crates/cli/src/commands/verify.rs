use helmholtz_cip::analysis::{full_report, jstab_identity_residual};
use helmholtz_cip::assembly::{assemble_dense_by_quadrature, assemble_matrix};
use helmholtz_cip::banded::BandedMatrix;
use helmholtz_cip::dispersion::{cutoff_frequency, dispersion_roots, optimal_gamma, phase_error};
use helmholtz_cip::exact::{check_regularity_bounds, exact_by_quadrature, exact_constant_f};
use helmholtz_cip::greens::DiscreteGreens;
use helmholtz_cip::{Complex64, Problem, RhsSpec};
use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::table::TableWriter;
use crate::VerifyArgs;

/// Deliberate corruption for testing the checks themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Perturb one entry of the assembled matrix.
    Assembly,
    /// Perturb the solver output.
    Solver,
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn problem(k: f64, n: usize, g: Complex64) -> Problem {
    Problem::new(k, n, g, RhsSpec::ConstantNegOne).expect("fixed test problems are valid")
}

fn assemble(p: &Problem, fault: Option<Fault>) -> BandedMatrix {
    let mut m = assemble_matrix(p);
    if fault == Some(Fault::Assembly) {
        m.add(0, 0, c(1e-6, 0.0));
    }
    m
}

fn dispersion_check() -> Check {
    let mut worst: f64 = 0.0;
    let mut bound_ok = true;
    for i in 1..=10 {
        let t = i as f64 / 10.0;
        for g in [-1.0 / 6.0, -1.0 / 12.0, -0.05, 0.05, 1.0 / 12.0, 1.0 / 6.0] {
            let d = dispersion_roots(t, g).unwrap();
            let sum = (4.0 * g + 1.0 + t * t / 6.0) / (2.0 * g);
            worst = worst.max((d.cos_minus + d.cos_plus.unwrap() - sum).abs() / sum.abs());
            bound_ok &= (d.cos_minus - 1.0 + t * t / 2.0).abs() <= t.powi(4) / 6.0;
        }
    }
    Check { name: "dispersion roots", pass: worst <= 1e-12 && bound_ok, detail: format!("Vieta residual {worst:.2e}") }
}

fn phase_check() -> Check {
    let order = |g: f64| {
        let e: Vec<f64> = (4..=5).map(|l| phase_error(10.0, 0.1 / 2f64.powi(l), g).unwrap()).collect();
        (e[0] / e[1]).log2()
    };
    let (p0, p4) = (order(0.0), order(-1.0 / 12.0));
    let opt = phase_error(10.0, 0.1, optimal_gamma(1.0).unwrap()).unwrap();
    Check {
        name: "phase-error orders",
        pass: (p0 - 2.0).abs() <= 0.05 && (p4 - 4.0).abs() <= 0.1 && opt <= 1e-11,
        detail: format!("orders {p0:.3} and {p4:.3}"),
    }
}

fn cutoff_check() -> Check {
    let a = cutoff_frequency(-1.0 / 12.0).unwrap() - 8f64.sqrt();
    let b = cutoff_frequency(0.0).unwrap() - 12f64.sqrt();
    Check { name: "cutoff frequencies", pass: a.abs() <= 1e-14 && b.abs() <= 1e-14, detail: format!("deviations {a:.1e} and {b:.1e}") }
}

fn assembly_check(rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Check {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = problem(rng.gen_range(0.5..50.0), rng.gen_range(2..=40), c(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)))
            .with_boundary_penalty(rng.gen());
        let dense = assemble_dense_by_quadrature(&p);
        worst = worst.max(assemble(&p, fault).to_dense().max_abs_diff(&dense) / dense.max_abs().max(1.0));
    }
    Check { name: "assembly oracle", pass: worst <= 1e-13, detail: format!("max difference {worst:.2e}") }
}

fn solver_check(rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Check {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(5..=200);
        let p = problem(rng.gen_range(1.0..100.0), n, c(rng.gen_range(-0.15..0.15), rng.gen_range(-0.1..0.0)));
        let m = assemble(&p, fault);
        let b: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let mut x = match m.factor().and_then(|lu| lu.solve(&b)) {
            Ok(x) => x,
            Err(_) => return Check { name: "banded solver residual", pass: false, detail: "factorization failed".into() },
        };
        if fault == Some(Fault::Solver) {
            x[0] += c(1e-6, 0.0);
        }
        // the residual is measured against the clean matrix
        let r = assemble_matrix(&p).mul_vec(&x).unwrap();
        let res = r.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        let xn = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let bn = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
        worst = worst.max(res / (m.norm_inf() * xn + bn));
    }
    Check { name: "banded solver residual", pass: worst <= 1e-10, detail: format!("relative residual {worst:.2e}") }
}

fn greens_check(fault: Option<Fault>) -> Check {
    let p = problem(20.0, 40, c(-1.0 / 12.0, 0.0));
    let gh = DiscreteGreens::new(&p).and_then(|d| d.matrix()).unwrap();
    let lu = assemble(&p, fault).factor().unwrap();
    let (mut diff, mut scale): (f64, f64) = (0.0, 0.0);
    for m in 1..=40 {
        for (j, v) in lu.inverse_column(m).unwrap().into_iter().enumerate() {
            diff = diff.max((gh[(j, m - 1)] - v).norm());
            scale = scale.max(v.norm());
        }
    }
    Check { name: "discrete Green's function", pass: diff <= 1e-8 * scale, detail: format!("relative difference {:.2e}", diff / scale) }
}

fn jstab_check(rng: &mut ChaCha8Rng) -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let p = problem(10.0, 20, c(0.0, -0.1)).with_boundary_penalty(i % 2 == 0);
        let v: Vec<Complex64> = (0..20).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let n2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        worst = worst.max(jstab_identity_residual(&p, &v).unwrap() / n2);
    }
    Check { name: "stabilization identity", pass: worst <= 1e-12, detail: format!("residual {worst:.2e}") }
}

fn exact_check(rng: &mut ChaCha8Rng) -> Check {
    let mut diff: f64 = 0.0;
    for k in [1.0, 10.0, 100.0] {
        let p = problem(k, 10, c(0.0, 0.0));
        for _ in 0..20 {
            let x: f64 = rng.gen();
            let (u, du) = exact_constant_f(k, x);
            let (uq, duq) = exact_by_quadrature(&p, x).unwrap();
            diff = diff.max((u - uq).norm()).max((du - duq).norm());
        }
    }
    let reg = [1.0, 10.0, 100.0].iter().all(|&k| check_regularity_bounds(&problem(k, 10, c(0.0, 0.0))).holds(1e-8));
    Check { name: "exact solution", pass: diff <= 1e-9 && reg, detail: format!("closed form vs quadrature {diff:.2e}") }
}

fn best_approx_check() -> Check {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (k, n, g) in [(10.0, 10, 0.0), (50.0, 60, -1.0 / 12.0), (100.0, 100, optimal_gamma(1.0).unwrap())] {
        let r = full_report(&problem(k, n, c(g, 0.0))).unwrap();
        ok &= r.e_ba <= r.e_c * (1.0 + 1e-12);
        worst = worst.max(r.ratio.unwrap_or(1.0));
    }
    Check { name: "best approximation bound", pass: ok, detail: format!("largest e_c/e_ba {worst:.3}") }
}

pub fn run(a: &VerifyArgs) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let fault = a.inject_fault;
    if let Some(f) = fault {
        info!("injecting fault {f:?}");
    }
    let checks = [
        dispersion_check(),
        phase_check(),
        cutoff_check(),
        assembly_check(&mut rng, fault),
        solver_check(&mut rng, fault),
        greens_check(fault),
        jstab_check(&mut rng),
        exact_check(&mut rng),
        best_approx_check(),
    ];
    let mut w = TableWriter::create(a.output.out.as_deref(), a.output.format)?;
    w.header(&["check", "status", "detail"])?;
    let mut failed = 0;
    for ch in &checks {
        failed += usize::from(!ch.pass);
        w.row(vec![ch.name.into(), if ch.pass { "pass" } else { "FAIL" }.into(), ch.detail.clone().into()])?;
    }
    w.finish()?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed))
    }
}
