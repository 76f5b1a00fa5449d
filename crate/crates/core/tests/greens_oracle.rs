use helmholtz_cip::assembly::{assemble_load, assemble_matrix};
use helmholtz_cip::greens::{greens_matrix, identity_residual, DiscreteGreens};
use helmholtz_cip::{Complex64, Problem, RhsSpec};

fn problem(n: usize, t: f64, g: f64) -> Problem {
    Problem::new(t * n as f64, n, Complex64::new(g, 0.0), RhsSpec::ConstantNegOne).unwrap()
}

#[test]
fn closed_form_matches_solver_columns_on_grid() {
    for n in [10, 40, 100] {
        for t in [0.5, 1.0] {
            for g in [-1.0 / 12.0, -0.08, 1.0 / 12.0] {
                let p = problem(n, t, g);
                let g_h = DiscreteGreens::new(&p).unwrap().matrix().unwrap();
                let lu = assemble_matrix(&p).factor().unwrap();
                let mut worst: f64 = 0.0;
                let mut scale: f64 = 0.0;
                for m in 1..=n {
                    for (j, v) in lu.inverse_column(m).unwrap().into_iter().enumerate() {
                        worst = worst.max((g_h[(j, m - 1)] - v).norm());
                        scale = scale.max(v.norm());
                    }
                }
                assert!(worst <= 1e-8 * scale, "n={n} t={t} g={g}: {}", worst / scale);
                assert!(identity_residual(&assemble_matrix(&p), &g_h) < 1e-8);
            }
        }
    }
}

#[test]
fn inverse_identity_at_thirty() {
    let p = problem(30, 0.9, -0.05);
    assert!(identity_residual(&assemble_matrix(&p), &greens_matrix(&p).unwrap()) < 1e-8);
}

#[test]
fn derivative_kernel_follows_leading_term() {
    let mut worst: f64 = 0.0;
    for n in [20, 60, 120] {
        for t in [0.1, 0.25, 0.5, 1.0] {
            for g in [-1.0 / 6.0, -1.0 / 12.0, -0.05, 0.05, 1.0 / 12.0, 1.0 / 6.0] {
                let p = problem(n, t, g);
                let dg = DiscreteGreens::new(&p).unwrap();
                let eta4 = dg.roots().eta[3].norm();
                for col in dg.columns().unwrap() {
                    let m = col.m;
                    for j in 1..=n {
                        let h = dg.derivative_entry(&col, j);
                        let lead = dg.derivative_leading_term(j, m);
                        let bound = t + eta4.powi(-(j.abs_diff(m) as i32));
                        worst = worst.max((h - lead).norm() / bound);
                    }
                }
            }
        }
    }
    assert!(worst <= 10.0, "fitted constant {worst}");
}

#[test]
fn green_representation_reproduces_solver_for_general_rhs() {
    let p = Problem::new(30.0, 40, Complex64::new(-0.08, 0.0), RhsSpec::function(|x| Complex64::new(x.cos(), x * x))).unwrap();
    let dg = DiscreteGreens::new(&p).unwrap();
    let load = assemble_load(&p);
    let u = dg.solve(load.as_slice()).unwrap();
    let v = assemble_matrix(&p).factor().unwrap().solve(&load.scaled(p.h())).unwrap();
    for (a, b) in u.iter().zip(&v) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn unsupported_regimes_are_reported() {
    assert!(DiscreteGreens::new(&problem(10, 1.5, -0.05)).is_err());
    assert!(DiscreteGreens::new(&problem(10, 0.5, 0.2)).is_err());
    assert!(DiscreteGreens::new(&problem(4, 0.5, 0.05)).is_err());
    // gamma = 0 still has a Green's matrix through the solver
    assert!(greens_matrix(&problem(10, 0.5, 0.0)).is_ok());
}
