//! Command-line harness for `helmholtz-cip`: single solves, dispersion
//! curves, parameter sweeps and a self-check.

pub mod commands;
pub mod error;
pub mod spec;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::CliResult;
use crate::spec::{Constraint, GammaSpec, RhsArg, Spacing, Values};
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "helmholtz-cip", version, about = "CIP finite elements for the 1D Helmholtz problem u'' + k^2 u = -f")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and write nodal and exact values.
    ///
    /// Columns: x, Re u_h, Im u_h, Re u, Im u. With --refine m the discrete
    /// solution is sampled m times per element.
    ///
    /// Pollution-free solution:   solve --k 10 --n 10 --gamma gamma_o --refine 20
    /// Standard FEM phase lag:    solve --k 10 --n 10 --gamma 0 --refine 20
    #[command(verbatim_doc_comment)]
    Solve(SolveArgs),
    /// Compare cos t with cos t_h^- for several penalties.
    ///
    /// Columns: gamma_spec, gamma, t, cos_t, cos_t_h_minus, t_h_minus,
    /// propagating, cutoff.
    ///
    /// Cutoff figure:  dispersion --gamma gamma_o --gamma -1/12 --gamma 0 --t 0..4 --points 401
    /// Single query:   dispersion --gamma -1/12 --t 3
    #[command(verbatim_doc_comment)]
    Dispersion(DispersionArgs),
    /// Error reports over a range of k (or of n with --dof-scan).
    ///
    /// Columns: k, n, t, gamma_re, gamma_im, e_ba, e_c, ratio, h1_semi_error,
    /// norm_1h_error, uh_norm_1h, predicted_nc.
    ///
    /// Optimal penalty error curves:    sweep --dof-scan --k 100 --n 2..2000 --points 60 --gamma gamma_o
    /// Critical DOF for gamma = -1/12:  sweep --dof-scan --k 100 --n 10..400 --points 60 --gamma -1/12
    /// Fixed penalty, k^3 h^2 = 1:      sweep --constraint k3h2=1 --gamma -0.08 --k 1..1000
    /// Imaginary penalty, k^3 h^2 = 1:  sweep --constraint k3h2=1 --gamma -0.1i --k 1..1000
    /// Ratio growth, kh = 1:            sweep --constraint kh=1 --gamma -0.08 --k 1..1000
    /// Ratio with imaginary penalty:    sweep --constraint kh=1 --gamma -0.1i --k 1..1000
    /// Pollution removed, kh = 1:       sweep --constraint kh=1 --gamma gamma_o --k 1..1000
    #[command(verbatim_doc_comment)]
    Sweep(SweepArgs),
    /// Run the invariant and oracle checks; exit status 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PenaltyArgs {
    /// Penalty: a number, a fraction like -1/12, gamma_o, or a complex literal like -0.1i.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub gamma: GammaSpec,
    /// Right-hand side f: neg-one, or a real expression in x and k such as "sin(k*x)".
    #[arg(long, default_value = "neg-one", allow_hyphen_values = true)]
    pub rhs: RhsArg,
    /// Add the boundary least-squares term to the penalty.
    #[arg(long, overrides_with = "no_boundary_penalty")]
    pub boundary_penalty: bool,
    /// Leave out the boundary least-squares term (the default).
    #[arg(long)]
    pub no_boundary_penalty: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub k: f64,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub penalty: PenaltyArgs,
    /// Samples per element.
    #[arg(long, default_value_t = 1)]
    pub refine: usize,
    /// Also write the error report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    /// Penalty; repeat for several curves.
    #[arg(long, default_values = ["gamma_o", "-1/12", "0"], allow_hyphen_values = true)]
    pub gamma: Vec<GammaSpec>,
    /// Values of t = kh: a list or a range a..b.
    #[arg(long, default_value = "0..4")]
    pub t: Values,
    /// Points in a range.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Wavenumbers: a list or a range a..b.
    #[arg(long)]
    pub k: Values,
    /// Element counts (list or range); required with --dof-scan.
    #[arg(long, conflicts_with = "constraint")]
    pub n: Option<Values>,
    /// Mesh rule kh=c or k3h2=c.
    #[arg(long)]
    pub constraint: Option<Constraint>,
    /// Scan n at fixed k instead of scanning k.
    #[arg(long, requires = "n")]
    pub dof_scan: bool,
    /// Points in a range.
    #[arg(long, default_value_t = 60)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "log")]
    pub spacing: Spacing,
    #[command(flatten)]
    pub penalty: PenaltyArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Corrupt one part of the pipeline to confirm the checks notice.
    #[arg(long, hide = true)]
    pub inject_fault: Option<commands::verify::Fault>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(a) => commands::solve::run(&a),
        Command::Dispersion(a) => commands::dispersion::run(&a),
        Command::Sweep(a) => commands::sweep::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
    }
}
