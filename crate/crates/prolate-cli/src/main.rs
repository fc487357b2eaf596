//! Command-line surface: spectra, figure data, and verification reports as
//! CSV/JSON.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error.

mod figures;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::Format;
use prolate::matrix::{Params1d, ProlateParams};

#[derive(Parser)]
#[command(
    name = "prolate",
    version,
    about = "Discrete prolate matrices: spectra, figure data, and concentration-bound checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenvalue spectrum of the prolate matrix (repeat --n/--m/--k per axis)
    Spectrum(SpectrumArgs),
    /// Regenerate the data behind a named figure
    Figure(FigureArgs),
    /// Run verification sweeps and emit a JSON report
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct SpectrumArgs {
    /// Ambient length N of an axis (repeatable)
    #[arg(long = "n", required = true)]
    n: Vec<usize>,
    /// Time width M of an axis (repeatable)
    #[arg(long = "m", required = true)]
    m: Vec<usize>,
    /// Band half-width K of an axis (repeatable)
    #[arg(long = "k", required = true)]
    k: Vec<usize>,
    /// Permit M = N (degenerate known-answer geometry)
    #[arg(long)]
    identity_time_limit: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureName {
    #[value(name = "fixed-tbw-vs-N", alias = "fixed-tbw-vs-n")]
    FixedTbwVsN,
    #[value(name = "spectra-vs-N", alias = "spectra-vs-n")]
    SpectraVsN,
    #[value(name = "eig-vs-mw")]
    EigVsMw,
    #[value(name = "tensor-multiplicity")]
    TensorMultiplicity,
}

#[derive(clap::Args)]
struct FigureArgs {
    /// Which figure to regenerate
    #[arg(value_enum)]
    name: FigureName,
    /// Time-bandwidth product 2MW to hold fixed
    #[arg(long)]
    tbw: Option<f64>,
    /// Ambient sizes for fixed-tbw-vs-N
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// Bandwidth targets for spectra-vs-N
    #[arg(long, value_delimiter = ',')]
    w_list: Option<Vec<f64>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Largest eigenvalue index emitted by eig-vs-mw
    #[arg(long)]
    k_max: Option<usize>,
    /// Largest band half-width K in the eig-vs-mw sweep
    #[arg(long)]
    band_max: Option<usize>,
    /// Step between swept band half-widths
    #[arg(long)]
    band_step: Option<usize>,
    /// Eigenvalues emitted per configuration (0 = all)
    #[arg(long)]
    max_index: Option<usize>,
    /// Multiplicity grouping tolerance for tensor-multiplicity
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    All,
    #[value(name = "cross-index")]
    CrossIndex,
    #[value(name = "prop1d")]
    Prop1d,
    Karnik,
    #[value(name = "main-theorem")]
    MainTheorem,
    Nodal,
    Chi,
    Duality,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Which verification sweep to run
    #[arg(long, value_enum, default_value = "all")]
    which: Which,
    /// Parameter grid name ("default" is the only built-in)
    #[arg(long, default_value = "default")]
    grid: String,
    /// Restrict 1D sweeps (or the nodal sweep) to one ambient size
    #[arg(long)]
    n: Option<usize>,
    /// Restrict to one time width
    #[arg(long)]
    m: Option<usize>,
    /// Nodal: scan all admissible K (the default whenever --k is not given)
    #[arg(long)]
    k_all: bool,
    /// Band half-width for single-instance modes (duality)
    #[arg(long)]
    k: Option<usize>,
    /// Upper ambient size of the nodal sweep
    #[arg(long, default_value_t = 128)]
    n_max: usize,
    /// Dimension for the main-theorem harness
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Threshold for the main-theorem harness
    #[arg(long, default_value_t = 0.4)]
    eps: f64,
    /// RNG seed for oracle-backed random-vector checks
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Spectrum(args) => run_spectrum(args),
        Cmd::Figure(args) => run_figure(args),
        Cmd::Verify(args) => run_verify(args),
    }
}

fn build_params(
    n: &[usize],
    m: &[usize],
    k: &[usize],
    identity_time_limit: bool,
) -> Result<ProlateParams> {
    if n.len() != m.len() || n.len() != k.len() {
        bail!(
            "axis counts differ: {} --n, {} --m, {} --k",
            n.len(),
            m.len(),
            k.len()
        );
    }
    let mut axes = Vec::with_capacity(n.len());
    for i in 0..n.len() {
        let axis = if identity_time_limit && m[i] == n[i] {
            Params1d::new_identity_time_limit(n[i], k[i])?
        } else {
            Params1d::new(n[i], m[i], k[i])?
        };
        axes.push(axis);
    }
    Ok(ProlateParams::new(axes)?)
}

fn run_spectrum(args: SpectrumArgs) -> Result<ExitCode> {
    let params = build_params(&args.n, &args.m, &args.k, args.identity_time_limit)?;
    let series = figures::spectrum_series(&params)?;
    output::emit(&series, args.format, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_figure(args: FigureArgs) -> Result<ExitCode> {
    let series = match args.name {
        FigureName::FixedTbwVsN => figures::fixed_tbw_vs_n(
            args.tbw.unwrap_or(5.0),
            &args.n_list.unwrap_or_else(|| vec![64, 128, 256, 512]),
            args.k.unwrap_or(4),
            args.max_index.unwrap_or(100),
        )?,
        FigureName::SpectraVsN => figures::spectra_vs_n(
            args.tbw.unwrap_or(270.0),
            args.n.unwrap_or(1000),
            &args.w_list.unwrap_or_else(|| vec![0.45, 0.22, 0.15]),
            args.max_index.unwrap_or(0),
        )?,
        FigureName::EigVsMw => figures::eig_vs_mw(
            args.n.unwrap_or(1000),
            args.m.unwrap_or(800),
            args.k_max.unwrap_or(199),
            args.band_max.unwrap_or(249),
            args.band_step.unwrap_or(2),
        )?,
        FigureName::TensorMultiplicity => figures::tensor_multiplicity(
            args.n.unwrap_or(64),
            args.m.unwrap_or(16),
            args.k.unwrap_or(4),
            args.tol.unwrap_or(1e-12),
        )?,
    };
    output::emit(&series, args.format, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.grid != "default" {
        bail!(
            "unknown grid {:?}; the built-in grid is \"default\"",
            args.grid
        );
    }
    let needs_sweep = matches!(
        args.which,
        Which::All | Which::CrossIndex | Which::Prop1d | Which::Karnik
    );
    let sweep = if needs_sweep {
        Some(verify::solve_sweep(verify::filtered_default_sweep(
            args.n, args.m,
        ))?)
    } else {
        None
    };

    let mut outputs = Vec::new();
    if matches!(args.which, Which::All | Which::CrossIndex) {
        outputs.push(verify::cross_index_mode(sweep.as_ref().unwrap())?);
    }
    if matches!(args.which, Which::All | Which::Prop1d) {
        outputs.push(verify::prop1d_mode(sweep.as_ref().unwrap())?);
    }
    if matches!(args.which, Which::All | Which::Karnik) {
        outputs.push(verify::karnik_mode(sweep.as_ref().unwrap())?);
    }
    if matches!(args.which, Which::All | Which::MainTheorem) {
        outputs.push(verify::main_theorem_mode(args.d, args.eps)?);
    }
    if matches!(args.which, Which::All | Which::Nodal) {
        let k_filter = if args.k_all { None } else { args.k };
        outputs.push(verify::nodal_mode(args.n, args.m, k_filter, args.n_max)?);
    }
    if matches!(args.which, Which::All | Which::Chi) {
        outputs.push(verify::chi_mode()?);
    }
    if matches!(args.which, Which::All | Which::Duality) {
        let instance = match (args.n, args.m, args.k) {
            (Some(n), Some(m), Some(k)) => Some((n, m, k)),
            _ => None,
        };
        outputs.push(verify::duality_mode(instance, args.seed)?);
    }

    let merged = verify::ModeOutput::merged(outputs);
    let failed = merged.failures > 0;
    let first_failure = merged
        .results
        .iter()
        .find(|r| {
            r.get("verdict").map(|v| v == "fail").unwrap_or(false) || r.get("check").is_some()
        })
        .cloned();
    let params = verify::params_echo(&[
        ("which", json!(which_name(args.which))),
        ("grid", json!(args.grid)),
        ("n", json!(args.n)),
        ("m", json!(args.m)),
        ("n_max", json!(args.n_max)),
        ("d", json!(args.d)),
        ("eps", json!(args.eps)),
        ("seed", json!(args.seed)),
    ]);
    let report = verify::assemble_report(params, merged);
    let body = serde_json::to_string_pretty(&report)?;
    output::write_out(&body, args.out.as_deref())?;
    if args.out.is_some() {
        println!("verdict: {}", report.verdict);
    }
    if failed {
        if let Some(f) = first_failure {
            eprintln!("first failing instance: {f}");
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn which_name(which: Which) -> &'static str {
    match which {
        Which::All => "all",
        Which::CrossIndex => "cross-index",
        Which::Prop1d => "prop1d",
        Which::Karnik => "karnik",
        Which::MainTheorem => "main-theorem",
        Which::Nodal => "nodal",
        Which::Chi => "chi",
        Which::Duality => "duality",
    }
}
