//! `tavis`: spectra, dark-state search, shift sweeps and protocol
//! simulation for atoms in a single-mode cavity.

mod commands;
mod config;
mod csv;

use std::{ fs, io::Write, path::{ Path, PathBuf }, process::ExitCode };
use anyhow::{ bail, Context, Result };
use clap::{ Args, Parser, Subcommand, ValueEnum };
use tavis::{ darkstates::Subspace, protocol::GridAxis, verify::VerifyOptions };
use crate::{
    commands::{ parse_checks, parse_wait, CheckList, Report, Units, WaitMode },
    config::{ parse_override, parse_range, Override },
};

/// Environment variable holding the worker thread count.
const WORKERS_ENV: &str = "TAVIS_WORKERS";

#[derive(Parser)]
#[command(name = "tavis", version, about = "Dark states of atoms in a cavity and their preparation by a Stark/Zeeman jump")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and eigenvectors of a model Hamiltonian.
    Spectrum(ModelArgs),
    /// Dark eigenstates of a model Hamiltonian.
    DarkFind {
        #[command(flatten)]
        model: ModelArgs,
        /// Absolute tolerance on residuals and photon support.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Maximal dark-state yield over a grid of frequency and coupling shifts.
    Sweep {
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Frequency-shift range lo:hi:points.
        #[arg(long, value_parser = parse_range, default_value = "0:0.01:50")]
        ds_range: GridAxis,
        /// Coupling-shift range lo:hi:points.
        #[arg(long, value_parser = parse_range, default_value = "0:0.007:50")]
        dg_range: GridAxis,
    },
    /// Monte Carlo repeat-until-success trials of the jump protocol.
    Protocol {
        #[command(flatten)]
        protocol: ProtocolArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 10_000)]
        max_cycles: usize,
        /// Waiting time per cycle: 'uniform' over the horizon, 'star' for
        /// the time of maximal yield, or a fixed time.
        #[arg(long, value_parser = parse_wait, default_value = "uniform")]
        delta_t: WaitMode,
    },
    /// Randomized invariant checks.
    Verify {
        /// Comma-separated check names, or 'all'.
        #[arg(long, value_parser = parse_checks, default_value = "all")]
        checks: CheckList,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per check.
        #[arg(long, default_value_t = 200)]
        draws: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt built Hamiltonians before the Hermiticity check.
        #[arg(long, hide = true)]
        inject_non_hermitian: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SubspaceArg {
    /// One-excitation block (requires RWA).
    Single,
    /// Full truncated Fock space times atomic states.
    Full,
}

#[derive(Args)]
struct ModelArgs {
    /// Model description file.
    #[arg(long)]
    model: PathBuf,
    /// Override a model key, e.g. --set atom.1.omega=1.01.
    #[arg(long = "set", value_parser = parse_override)]
    overrides: Vec<Override>,
    /// Defaults to 'single' under RWA and 'full' otherwise.
    #[arg(long, value_enum)]
    subspace: Option<SubspaceArg>,
    /// Report frequencies in Hz for a cavity at this frequency in Hz.
    #[arg(long)]
    physical: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Two-atom model file with equal atomic frequencies.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Override omega_c, omega_a, g1, g2, ds or dg, e.g. --set g1=0.02.
    #[arg(long = "set", value_parser = parse_override)]
    overrides: Vec<Override>,
    /// Time horizon; defaults to one slowest beat period.
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    t_steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report frequencies in Hz and times in seconds for a cavity at this
    /// frequency in Hz.
    #[arg(long)]
    physical: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        },
    }
}

fn emit(report: Report, out: Option<&Path>) -> Result<bool> {
    write_output(out, &report.csv)?;
    eprintln!("{}", report.summary);
    Ok(true)
}

fn model_setup(args: &ModelArgs) -> Result<(tavis::CavityModel, Subspace, Units)> {
    let m = config::load_model(&args.model, &args.overrides)?;
    let subspace = match args.subspace {
        Some(SubspaceArg::Single) => Subspace::SingleExcitation,
        Some(SubspaceArg::Full) => Subspace::Full,
        None if m.rwa() => Subspace::SingleExcitation,
        None => Subspace::Full,
    };
    let units = Units::new(m.omega_c(), args.physical)?;
    Ok((m, subspace, units))
}

fn protocol_setup(args: &ProtocolArgs) -> Result<(tavis::protocol::ZSJumpConfig, Units)> {
    let mut cfg = config::protocol_config(args.model.as_deref(), &args.overrides)?;
    cfg.t_max = args.t_max;
    cfg.t_steps = args.t_steps;
    cfg.seed = args.seed;
    cfg.validate()?;
    let units = Units::new(cfg.omega_c, args.physical)?;
    Ok((cfg, units))
}

fn configure_workers() -> Result<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = match raw.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => bail!("{WORKERS_ENV} must be a positive integer, got '{raw}'"),
    };
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

/// `Ok(false)` means a check failed.
fn run(cli: Cli) -> Result<bool> {
    configure_workers()?;
    match cli.command {
        Command::Spectrum(args) => {
            let (m, subspace, units) = model_setup(&args)?;
            emit(commands::spectrum(&m, subspace, units)?, args.out.as_deref())
        },
        Command::DarkFind { model, tol } => {
            let (m, subspace, units) = model_setup(&model)?;
            emit(commands::dark_find(&m, subspace, tol, units)?, model.out.as_deref())
        },
        Command::Sweep { protocol, ds_range, dg_range } => {
            let (cfg, units) = protocol_setup(&protocol)?;
            emit(commands::run_sweep(&cfg, ds_range, dg_range, units)?, protocol.out.as_deref())
        },
        Command::Protocol { protocol, trials, max_cycles, delta_t } => {
            let (cfg, units) = protocol_setup(&protocol)?;
            let report = commands::run_protocol(&cfg, delta_t, trials, max_cycles, units)?;
            emit(report, protocol.out.as_deref())
        },
        Command::Verify { checks, seed, draws, out, inject_non_hermitian } => {
            let opts = VerifyOptions { seed, draws, inject_non_hermitian };
            let (text, passed) = commands::run_verify(&checks.0, &opts)?;
            write_output(out.as_deref(), &text)?;
            Ok(passed)
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        },
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        },
    }
}
