//! `susyscat`: scattering tables, phase shifts, potentials, the
//! verification gate and spectral-singularity proximity sweeps for the
//! complex-partner toy model.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};

use susyscat_core::{ErrorCategory, ScatterError};

use config::{OutputFormat, Overrides, RunConfig};

#[derive(Debug)]
pub enum AppError {
    Params(String),
    Verification,
    Numerical(String),
    Io(String),
}

impl From<ScatterError> for AppError {
    fn from(e: ScatterError) -> Self {
        match e.category() {
            ErrorCategory::Parameters => AppError::Params(e.to_string()),
            ErrorCategory::Numerical => AppError::Numerical(e.to_string()),
        }
    }
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Params(_) => 2,
            AppError::Verification => 3,
            AppError::Numerical(_) => 4,
            AppError::Io(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Params(m) => format!("parameter error: {m}"),
            AppError::Verification => "verification failed (see report)".into(),
            AppError::Numerical(m) => format!("numerical failure: {m}"),
            AppError::Io(m) => format!("i/o error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "susyscat",
    version,
    about = "Scattering matrices, cross sections and resonance diagnostics \
             for a complex partner of a singular radial potential",
    after_help = "Exit codes: 0 ok, 2 bad parameters, 3 verification failure, \
                  4 numerical failure, 5 i/o error."
)]
struct Cli {
    /// JSON config file; command-line flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Background stiffness a1 > 0
    #[arg(long, global = true, allow_negative_numbers = true)]
    a1: Option<f64>,

    /// Real part b of the singular wavenumber (nonzero)
    #[arg(long, global = true, allow_negative_numbers = true)]
    b: Option<f64>,

    /// Imaginary shift d < 0; repeat for `phases` and `sweep`
    #[arg(long, global = true, allow_negative_numbers = true, action = ArgAction::Append)]
    d: Vec<f64>,

    #[arg(long = "k-min", global = true)]
    k_min: Option<f64>,

    #[arg(long = "k-max", global = true)]
    k_max: Option<f64>,

    /// Momentum grid size
    #[arg(long = "n-k", global = true)]
    n_k: Option<usize>,

    /// Radial extent (default 25/a1)
    #[arg(long = "x-max", global = true)]
    x_max: Option<f64>,

    /// Radial grid size / integrator resolution
    #[arg(long = "n-x", global = true)]
    n_x: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Output path (default `<command>.<ext>`)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the cross-section table (sigma0, sigma_e, sigma_r, sigma_t,
    /// sigma_h, sigmaR, sigmaBW) on the momentum grid
    Curves,
    /// Emit unwrapped phase shifts (delta0, deltaR, deltaBW, delta_h),
    /// one table per requested d
    Phases,
    /// Emit the potentials and superpotential on the radial grid
    Potential,
    /// Run the identity and oracle verification gate; print a JSON report
    Verify,
    /// Sweep resonance observables over the requested d values
    Sweep,
    /// Fit peak position and width of one cross-section curve
    Fit {
        /// Curve to fit: sigma0 | sigma_e | sigma_r | sigma_t | sigma_h |
        /// sigmaR | sigmaBW
        #[arg(long, default_value = "sigma_h")]
        curve: String,
    },
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let flags = Overrides {
        a1: cli.a1,
        b: cli.b,
        d: cli.d.clone(),
        k_min: cli.k_min,
        k_max: cli.k_max,
        n_k: cli.n_k,
        x_max: cli.x_max,
        n_x: cli.n_x,
        format: cli.format,
        out: cli.out.clone(),
    };
    let cfg = RunConfig::resolve(cli.config.as_deref(), &flags)?;
    match &cli.command {
        Command::Curves => commands::cmd_curves(&cfg),
        Command::Phases => commands::cmd_phases(&cfg),
        Command::Potential => commands::cmd_potential(&cfg),
        Command::Verify => commands::cmd_verify(&cfg),
        Command::Sweep => commands::cmd_sweep(&cfg),
        Command::Fit { curve } => commands::cmd_fit(&cfg, curve),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("susyscat: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
