mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaussent::{Error, KernelKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 invalid input, 3 domain, 4 verification, 5 resource limit,
    /// 6 purification surface condition not met.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(e) => match e {
                Error::InvalidParams(_) | Error::DegreeTooLarge { .. } => 2,
                Error::Domain(_)
                | Error::NonConvergent(_)
                | Error::DegenerateDenominator(_)
                | Error::ComplexRoots { .. }
                | Error::NegativeZ(_)
                | Error::ImaginarySpectrum { .. } => 3,
                Error::EigFailure(_) => 4,
                Error::ResourceLimit { .. } => 5,
                Error::ConditionNotMet(_) => 6,
            },
            Self::Usage(_) => 2,
            Self::Verification(_) => 4,
            Self::Io(_) | Self::Csv(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gaussent", version, about = "Spectra, entropies and purifications of Gaussian kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Kernel family: single, I, II, III or IV.
    #[arg(long = "type")]
    pub kind: KernelKind,
    /// Parameters as name=value pairs, e.g. a1=1,a2=1,b=0.2,c=0.1,f=0.05.
    /// Type III takes fr and fi for the complex f.
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form spectral parameters, purity and entropies.
    Entropy {
        #[command(flatten)]
        kernel: KernelArgs,
        /// Comma-separated Renyi orders; `von` for von Neumann.
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare the closed forms with a dense discretization of the kernel.
    Verify {
        #[command(flatten)]
        kernel: KernelArgs,
        /// Points per axis [default: 200 for single, 40 otherwise].
        #[arg(long)]
        grid_n: Option<usize>,
        /// Half-width of the grid, or `auto`.
        #[arg(long, default_value = "auto")]
        grid_l: String,
        #[arg(long, default_value_t = 20)]
        top_k: usize,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Sweep parameters and write one CSV row per point.
    ///
    /// Columns: the kernel's parameters in their canonical order, xi1, xi2,
    /// purity, one S_<alpha> column per Renyi order, S_von if requested,
    /// physicality (pure, physical-mixed, unphysical), ansatz_assumed,
    /// status (physical, unphysical, invalid, domain-error) and message.
    /// Cells that cannot be computed are left empty.
    Scan {
        /// Kernel family: single, I, II, III or IV.
        #[arg(long = "type")]
        kind: KernelKind,
        /// Parameters held fixed, as name=value pairs.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        fixed: String,
        /// Swept parameters and inclusive range, e.g. c,f=0:0.3:0.01.
        /// Every listed name takes the same value.
        #[arg(long, allow_hyphen_values = true)]
        vary: String,
        #[arg(long, default_value = "2,von")]
        alpha: String,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Build the three-mode pure state whose partial trace is the kernel.
    Purify {
        #[command(flatten)]
        kernel: KernelArgs,
        /// Free phase of the type III family.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Free scale of the type III family, or `auto`.
        #[arg(long, default_value = "auto")]
        xbar: String,
        /// Trace out the third mode numerically and compare with the kernel.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 40)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Entropy { kernel, alpha, json } => commands::entropy(&kernel, &alpha, json),
        Command::Verify { kernel, grid_n, grid_l, top_k, tol, json } => {
            commands::verify(&kernel, grid_n, &grid_l, top_k, tol, json)
        }
        Command::Scan { kind, fixed, vary, alpha, out } => commands::scan(kind, &fixed, &vary, &alpha, &out),
        Command::Purify { kernel, theta, xbar, check, grid_n, tol, json } => {
            commands::purify(&kernel, theta, &xbar, check, grid_n, tol, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
