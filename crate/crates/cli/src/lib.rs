//! Command-line front end: argument definitions, command dispatch and the
//! JSON run report shared by every command.

pub mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::RunReport;

/// Exit code for malformed arguments or input files.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for a numerical solver failure.
pub const EXIT_SOLVER: i32 = 3;
/// Exit code for a certificate whose verdict is false.
pub const EXIT_CERTIFICATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("solver failure: {0}")]
    Solver(String),
    /// The report is still emitted before exiting.
    #[error("certification failed: {message}")]
    Certification {
        message: String,
        report: Box<RunReport>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Certification { .. } => EXIT_CERTIFICATION,
        }
    }
}

impl From<quatgro::Error> for CliError {
    fn from(e: quatgro::Error) -> Self {
        use quatgro::Error as E;
        match e {
            E::MaxIterations(_) | E::Numerical(_) | E::EigenPairing(_) | E::Bracket(_) => {
                CliError::Solver(e.to_string())
            }
            _ => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "quatgro",
    version,
    about = "Quaternion Grothendieck-type norms, constants and certificates"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "QUATGRO_THREADS", default_value_t = 1, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    #[value(name = "inf1")]
    Inf1,
    #[value(name = "grothendieck")]
    Grothendieck,
    #[value(name = "theta")]
    Theta,
    #[value(name = "Theta")]
    BigTheta,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "Gamma")]
    BigGamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Proposition {
    OmegaTau,
    OmegaP7,
    Mu,
    All,
}

/// Columns available to `continued`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Column {
    Psi1,
    Psi2,
    Theta,
    AbsPPlus,
    Omega,
    /// `ω·|p⁺|⁷`.
    OmegaP7,
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum McTest {
    /// `sign(z)` from the Gaussian integral formula.
    Sign,
    /// `E[sign⟨u,z⟩ sign⟨z,v⟩]` against `⟨u,v⟩ f_ℍ(|⟨u,v⟩|)`.
    Identity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds for a norm of a matrix read from a JSON file.
    Norm {
        /// Matrix JSON `{"m", "n", "entries"}` with entries `[a0,a1,a2,a3]`.
        input: PathBuf,
        #[arg(long, value_enum)]
        which: NormKind,
        /// Random restarts of the ascent.
        #[arg(long, default_value_t = quatgro::norms::DEFAULT_RESTARTS)]
        restarts: usize,
        /// Seed of the ascent starting points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The derived constants.
    Constants,
    /// Coefficients of the compositional inverse of `p_ℓ`.
    Coefficients {
        #[arg(long, default_value_t = 3)]
        ell: u32,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Exact rational reversion (default).
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Floating-point reversion.
        #[arg(long)]
        float: bool,
        /// Revert `p = (9π/32)·p₃` instead of `p_ℓ`; needs `--ell 3`.
        #[arg(long)]
        scaled: bool,
    },
    /// Continued functions at a point or on a grid (CSV).
    Continued {
        #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
        x: Option<f64>,
        /// Comma-separated columns.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "theta")]
        which: Vec<Column>,
        /// `start:end:points`, printed as CSV.
        #[arg(long)]
        grid: Option<String>,
        /// Fixed truncation order instead of the converged series.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Exact sign certificates.
    Certify {
        #[arg(long, value_enum, default_value = "all")]
        prop: Proposition,
        /// Truncation order; defaults to 50, or 40 for `mu`.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Monte-Carlo checks of the Gaussian identities.
    Mc {
        #[arg(value_enum)]
        test: McTest,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Quaternion `a0,a1,a2,a3` for `sign`.
        #[arg(long, default_value = "0.3,-1.2,0.4,2.0")]
        z: String,
        /// Dimension of the random unit vectors for `identity`.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Gaussian rounding of the Grothendieck SDP solution of a matrix.
    Round {
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Output of one command: a report, or CSV text for grids.
pub enum Output {
    Report(RunReport),
    Csv(String),
}

/// Runs a parsed invocation. `argv` is stored in the report for replay.
pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Output, CliError> {
    // Fails only when a pool already exists, as in repeated in-process calls.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global();
    commands::dispatch(&cli.command, argv)
}

/// Renders an output in the requested format.
pub fn render(out: &Output, format: Format) -> String {
    match out {
        Output::Csv(s) => s.clone(),
        Output::Report(r) => match format {
            Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
            Format::Table => r.table(),
        },
    }
}
