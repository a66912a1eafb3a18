mod commands;
mod parse;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Inhomogeneous quantum walk simulator and spectral analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a walker from the origin and print its position distribution.
    Walk(WalkArgs),
    /// Eigenvalues of the evolution block at alpha = P/(4Q).
    Spectrum(SpectrumArgs),
    /// Check the spectral symmetries for every alpha up to a cutoff.
    Verify(VerifyArgs),
    /// Eigenvalue arguments for every admissible alpha up to a cutoff.
    Butterfly(ButterflyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Wc,
    Cw,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    /// Frequency: rational literal `a/b` (exact) or real (approximate).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Phase offset: rational literal or real. A comma-separated list runs
    /// one walk per value and adds a leading `theta` column.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub steps: i64,
    #[arg(long, value_enum, default_value_t = OrderArg::Wc)]
    pub ordering: OrderArg,
    /// Initial spinor at the origin as `reL,imL,reR,imR`. Defaults to (|L> + i|R>)/sqrt(2).
    #[arg(long, allow_hyphen_values = true)]
    pub init: Option<String>,
    /// Probability threshold for the reported support.
    #[arg(long, default_value_t = 1e-12)]
    pub support_eps: f64,
    /// Distribution CSV path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write per-site amplitudes here.
    #[arg(long)]
    pub amplitudes: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// `P/(4Q)` literal, e.g. `1/12`.
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 1e-8)]
    pub residual_tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ToleranceArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub residual_tol: f64,
    /// Eigenvalue multiset matching tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub match_tol: f64,
    /// Minimum eigenvalue gap for simplicity.
    #[arg(long, default_value_t = 1e-8)]
    pub gap_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub unitarity_tol: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub qmax: i64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Print every per-alpha check, not just P6 and failures.
    #[arg(long)]
    pub verbose: bool,
    /// Corrupt the block at this `P/(4Q)` (testing hook).
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Args, Debug)]
pub struct ButterflyArgs {
    #[arg(long)]
    pub qmax: i64,
    /// Residual and symmetry-audit tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Dataset CSV path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script rendering the dataset.
    #[arg(long)]
    pub plot_script: Option<PathBuf>,
}

/// Process exit status for each failure class.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Computation(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Computation(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m)
            | Failure::Computation(m)
            | Failure::Verification(m)
            | Failure::Io(m) => m,
        }
    }
}

impl From<qwalk_core::Error> for Failure {
    fn from(e: qwalk_core::Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Walk(a) => commands::walk(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Butterfly(a) => commands::butterfly(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
