//! The `inertia` command line. Every command returns its report as a string
//! together with an exit code: 0 when everything asked about holds, 1 when
//! something does not, 2 for bad input.

pub mod classify;
pub mod gallery;
pub mod oracle;
pub mod verify;

use clap::{Args, Parser, Subcommand};
use inertia_classify::ClassifyError;
use inertia_endo::EndoError;
use inertia_gallery::GalleryError;
use inertia_group::GroupError;
use inertia_oracle::OracleError;
use inertia_witness::WitnessError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "inertia", version, about = "Decide right and left inertia of endomorphisms of abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Print JSON instead of a text report
    #[arg(long)]
    pub json: bool,
    /// Number of family members (and truncation depth) checked
    #[arg(long, short = 'K', value_name = "K", default_value_t = inertia_group::DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify endomorphisms of a group; exit 0 when all are right inertial
    Classify {
        /// Group, e.g. "Z(2^inf) + Q[2]"
        group: String,
        /// One or more endomorphisms, e.g. "block{1: 1; 2: 1/2}"
        #[arg(required = true)]
        endos: Vec<String>,
        /// Also require left inertia for exit code 0, and report its witness
        #[arg(long)]
        lin: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify a family of subgroups with unbounded sections
    Witness {
        #[command(subcommand)]
        which: WitnessCommand,
    },
    /// Exhaustive computations on finite abelian groups
    Oracle {
        #[command(subcommand)]
        which: oracle::OracleCommand,
    },
    /// Print a named example and re-run its checks
    Gallery(gallery::GalleryArgs),
    /// Re-validate a JSON certificate, witness or report ("-" reads stdin)
    Verify {
        file: String,
        #[arg(long, short = 'K', value_name = "K", default_value_t = inertia_group::DEFAULT_PRECISION)]
        precision: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// The witness the classifier attaches to a non-inertial endomorphism
    Endo {
        group: String,
        endo: String,
        /// Left-hand sections |X / (X cap phi X)|
        #[arg(long)]
        lin: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Diagonal family for alpha on Z(p^inf) and m/n on Q^pi
    Diagonal {
        #[arg(long)]
        p: u64,
        /// Integer scalar on Z(p^inf)
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Scalar on the torsion-free part, "m/n"
        #[arg(long, allow_hyphen_values = true)]
        mn: String,
        /// Primes of the localization, comma separated (default: p)
        #[arg(long, value_delimiter = ',')]
        pi: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
}

/// A finished command: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub out: String,
}

impl Outcome {
    pub fn new(ok: bool, out: String) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, out }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify { group, endos, lin, common } => classify::classify(group, endos, *lin, common),
        Command::Witness { which } => classify::witness(which),
        Command::Oracle { which } => oracle::run(which),
        Command::Gallery(args) => gallery::run(args),
        Command::Verify { file, precision } => {
            let text = if file == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(file)?
            };
            verify::verify_text(&text, *precision)
        }
    }
}

/// Run with the given argument list (without the program name).
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("inertia")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli).unwrap_or_else(|e| Outcome { code: 2, out: format!("error: {e}\n") }),
        Err(e) => Outcome { code: e.exit_code(), out: e.to_string() },
    }
}
