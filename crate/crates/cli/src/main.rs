mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "graphinv", version, about = "Graphical invariants of weighted points on the projective line")]
pub struct Cli {
    /// Seed for every random choice (sampled configurations, property checks).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<String>,

    /// Include wall-clock timing in JSON reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A graph or combination given as a JSON file or as inline edges.
#[derive(Args, Debug, Clone)]
pub struct InvariantArgs {
    /// Graph or combination JSON (`-` for stdin).
    #[arg(long, value_name = "FILE")]
    pub input: Option<String>,
    /// Vertex count for --edges.
    #[arg(long)]
    pub n: Option<usize>,
    /// Inline edges such as "1-2,3-4".
    #[arg(long)]
    pub edges: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Configuration JSON or an affine list (`-` for stdin).
    #[arg(long, value_name = "FILE")]
    pub config: Option<String>,
    /// Inline affine points such as "0,1,2,inf".
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelationType {
    Plucker,
    SimpleBinomial,
    Segre,
    OddPower,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a graph or combination at a configuration.
    Eval {
        #[command(flatten)]
        invariant: InvariantArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Weights for the stability report; with no configuration, a stable
        /// one is sampled from --seed.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Rewrite in the non-crossing basis.
    Straighten {
        #[command(flatten)]
        invariant: InvariantArgs,
    },
    /// List the non-crossing graphs of a multidegree.
    Basis {
        #[arg(long)]
        n: usize,
        /// Multidegree such as "2,1,1,1,1"; defaults to all ones.
        #[arg(long, conflicts_with = "regular")]
        degree: Option<String>,
        /// Shorthand for the multidegree (d, …, d).
        #[arg(long)]
        regular: Option<usize>,
    },
    /// Decompose a regular graph into products of perfect matchings.
    Kempe {
        #[command(flatten)]
        invariant: InvariantArgs,
        /// Lift a graph of multidegree d·w to an equal-weight graph first.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Generate relations among the matching invariants.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_enum)]
        kind: RelationType,
        /// Matching for odd-power relations; defaults to 1-2,3-4,….
        #[arg(long)]
        matching: Option<String>,
        #[arg(long, default_value_t = 3)]
        exponent: usize,
    },
    /// Decide membership in the ideal generated by relations, with a
    /// certificate.
    CheckIdeal {
        /// `segre`, `odd-power`, or a polynomial JSON file.
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        n: Option<usize>,
        /// `simple-binomial` or a file with a list of polynomials.
        #[arg(long, default_value = "simple-binomial")]
        generators: String,
        /// Degree to work in; defaults to the candidate's degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Permit n ≥ 10, which can take a very long time.
        #[arg(long)]
        allow_heavy: bool,
    },
    /// Degree of the moduli space M_w.
    Degree {
        #[arg(long)]
        weights: String,
        /// Print the recursion tree.
        #[arg(long)]
        trace: bool,
    },
    /// Chart coordinates W, Z near the collision point, with identity checks.
    Chart {
        #[command(flatten)]
        config: ConfigArgs,
        /// Sample a configuration on this many points instead.
        #[arg(long, conflicts_with_all = ["config", "points"])]
        random: Option<usize>,
    },
    /// Run the acceptance suite.
    VerifyAll {
        /// Reduced sample counts and no n = 8 membership solve.
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Module(graphinv::Error),
}

impl From<graphinv::Error> for CliError {
    fn from(e: graphinv::Error) -> Self {
        CliError::Module(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Module(e) => write!(f, "{}: {e}", e.name()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = std::time::Instant::now();
    match commands::run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            match emit(&cli, &report) {
                Ok(()) => ExitCode::from(if report.passed { 0 } else { 1 }),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.text.clone(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
