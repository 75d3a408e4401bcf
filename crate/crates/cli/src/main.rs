use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Report};

/// Exact experiments in modal quantum theory over finite fields.
///
/// Exit codes: 0 success (verdict holds), 1 verdict fails, 2 usage error,
/// 3 enumeration bound exceeded.
#[derive(Debug, Parser)]
#[command(name = "mqt", version)]
struct Cli {
    /// Scalar field: GF(p), GF(p^n) or GF(q), optionally with ";poly=[c0,c1,...]".
    #[arg(long, global = true, default_value = "GF(2)")]
    field: String,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Count one representative per projective line where applicable.
    #[arg(long, global = true)]
    projective: bool,

    /// Override the enumeration bound.
    #[arg(long, global = true)]
    bound: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Elements and operation tables of a field (tables for q <= 16).
    FieldInfo {
        /// Field spec; defaults to --field.
        spec: Option<String>,
    },
    /// Count product and entangled vectors of F^d1 ⊗ F^d2.
    Census { d1: usize, d2: usize },
    /// Possible outcomes of a measurement on a state.
    Possible {
        /// State reference, e.g. mobit:sigma, bell:S, "GF(3)^2:[1,2]" or inline JSON.
        state: String,
        /// Measurement reference, e.g. mobit:Z, bell, computational:GF(3)^2 or inline JSON.
        measurement: String,
    },
    /// Apply an invertible operator to a state.
    Evolve {
        state: String,
        /// Operator reference, e.g. mobit:K, "GF(2):[[0,1],[1,0]]" or inline JSON.
        operator: String,
    },
    /// Mixed state of one factor of a two-factor state.
    Reduce {
        state: String,
        /// Factor dimensions, e.g. 2,2 (default: equal factors).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Factor to keep (0 or 1).
        #[arg(long, default_value_t = 1)]
        keep: usize,
        /// Basis of the discarded factor (default: computational).
        #[arg(long)]
        basis: Option<String>,
    },
    /// X/Y/Z joint-outcome table and hidden-variable search for a two-mobit state.
    Bell {
        #[arg(default_value = "bell:S")]
        state: String,
    },
    /// No-cloning witnesses for every mobit input pair and the operator search.
    Noclone,
    /// Send a two-bit message with superdense coding.
    Superdense {
        /// 00, 01, 10 or 11.
        message: String,
    },
    /// Teleport a mobit state for every possible Bell outcome.
    Teleport { state: String },
    /// List the states of F^dim, or its invertible operators.
    Enumerate {
        dim: usize,
        /// List invertible operators instead of states.
        #[arg(long)]
        operators: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = commands::Options { field: cli.field.clone(), projective: cli.projective, bound: cli.bound };
    match &cli.command {
        Command::FieldInfo { spec } => commands::field_info(spec.as_deref().unwrap_or(&opts.field)),
        Command::Census { d1, d2 } => commands::census(&opts, *d1, *d2),
        Command::Possible { state, measurement } => commands::possible(state, measurement),
        Command::Evolve { state, operator } => commands::evolve(state, operator),
        Command::Reduce { state, dims, keep, basis } => commands::reduce(state, dims.as_deref(), *keep, basis.as_deref()),
        Command::Bell { state } => commands::bell(&opts, state),
        Command::Noclone => commands::noclone(&opts),
        Command::Superdense { message } => commands::superdense(message),
        Command::Teleport { state } => commands::teleport(state),
        Command::Enumerate { dim, operators } => commands::enumerate(&opts, *dim, *operators),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("reports are plain JSON"),
            };
            let _ = writeln!(out, "{}", body.trim_end());
            if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
