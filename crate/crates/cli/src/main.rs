mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "daggereq",
    version,
    about = "Decide equations between terms of free dagger compact closed categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two terms are equal; exit 0 if equal, 1 if not, 2 on error.
    Check(CheckArgs),
    /// Print the value of the first term under the interpretation built from the second.
    Poly(PairArgs),
    /// Count isomorphisms between two terms' diagrams, structurally and semantically.
    IsoCount(PairArgs),
    /// Compile a term and print its diagram.
    Export(ExportArgs),
    /// Evaluate a closed term under an interpretation file.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct SigArg {
    /// Signature file. Defaults to the `use` line of the first term file.
    #[arg(long, value_name = "FILE")]
    sig: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    sig: SigArg,
    left: PathBuf,
    right: PathBuf,
    /// Scalars for the witness search.
    #[arg(long, value_enum, default_value_t = Ring::Gauss)]
    ring: Ring,
    /// Dimensions per object, e.g. `A=3,B=2`. Unlisted objects get 3.
    #[arg(long, value_name = "LIST")]
    dims: Option<String>,
    /// Random interpretations to try.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, env = "DAGGEREQ_SEED", default_value_t = 0)]
    seed: u64,
    /// Relative tolerance when re-checking floating witnesses.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the witness interpretation here instead of printing it.
    #[arg(long, value_name = "FILE")]
    witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[command(flatten)]
    sig: SigArg,
    left: PathBuf,
    right: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    sig: SigArg,
    term: PathBuf,
    #[arg(long, value_enum, default_value_t = ExportFormat::Diag)]
    format: ExportFormat,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    sig: SigArg,
    /// Interpretation file.
    #[arg(long, value_name = "FILE")]
    interp: PathBuf,
    term: PathBuf,
    #[arg(long, value_enum, default_value_t = Ring::Gauss)]
    ring: Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ring {
    Gauss,
    Float,
    Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Diag,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Poly(a) => commands::poly(a),
        Command::IsoCount(a) => commands::iso_count(a),
        Command::Export(a) => commands::export(a),
        Command::Eval(a) => commands::eval(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if let Command::Check(CheckArgs {
                format: Format::Json,
                ..
            }) = &cli.command
            {
                let record = serde_json::json!({ "verdict": "error", "message": format!("{e:#}") });
                println!("{record}");
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
