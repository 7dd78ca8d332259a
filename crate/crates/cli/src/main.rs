use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use labelcut_cli::commands::{EXIT_USAGE, EXIT_OK};
use labelcut_cli::{
    cmd_classify, cmd_decompose, cmd_minimize, cmd_verify, CliError, MinimizeMethod, Outcome,
    VerifyMode,
};

/// Dominant-label disagreement potentials: verify, classify, decompose, minimize.
#[derive(Parser, Debug)]
#[command(name = "labelcut", version)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check d(a) + d(b) >= d(a|b) + d(a&b) over pairs of length-k vectors.
    Verify {
        /// Penalty: sqrt, log1p, power:p, trunclin:slope,cap, table:v0,v1,... [*weight]
        #[arg(long)]
        g: String,
        #[arg(long)]
        k: usize,
        /// Check all 4^k pairs (default).
        #[arg(long, conflicts_with = "sampled")]
        exhaustive: bool,
        /// Check this many pseudorandom pairs instead.
        #[arg(long, value_name = "N")]
        sampled: Option<u64>,
        /// Accept tables that are not nondecreasing concave.
        #[arg(long)]
        allow_unvalidated: bool,
    },
    /// Describe one pair of bit strings (leftmost character is node 0).
    Classify {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "sqrt")]
        g: String,
        #[arg(long)]
        allow_unvalidated: bool,
    },
    /// Split g into truncated-linear pieces for hyperedges of size k.
    Decompose {
        #[arg(long)]
        g: String,
        #[arg(long)]
        k: usize,
    },
    /// Minimize the energy of an instance file.
    Minimize {
        /// Instance JSON file.
        input: PathBuf,
        /// brute, cut or both (both cross-checks the two).
        #[arg(long, default_value = "cut")]
        method: MinimizeMethod,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify { g, k, exhaustive: _, sampled, allow_unvalidated } => {
            let mode = match sampled {
                Some(pairs) => VerifyMode::Sampled { pairs, seed: cli.seed },
                None => VerifyMode::Exhaustive,
            };
            cmd_verify(&g, k, mode, allow_unvalidated)
        }
        Command::Classify { a, b, g, allow_unvalidated } => {
            cmd_classify(&a, &b, &g, allow_unvalidated)
        }
        Command::Decompose { g, k } => cmd_decompose(&g, k),
        Command::Minimize { input, method } => cmd_minimize(&input, method),
    }
}

fn emit(report: &serde_json::Value, output: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE as u8) } else { ExitCode::from(EXIT_OK as u8) };
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(outcome) => match emit(&outcome.report, output.as_ref()) {
            Ok(()) => ExitCode::from(outcome.exit_code as u8),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_USAGE as u8)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
