use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use m2pn_cli::document::SpecDocument;
use m2pn_cli::parser::parse_document;
use m2pn_cli::runner::{run_document, Overrides};

/// Deterministic check runner for probabilistic 2-norm spaces.
#[derive(Parser)]
#[command(name = "m2pn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate, and execute every check in a document.
    Run(RunArgs),
    /// Parse and validate a document without executing checks.
    Validate {
        /// Document to validate.
        file: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Document to run.
    file: PathBuf,
    /// Multiply every geometric grid point by this factor.
    #[arg(long, value_parser = parse_positive)]
    grid_scale: Option<f64>,
    /// Override the trial count of every axioms check.
    #[arg(long)]
    trials: Option<usize>,
    /// Override the seed of every randomized check.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_positive(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("`{text}` is not a positive finite number"))
    }
}

/// Reads, parses, and validates the document, reporting problems on stderr.
fn load(path: &PathBuf) -> Result<SpecDocument, ()> {
    let display = path.display();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {display}: {e}");
            return Err(());
        }
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {display}: {e}");
            return Err(());
        }
    };
    if let Err(e) = doc.validate() {
        eprintln!("error: {display}: {e}");
        return Err(());
    }
    Ok(doc)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { file } => match load(&file) {
            Ok(doc) => {
                println!(
                    "ok: dimension {}, {} sets, {} sequences, {} series, {} checks",
                    doc.space.dimension,
                    doc.sets.len(),
                    doc.sequences.len(),
                    doc.series.len(),
                    doc.checks.len()
                );
                ExitCode::SUCCESS
            }
            Err(()) => ExitCode::from(2),
        },
        Command::Run(args) => {
            let doc = match load(&args.file) {
                Ok(d) => d,
                Err(()) => return ExitCode::from(2),
            };
            let overrides = Overrides {
                grid_scale: args.grid_scale,
                trials: args.trials,
                seed: args.seed,
            };
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            match run_document(&doc, &overrides, &mut out) {
                Ok(all_ok) => {
                    let _ = out.flush();
                    if all_ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
