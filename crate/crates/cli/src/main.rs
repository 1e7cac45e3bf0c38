use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Discriminants, traces and Hopf-action checks for instance bundles.
#[derive(Parser, Debug)]
#[command(name = "ncdisc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Degree bound for verification (defaults to the bundle's [verify] degree).
    #[arg(long, global = true)]
    pub degree: Option<u32>,

    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Reduce with the rewriting rules even for skew polynomial algebras.
    #[arg(long, global = true)]
    pub no_fast_path: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf { bundle: PathBuf, expr: String },
    /// Local confluence of the rewriting system.
    Confluence { bundle: PathBuf },
    /// Graded dimensions against the declared Hilbert series.
    Hilbert { bundle: PathBuf },
    /// Discriminant of the trace form over the subalgebra.
    Disc { bundle: PathBuf },
    /// Frobenius form, different, Nakayama automorphism and norm of the different.
    NormDifferent { bundle: PathBuf },
    /// Jacobian, reflection arrangement and invariant discriminant of the action.
    Jacobian { bundle: PathBuf },
    /// Run a verification suite.
    Verify { suite: Suite, bundle: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Main,
    Smash,
    Galois,
    Reflection,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if outcome.report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
