//! `skewdg`: command-line front end for the DG algebras A(M).

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skewdg::resolution::DEFAULT_TRUNCATION;
use skewdg::Result;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "skewdg", version, about = "Cohomology, classification and resolutions of DG algebras A(M)")]
struct Cli {
    /// Human-readable output instead of one JSON line.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized checks and certificate searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Check d^2 = 0 and the Leibniz rule on the input.
    Validate {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        /// Random monomial pairs for the Leibniz check.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// Dimensions of H^d for d <= N with low-degree representatives.
    Cohomology {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Case label, presentation of H(A) and the Calabi-Yau verdict.
    Classify { input: PathBuf },
    /// Calabi-Yau probe from H^1 and the cup product alone.
    Probe { input: PathBuf },
    /// Search for a quasi-permutation isomorphism between two inputs.
    Iso { a: PathBuf, b: PathBuf },
    /// Quasi-permutation automorphisms, one family per permutation.
    Aut { input: PathBuf },
    /// Minimal semi-free resolution of k, or its periodic pattern when infinite.
    Resolve {
        input: PathBuf,
        /// Rows to print of an infinite resolution.
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncate: usize,
        /// Verify the resolution up to this degree; exit 3 on failure.
        #[arg(long)]
        verify: Option<u32>,
    },
    /// The Ext-algebra of k read off a finite resolution.
    Ext { input: PathBuf },
    /// Frobenius and symmetric tests for an algebra given by structure constants.
    Frobenius { structure: PathBuf },
    /// Every route computed and cross-checked; exit 3 on disagreement.
    Report {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        /// Compare against a second input.
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Commands::Validate { input, max_degree, pairs } => commands::validate(input, *max_degree, *pairs, cli.seed),
        Commands::Cohomology { input, max_degree } => commands::cohomology_cmd(input, *max_degree),
        Commands::Classify { input } => commands::classify_cmd(input),
        Commands::Probe { input } => commands::probe(input),
        Commands::Iso { a, b } => commands::iso(a, b),
        Commands::Aut { input } => commands::aut(input),
        Commands::Resolve { input, truncate, verify } => commands::resolve(input, *truncate, *verify),
        Commands::Ext { input } => commands::ext(input),
        Commands::Frobenius { structure } => commands::frobenius_cmd(structure, cli.seed),
        Commands::Report { input, max_degree, against } => commands::report_cmd(input, *max_degree, against.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.pretty {
                print!("{}", out.text);
            } else {
                println!("{}", out.json);
            }
            if out.inconsistent {
                eprintln!("skewdg: internal cross-check inconsistency");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("skewdg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
