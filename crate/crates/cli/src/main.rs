//! `superquad`: command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on unreadable or malformed input.

mod commands;
mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Context, ExampleKind, InputError};

#[derive(Parser)]
#[command(name = "superquad", version, about = "Exact checks on quadratic Lie superalgebras")]
struct Cli {
    /// JSON report (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Plain-text report
    #[arg(long, global = true)]
    text: bool,
    /// Seed for `random` cochains
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reject inputs of larger dimension
    #[arg(long, global = true, default_value_t = 64)]
    max_dim: usize,
    /// Allow gallery parameters above 4
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Axioms, form properties and structural predicates
    Check { file: String },
    /// Build the T*-extension by a named cochain (`random` for a random supercyclic cocycle, zero by default)
    Tstar {
        file: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Dimensions and bases of Z², Z³, B³, H³
    Cohomology { file: String },
    /// Verify the isometry S_φ between T*-extensions
    Isometry {
        file: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Recognize a quadratic algebra as a T*-extension along an ideal given as comma-separated combinations
    Recognize {
        file: String,
        #[arg(long)]
        ideal: String,
    },
    /// Maximal isotropic ideal and T*-extension decomposition
    Decompose { file: String },
    /// Print a gallery algebra as a document
    Example {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(Subcommand)]
enum Example {
    Gn { n: usize },
    Glnn { n: usize },
    ClassC { n: usize },
    Stock { name: String },
}

fn read_input(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
    }
}

fn run(cli: &Cli, ctx: &Context) -> Result<(String, bool), InputError> {
    let report = match &cli.command {
        Command::Check { file } => commands::check(ctx, &read_input(file)?)?,
        Command::Tstar { file, omega } => commands::tstar_cmd(ctx, &read_input(file)?, omega.as_deref())?,
        Command::Cohomology { file } => commands::cohomology(ctx, &read_input(file)?)?,
        Command::Isometry { file, phi, omega } => commands::isometry(ctx, &read_input(file)?, phi, omega.as_deref())?,
        Command::Recognize { file, ideal } => commands::recognize(ctx, &read_input(file)?, ideal)?,
        Command::Decompose { file } => commands::decompose(ctx, &read_input(file)?)?,
        Command::Example { which } => {
            let kind = match which {
                Example::Gn { n } => ExampleKind::Gn(*n),
                Example::Glnn { n } => ExampleKind::Glnn(*n),
                Example::ClassC { n } => ExampleKind::ClassC(*n),
                Example::Stock { name } => ExampleKind::Stock(name),
            };
            return Ok((commands::example(ctx, kind)?, true));
        }
    };
    let text = if cli.text { report.to_text() } else { report.to_json() };
    Ok((text, report.passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        command: std::env::args().skip(1).collect(),
        seed: cli.seed,
        max_dim: cli.max_dim,
        allow_large: cli.allow_large,
    };
    match run(&cli, &ctx) {
        Ok((out, pass)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
