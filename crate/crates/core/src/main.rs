use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qfock::cli::{run, Command, Format, Overrides, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Gram,
    Commutators,
    Xi,
    Moments,
    Conjugate,
    Validate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Csv,
    Json,
}

/// Truncated q-Fock space reports.
#[derive(Debug, Parser)]
#[command(name = "qfock-lab", version)]
struct Args {
    command: Cmd,
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated, e.g. "0,1/2,-9/10".
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Comma-separated generator counts.
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Gram => Command::Gram,
        Cmd::Commutators => Command::Commutators,
        Cmd::Xi => Command::Xi,
        Cmd::Moments => Command::Moments,
        Cmd::Conjugate => Command::Conjugate,
        Cmd::Validate => Command::Validate,
    };
    let overrides = Overrides {
        q: args.q,
        n: args.n,
        depth: args.depth,
        out: args.out,
        format: args.format.map(|f| match f {
            Fmt::Csv => Format::Csv,
            Fmt::Json => Format::Json,
        }),
    };
    let result = RunConfig::from_file(&args.config).and_then(|mut cfg| {
        cfg.apply(&overrides)?;
        run(command, &cfg)
    });
    match result {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("{} check(s) failed", outcome.failures.len());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
