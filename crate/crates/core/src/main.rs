use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tamelang::dictcli::{verify_suite, Suite, VerifyOptions};
use tamelang::fqbun::SUPPORTED_Q;

#[derive(Parser)]
#[command(name = "tamelang", version, about = "Finite checks for the tame geometric Langlands dictionary on P¹ with three marked points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Field size for the finite-field census.
        #[arg(long, default_value_t = 3, value_parser = parse_q)]
        q: u32,
        /// Largest splitting gap enumerated.
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        /// Truncation for section sums and translation ranges.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Spectral,
    Sl2rep,
    Hecke,
    Fqbun,
    Dictionary,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_q(s: &str) -> Result<u32, String> {
    let q: u32 = s.parse().map_err(|_| format!("not an integer: {s}"))?;
    if SUPPORTED_Q.contains(&q) {
        Ok(q)
    } else {
        Err(format!("unsupported q = {q}; supported: 2, 3, 5"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify { suite, q, dmax, cutoff, format, out } = cli.command;
    let suite = match suite {
        SuiteArg::Spectral => Suite::Spectral,
        SuiteArg::Sl2rep => Suite::Sl2rep,
        SuiteArg::Hecke => Suite::Hecke,
        SuiteArg::Fqbun => Suite::Fqbun,
        SuiteArg::Dictionary => Suite::Dictionary,
        SuiteArg::All => Suite::All,
    };
    let report = match verify_suite(suite, &VerifyOptions { q, dmax, cutoff }) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
