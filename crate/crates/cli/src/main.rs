use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use goldie_core::scalar::Field;
use goldie_core::suite::{run_suite, Suite, SuiteSpec};

const USAGE_ERROR: u8 = 3;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Runs a verification suite and prints its report.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 a bounded search was
/// exhausted without any failure, 3 bad flags or unparsable input.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// group-conditions, counterexample, nastasescu, bazhenov, quotient, gs-construction, remark1-audit or all
    suite: String,
    /// z, z^N, c:N, S3, D4, Q8, Z2, A4, d-infty, dihedral-product, bs12 or file:PATH
    #[arg(long)]
    group: Option<String>,
    /// Group word for g, e.g. "r^3 s"
    #[arg(long)]
    g: Option<String>,
    /// Group word for h
    #[arg(long)]
    h: Option<String>,
    #[arg(long, default_value_t = 64)]
    n_max: u64,
    #[arg(long, default_value_t = 64)]
    m_max: u64,
    /// Word-length radius of the degree window (or monomial degree for k[x,y]/(xy))
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest |exponent| of t in component bases
    #[arg(long)]
    coeff_bound: Option<i64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// q for the rationals, fp:P for the prime field of order P
    #[arg(long, default_value = "q")]
    field: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock times in elapsed_ms (reports then differ between runs)
    #[arg(long)]
    timings: bool,
}

fn parse_field(text: &str) -> Result<Field, String> {
    match text {
        "q" => Ok(Field::Rational),
        _ => {
            let p = text.strip_prefix("fp:").ok_or_else(|| format!("unknown field `{text}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verify: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let suite: Suite = match cli.suite.parse() {
        Ok(s) => s,
        Err(_) => return usage(format!("unknown suite `{}`", cli.suite)),
    };
    let field = match parse_field(&cli.field) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let spec = SuiteSpec {
        suite,
        group: cli.group,
        g: cli.g,
        h: cli.h,
        n_max: cli.n_max,
        m_max: cli.m_max,
        max_degree: cli.max_degree,
        coeff_bound: cli.coeff_bound,
        samples: cli.samples,
        seed: cli.seed,
        field,
        timings: cli.timings,
    };
    let report = match run_suite(&spec) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = match cli.format {
        Format::Json => report.to_json_string() + "\n",
        Format::Text => report.to_text(),
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
