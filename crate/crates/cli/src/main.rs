//! `tsct`: compute and verify the trivial source character table of `SL2(q)`.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tsct_core::grp::{LocalData, Sl2};
use tsct_core::output::{render, Format};
use tsct_core::tsct::{assemble_uncertified, checks::CHECKS, run_checks, CheckSet};
use tsct_core::tsources::Selection;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verify {
    None,
    Fast,
    Full,
}

/// Trivial source character table of SL2(q), q = 2^f, for an odd prime l dividing q^2 - 1.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Field size, a power of 2 with q >= 4
    #[arg(long, required_unless_present = "list_checks")]
    q: Option<u64>,
    /// Odd prime dividing q^2 - 1
    #[arg(long, required_unless_present = "list_checks")]
    ell: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Output file; standard output if absent
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "fast")]
    verify: Verify,
    /// Also recompute characters by explicit induction
    #[arg(long)]
    oracle: bool,
    /// Print the available checks and exit
    #[arg(long)]
    list_checks: bool,
}

const USAGE: u8 = 2;
const CHECK_FAILED: u8 = 1;

fn threads() -> Result<Option<usize>, String> {
    match std::env::var("TSCT_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("TSCT_THREADS must be a positive integer, got {s:?}")),
        },
    }
}

fn list_checks() {
    for (name, level, description) in CHECKS {
        let level = match level {
            Some(CheckSet::Fast) => "fast",
            Some(CheckSet::Full) => "full",
            None => "oracle",
        };
        println!("{name:<14} {level:<7} {description}");
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_checks {
        list_checks();
        return ExitCode::SUCCESS;
    }
    let usage = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(USAGE)
    };
    match threads() {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                return usage(e.to_string());
            }
        }
        Ok(None) => {}
        Err(e) => return usage(e),
    }
    let (q, ell) = (args.q.expect("required by clap"), args.ell.expect("required by clap"));
    if q > 1 << 16 {
        return usage(format!("q = {q} exceeds the supported maximum 2^16"));
    }
    let g = match Sl2::from_q(q) {
        Ok(g) => g,
        Err(e) => return usage(e.to_string()),
    };
    if let Err(e) = LocalData::new(q, ell) {
        return usage(e.to_string());
    }

    let table = match assemble_uncertified(&g, ell, Selection::Leading) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CHECK_FAILED);
        }
    };
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Latex => Format::Latex,
        OutputFormat::Text => Format::Text,
    };
    let rendered = match render(&table, format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CHECK_FAILED);
        }
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, &rendered),
        None => std::io::stdout().lock().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(CHECK_FAILED);
    }

    let set = match args.verify {
        Verify::None if !args.oracle => return ExitCode::SUCCESS,
        Verify::None | Verify::Fast => CheckSet::Fast,
        Verify::Full => CheckSet::Full,
    };
    let mut outcomes = run_checks(&g, &table, set, args.oracle);
    if args.verify == Verify::None {
        outcomes.retain(|o| o.name == "oracles");
    }
    for o in &outcomes {
        eprintln!("{} {}: {}", if o.passed { "pass" } else { "FAIL" }, o.name, o.detail);
    }
    if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
        eprintln!("{}", serde_json::json!({ "q": q, "ell": ell, "failed": failed }));
        ExitCode::from(CHECK_FAILED)
    }
}
