//! `qdeform`: list, expand and verify exact q-series identities.

mod expand;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdeform::identities::{
    errata_registry, filter_registry, lookup, registry, summarize, verify_many, IdentitySpec, Status,
    VerificationConfig, VerificationReport,
};
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SCALE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qdeform", version, about = "Exact q-series identity verifier")]
#[command(after_help = "Exit codes: 0 ok, 1 mismatch or error, 2 usage or unknown id, 3 base scale unavailable.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List registered identities with anchors and scale requirements.
    List {
        /// Keep only ids starting with this prefix.
        filter: Option<String>,
        /// List the printed variants that are expected to mismatch instead.
        #[arg(long)]
        errata: bool,
        #[arg(long)]
        json: bool,
    },
    /// Expand a named polynomial or series.
    ///
    /// Parameters are passed as key=value, e.g. `expand rn n=3`. The base
    /// scale defaults to 1 here so that output has integer q-powers only.
    Expand {
        #[arg(value_enum)]
        what: expand::What,
        /// key=value parameters: n for polynomials, r and s for phi, u for
        /// eq_deformed and phi (a symbol name, an integer, or q^k).
        params: Vec<String>,
        /// Truncation order for series.
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// Base scale; 2 is needed for half-integer powers of q.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        scale: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify one identity, or every identity with --all.
    Verify {
        /// Identity id (see `list`).
        id: Option<String>,
        /// Verify the whole registry (optionally restricted by --prefix).
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// With --all: run the printed variants, each expected to mismatch.
        #[arg(long, requires = "all")]
        errata: bool,
        #[arg(long, requires = "all")]
        prefix: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify the whole registry; same as `verify --all`.
    VerifyAll {
        /// Keep only ids starting with this prefix.
        prefix: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Truncation order; overrides each entry's default.
    #[arg(long)]
    order: Option<u32>,
    /// Family range override, e.g. n=0..6 or n=4.
    #[arg(long = "family", value_parser = parse_family)]
    family: Vec<(String, i64, i64)>,
    /// Base scale. Defaults to 2 so that entries with half-integer powers
    /// of q run; with 1 those entries are skipped with a reason.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    scale: u32,
    /// Emit a JSON array of reports.
    #[arg(long)]
    json: bool,
    /// Number of identities verified concurrently (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Per-entry time budget in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
}

fn parse_family(s: &str) -> Result<(String, i64, i64), String> {
    let (name, range) = s.split_once('=').ok_or_else(|| format!("expected name=lo..hi, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound `{t}`: {e}"));
    let (lo, hi) = match range.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(range)?;
            (v, v)
        }
    };
    if name.is_empty() || lo > hi {
        return Err(format!("bad family range `{s}`"));
    }
    Ok((name.to_string(), lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { filter, errata, json } => cmd_list(filter.as_deref(), errata, json),
        Command::Expand { what, params, order, scale, json } => expand::run(what, &params, order, scale, json),
        Command::Verify { id, all, errata, prefix, run } => {
            if all {
                let reg = if errata { errata_registry() } else { registry() };
                run_reports(&filter_registry(reg, prefix.as_deref()), &run)
            } else if let Some(id) = id {
                match lookup(&id) {
                    Some(spec) => run_reports(&[spec], &run),
                    None => {
                        eprintln!("error: unknown identity `{id}` (see `qdeform list`)");
                        ExitCode::from(EXIT_USAGE)
                    }
                }
            } else {
                eprintln!("error: give an identity id or --all");
                ExitCode::from(EXIT_USAGE)
            }
        }
        Command::VerifyAll { prefix, run } => run_reports(&filter_registry(registry(), prefix.as_deref()), &run),
    }
}

fn cmd_list(filter: Option<&str>, errata: bool, json: bool) -> ExitCode {
    let reg = if errata { errata_registry() } else { registry() };
    let specs = filter_registry(reg, filter);
    if json {
        let items: Vec<_> = specs.iter().map(|s| list_entry(s)).collect();
        println!("{}", serde_json::to_string_pretty(&items).expect("serializable"));
    } else {
        for s in &specs {
            println!("{:<40} scale {}  {}", s.id, s.required_scale, s.anchor);
        }
    }
    ExitCode::SUCCESS
}

fn list_entry(s: &IdentitySpec) -> serde_json::Value {
    let ranges: serde_json::Map<_, _> = s.family.iter().map(|f| (f.name.to_string(), json!([f.lo, f.hi]))).collect();
    json!({
        "id": s.id,
        "anchor": s.anchor,
        "required_scale": s.required_scale,
        "default_order": s.default_order,
        "family_ranges": ranges,
        "small_symbols": s.small_symbols,
        "substitutions": s.substitutions,
        "notes": s.notes,
    })
}

fn run_reports(specs: &[&IdentitySpec], run: &RunArgs) -> ExitCode {
    let mut cfg = VerificationConfig::new().with_scale(run.scale);
    cfg.order = run.order;
    cfg.time_budget = run.budget_ms.map(std::time::Duration::from_millis);
    for (name, lo, hi) in &run.family {
        cfg = cfg.with_family(name, *lo, *hi);
    }
    let jobs = run.jobs.unwrap_or(0) as usize;
    let reports = verify_many(specs, &cfg, jobs);
    if run.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
    } else {
        print_text(&reports);
    }
    if reports.iter().any(|r| matches!(r.status, Status::Mismatch | Status::Error)) {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_text(reports: &[VerificationReport]) {
    for r in reports {
        println!("{}", r.summary_line());
    }
    if reports.len() > 1 {
        let s = summarize(reports);
        println!(
            "{} entries: {} verified, {} mismatch, {} error, {} skipped",
            reports.len(),
            s.verified,
            s.mismatch,
            s.error,
            s.skipped
        );
    }
}

pub(crate) fn exit_for(e: &qdeform::Error) -> ExitCode {
    match e {
        qdeform::Error::ScaleUnavailable { .. } => ExitCode::from(EXIT_SCALE),
        _ => ExitCode::from(EXIT_USAGE),
    }
}
