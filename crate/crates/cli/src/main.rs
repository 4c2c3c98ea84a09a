//! `pisano` — periods of K-Fibonacci and general binary recurrences mod m,
//! fixed points of the period map, trajectories, and verification sweeps.
//!
//! Exit codes (stable, scriptable):
//!
//! * 0 — success (for `verify`: zero theorem-violations)
//! * 1 — `verify` recorded at least one theorem-violation
//! * 2 — invalid arguments or configuration
//! * 3 — arithmetic overflow
//! * 4 — `period --both` mismatch between structured path and oracle
//! * 5 — trajectory iteration budget exhausted

use clap::{Args, Parser, Subcommand, ValueEnum};
use pisano_core::conjectures::{named_period_row, NamedSequence};
use pisano_core::fixedpoint::{
    enumerate_fixed_points, family_contains, k_category, predicted_family, trajectory, Terminal,
    DEFAULT_MAX_ITERS,
};
use pisano_core::pisano::{period_oracle, pisano_structured};
use pisano_core::recurrence::RecurrenceParams;
use pisano_core::verify::{
    report_csv, report_json, reports_json, run_suite, Classification, SerializeOptions, SuiteId,
    SweepConfig,
};
use pisano_core::Error;
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "pisano",
    version,
    about = "Pisano periods of K-Fibonacci sequences, fixed points of the period map, and verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the period of a recurrence modulo m
    Period(PeriodArgs),
    /// Iterate m ↦ π_K(m) to its terminal fixed point or two-cycle
    Trajectory(TrajectoryArgs),
    /// Enumerate fixed points of π_K up to a bound, with the symbolic family
    FixedPoints(FixedPointsArgs),
    /// Show K's residue category and predicted fixed-point family
    Classify(ClassifyArgs),
    /// Print the family table or the named-sequence period table
    Table(TableArgs),
    /// Run verification sweeps and write JSON/CSV reports
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct CliError {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> CliError {
    CliError { code, message: message.into() }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow { .. } => 3,
            Error::NoConvergence { .. } => 5,
            _ => 2,
        };
        fail(code, e.to_string())
    }
}

fn main() {
    // Die quietly on a closed pipe (`pisano table | head`) instead of
    // panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            std::process::exit(e.code);
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Period(args) => cmd_period(args),
        Command::Trajectory(args) => cmd_trajectory(args),
        Command::FixedPoints(args) => cmd_fixed_points(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Inclusive `lo..hi`; a single integer means `n..n`.
fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| fail(2, format!("invalid range bound {t:?}")))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

// ---------- period ----------

#[derive(Args)]
struct PeriodArgs {
    /// K-Fibonacci parameter (K ≥ 1)
    #[arg(short)]
    k: Option<u64>,
    /// Coefficient a of Uₙ = a·Uₙ₋₁ + b·Uₙ₋₂ (use with -b, -c, -d)
    #[arg(short, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Coefficient b
    #[arg(short, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Initial value U₀
    #[arg(short, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Initial value U₁
    #[arg(short, allow_hyphen_values = true)]
    d: Option<i64>,
    /// Modulus (m ≥ 2)
    #[arg(short)]
    m: u64,
    /// Force the structured fast path (default for -k)
    #[arg(long)]
    structured: bool,
    /// Force the brute-force oracle
    #[arg(long)]
    oracle: bool,
    /// Compute both ways and compare; exit 4 on mismatch
    #[arg(long)]
    both: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_period(args: PeriodArgs) -> Result<i32, CliError> {
    if args.m < 2 {
        return Err(fail(2, "modulus must be at least 2"));
    }
    if (args.structured as u8) + (args.oracle as u8) + (args.both as u8) > 1 {
        return Err(fail(2, "--structured, --oracle and --both are mutually exclusive"));
    }
    let general = [args.a, args.b, args.c, args.d];
    match (args.k, general.iter().any(Option::is_some)) {
        (Some(_), true) => Err(fail(2, "-k conflicts with -a/-b/-c/-d")),
        (None, false) => Err(fail(2, "need -k, or all of -a -b -c -d")),
        (Some(k), false) => {
            if k < 1 {
                return Err(fail(2, "K must be at least 1"));
            }
            let m = args.m;
            if args.both {
                let structured = pisano_structured(k, m)?;
                let oracle = period_oracle(&RecurrenceParams::k_fibonacci(k), m).period;
                if args.format == Format::Json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "k": k, "m": m,
                            "structured": structured, "oracle": oracle,
                            "match": structured == oracle,
                        }))
                        .unwrap()
                    );
                } else {
                    println!("structured: {structured}");
                    println!("oracle: {oracle}");
                }
                if structured != oracle {
                    return Err(fail(
                        4,
                        format!("structured period {structured} != oracle period {oracle}"),
                    ));
                }
                return Ok(0);
            }
            let period = if args.oracle {
                period_oracle(&RecurrenceParams::k_fibonacci(k), m).period
            } else {
                pisano_structured(k, m)?
            };
            if args.format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "k": k, "m": m, "period": period, "preperiod": 0, "pure": true,
                    }))
                    .unwrap()
                );
            } else {
                println!("{period}");
            }
            Ok(0)
        }
        (None, true) => {
            let [a, b, c, d] = general;
            let (Some(a), Some(b), Some(c), Some(d)) = (a, b, c, d) else {
                return Err(fail(2, "general recurrences need all of -a -b -c -d"));
            };
            if args.structured || args.both {
                return Err(fail(2, "--structured/--both apply to the K-Fibonacci path (-k) only"));
            }
            let result = period_oracle(&RecurrenceParams::new(a, b, c, d), args.m);
            if args.format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "a": a, "b": b, "c": c, "d": d, "m": args.m,
                        "period": result.period,
                        "preperiod": result.preperiod,
                        "pure": result.pure(),
                    }))
                    .unwrap()
                );
            } else {
                println!("{}", result.period);
                if !result.pure() {
                    eprintln!("preperiod: {}", result.preperiod);
                }
            }
            Ok(0)
        }
    }
}

// ---------- trajectory ----------

#[derive(Args)]
struct TrajectoryArgs {
    /// K-Fibonacci parameter (K ≥ 1)
    #[arg(short)]
    k: u64,
    /// Starting modulus (m ≥ 2)
    #[arg(short)]
    m: u64,
    /// Iteration budget
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_trajectory(args: TrajectoryArgs) -> Result<i32, CliError> {
    if args.k < 1 {
        return Err(fail(2, "K must be at least 1"));
    }
    if args.m < 2 {
        return Err(fail(2, "modulus must be at least 2"));
    }
    if args.max_iters < 1 {
        return Err(fail(2, "--max-iters must be at least 1"));
    }
    let t = trajectory(args.k, args.m, args.max_iters)?;
    let chain =
        t.steps.iter().map(u64::to_string).collect::<Vec<_>>().join(" \u{2192} ");
    match t.terminal {
        Terminal::FixedPoint(value) => {
            if args.format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "k": args.k, "start": t.start, "steps": t.steps,
                        "terminal": "fixed", "value": value, "iterations": t.length,
                    }))
                    .unwrap()
                );
            } else {
                println!("{chain} [fixed] T={}", t.length);
            }
            Ok(0)
        }
        Terminal::TwoCycle => {
            // The closing tail …, 2, 3, 2 demonstrates the cycle; entry into
            // it happened two applications before the end.
            let transient = t.length - 2;
            if args.format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "k": args.k, "start": t.start, "steps": t.steps,
                        "terminal": "two-cycle", "transient": transient,
                    }))
                    .unwrap()
                );
            } else {
                println!("{chain} [2-cycle] P={transient}");
            }
            Ok(0)
        }
        Terminal::Exhausted => {
            if args.format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "k": args.k, "start": t.start, "steps": t.steps,
                        "terminal": "exhausted", "iterations": t.length,
                    }))
                    .unwrap()
                );
            } else {
                println!("{chain} [exhausted]");
            }
            Err(fail(
                5,
                format!("no terminal value within {} iterations", args.max_iters),
            ))
        }
    }
}

// ---------- fixed-points ----------

#[derive(Args)]
struct FixedPointsArgs {
    /// K-Fibonacci parameter (K ≥ 1)
    #[arg(short)]
    k: u64,
    /// Inclusive search bound (≥ 2)
    #[arg(long)]
    bound: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_fixed_points(args: FixedPointsArgs) -> Result<i32, CliError> {
    if args.k < 1 {
        return Err(fail(2, "K must be at least 1"));
    }
    if args.bound < 2 {
        return Err(fail(2, "--bound must be at least 2"));
    }
    let points = enumerate_fixed_points(args.k, args.bound)?;
    let family = predicted_family(args.k)?;
    let mismatches: Vec<u64> = (2..=args.bound)
        .filter(|&m| family_contains(&family, m) != points.binary_search(&m).is_ok())
        .collect();
    // When 2 is the only prime in play the family collapses to the powers
    // of 2 — the enumeration already says everything.
    let family_is_pure_powers = family.base_values.is_empty()
        && family.pure_power_prime == Some(2)
        && family.allowed_primes == [2];
    if args.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "k": args.k,
                "bound": args.bound,
                "category": family.category.tag(),
                "fixed_points": points,
                "family": family.to_string(),
                "family_mismatches": mismatches,
            }))
            .unwrap()
        );
    } else {
        let mut parts = Vec::new();
        if !points.is_empty() {
            parts.push(points.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
        }
        if !family_is_pure_powers {
            parts.push(format!("family: {family}"));
        }
        println!("{}", parts.join(" | "));
        if !mismatches.is_empty() {
            eprintln!("warning: family and enumeration disagree at {mismatches:?}");
        }
    }
    Ok(0)
}

// ---------- classify ----------

#[derive(Args)]
struct ClassifyArgs {
    /// K-Fibonacci parameter (K ≥ 1)
    #[arg(short)]
    k: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_classify(args: ClassifyArgs) -> Result<i32, CliError> {
    if args.k < 1 {
        return Err(fail(2, "K must be at least 1"));
    }
    let category = k_category(args.k);
    let family = predicted_family(args.k)?;
    if args.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "k": args.k,
                "category": category.tag(),
                "residue": category.describe(),
                "family": family.to_string(),
            }))
            .unwrap()
        );
    } else {
        println!(
            "K = {}: {} [{}]; fixed points: {}",
            args.k,
            category.describe(),
            category.tag(),
            family
        );
    }
    Ok(0)
}

// ---------- table ----------

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Per-K fixed-point families
    Families,
    /// Named-sequence period rows
    Periods,
}

#[derive(Args)]
struct TableArgs {
    /// Which table to print
    #[arg(long, value_enum, default_value_t = TableKind::Families)]
    kind: TableKind,
    /// K range for --kind families (lo..hi, inclusive)
    #[arg(short, long = "k", default_value = "1..24")]
    k: String,
    /// Modulus range for --kind periods (lo..hi, inclusive)
    #[arg(short, long = "m", default_value = "2..24")]
    m: String,
    /// Sequences for --kind periods (default: all four)
    #[arg(long, value_delimiter = ',')]
    seq: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_table(args: TableArgs) -> Result<i32, CliError> {
    match args.kind {
        TableKind::Families => {
            let (lo, hi) = parse_range(&args.k)?;
            if lo < 1 || lo > hi {
                return Err(fail(2, format!("invalid K range {}..{}", lo, hi)));
            }
            let mut rows = Vec::new();
            for k in lo..=hi {
                let family = predicted_family(k)?;
                rows.push((k, family.category.tag(), family.to_string()));
            }
            if args.format == Format::Json {
                let docs: Vec<_> = rows
                    .iter()
                    .map(|(k, tag, fam)| json!({"k": k, "category": tag, "family": fam}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&docs).unwrap());
            } else {
                for (k, tag, fam) in rows {
                    println!("{k}\t{tag}\t{fam}");
                }
            }
        }
        TableKind::Periods => {
            let (lo, hi) = parse_range(&args.m)?;
            if lo < 2 || lo > hi {
                return Err(fail(2, format!("invalid m range {}..{}", lo, hi)));
            }
            let sequences: Vec<NamedSequence> = if args.seq.is_empty() {
                NamedSequence::ALL.to_vec()
            } else {
                args.seq
                    .iter()
                    .map(|s| {
                        NamedSequence::from_name(s)
                            .ok_or_else(|| fail(2, format!("unknown sequence {s:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let rows: Vec<(NamedSequence, Vec<u64>)> = sequences
                .iter()
                .map(|&seq| (seq, named_period_row(seq, lo, hi)))
                .collect();
            if args.format == Format::Json {
                let ms: Vec<u64> = (lo..=hi).collect();
                let docs: Vec<_> = rows
                    .iter()
                    .map(|(seq, periods)| {
                        json!({"sequence": seq.name(), "m": ms, "periods": periods})
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&docs).unwrap());
            } else {
                let header: Vec<String> = std::iter::once("m".to_string())
                    .chain((lo..=hi).map(|m| m.to_string()))
                    .collect();
                println!("{}", header.join("\t"));
                for (seq, periods) in rows {
                    let row: Vec<String> = std::iter::once(seq.name().to_string())
                        .chain(periods.iter().map(u64::to_string))
                        .collect();
                    println!("{}", row.join("\t"));
                }
            }
        }
    }
    Ok(0)
}

// ---------- verify ----------

#[derive(Args)]
struct VerifyArgs {
    /// JSON config file (alternative to the inline range/suite flags)
    #[arg(long, conflicts_with_all = ["suites", "k", "m", "max_iters", "parallelism"])]
    config: Option<PathBuf>,
    /// Comma-separated suite names (default: all seventeen)
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
    /// K range (lo..hi, inclusive)
    #[arg(short, long = "k", default_value = "1..24")]
    k: String,
    /// Modulus range (lo..hi, inclusive)
    #[arg(short, long = "m", default_value = "2..2000")]
    m: String,
    /// Trajectory iteration budget
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: u64,
    /// Worker threads (the PISANO_PARALLELISM env var takes precedence)
    #[arg(long)]
    parallelism: Option<usize>,
    /// Directory for per-suite .json/.csv reports
    #[arg(long, default_value = "./reports")]
    out: PathBuf,
    /// Record wall-clock timings in reports (makes output non-reproducible)
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SweepConfig>(&text)
                .map_err(|e| fail(2, format!("invalid config {}: {e}", path.display())))?
        }
        None => {
            let suites = if args.suites.is_empty() {
                SuiteId::ALL.to_vec()
            } else {
                args.suites
                    .iter()
                    .map(|s| {
                        SuiteId::from_name(s)
                            .ok_or_else(|| fail(2, format!("unknown suite {s:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut cfg = SweepConfig {
                k_range: parse_range(&args.k)?,
                m_range: parse_range(&args.m)?,
                suites,
                max_iters: args.max_iters,
                ..SweepConfig::default()
            };
            if let Some(par) = args.parallelism {
                cfg.parallelism = par;
            }
            cfg
        }
    };
    if let Ok(value) = std::env::var("PISANO_PARALLELISM") {
        cfg.parallelism = value
            .parse()
            .map_err(|_| fail(2, format!("invalid PISANO_PARALLELISM value {value:?}")))?;
    }
    cfg.validate().map_err(|e| fail(2, e.to_string()))?;

    let reports = run_suite(&cfg).map_err(CliError::from)?;

    let opts = SerializeOptions { include_timing: args.timing, ..SerializeOptions::default() };
    std::fs::create_dir_all(&args.out)
        .map_err(|e| fail(2, format!("cannot create {}: {e}", args.out.display())))?;
    for report in &reports {
        let stem = args.out.join(report.suite.name());
        std::fs::write(stem.with_extension("json"), report_json(report, &opts))
            .map_err(|e| fail(2, format!("cannot write report: {e}")))?;
        std::fs::write(stem.with_extension("csv"), report_csv(report, &opts))
            .map_err(|e| fail(2, format!("cannot write report: {e}")))?;
    }

    let count = |class: Classification| -> u64 {
        reports
            .iter()
            .flat_map(|r| &r.violations)
            .filter(|v| v.classification == class)
            .count() as u64
    };
    let theorem = count(Classification::TheoremViolation);
    let discrepancies = count(Classification::PaperStatementDiscrepancy);
    let conjecture = count(Classification::ConjectureCounterexample);

    if args.format == Format::Json {
        print!("{}", reports_json(&reports, &opts));
    } else {
        for report in &reports {
            let mut line = format!(
                "{}: {}/{} passed",
                report.suite.name(),
                report.passed,
                report.checked
            );
            if args.timing {
                line.push_str(&format!(" ({} ms)", report.wall_time.as_millis()));
            }
            println!("{line}");
        }
        println!("reports written to {}", args.out.display());
    }
    if discrepancies + conjecture > 0 {
        eprintln!(
            "findings: {discrepancies} statement discrepancies, {conjecture} conjecture counterexamples (exit status unaffected)"
        );
    }
    if theorem > 0 {
        Err(fail(1, format!("{theorem} theorem violations recorded")))
    } else {
        Ok(0)
    }
}
