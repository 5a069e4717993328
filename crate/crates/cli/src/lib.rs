//! Command-line front end: argument parsing, command dispatch and output
//! rendering. `run` is the whole program minus process plumbing.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nu_forge::g2forms::{run_selftest, DEFAULT_SAMPLES, DEFAULT_SEED};
use nu_forge::groebner::{GroebnerConfig, DEFAULT_STEP_BUDGET};
use nu_forge::nu::{
    analyze_request, parse_corpus, run_corpus, AnalysisError, AnalysisRequest, AnalyzeOptions, CorpusSummary,
    RowStatus,
};
use nu_forge::polyring::OrderKind;

macro_rules! w {
    ($dst:expr, $($arg:tt)*) => {{
        let _ = write!($dst, $($arg)*);
    }};
}

macro_rules! wl {
    ($dst:expr, $($arg:tt)*) => {{
        let _ = writeln!($dst, $($arg)*);
    }};
}

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_NON_ISOLATED: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_G2: u8 = 5;
pub const EXIT_INTEGRITY: u8 = 6;

#[derive(Parser, Debug)]
#[command(name = "nu-forge", version, about = "ν invariant of weighted Calabi-Yau links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a single weighted-homogeneous polynomial.
    Analyze(AnalyzeArgs),
    /// Verify every row of a JSONL corpus against its expected ν.
    Batch(BatchArgs),
    /// Run the G2 exterior-algebra identity suite.
    G2Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

impl From<Order> for OrderKind {
    fn from(o: Order) -> Self {
        match o {
            Order::Grevlex => OrderKind::Grevlex,
            Order::Lex => OrderKind::Lex,
        }
    }
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "grevlex")]
    order: Order,
    /// Gröbner reduction step budget.
    #[arg(long, env = "NU_FORGE_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl EngineArgs {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            order: self.order.into(),
            groebner: GroebnerConfig {
                step_budget: self.budget,
            },
            ..AnalyzeOptions::default()
        }
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Polynomial in z0, z1, …, e.g. "z0^5+z1^5+z2^5+z3^5+z4^5".
    #[arg(long)]
    poly: String,
    /// Comma-separated positive weights, one per variable.
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u64>,
    /// Weighted degree; inferred from the polynomial when omitted.
    #[arg(long)]
    degree: Option<u64>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug)]
struct BatchArgs {
    #[arg(long)]
    corpus: std::path::PathBuf,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Negative control: negate ψ₀ before comparing.
    #[arg(long, hide = true)]
    inject_flipped_psi: bool,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: u32,
    error: &'a AnalysisError,
}

fn exit_code_for(e: &AnalysisError) -> u8 {
    match e {
        AnalysisError::InvalidInput(_) | AnalysisError::NotWeightedHomogeneous(_) => EXIT_INVALID,
        AnalysisError::NonIsolatedSingularity(_) => EXIT_NON_ISOLATED,
        AnalysisError::BudgetExceeded(_) => EXIT_BUDGET,
        AnalysisError::Integrity(_) => EXIT_INTEGRITY,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let req = AnalysisRequest {
        poly: args.poly.clone(),
        weights: args.weights.clone(),
        degree: args.degree,
    };
    match analyze_request(&req, &args.engine.options()) {
        Ok(report) => {
            match args.engine.format {
                Format::Text => w!(out, "{report}"),
                Format::Json => wl!(out, "{}", to_json(&report)),
            }
            if report.checks.all_pass() {
                0
            } else {
                wl!(err, "error: failed checks: {}", report.checks.failures().join(", "));
                EXIT_INTEGRITY
            }
        }
        Err(e) => {
            if let Format::Json = args.engine.format {
                wl!(out, "{}", to_json(&ErrorReport { schema: 1, error: &e }));
            }
            wl!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn render_batch_text(summary: &CorpusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:>5}  {:<22}  {:>7}  {:>7}  {:>3}  {:>3}  {:<12}  {:>9}",
        "line", "d", "weights", "mu", "sigma", "nu", "exp", "status", "ms"
    );
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    for r in &summary.rows {
        let weights = r
            .weights
            .as_ref()
            .map_or("-".into(), |w| format!("({})", w.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
        let status = match r.status {
            RowStatus::Pass => "PASS",
            RowStatus::Unchecked => "UNCHECKED",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::CheckFailed => "CHECK-FAILED",
            RowStatus::Error => "ERROR",
        };
        let _ = writeln!(
            out,
            "{:>4}  {:>5}  {:<22}  {:>7}  {:>7}  {:>3}  {:>3}  {:<12}  {:>9.1}",
            r.line,
            r.degree.map_or("-".into(), |d| d.to_string()),
            weights,
            r.mu.map_or("-".into(), |m| m.to_string()),
            opt(r.sigma),
            opt(r.nu),
            opt(r.expected),
            status,
            r.ms
        );
        if let Some(err) = &r.error {
            let _ = writeln!(out, "      {err}");
        }
    }
    let _ = writeln!(
        out,
        "{}/{} PASS{}",
        summary.passed,
        summary.rows.len(),
        if summary.all_pass() { "" } else { " (FLAGGED rows above)" }
    );
    out
}

fn cmd_batch(args: &BatchArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let text = match std::fs::read_to_string(&args.corpus) {
        Ok(t) => t,
        Err(e) => {
            wl!(err, "error: cannot read corpus {}: {e}", args.corpus.display());
            return EXIT_INVALID;
        }
    };
    let entries = parse_corpus(&text);
    let summary = run_corpus(&entries, args.jobs, &args.engine.options());
    match args.engine.format {
        Format::Text => w!(out, "{}", render_batch_text(&summary)),
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema: u32,
                #[serde(flatten)]
                summary: &'a CorpusSummary,
            }
            wl!(out, "{}", to_json(&Out { schema: 1, summary: &summary }));
        }
    }
    if summary.all_pass() {
        0
    } else {
        EXIT_MISMATCH
    }
}

fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let report = run_selftest(args.samples, args.seed, args.inject_flipped_psi);
    match args.format {
        Format::Json => wl!(out, "{}", to_json(&report)),
        Format::Text => {
            for it in &report.items {
                wl!(out, "{:<4}  {}", if it.pass { "PASS" } else { "FAIL" }, it.name);
                if !it.pass {
                    wl!(out, "      lhs: {}", it.lhs);
                    wl!(out, "      rhs: {}", it.rhs);
                }
                if let Some(note) = &it.note {
                    wl!(out, "      note: {note}");
                }
            }
            let passed = report.items.iter().filter(|i| i.pass).count();
            wl!(out, "{passed}/{} PASS ({:.0} ms)", report.items.len(), report.elapsed_ms);
        }
    }
    if report.all_pass() {
        0
    } else {
        for it in report.items.iter().filter(|i| !i.pass) {
            wl!(err, "identity failed: {}", it.name);
        }
        EXIT_G2
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render();
            return if e.use_stderr() {
                w!(err, "{rendered}");
                EXIT_INVALID
            } else {
                w!(out, "{rendered}");
                0
            };
        }
    };
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, out, err),
        Command::Batch(b) => cmd_batch(b, out, err),
        Command::G2Selftest(s) => cmd_selftest(s, out, err),
    }
}
