//! Command-line front end.
//!
//! Exit codes: `0` when every asserted check holds, `1` when at least one
//! fails (any report is still written), `2` for usage and configuration
//! errors, which are reported as one line on standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use opineq_core::constants::{BoundsKind, CaseParams, Sandwich, SandwichBounds};
use opineq_core::registry::{InequalityId, REGISTRY};
use opineq_core::rng::{derive_seed, SplitMix64};
use opineq_core::sampler::{draw_bounds, sample_instance, BoundsRanges};
use opineq_core::verifier::{
    check_case_with, compare_constants, tightness_search, CheckSettings, Report, SearchConfig, SearchRecord,
    SuiteConfig, DEFAULT_TOL,
};

use crate::error::{AppError, AppResult};
use crate::format::{read_json, to_json, write_text, BoundsDoc, CaseDoc, InstanceDoc, ParamsDoc};
use crate::report::{run_suite_parallel, ConfigDoc, ReportDoc};

/// Report path of `selftest` when `--out` is not given.
pub const DEFAULT_SELFTEST_REPORT: &str = "selftest-report.json";
/// Report path of `verify` when `--out` is not given.
pub const DEFAULT_VERIFY_REPORT: &str = "verify-report.json";

#[derive(Debug, Parser)]
#[command(name = "opineq", version, about = "Numerical checks of operator mean inequalities on random instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every registry entry with the built-in acceptance configuration.
    Selftest(SelftestArgs),
    /// Run a suite over chosen entries, dimensions and parameter grids.
    Verify(VerifyArgs),
    /// Print the ratio of the constants of two entries on shared bounds.
    Compare(CompareArgs),
    /// Search for instances that make an entry as tight as possible.
    Search(SearchArgs),
    /// Write a random instance in the matrix file format.
    Gen(GenArgs),
    /// Re-check a saved case, or every failure listed in a report.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Report path; `-` writes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Worker threads; 0 uses one per core. The report does not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Master seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trials per entry and dimension.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Scalar hypotheses. `--m --M` give common bounds, all four of
/// `--m --mp --Mp --M` give a sandwich, `--m1 --M1 --m2 --M2` give reverse bounds.
#[derive(Debug, Args, Default)]
struct BoundsArgs {
    /// Lower bound m.
    #[arg(long = "m")]
    m: Option<f64>,
    /// Inner lower bound m'.
    #[arg(long = "mp")]
    mp: Option<f64>,
    /// Inner upper bound M'.
    #[arg(long = "Mp")]
    big_mp: Option<f64>,
    /// Upper bound M.
    #[arg(long = "M")]
    big_m: Option<f64>,
    /// Lower bound of the spectrum of A is m1².
    #[arg(long = "m1")]
    m1: Option<f64>,
    /// Upper bound of the spectrum of A is M1².
    #[arg(long = "M1")]
    big_m1: Option<f64>,
    /// Lower bound of the spectrum of B is m2².
    #[arg(long = "m2")]
    m2: Option<f64>,
    /// Upper bound of the spectrum of B is M2².
    #[arg(long = "M2")]
    big_m2: Option<f64>,
    /// common, sandwich_B_low, sandwich_A_low or reverse_ando. Selects which side
    /// is low for sandwich bounds (default sandwich_B_low); for `gen`, the kind
    /// to draw when no values are given (default common).
    #[arg(long = "bounds-kind")]
    bounds_kind: Option<String>,
}

impl BoundsArgs {
    fn kind(&self) -> AppResult<Option<BoundsKind>> {
        self.bounds_kind.as_deref().map(BoundsKind::parse).transpose().map_err(|e| AppError::Usage(e.to_string()))
    }

    /// Bounds given by value, if any.
    fn values(&self) -> AppResult<Option<SandwichBounds>> {
        let usage = |msg: &str| Err(AppError::Usage(msg.to_string()));
        let kind = self.kind()?;
        let reverse = [self.m1, self.big_m1, self.m2, self.big_m2];
        let sandwich = [self.m, self.mp, self.big_mp, self.big_m];
        let bounds = match (reverse.iter().any(Option::is_some), sandwich.iter().any(Option::is_some)) {
            (false, false) => return Ok(None),
            (true, true) => return usage("give either --m/--M style bounds or --m1 --M1 --m2 --M2, not both"),
            (true, false) => match reverse {
                [Some(m1), Some(big_m1), Some(m2), Some(big_m2)] => {
                    SandwichBounds::reverse_ando(m1, big_m1, m2, big_m2)
                }
                _ => return usage("reverse bounds need all of --m1 --M1 --m2 --M2"),
            },
            (false, true) => match sandwich {
                [Some(m), None, None, Some(big_m)] => SandwichBounds::common(m, big_m),
                [Some(m), Some(m_prime), Some(big_m_prime), Some(big_m)] => {
                    let s = Sandwich { m, m_prime, big_m_prime, big_m };
                    if kind == Some(BoundsKind::SandwichALow) {
                        SandwichBounds::SandwichALow(s)
                    } else {
                        SandwichBounds::SandwichBLow(s)
                    }
                }
                _ => return usage("bounds need --m --M, or all of --m --mp --Mp --M"),
            },
        };
        if let Some(k) = kind {
            let compatible =
                k == bounds.kind() || (k == BoundsKind::SandwichALow && bounds.kind() == BoundsKind::SandwichBLow);
            if !compatible {
                return usage(&format!("--bounds-kind {} does not match the bound values given", k.as_str()));
            }
        }
        bounds.validate()?;
        Ok(Some(bounds))
    }

    /// Bounds given by value; a kind alone is rejected.
    fn fixed(&self) -> AppResult<Option<SandwichBounds>> {
        let bounds = self.values()?;
        if bounds.is_none() && self.bounds_kind.is_some() {
            return Err(AppError::Usage("--bounds-kind needs bound values".into()));
        }
        Ok(bounds)
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Registry ids, comma separated [default: all].
    #[arg(long, value_delimiter = ',')]
    ineq: Vec<String>,
    /// Dimensions [default: 2,3,5].
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Trials per entry and dimension [default: 100].
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed [default: 42].
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Weights ν [default: 0,0.1,...,1].
    #[arg(long, value_delimiter = ',')]
    nu: Vec<f64>,
    /// Powers p [default: per entry, the minimal admissible value and 1.5 above it].
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Exponents α [default: 1,1.25,1.5,2].
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Threshold on the relative gap [default: 1e-9].
    #[arg(long)]
    tol: Option<f64>,
    /// Put eigenvalues on both ends of their intervals.
    #[arg(long)]
    force_endpoints: bool,
    /// Configuration file in the report's `config` syntax; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Entry whose constant is the numerator.
    #[arg(long)]
    a: String,
    /// Entry whose constant is the denominator.
    #[arg(long)]
    b: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Weight ν.
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    /// Power p.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Exponent α.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Registry id.
    #[arg(long)]
    ineq: String,
    /// Number of checks the search may run.
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    /// Seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Dimension.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Fix ν instead of searching it.
    #[arg(long)]
    nu: Option<f64>,
    /// Fix p instead of searching it.
    #[arg(long)]
    p: Option<f64>,
    /// Fix α instead of searching it.
    #[arg(long)]
    alpha: Option<f64>,
    /// Threshold on the relative gap.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Writes the search record as JSON; `-` writes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Dimension.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Put eigenvalues on both ends of their intervals.
    #[arg(long)]
    force_endpoints: bool,
    /// Output path; `-` writes to standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ReplayArgs {
    /// A case file, or a report whose failures are replayed.
    #[arg(long)]
    case: PathBuf,
    /// Overrides the tolerance stored with the case.
    #[arg(long)]
    tol: Option<f64>,
}

fn ids_help() -> String {
    let mut s = String::from("Registry ids:\n");
    for e in REGISTRY.iter() {
        let tag = if e.asserted { "" } else { " (informational)" };
        s.push_str(&format!("  {:<22}{}{}\n", e.name, e.statement, tag));
    }
    s
}

fn command() -> clap::Command {
    let ids = ids_help();
    let mut cmd = Cli::command().after_help(ids.clone());
    for name in ["selftest", "verify", "compare", "search"] {
        cmd = cmd.mut_subcommand(name, |c| c.after_help(ids.clone()));
    }
    cmd
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match command().try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{line}");
            return 2;
        }
    };
    match run(cli.command) {
        Ok(passed) => i32::from(!passed),
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            2
        }
    }
}

fn usage(e: opineq_core::Error) -> AppError {
    AppError::Usage(e.to_string())
}

fn run(command: Command) -> AppResult<bool> {
    match command {
        Command::Selftest(args) => {
            let config = SuiteConfig { trials: args.trials, ..SuiteConfig::selftest(args.seed) };
            run_and_report(&config, &args.output, DEFAULT_SELFTEST_REPORT)
        }
        Command::Verify(args) => {
            let config = verify_config(&args)?;
            run_and_report(&config, &args.output, DEFAULT_VERIFY_REPORT)
        }
        Command::Compare(args) => compare(&args),
        Command::Search(args) => search(&args),
        Command::Gen(args) => gen(&args),
        Command::Replay(args) => replay(&args),
    }
}

fn verify_config(args: &VerifyArgs) -> AppResult<SuiteConfig> {
    let mut config = match &args.config {
        Some(path) => read_json::<ConfigDoc>(path)?.to_config().map_err(usage)?,
        None => SuiteConfig::selftest(42),
    };
    if !args.ineq.is_empty() {
        config.ids = args.ineq.iter().map(|s| InequalityId::parse(s)).collect::<Result<_, _>>().map_err(usage)?;
    }
    if !args.n.is_empty() {
        config.dims = args.n.clone();
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(b) = args.bounds.fixed()? {
        config.bounds = Some(b);
    }
    if !args.nu.is_empty() {
        config.nu_grid = args.nu.clone();
    }
    if !args.p.is_empty() {
        config.p_values = Some(args.p.clone());
    }
    if !args.alpha.is_empty() {
        config.alpha_grid = args.alpha.clone();
    }
    if let Some(t) = args.tol {
        config.tol = t;
    }
    config.force_endpoints |= args.force_endpoints;
    config.validate().map_err(usage)?;
    Ok(config)
}

fn print_summary(report: &Report) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{:<22} {:>6} {:>8} {:>14}  status", "id", "trials", "failures", "worst rel gap");
    for s in &report.summary {
        let status = match (s.failures, s.asserted) {
            (0, _) => "ok",
            (_, true) => "FAIL",
            (_, false) => "fail (informational)",
        };
        let _ = writeln!(
            out,
            "{:<22} {:>6} {:>8} {:>14.3e}  {status}",
            s.id.as_str(),
            s.trials,
            s.failures,
            s.worst_relative_gap
        );
    }
}

fn run_and_report(config: &SuiteConfig, output: &OutputArgs, default_path: &str) -> AppResult<bool> {
    let report = run_suite_parallel(config, output.threads)?;
    let doc = ReportDoc::new(config, &report);
    let text = match output.format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Csv => doc.to_csv()?,
    };
    let path = output.out.clone().unwrap_or_else(|| PathBuf::from(default_path));
    write_text(&path, &text)?;
    if path.as_os_str() != "-" {
        print_summary(&report);
        println!("report written to {}", path.display());
    }
    Ok(report.passed())
}

/// Rounds to 15 significant digits so that ratios equal to short decimals
/// print as such.
fn display_ratio(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    rounded.to_string()
}

fn compare(args: &CompareArgs) -> AppResult<bool> {
    let a = InequalityId::parse(&args.a).map_err(usage)?;
    let b = InequalityId::parse(&args.b).map_err(usage)?;
    let bounds =
        args.bounds.fixed()?.ok_or_else(|| AppError::Usage("compare needs bounds, e.g. --m 1 --M 4".into()))?;
    let ratio = compare_constants(a, b, &bounds, &CaseParams::new(args.nu, args.p, args.alpha)).map_err(usage)?;
    println!("{}", display_ratio(ratio));
    Ok(true)
}

/// Search result as written by `search --out`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub id: String,
    pub budget: usize,
    pub evaluations: usize,
    pub restarts: usize,
    pub gap: Option<f64>,
    pub relative_gap: Option<f64>,
    pub holds: Option<bool>,
    pub violation_confirmed: bool,
    pub bounds: Option<BoundsDoc>,
    pub params: Option<ParamsDoc>,
    pub ua: Vec<f64>,
    pub ub: Vec<f64>,
    pub shared_basis: Option<bool>,
    pub map: Option<String>,
    pub case: Option<CaseDoc>,
}

impl SearchDoc {
    fn new(rec: &SearchRecord, settings: &CheckSettings) -> Self {
        let best = rec.best.as_ref();
        Self {
            id: rec.id.as_str().to_string(),
            budget: rec.budget,
            evaluations: rec.evaluations,
            restarts: rec.restarts,
            gap: rec.verdict.map(|v| v.gap),
            relative_gap: rec.verdict.map(|v| v.relative_gap),
            holds: rec.verdict.map(|v| v.holds),
            violation_confirmed: rec.violation_confirmed,
            bounds: best.map(|b| b.bounds.into()),
            params: best.map(|b| b.params.into()),
            ua: best.map(|b| b.ua.clone()).unwrap_or_default(),
            ub: best.map(|b| b.ub.clone()).unwrap_or_default(),
            shared_basis: best.map(|b| b.shared_basis),
            map: rec.case.as_ref().map(|c| c.phi.kind().to_string()),
            case: rec.case.as_ref().map(|c| CaseDoc::from_case(c, settings.tol, settings.rhs_constant_scale)),
        }
    }
}

fn search(args: &SearchArgs) -> AppResult<bool> {
    let id = InequalityId::parse(&args.ineq).map_err(usage)?;
    let mut config = SearchConfig::new(id, args.budget, args.seed);
    config.n = args.n;
    config.bounds = args.bounds.fixed()?;
    config.nu = args.nu;
    config.p = args.p;
    config.alpha = args.alpha;
    config.settings.tol = args.tol;
    let rec = tightness_search(&config).map_err(usage)?;
    let doc = SearchDoc::new(&rec, &config.settings);
    if let Some(path) = &args.out {
        write_text(path, &to_json(&doc))?;
    }
    if args.out.as_deref() != Some(Path::new("-")) {
        println!("{id}: {} evaluations, {} restarts", rec.evaluations, rec.restarts);
        match (rec.verdict, &rec.best) {
            (Some(v), Some(best)) => {
                println!("best gap {:e}, relative gap {:e}", v.gap, v.relative_gap);
                println!(
                    "at nu = {}, p = {}, alpha = {}, {}, map {}, {} basis",
                    best.params.nu,
                    best.params.p,
                    best.params.alpha,
                    best.bounds,
                    doc.map.as_deref().unwrap_or("?"),
                    if best.shared_basis { "shared" } else { "independent" }
                );
                if rec.violation_confirmed {
                    println!("violation confirmed at tightened eigensolver settings");
                }
            }
            _ => println!("no point could be evaluated"),
        }
    }
    Ok(!rec.violation_confirmed)
}

fn gen(args: &GenArgs) -> AppResult<bool> {
    let mut rng = SplitMix64::new(derive_seed(args.seed, 0));
    let bounds = match args.bounds.values()? {
        Some(b) => b,
        None => draw_bounds(args.bounds.kind()?.unwrap_or(BoundsKind::Common), &BoundsRanges::default(), &mut rng),
    };
    let instance = sample_instance(bounds, args.n, derive_seed(args.seed, 1), args.force_endpoints).map_err(usage)?;
    write_text(&args.out, &to_json(&InstanceDoc::from(&instance)))?;
    Ok(true)
}

fn replay(args: &ReplayArgs) -> AppResult<bool> {
    let value: serde_json::Value = read_json(&args.case)?;
    let cases: Vec<CaseDoc> = if value.get("failures").is_some() {
        let doc: ReportDoc = serde_json::from_value(value).map_err(|e| AppError::json(&args.case, e))?;
        let skipped = doc.failures.iter().filter(|f| f.case.is_none()).count();
        if skipped > 0 {
            println!("{skipped} failure(s) without a stored instance skipped");
        }
        doc.failures.into_iter().filter_map(|f| f.case).collect()
    } else {
        vec![serde_json::from_value(value).map_err(|e| AppError::json(&args.case, e))?]
    };
    let mut all_hold = true;
    for doc in &cases {
        let case = doc.to_case().map_err(usage)?;
        let settings = CheckSettings {
            tol: args.tol.unwrap_or(doc.tol),
            rhs_constant_scale: doc.rhs_constant_scale,
            ..CheckSettings::default()
        };
        let v = check_case_with(&case, &settings).map_err(usage)?;
        all_hold &= v.holds;
        println!(
            "{} n={} seed={} nu={} p={} alpha={} gap={:e} relative_gap={:e} {}",
            case.id,
            case.instance.n,
            case.instance.seed,
            case.params.nu,
            case.params.p,
            case.params.alpha,
            v.gap,
            v.relative_gap,
            if v.holds { "holds" } else { "FAILS" }
        );
    }
    Ok(all_hold)
}
