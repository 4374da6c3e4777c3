//! `rotnum`: rotation-number enclosures from the command line.
//!
//! Exit codes: 0 success, 1 error, 2 partial result, 64 usage.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use rotnum::interval::parse_hex;
use rotnum::report::{certificate_json, map_json, result_json};
use rotnum::rotation::{RotationError, DEFAULT_BUDGET};
use rotnum::shooting::{periodic_candidate, verify_periodic};
use rotnum::{rho_cf, rho_linear, Interval, MapDescriptor, RotationResult};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_PARTIAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

const STAIRCASE_HEADER: &str = "# rotnum-staircase v1";

/// Pairs timed by `bench` when no list is given, with the stage depth of each.
const BENCH_PAIRS: &str = "0.22:0.01:11,0.22:0.159:7,0.45:0.01:6,0.45:0.159:6";

#[derive(Parser)]
#[command(name = "rotnum", version, about = "Rigorous enclosures of rotation numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose the rotation number of one map.
    Rho(RhoArgs),
    /// Sweep one parameter and tabulate enclosures as CSV.
    Staircase(StaircaseArgs),
    /// Certify a periodic orbit of a circle map.
    Periodic(PeriodicArgs),
    /// Time the continued-fraction method on (alpha, epsilon) pairs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Arnold,
    Dlm,
    Rigid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodName {
    Cf,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    Alpha,
    Epsilon,
    Lambda,
}

impl SweepParam {
    fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Epsilon => "epsilon",
            SweepParam::Lambda => "lambda",
        }
    }
}

#[derive(Args, Clone)]
struct MapArgs {
    #[arg(long, value_enum)]
    map: MapName,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Read parameters as hexadecimal floats taken exactly.
    #[arg(long)]
    exact_hex: bool,
    /// Allow delayed-logistic parameters outside (2, 2.16].
    #[arg(long)]
    unsafe_lambda: bool,
}

#[derive(Args, Clone)]
struct MethodArgs {
    #[arg(long, value_enum, default_value = "cf")]
    method: MethodName,
    /// Continued-fraction stages.
    #[arg(long, default_value_t = 10)]
    stages: usize,
    /// Iterates for the linear method.
    #[arg(long, default_value_t = 10_000)]
    iters: u64,
    /// Iterate budget for the continued-fraction method.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Starting point for the linear method on circle maps.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    x0: f64,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StaircaseArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long, value_enum, default_value = "alpha")]
    sweep: SweepParam,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PeriodicArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long)]
    q: usize,
    /// Expected number of turns per period.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    /// Iterations before the candidate cycle is sampled; defaults to max(100q, 1000).
    #[arg(long)]
    transient: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    start: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated alpha:epsilon:stages triples.
    #[arg(long, default_value = BENCH_PAIRS)]
    pairs: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn parse_param(name: &str, text: &str, hex: bool) -> Result<Interval, CliError> {
    let bad = |e: String| CliError::Usage(format!("--{name} {text}: {e}"));
    if hex {
        parse_hex(text).map(Interval::point).map_err(|e| bad(e.to_string()))
    } else {
        Interval::from_decimal(text).map_err(|e| bad(e.to_string()))
    }
}

fn required(name: &str, v: &Option<String>) -> Result<String, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("--{name} is required for this map")))
}

impl MapArgs {
    fn build(&self) -> Result<MapDescriptor, CliError> {
        self.build_with(None)
    }

    /// Builds the map, optionally replacing one parameter by an exact value.
    fn build_with(&self, sweep: Option<(SweepParam, f64)>) -> Result<MapDescriptor, CliError> {
        let p = |param: SweepParam, v: &Option<String>| match sweep {
            Some((s, x)) if s == param => Ok(Interval::point(x)),
            _ => parse_param(param.name(), &required(param.name(), v)?, self.exact_hex),
        };
        let m = match self.map {
            MapName::Arnold => MapDescriptor::arnold(
                p(SweepParam::Alpha, &self.alpha)?,
                p(SweepParam::Epsilon, &self.epsilon)?,
            ),
            MapName::Rigid => Ok(MapDescriptor::rigid(p(SweepParam::Alpha, &self.alpha)?)),
            MapName::Dlm => {
                MapDescriptor::delayed_logistic(p(SweepParam::Lambda, &self.lambda)?, self.unsafe_lambda)
            }
        };
        m.map_err(|e| CliError::Usage(e.to_string()))
    }
}

impl MethodArgs {
    fn run(&self, m: &MapDescriptor) -> Result<RotationResult, RotationError> {
        match self.method {
            MethodName::Cf => rho_cf(m, self.budget, self.stages),
            MethodName::Linear => rho_linear(m, self.x0, self.iters),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let mut f = File::create(path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn cmd_rho(args: &RhoArgs) -> Result<u8, CliError> {
    let m = args.map.build()?;
    let r = args.method.run(&m).map_err(|e| CliError::Failed(e.to_string()))?;
    emit(&args.out, &pretty(&result_json(&r)))?;
    Ok(if r.status.is_partial() { EXIT_PARTIAL } else { EXIT_OK })
}

struct Row {
    value: f64,
    result: Result<RotationResult, String>,
}

fn grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    let step = (to - from) / (points - 1) as f64;
    (0..points)
        .map(|k| if k + 1 == points { to } else { from + step * k as f64 })
        .collect()
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ROTNUM_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("ROTNUM_THREADS={v} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Failed(e.to_string()))
}

fn cmd_staircase(args: &StaircaseArgs) -> Result<u8, CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if !(args.from < args.to) {
        return Err(CliError::Usage("--from must be below --to".into()));
    }
    let pool = thread_pool()?;
    let values = grid(args.from, args.to, args.points);
    let rows: Vec<Row> = pool.install(|| {
        values
            .par_iter()
            .map(|&value| {
                let result = args
                    .map
                    .build_with(Some((args.sweep, value)))
                    .map_err(|e| match e {
                        CliError::Usage(s) | CliError::Failed(s) => s,
                    })
                    .and_then(|m| args.method.run(&m).map_err(|e| e.to_string()));
                Row { value, result }
            })
            .collect()
    });

    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        args.sweep.name(),
        "rho_lo",
        "rho_hi",
        "rational_p",
        "rational_q",
        "iterates",
        "status",
    ])?;
    let mut failures = 0;
    for row in &rows {
        let value = row.value.to_string();
        match &row.result {
            Ok(r) => {
                let (p, q) = r
                    .rational
                    .as_ref()
                    .map(|rat| (rat.p.to_string(), rat.q.to_string()))
                    .unwrap_or_default();
                let status = serde_json::to_value(r.status).expect("status");
                wtr.write_record([
                    value,
                    r.enclosure.lo().to_string(),
                    r.enclosure.hi().to_string(),
                    p,
                    q,
                    r.iterates.to_string(),
                    status.as_str().unwrap_or_default().to_string(),
                ])?;
            }
            Err(e) => {
                failures += 1;
                wtr.write_record([value, String::new(), String::new(), String::new(), String::new(), "0".into(), format!("error: {e}")])?;
            }
        }
    }
    let body = String::from_utf8(wtr.into_inner().map_err(|e| CliError::Failed(e.to_string()))?)
        .expect("csv is utf-8");
    emit(&args.out, &format!("{STAIRCASE_HEADER}\n{body}"))?;
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

fn cmd_periodic(args: &PeriodicArgs) -> Result<u8, CliError> {
    if args.q == 0 {
        return Err(CliError::Usage("--q must be at least 1".into()));
    }
    let m = args.map.build()?;
    if m.dimension() != 1 {
        return Err(CliError::Usage("periodic orbits are certified for circle maps only".into()));
    }
    let transient = args.transient.unwrap_or((100 * args.q).max(1000));
    let start = Instant::now();
    let candidate = periodic_candidate(&m, args.start, transient, args.q)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let doc = match verify_periodic(&m, &candidate, args.q) {
        Ok(cert) => {
            if let Some(p) = args.p {
                if p != cert.p {
                    let msg = format!("certified orbit has p = {}, expected {p}", cert.p);
                    emit(&args.out, &pretty(&json!({ "map": map_json(&m), "certified": false, "error": msg })))?;
                    return Ok(EXIT_ERROR);
                }
            }
            json!({
                "map": map_json(&m),
                "certified": true,
                "certificate": certificate_json(&cert),
                "seconds": start.elapsed().as_secs_f64(),
            })
        }
        Err(e) => {
            emit(&args.out, &pretty(&json!({ "map": map_json(&m), "certified": false, "error": e.to_string() })))?;
            return Ok(EXIT_ERROR);
        }
    };
    emit(&args.out, &pretty(&doc))?;
    Ok(EXIT_OK)
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String, usize)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.split(':').collect();
            match parts.as_slice() {
                [a, e, s] => s
                    .parse()
                    .map(|s| (a.to_string(), e.to_string(), s))
                    .map_err(|_| CliError::Usage(format!("bad stage count in {item}"))),
                _ => Err(CliError::Usage(format!("expected alpha:epsilon:stages, got {item}"))),
            }
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> Result<u8, CliError> {
    let pairs = parse_pairs(&args.pairs)?;
    if pairs.is_empty() {
        return Ok(EXIT_OK);
    }
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["alpha", "epsilon", "stages", "seconds", "radius", "iterates", "max_a", "status"])?;
    for (a, e, stages) in &pairs {
        let m = MapDescriptor::arnold(parse_param("alpha", a, false)?, parse_param("epsilon", e, false)?)
            .map_err(|err| CliError::Usage(err.to_string()))?;
        let t = Instant::now();
        let r = rho_cf(&m, args.budget, *stages).map_err(|err| CliError::Failed(err.to_string()))?;
        let seconds = t.elapsed().as_secs_f64();
        let max_a = r.cf.as_ref().and_then(|cf| cf.a.iter().max().copied()).unwrap_or(0);
        let status = serde_json::to_value(r.status).expect("status");
        wtr.write_record([
            a.clone(),
            e.clone(),
            stages.to_string(),
            format!("{seconds:.3}"),
            format!("{:.2e}", r.radius()),
            r.iterates.to_string(),
            max_a.to_string(),
            status.as_str().unwrap_or_default().to_string(),
        ])?;
    }
    let body = String::from_utf8(wtr.into_inner().map_err(|e| CliError::Failed(e.to_string()))?)
        .expect("csv is utf-8");
    emit(&args.out, &body)?;
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let outcome = match &cli.command {
        Command::Rho(a) => cmd_rho(a),
        Command::Staircase(a) => cmd_staircase(a),
        Command::Periodic(a) => cmd_periodic(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
