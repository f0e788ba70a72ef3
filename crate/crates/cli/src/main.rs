use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hbl::pic::DivisorClass;
use hbl::report::{
    cohomology_report, dims_report, sample_report, verify_report, worker_pool, Report, RunConfig,
    Suite, TwistRange,
};
use hbl::{FieldSpec, HblError};

const PASS: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "hbl", version, about = "Verify cohomology, monads and dimension counts on Hirzebruch surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare closed-form line bundle cohomology with the Čech engine.
    Cohomology(Common),
    /// Draw monads, classify them and write them as JSON.
    Sample {
        #[command(flatten)]
        common: Common,
        /// Also write the summary report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify(Common),
    /// Print block-space, kernel and group dimensions.
    Dims(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Twist `N` or inclusive range `A..B`.
    #[arg(long, default_value = "1..3")]
    e: String,
    #[arg(long, conflicts_with = "rational")]
    prime: Option<u64>,
    #[arg(long)]
    rational: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, visible_alias = "count", default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = hbl::monad::DEFAULT_FIBERS)]
    fibers: usize,
    /// Half-width of the divisor grid.
    #[arg(long, default_value_t = 8)]
    range: i64,
    /// A single divisor `a,b` meaning aC0 + bF.
    #[arg(long, allow_hyphen_values = true)]
    divisor: Option<String>,
    #[arg(long)]
    q: Option<u8>,
    /// `all` or a comma-separated list of suites.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<HblError> for Failure {
    fn from(e: HblError) -> Self {
        match e {
            HblError::Parse(_)
            | HblError::InvalidField(_)
            | HblError::ZeroTwist(_)
            | HblError::TooLarge(_)
            | HblError::NotAmple { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Internal(format!("{}: {e}", path.display()))
}

fn parse_divisor(s: &str) -> Result<DivisorClass, Failure> {
    let bad = || Failure::Usage(format!("bad divisor {s:?}; expected a,b"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok(DivisorClass::new(a, b))
}

fn config(c: &Common) -> Result<RunConfig, Failure> {
    let field = if c.rational {
        FieldSpec::Rational
    } else {
        FieldSpec::Prime {
            p: c.prime.unwrap_or(FieldSpec::DEFAULT_PRIME),
        }
    };
    let cfg = RunConfig {
        e: c.e.parse::<TwistRange>()?,
        field,
        samples: c.samples,
        seed: c.seed,
        fibers: c.fibers,
        range: c.range,
        divisor: c.divisor.as_deref().map(parse_divisor).transpose()?,
        q: c.q,
        suites: Suite::parse_list(&c.suite)?,
    };
    if cfg.q.is_some() && cfg.divisor.is_none() {
        return Err(Failure::Usage("--q needs --divisor".into()));
    }
    cfg.validate()?;
    Ok(cfg)
}

fn workers() -> Result<Option<usize>, Failure> {
    match std::env::var("HBL_WORKERS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("HBL_WORKERS must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn csv_text(r: &Report) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Failure::Internal(e.to_string());
    w.write_record(["suite", "check", "expected", "computed", "pass"]).map_err(internal)?;
    for s in &r.suites {
        for c in &s.checks {
            w.write_record([
                s.name.as_str(),
                c.name.as_str(),
                &c.expected.to_string(),
                &c.computed.to_string(),
                if c.pass { "true" } else { "false" },
            ])
            .map_err(internal)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

fn render(r: &Report, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(r.to_json() + "\n"),
        Format::Csv => csv_text(r),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn summarize(r: &Report) {
    for s in &r.suites {
        for c in s.checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL [{}] {}: expected {}, computed {}", s.name, c.name, c.expected, c.computed);
        }
    }
    let m = &r.summary;
    eprintln!(
        "{}: {} of {} checks passed in {} suites",
        if m.pass { "PASS" } else { "FAIL" },
        m.passed,
        m.checks,
        m.suites
    );
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let pool = worker_pool(workers()?)?;
    match cli.command {
        Command::Cohomology(c) => {
            let cfg = config(&c)?;
            let r = pool.install(|| cohomology_report(&cfg))?;
            if let (Some(d), Some(q)) = (cfg.divisor, cfg.q) {
                for v in r.suites[0].data["values"].as_array().into_iter().flatten() {
                    eprintln!("e={}: h^{q}(O({},{})) = {}", v["e"], d.a, d.b, v["value"]);
                }
            }
            emit(&render(&r, c.format)?, c.out.as_deref())?;
            summarize(&r);
            Ok(r.pass())
        }
        Command::Sample { common: c, report } => {
            let cfg = config(&c)?;
            let (monads, r) = pool.install(|| sample_report(&cfg))?;
            let text = serde_json::to_string_pretty(&monads).map_err(|e| Failure::Internal(e.to_string()))?;
            emit(&(text + "\n"), c.out.as_deref())?;
            if let Some(p) = report {
                fs::write(&p, render(&r, c.format)?).map_err(|e| io_failure(&p, e))?;
            }
            summarize(&r);
            Ok(r.pass())
        }
        Command::Verify(c) => {
            let cfg = config(&c)?;
            let r = pool.install(|| verify_report(&cfg))?;
            emit(&render(&r, c.format)?, c.out.as_deref())?;
            summarize(&r);
            Ok(r.pass())
        }
        Command::Dims(c) => {
            let cfg = config(&c)?;
            let r = pool.install(|| dims_report(&cfg))?;
            emit(&render(&r, c.format)?, c.out.as_deref())?;
            summarize(&r);
            Ok(r.pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(PASS),
        Ok(false) => ExitCode::from(FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(INTERNAL)
        }
    }
}
