//! Run configurations, verification suites and their JSON reports.
//!
//! A report is a pure function of its configuration apart from the
//! `runtime_ms` fields; [`Report::canonical`] zeroes those.

mod suites;

pub use suites::{
    cohomology_report, derive_seed, dims_report, sample_report, verify_report, SampleRow,
    SampleRun,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::check::Check;
use crate::error::{HblError, Result};
use crate::field::FieldSpec;
use crate::pic::DivisorClass;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest twist accepted in a run configuration.
pub const MAX_E: u32 = 8;
/// Largest grid half-width for cohomology comparisons.
pub const MAX_RANGE: i64 = 24;

/// Inclusive range of twists, written `3` or `1..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRange {
    pub start: u32,
    pub end: u32,
}

impl TwistRange {
    pub fn single(e: u32) -> Self {
        TwistRange { start: e, end: e }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }

    /// The positive twists in the range; monads need `e >= 1`.
    pub fn positive(&self) -> impl Iterator<Item = u32> {
        self.start.max(1)..=self.end
    }
}

impl fmt::Display for TwistRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

impl FromStr for TwistRange {
    type Err = HblError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || HblError::Parse(format!("bad twist range {s:?}; expected N or A..B"));
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let e = parse(s)?;
                (e, e)
            }
        };
        if start > end {
            return Err(bad());
        }
        Ok(TwistRange { start, end })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cohomology,
    KnownValues,
    Monads,
    Prioritary,
    Smoothness,
    Dimensions,
    Vanishings,
    Rationality,
    Euler,
    Determinism,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Cohomology,
        Suite::KnownValues,
        Suite::Monads,
        Suite::Prioritary,
        Suite::Smoothness,
        Suite::Dimensions,
        Suite::Vanishings,
        Suite::Rationality,
        Suite::Euler,
        Suite::Determinism,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Cohomology => "cohomology",
            Suite::KnownValues => "known-values",
            Suite::Monads => "monads",
            Suite::Prioritary => "prioritary",
            Suite::Smoothness => "smoothness",
            Suite::Dimensions => "dimensions",
            Suite::Vanishings => "vanishings",
            Suite::Rationality => "rationality",
            Suite::Euler => "euler",
            Suite::Determinism => "determinism",
        }
    }

    /// Parses `all` or a comma-separated list of suite names.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = HblError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                HblError::Parse(format!("unknown suite {s:?}; known: all, {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub e: TwistRange,
    pub field: FieldSpec,
    pub samples: usize,
    pub seed: u64,
    pub fibers: usize,
    /// Half-width of the `(a, b)` grid for cohomology comparisons.
    pub range: i64,
    pub divisor: Option<DivisorClass>,
    pub q: Option<u8>,
    pub suites: Vec<Suite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            e: TwistRange { start: 1, end: 3 },
            field: FieldSpec::default(),
            samples: 20,
            seed: 1,
            fibers: crate::monad::DEFAULT_FIBERS,
            range: 8,
            divisor: None,
            q: None,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HblError::Parse(m));
        if self.e.end > MAX_E {
            return bad(format!("twist range {} leaves [0, {MAX_E}]", self.e));
        }
        if self.samples == 0 {
            return bad("sample count must be at least 1".into());
        }
        if self.fibers == 0 {
            return bad("fiber count must be at least 1".into());
        }
        if !(0..=MAX_RANGE).contains(&self.range) {
            return bad(format!("grid range must lie in [0, {MAX_RANGE}]"));
        }
        if self.q.is_some_and(|q| q > 2) {
            return bad("cohomological degree q must be 0, 1 or 2".into());
        }
        if self.suites.is_empty() {
            return bad("no suite selected".into());
        }
        self.field.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Supporting values that are reported but not judged.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub runtime_ms: u64,
}

impl SuiteResult {
    pub fn new(name: &str, checks: Vec<Check>, data: Value, runtime_ms: u64) -> Self {
        SuiteResult {
            name: name.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            data,
            runtime_ms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteResult>,
    pub summary: Summary,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(command: &str, config: RunConfig, suites: Vec<SuiteResult>, runtime_ms: u64) -> Self {
        let checks = suites.iter().map(|s| s.checks.len()).sum();
        let passed = suites.iter().flat_map(|s| &s.checks).filter(|c| c.pass).count();
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config,
            summary: Summary {
                suites: suites.len(),
                checks,
                passed,
                failed: checks - passed,
                pass: suites.iter().all(|s| s.pass),
            },
            suites,
            runtime_ms,
        }
    }

    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    /// The report with every runtime field set to zero.
    pub fn canonical(&self) -> Report {
        let mut r = self.clone();
        r.runtime_ms = 0;
        for s in &mut r.suites {
            s.runtime_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text).map_err(|e| HblError::Parse(e.to_string()))?;
        if r.schema_version != REPORT_SCHEMA_VERSION {
            return Err(HblError::Parse(format!(
                "unsupported report schema_version {}",
                r.schema_version
            )));
        }
        Ok(r)
    }
}

/// Thread pool of at most `workers` threads (all cores when `None`).
pub fn worker_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(HblError::Parse("worker count must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| HblError::Parse(format!("cannot start worker pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_ranges() {
        assert_eq!("1..4".parse::<TwistRange>().unwrap(), TwistRange { start: 1, end: 4 });
        assert_eq!("1..=4".parse::<TwistRange>().unwrap(), TwistRange { start: 1, end: 4 });
        assert_eq!("3".parse::<TwistRange>().unwrap(), TwistRange::single(3));
        assert!("4..1".parse::<TwistRange>().is_err());
        assert!("x".parse::<TwistRange>().is_err());
        assert_eq!(TwistRange { start: 0, end: 2 }.positive().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn suite_lists() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 10);
        assert_eq!(
            Suite::parse_list("vanishings,dimensions").unwrap(),
            vec![Suite::Dimensions, Suite::Vanishings]
        );
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let c = RunConfig {
            e: TwistRange { start: 1, end: 9 },
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        let c = RunConfig {
            samples: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
