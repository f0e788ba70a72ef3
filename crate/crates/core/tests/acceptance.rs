//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hbl::report::{verify_report, Report, RunConfig, Suite, SuiteResult, TwistRange};
use hbl::FieldSpec;

struct Outcome {
    pass: bool,
    detail: String,
}

fn range(start: u32, end: u32) -> TwistRange {
    TwistRange { start, end }
}

fn config(e: TwistRange, suites: &[Suite]) -> RunConfig {
    RunConfig {
        e,
        field: FieldSpec::Prime { p: 10007 },
        samples: 20,
        seed: 1,
        range: 8,
        suites: suites.to_vec(),
        ..RunConfig::default()
    }
}

fn judge(suites: &[&SuiteResult], elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let checks: Vec<_> = suites.iter().flat_map(|s| s.checks.iter().map(move |c| (s, c))).collect();
    let passed = checks.iter().filter(|(_, c)| c.pass).count();
    let mut lines = vec![format!("{passed}/{} checks, {:.1}s", checks.len(), elapsed.as_secs_f64())];
    for (s, c) in checks.iter().filter(|(_, c)| !c.pass) {
        lines.push(format!("    [{}] {}: expected {}, computed {}", s.name, c.name, c.expected, c.computed));
    }
    let in_time = limit.is_none_or(|l| elapsed <= l);
    if !in_time {
        lines.push(format!("    over the {}s budget", limit.unwrap().as_secs()));
    }
    Outcome {
        pass: !checks.is_empty() && passed == checks.len() && in_time,
        detail: lines.join("\n"),
    }
}

fn run(cfg: &RunConfig) -> (Report, Duration) {
    let start = Instant::now();
    let r = verify_report(cfg).expect("verification run");
    (r, start.elapsed())
}

fn suite(r: &Report, s: Suite) -> &SuiteResult {
    r.suites.iter().find(|x| x.name == s.name()).expect("suite present")
}

fn single(e: TwistRange, s: Suite, limit: Option<Duration>) -> Outcome {
    let (r, t) = run(&config(e, &[s]));
    judge(&[suite(&r, s)], t, limit)
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    results.push((
        "1 cohomology oracle, e=0..4, [-8,8]^2, duality, chi",
        single(range(0, 4), Suite::Cohomology, Some(Duration::from_secs(120))),
    ));
    results.push(("2 h0/h1 dimension values, e=1..6", single(range(1, 6), Suite::KnownValues, None)));

    let sampled = [Suite::Monads, Suite::Prioritary, Suite::Smoothness];
    let (r, t) = run(&config(range(1, 3), &sampled));
    results.push((
        "3 monad samples, e=1..3, 20 each over F_10007",
        judge(&[suite(&r, Suite::Monads)], t, Some(Duration::from_secs(600))),
    ));
    results.push(("4 prioritary criterion on samples", judge(&[suite(&r, Suite::Prioritary)], t, None)));
    let (dims, dt) = run(&config(range(1, 8), &[Suite::Dimensions]));
    results.push((
        "5 Jacobian rank on samples, block dimensions e=1..8",
        judge(&[suite(&r, Suite::Smoothness), suite(&dims, Suite::Dimensions)], t + dt, None),
    ));

    results.push(("6 six vanishings, e=1..4", single(range(1, 4), Suite::Vanishings, None)));
    results.push((
        "7 rationality arithmetic, e=1..2, two primes",
        single(range(1, 2), Suite::Rationality, Some(Duration::from_secs(600))),
    ));
    results.push(("8 Euler and chi identities, e=0..4", single(range(0, 4), Suite::Euler, None)));

    let cfg = config(range(1, 3), &Suite::ALL);
    let (a, ta) = run(&cfg);
    let (b, tb) = run(&cfg);
    let same = a.canonical().to_json() == b.canonical().to_json();
    results.push((
        "9 repeated verify runs are identical",
        Outcome {
            pass: same && a.pass(),
            detail: format!(
                "canonical reports {}, {} checks each, {:.1}s",
                if same { "identical" } else { "differ" },
                a.summary.checks,
                (ta + tb).as_secs_f64()
            ),
        },
    ));

    let mut all = true;
    for (name, o) in &results {
        all &= o.pass;
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
