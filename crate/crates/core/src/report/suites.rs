use std::collections::BTreeMap;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Report, RunConfig, Suite, SuiteResult};
use crate::cech::{
    cech_line_cohomology_with, hypercohomology, verify_connecting_consistency, LiftOrder, Model,
    PatternTable,
};
use crate::check::Check;
use crate::cohomology::{h_vector, hq_dim};
use crate::error::{HblError, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::monad::{
    chern_from_terms, classify_with, euler_cotangent_fixture, is_monad, composite_jacobian_rank,
    monad_vanishing_conditions, sample_monad, shape, BundleInvariants, MonadCheck,
};
use crate::pic::{ChernData, DivisorClass, Surface};
use crate::rationality::{
    bilinear_kernel, fiber_survey, group_dim_audit, inequality_audit, projective_block_dims, KERNEL_MAX_E,
    KERNEL_PRIMES,
};

/// Seed of sample `index` at twist `e` in a run seeded with `seed`.
pub fn derive_seed(seed: u64, e: u32, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(e as u64);
    rng.set_word_pos(2 * index as u128);
    rng.next_u64()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRow {
    pub e: u32,
    pub index: usize,
    pub seed: u64,
    pub valid: bool,
    pub check: Option<MonadCheck>,
    pub jacobian_rank: Option<usize>,
    pub invariants: Option<BundleInvariants>,
    pub error: Option<String>,
}

impl SampleRow {
    fn compact(&self) -> Value {
        let inv = self.invariants.as_ref();
        json!({
            "e": self.e,
            "index": self.index,
            "seed": self.seed,
            "valid": self.valid,
            "d": inv.map(|i| i.d),
            "r": inv.map(|i| i.r),
            "zero_scheme_length": inv.map(|i| i.zero_scheme_length),
            "jacobian_rank": self.jacobian_rank,
            "error": self.error,
        })
    }

    fn classify_pass(&self) -> bool {
        let e = self.e as usize;
        self.valid
            && self.invariants.as_ref().is_some_and(|i| {
                i.vanishing
                    && i.prioritary
                    && i.zero_scheme_length >= 0
                    && i.h(DivisorClass::ZERO) == Some([0, 2, 0])
                    && i.h(DivisorClass::new(0, -1)) == Some([0, 2, 0])
                    && i.h(DivisorClass::new(-1, 0)) == Some([0, e + 2, 0])
                    && i.h(DivisorClass::new(-1, -1)) == Some([0, e, 0])
            })
    }
}

/// Monads drawn at one twist, with their JSON documents.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub e: u32,
    pub monads: Vec<Value>,
    pub rows: Vec<SampleRow>,
}

fn sample_one<F: Field>(f: &F, e: u32, index: usize, seed: u64, fibers: usize) -> (Option<Value>, SampleRow) {
    let mut row = SampleRow {
        e,
        index,
        seed,
        valid: false,
        check: None,
        jacobian_rank: None,
        invariants: None,
        error: None,
    };
    let m = match sample_monad(f.clone(), e, seed) {
        Ok(m) => m,
        Err(err) => {
            row.error = Some(err.to_string());
            return (None, row);
        }
    };
    match is_monad(&m) {
        Ok(c) => {
            row.valid = c.is_valid();
            row.check = Some(c);
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    row.jacobian_rank = Some(composite_jacobian_rank(&m));
    if row.valid {
        match classify_with(&m, fibers) {
            Ok(inv) => row.invariants = Some(inv),
            Err(err) => row.error = Some(err.to_string()),
        }
    }
    (Some(m.to_json_value()), row)
}

fn run_samples_in<F: Field>(f: F, e: u32, cfg: &RunConfig) -> SampleRun {
    let results: Vec<(Option<Value>, SampleRow)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| sample_one(&f, e, i, derive_seed(cfg.seed, e, i), cfg.fibers))
        .collect();
    let mut monads = Vec::new();
    let mut rows = Vec::new();
    for (m, row) in results {
        monads.extend(m);
        rows.push(row);
    }
    SampleRun { e, monads, rows }
}

fn run_samples(cfg: &RunConfig, e: u32) -> Result<SampleRun> {
    Ok(match cfg.field {
        FieldSpec::Prime { p } => run_samples_in(PrimeField::new(p)?, e, cfg),
        FieldSpec::Rational => run_samples_in(Rationals::default(), e, cfg),
    })
}

fn count(rows: &[SampleRow], pred: impl Fn(&SampleRow) -> bool) -> usize {
    rows.iter().filter(|r| pred(r)).count()
}

fn inv_count(rows: &[SampleRow], pred: impl Fn(&BundleInvariants) -> bool) -> usize {
    rows.iter().filter(|r| r.invariants.as_ref().is_some_and(&pred)).count()
}

fn distinct<T: Ord + Clone>(values: impl Iterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = values.collect();
    v.sort();
    v.dedup();
    v
}

fn cohomology_grid(e: u32, range: i64) -> Result<(Vec<Check>, Vec<Value>)> {
    let s = Surface::new(e);
    let f = PrimeField::new(FieldSpec::DEFAULT_PRIME)?;
    let table = PatternTable::new(&f, Model::Surface(s), LiftOrder::Forward);
    let k = s.canonical_class();
    let (mut cells, mut agree, mut dual, mut chi) = (0usize, 0usize, 0usize, 0usize);
    let mut mismatches = Vec::new();
    for a in -range..=range {
        for b in -range..=range {
            let d = DivisorClass::new(a, b);
            cells += 1;
            let engine = cech_line_cohomology_with(&table, d)?;
            let closed = h_vector(&s, d);
            if engine == closed {
                agree += 1;
            } else if mismatches.len() < 10 {
                mismatches.push(json!({"divisor": d, "engine": engine, "closed_form": closed}));
            }
            let other = cech_line_cohomology_with(&table, k - d)?;
            if (0..3).all(|q| engine[q] == other[2 - q]) {
                dual += 1;
            }
            if engine[0] - engine[1] + engine[2] == s.euler_char(&ChernData::line(d))? {
                chi += 1;
            }
        }
    }
    let span = format!("[-{range},{range}]^2");
    Ok((
        vec![
            Check::equal(format!("e={e}: engine = closed form on {span}"), cells, agree),
            Check::equal(format!("e={e}: h^q(D) = h^(2-q)(K-D) on {span}"), cells, dual),
            Check::equal(format!("e={e}: chi(O(D)) = Riemann-Roch on {span}"), cells, chi),
        ],
        mismatches,
    ))
}

fn suite_cohomology(cfg: &RunConfig) -> SuiteResult {
    let (results, ms) = timed(|| {
        cfg.e
            .iter()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|e| (e, cohomology_grid(e, cfg.range)))
            .collect::<Vec<_>>()
    });
    let mut checks = Vec::new();
    let mut bad = Vec::new();
    for (e, r) in results {
        match r {
            Ok((c, m)) => {
                checks.extend(c);
                bad.extend(m);
            }
            Err(err) => checks.push(Check::failed(format!("e={e}: cohomology grid"), "completed", err)),
        }
    }
    let data = if bad.is_empty() { Value::Null } else { json!({ "mismatches": bad }) };
    SuiteResult::new(Suite::Cohomology.name(), checks, data, ms)
}

fn suite_known_values(cfg: &RunConfig) -> SuiteResult {
    let (checks, ms) = timed(|| {
        let mut checks = Vec::new();
        let f = PrimeField::new(FieldSpec::DEFAULT_PRIME).expect("default prime");
        for e in cfg.e.positive() {
            let s = Surface::new(e);
            let table = PatternTable::new(&f, Model::Surface(s), LiftOrder::Forward);
            let ei = e as i64;
            let cases = [
                ("h0(O(C0+eF))", DivisorClass::new(1, ei), 0usize, ei + 2),
                ("h0(O(C0+(e+1)F))", DivisorClass::new(1, ei + 1), 0, ei + 4),
                ("h1(O(C0+(e-1)F))", DivisorClass::new(1, ei - 1), 1, 0),
            ];
            for (name, d, q, expected) in cases {
                let name = format!("e={e}: {name} [closed form, engine]");
                match cech_line_cohomology_with(&table, d) {
                    Ok(h) => checks.push(Check::equal(name, [expected; 2], [hq_dim(&s, d, q as u8), h[q]])),
                    Err(err) => checks.push(Check::failed(name, &expected.to_string(), err)),
                }
            }
        }
        checks
    });
    SuiteResult::new(Suite::KnownValues.name(), checks, Value::Null, ms)
}

fn suite_monads(runs: &[SampleRun], sample_ms: u64) -> SuiteResult {
    let mut checks = Vec::new();
    for run in runs {
        let (e, rows, n) = (run.e, &run.rows, run.rows.len());
        let ei = e as usize;
        let tag = |s: &str| format!("e={e}: {s}");
        let checked = |f: fn(&MonadCheck) -> bool| move |r: &SampleRow| r.check.as_ref().is_some_and(f);
        checks.push(Check::equal(tag("sampled"), n, count(rows, |r| r.error.is_none())));
        checks.push(Check::equal(tag("b a = 0"), n, count(rows, checked(|c| c.composite_zero))));
        checks.push(Check::equal(tag("a injective on every fibre"), n, count(rows, checked(|c| c.a.is_certified()))));
        checks.push(Check::equal(tag("b surjective on every fibre"), n, count(rows, checked(|c| c.b.is_certified()))));
        checks.push(Check::equal(tag("classified"), n, count(rows, |r| r.invariants.is_some())));
        let expect = [
            ("h(V)", DivisorClass::ZERO, [0, 2, 0]),
            ("h(V(-F))", DivisorClass::new(0, -1), [0, 2, 0]),
            ("h(V(-C0))", DivisorClass::new(-1, 0), [0, ei + 2, 0]),
            ("h(V(-C0-F))", DivisorClass::new(-1, -1), [0, ei, 0]),
        ];
        for (name, twist, h) in expect {
            let seen = distinct(rows.iter().filter_map(|r| r.invariants.as_ref()?.h(twist)));
            checks.push(Check::equal(tag(&format!("{name} over all samples")), vec![h], seen));
        }
        checks.push(Check::equal(tag("h0(V(C0+F)) = 0"), n, inv_count(rows, |i| i.vanishing)));
        checks.push(Check::equal(
            tag("Beilinson rows q=0,2 vanish"),
            n,
            inv_count(rows, |i| i.beilinson.row_vanishes(0) && i.beilinson.row_vanishes(2)),
        ));
    }
    let data = json!({ "samples": runs.iter().flat_map(|r| r.rows.iter().map(SampleRow::compact)).collect::<Vec<_>>() });
    SuiteResult::new(Suite::Monads.name(), checks, data, sample_ms)
}

fn suite_prioritary(runs: &[SampleRun]) -> SuiteResult {
    let mut checks = Vec::new();
    let mut seen = BTreeMap::new();
    for run in runs {
        let (e, rows, n) = (run.e, &run.rows, run.rows.len());
        let tag = |s: &str| format!("e={e}: {s}");
        checks.push(Check::equal(tag("d = -1 or r <= -1"), n, inv_count(rows, |i| i.d == -1 || i.r <= -1)));
        checks.push(Check::equal(tag("r <= -2"), n, inv_count(rows, |i| i.r <= -2)));
        checks.push(Check::equal(tag("2d >= c1.C0 coefficient (-2)"), n, inv_count(rows, |i| 2 * i.d >= i.c1.a)));
        checks.push(Check::equal(tag("h0(O(2dC0+(2r+1)F)) = 0"), n, inv_count(rows, |i| i.prioritary_witness_h0 == 0)));
        checks.push(Check::equal(tag("ell(zeta) >= 0"), n, inv_count(rows, |i| i.zero_scheme_length >= 0)));
        checks.push(Check::equal(tag("prioritary"), n, inv_count(rows, |i| i.prioritary)));
        for i in rows.iter().filter_map(|r| r.invariants.as_ref()) {
            *seen.entry(format!("e={e} d={} r={} ell={}", i.d, i.r, i.zero_scheme_length)).or_insert(0usize) += 1;
        }
    }
    SuiteResult::new(Suite::Prioritary.name(), checks, json!({ "invariants": seen }), 0)
}

fn suite_smoothness(runs: &[SampleRun]) -> SuiteResult {
    let mut checks = Vec::new();
    for run in runs {
        let e = run.e;
        let ei = e as usize;
        let ranks = distinct(run.rows.iter().filter_map(|r| r.jacobian_rank));
        checks.push(Check::equal(
            format!("e={e}: Jacobian rank of b a over all samples"),
            vec![2 * ei * ei + 8 * ei],
            ranks.clone(),
        ));
        if let Ok(sh) = shape(e) {
            let (d1, d2, _) = sh.space_dims();
            let dims = distinct(ranks.iter().map(|r| (d1 + d2) as i64 - *r as i64));
            let ei = e as i64;
            checks.push(Check::equal(
                format!("e={e}: dim M1 + dim M2 - rank = 4(e^2+2e+4)"),
                vec![4 * (ei * ei + 2 * ei + 4)],
                dims,
            ));
        }
    }
    SuiteResult::new(Suite::Smoothness.name(), checks, Value::Null, 0)
}

fn dimension_checks(e: u32) -> Vec<Check> {
    let ei = e as i64;
    let closed = (4 * ei * ei + 8 * ei - 1, 2 * ei * ei + 8 * ei + 15, 2 * ei * ei + 8 * ei - 1);
    let mut checks = Vec::new();
    match shape(e) {
        Ok(sh) => {
            let (d1, d2, d3) = sh.space_dims();
            let direct = (d1 as i64 - 1, d2 as i64 - 1, d3 as i64 - 1);
            checks.push(Check::equal(format!("e={e}: (p1, p2, p3) closed form = block sums"), closed, direct));
            checks.push(Check::equal(
                format!("e={e}: dim M1 + dim M2 - dim M3 = 4(e^2+2e+4)"),
                4 * (ei * ei + 2 * ei + 4),
                (d1 + d2) as i64 - d3 as i64,
            ));
        }
        Err(err) => checks.push(Check::failed(format!("e={e}: monad shape"), "defined", err)),
    }
    checks
}

fn suite_dimensions(cfg: &RunConfig) -> SuiteResult {
    let (checks, ms) = timed(|| cfg.e.positive().flat_map(dimension_checks).collect());
    SuiteResult::new(Suite::Dimensions.name(), checks, Value::Null, ms)
}

fn suite_vanishings(cfg: &RunConfig) -> SuiteResult {
    let (checks, ms) = timed(|| {
        let mut checks = Vec::new();
        for e in cfg.e.positive() {
            match shape(e) {
                Ok(sh) => {
                    for (name, v) in monad_vanishing_conditions(&sh).named() {
                        checks.push(Check::equal(format!("e={e}: {name}"), 0, v));
                    }
                }
                Err(err) => checks.push(Check::failed(format!("e={e}: monad shape"), "defined", err)),
            }
        }
        checks
    });
    SuiteResult::new(Suite::Vanishings.name(), checks, Value::Null, ms)
}

fn rationality_for(cfg: &RunConfig, e: u32) -> Result<(Vec<Check>, Value)> {
    let tag = |s: &str| format!("e={e}: {s}");
    let mut checks = Vec::new();
    let (p1, p2, p3) = projective_block_dims(e)?;
    let mut kernels = Vec::new();
    if e <= KERNEL_MAX_E {
        for p in KERNEL_PRIMES {
            let k = bilinear_kernel(e, &PrimeField::new(p)?)?;
            checks.push(Check::equal(tag(&format!("rank of M1 x M2 -> M3 over F_{p}")), (p3 + 1) as usize, k.rank));
            checks.push(Check::equal(
                tag(&format!("dim K = (p1+1)(p2+1) - (p3+1) over F_{p}")),
                ((p1 + 1) * (p2 + 1) - (p3 + 1)) as usize,
                k.kernel_dim,
            ));
            checks.push(Check::holds(
                tag(&format!("preimages of a basis of M3 over F_{p}")),
                "verified by polynomial products",
                k.preimages_verified,
                k.preimages_verified,
            ));
            kernels.push(k);
        }
    }
    let audit = inequality_audit(e)?;
    checks.extend(audit.checks.iter().map(|c| Check {
        name: tag(&c.name),
        ..c.clone()
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, e, usize::MAX >> 1));
    let survey = match cfg.field {
        FieldSpec::Prime { p } => fiber_survey(&PrimeField::new(p)?, e, cfg.samples, &mut rng)?,
        FieldSpec::Rational => fiber_survey(&Rationals::default(), e, cfg.samples, &mut rng)?,
    };
    checks.push(Check::equal(tag("min dim {b : b a = 0} over random a"), 16, survey.min));
    checks.push(Check::equal(tag("random a with exactly 16 solutions"), survey.samples, survey.generic));
    let group = group_dim_audit(e)?;
    checks.push(Check::holds(
        tag("dim End(B) >= block-diagonal part"),
        "full >= diagonal",
        [group.dim_end_b_full, group.dim_end_b_diag],
        group.dim_end_b_full >= group.dim_end_b_diag,
    ));
    Ok((
        checks,
        json!({ "e": e, "kernels": kernels, "kernel_dim": audit.kernel_dim, "kernel_dim_source": audit.kernel_dim_source, "fiber_survey": survey, "group": group }),
    ))
}

fn suite_rationality(cfg: &RunConfig) -> SuiteResult {
    let (results, ms) = timed(|| {
        cfg.e
            .positive()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|e| (e, rationality_for(cfg, e)))
            .collect::<Vec<_>>()
    });
    let mut checks = Vec::new();
    let mut data = Vec::new();
    for (e, r) in results {
        match r {
            Ok((c, d)) => {
                checks.extend(c);
                data.push(d);
            }
            Err(err) => checks.push(Check::failed(format!("e={e}: rationality arithmetic"), "completed", err)),
        }
    }
    SuiteResult::new(Suite::Rationality.name(), checks, json!({ "per_e": data }), ms)
}

fn cotangent_checks<F: Field>(f: &F, s: &Surface, kx: ChernData) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let fx = euler_cotangent_fixture(f, s);
    let c = chern_from_terms(s, &Default::default(), &fx.terms[0], &fx.terms[1]);
    checks.push(Check::equal(format!("e={}: Chern data of the cotangent bundle", s.e), kx, c));
    let h = hypercohomology(f, s, &fx, DivisorClass::ZERO)?;
    checks.push(Check::equal(format!("e={}: h(cotangent)", s.e), [0, 2, 0], h.sheaf_h(-1)));
    let h = hypercohomology(f, s, &fx, DivisorClass::new(1, 1))?;
    checks.push(Check::equal(format!("e={}: h0(cotangent(C0+F))", s.e), 0, h.sheaf_h(-1)[0]));
    let rep = verify_connecting_consistency(f, s, &fx, DivisorClass::ZERO)?;
    checks.push(Check::holds(
        format!("e={}: spectral sequence bookkeeping for the cotangent complex", s.e),
        "chi agrees, ranks bounded, lift independent",
        [rep.chi_hyper, rep.chi_terms],
        rep.pass,
    ));
    Ok(checks)
}

fn euler_for(cfg: &RunConfig, e: u32) -> Result<Vec<Check>> {
    let tag = |s: &str| format!("e={e}: {s}");
    let s = Surface::new(e);
    let kx = ChernData {
        rank: 2,
        c1: s.canonical_class(),
        c2: 4,
    };
    let endo = s.chern_endo(&kx)?;
    let mut checks = vec![
        Check::equal(tag("chi(V, V)"), -4, s.euler_char(&endo)?),
        Check::equal(tag("c2(V* x V) = 4 c2 - c1^2"), 8, endo.c2),
    ];
    if let Ok(sh) = shape(e) {
        checks.push(Check::equal(tag("Chern data of monad terms"), kx, chern_from_terms(&s, &sh.a, &sh.b, &sh.c)));
    }
    checks.extend(match cfg.field {
        FieldSpec::Prime { p } => cotangent_checks(&PrimeField::new(p)?, &s, kx)?,
        FieldSpec::Rational => cotangent_checks(&Rationals::default(), &s, kx)?,
    });
    Ok(checks)
}

fn suite_euler(cfg: &RunConfig) -> SuiteResult {
    let (checks, ms) = timed(|| {
        cfg.e
            .iter()
            .flat_map(|e| match euler_for(cfg, e) {
                Ok(c) => c,
                Err(err) => vec![Check::failed(format!("e={e}: Euler identities"), "completed", err)],
            })
            .collect()
    });
    SuiteResult::new(Suite::Euler.name(), checks, Value::Null, ms)
}

fn suite_determinism(cfg: &RunConfig, runs: &[SampleRun]) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for run in runs {
        let e = run.e;
        let seed = derive_seed(cfg.seed, e, 0);
        let (json, row) = match cfg.field {
            FieldSpec::Prime { p } => sample_one(&PrimeField::new(p)?, e, 0, seed, cfg.fibers),
            FieldSpec::Rational => sample_one(&Rationals::default(), e, 0, seed, cfg.fibers),
        };
        let first = run.monads.first().map(|m| m.to_string());
        checks.push(Check::holds(
            format!("e={e}: resampled monad is byte-identical"),
            "identical",
            json.as_ref().map(|m| m.to_string()) == first,
            json.map(|m| m.to_string()) == first,
        ));
        checks.push(Check::holds(
            format!("e={e}: reclassification is identical"),
            "identical",
            Some(&row) == run.rows.first(),
            Some(&row) == run.rows.first(),
        ));
    }
    Ok(SuiteResult::new(
        Suite::Determinism.name(),
        checks,
        Value::Null,
        start.elapsed().as_millis() as u64,
    ))
}

/// Runs the selected suites. Call inside a [`super::worker_pool`] to bound
/// parallelism.
pub fn verify_report(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let needs_samples = cfg
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Monads | Suite::Prioritary | Suite::Smoothness | Suite::Determinism));
    let (runs, sample_ms) = if needs_samples {
        let (runs, ms) = timed(|| cfg.e.positive().map(|e| run_samples(cfg, e)).collect::<Result<Vec<_>>>());
        (runs?, ms)
    } else {
        (Vec::new(), 0)
    };
    let mut suites = Vec::new();
    for suite in &cfg.suites {
        suites.push(match suite {
            Suite::Cohomology => suite_cohomology(cfg),
            Suite::KnownValues => suite_known_values(cfg),
            Suite::Monads => suite_monads(&runs, sample_ms),
            Suite::Prioritary => suite_prioritary(&runs),
            Suite::Smoothness => suite_smoothness(&runs),
            Suite::Dimensions => suite_dimensions(cfg),
            Suite::Vanishings => suite_vanishings(cfg),
            Suite::Rationality => suite_rationality(cfg),
            Suite::Euler => suite_euler(cfg),
            Suite::Determinism => suite_determinism(cfg, &runs)?,
        });
    }
    Ok(Report::new("verify", cfg.clone(), suites, start.elapsed().as_millis() as u64))
}

/// Closed form against the Čech engine, on a grid or at one divisor.
pub fn cohomology_report(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let suite = match cfg.divisor {
        None => suite_cohomology(cfg),
        Some(d) => {
            let (result, ms) = timed(|| -> Result<_> {
                let f = PrimeField::new(FieldSpec::DEFAULT_PRIME)?;
                let mut checks = Vec::new();
                let mut values = Vec::new();
                for e in cfg.e.iter() {
                    let s = Surface::new(e);
                    let table = PatternTable::new(&f, Model::Surface(s), LiftOrder::Forward);
                    let engine = cech_line_cohomology_with(&table, d)?;
                    let closed = h_vector(&s, d);
                    checks.push(Check::equal(format!("e={e}: h(O({},{})) engine = closed form", d.a, d.b), closed, engine));
                    let mut v = json!({ "e": e, "divisor": d, "h": engine });
                    if let Some(q) = cfg.q {
                        v["q"] = json!(q);
                        v["value"] = json!(engine[q as usize]);
                    }
                    values.push(v);
                }
                Ok((checks, values))
            });
            let (checks, values) = result?;
            SuiteResult::new("divisor", checks, json!({ "values": values }), ms)
        }
    };
    Ok(Report::new("cohomology", cfg.clone(), vec![suite], start.elapsed().as_millis() as u64))
}

/// Block-space dimensions, the inequality chain and group dimensions.
pub fn dims_report(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let dims = suite_dimensions(cfg);
    let (results, ms) = timed(|| {
        cfg.e
            .positive()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|e| Ok((inequality_audit(e)?, group_dim_audit(e)?)))
            .collect::<Result<Vec<_>>>()
    });
    let mut checks = Vec::new();
    let mut audits = Vec::new();
    let mut groups = Vec::new();
    for (audit, group) in results? {
        let e = audit.e;
        checks.extend(audit.checks.iter().map(|c| Check {
            name: format!("e={e}: {}", c.name),
            ..c.clone()
        }));
        audits.push(audit);
        groups.push(group);
    }
    let audit_suite = SuiteResult::new("inequalities", checks, json!({ "reports": audits }), ms);
    let group_suite = SuiteResult::new("group-dimensions", Vec::new(), json!({ "audits": groups }), 0);
    Ok(Report::new(
        "dims",
        cfg.clone(),
        vec![dims, audit_suite, group_suite],
        start.elapsed().as_millis() as u64,
    ))
}

/// Draws `cfg.samples` monads per twist and classifies them.
pub fn sample_report(cfg: &RunConfig) -> Result<(Vec<Value>, Report)> {
    cfg.validate()?;
    if cfg.e.start == 0 {
        return Err(HblError::ZeroTwist(0));
    }
    let start = Instant::now();
    let (runs, ms) = timed(|| cfg.e.iter().map(|e| run_samples(cfg, e)).collect::<Result<Vec<_>>>());
    let runs = runs?;
    let mut checks = Vec::new();
    for run in &runs {
        let n = run.rows.len();
        checks.push(Check::equal(format!("e={}: valid monads", run.e), n, count(&run.rows, |r| r.valid)));
        checks.push(Check::equal(
            format!("e={}: classification as expected", run.e),
            n,
            count(&run.rows, SampleRow::classify_pass),
        ));
    }
    let data = json!({ "samples": runs.iter().flat_map(|r| r.rows.iter().map(SampleRow::compact)).collect::<Vec<_>>() });
    let monads = runs.into_iter().flat_map(|r| r.monads).collect();
    let report = Report::new(
        "sample",
        cfg.clone(),
        vec![SuiteResult::new("sample", checks, data, ms)],
        start.elapsed().as_millis() as u64,
    );
    Ok((monads, report))
}
