//! Registry of identities as pairs of exact builders, and the engine that
//! compares both sides to a configured truncation.
//!
//! Every entry builds its left and right sides from independent
//! constructions and compares them coefficient by coefficient. A report
//! never claims more than formal equality to the stated order.

mod catalog;
mod errata;
mod kit;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::render::{monomial_text, rational_inline};
use crate::algebra::series::graded_cmp;
use crate::algebra::{
    series_equal, LaurentPoly, RationalExpr, SeriesComparison, SymbolSet, SymbolTable, TruncatedSeries,
};
use crate::error::{Error, Result};

pub use kit::Inst;

/// Builds both sides of every comparison for one family instance.
pub type BuildFn = fn(&Inst) -> Result<Built>;

/// Optional restriction on family values, e.g. `k <= n`.
pub type ConstraintFn = fn(&[i64]) -> bool;

/// An integer family parameter with its default inclusive range.
#[derive(Clone, Copy, Debug)]
pub struct FamilyParam {
    pub name: &'static str,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    /// The statement in plain ASCII notation.
    pub anchor: &'static str,
    pub family: Vec<FamilyParam>,
    pub constraint: Option<ConstraintFn>,
    pub small_symbols: &'static [&'static str],
    /// Divisor the context's base scale must have (2 for half-integer q-powers).
    pub required_scale: u32,
    pub default_order: u32,
    pub substitutions: &'static [&'static str],
    pub notes: &'static [&'static str],
    pub build: BuildFn,
}

impl IdentitySpec {
    pub fn new(id: &'static str, anchor: &'static str, build: BuildFn) -> Self {
        IdentitySpec {
            id,
            anchor,
            family: Vec::new(),
            constraint: None,
            small_symbols: &[],
            required_scale: 1,
            default_order: 8,
            substitutions: &[],
            notes: &[],
            build,
        }
    }

    pub fn param(mut self, name: &'static str, lo: i64, hi: i64) -> Self {
        self.family.push(FamilyParam { name, lo, hi });
        self
    }

    pub fn constraint(mut self, f: ConstraintFn) -> Self {
        self.constraint = Some(f);
        self
    }

    pub fn small(mut self, s: &'static [&'static str]) -> Self {
        self.small_symbols = s;
        self
    }

    pub fn scale(mut self, s: u32) -> Self {
        self.required_scale = s;
        self
    }

    pub fn order(mut self, n: u32) -> Self {
        self.default_order = n;
        self
    }

    pub fn subs(mut self, s: &'static [&'static str]) -> Self {
        self.substitutions = s;
        self
    }

    pub fn notes(mut self, s: &'static [&'static str]) -> Self {
        self.notes = s;
        self
    }
}

/// One side-by-side comparison.
pub enum Comparison {
    Series(TruncatedSeries, TruncatedSeries),
    Poly(LaurentPoly, LaurentPoly),
    Rational(RationalExpr, RationalExpr),
    /// A plain predicate with rendered sides, used for integer identities.
    Predicate { ok: bool, lhs: String, rhs: String },
}

pub struct Check {
    pub label: String,
    pub cmp: Comparison,
}

/// Output of a builder: the table the values live in and the comparisons.
pub struct Built {
    pub table: SymbolTable,
    pub checks: Vec<Check>,
}

impl Built {
    pub fn new(table: SymbolTable) -> Self {
        Built { table, checks: Vec::new() }
    }

    pub fn series(mut self, label: impl Into<String>, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Self {
        self.checks.push(Check { label: label.into(), cmp: Comparison::Series(lhs, rhs) });
        self
    }

    pub fn poly(mut self, label: impl Into<String>, lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        self.checks.push(Check { label: label.into(), cmp: Comparison::Poly(lhs, rhs) });
        self
    }

    pub fn rational(mut self, label: impl Into<String>, lhs: RationalExpr, rhs: RationalExpr) -> Self {
        self.checks.push(Check { label: label.into(), cmp: Comparison::Rational(lhs, rhs) });
        self
    }

    pub fn predicate(mut self, label: impl Into<String>, ok: bool, lhs: String, rhs: String) -> Self {
        self.checks.push(Check { label: label.into(), cmp: Comparison::Predicate { ok, lhs, rhs } });
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationConfig {
    /// Overrides every entry's default truncation order.
    pub order: Option<u32>,
    /// Overrides family ranges by parameter name.
    pub family: BTreeMap<String, (i64, i64)>,
    /// Base scale of the evaluation context: 1, or 2 for half-integer q-powers.
    pub scale: u32,
    /// Per-entry wall-clock budget, checked between family instances.
    pub time_budget: Option<Duration>,
}

impl VerificationConfig {
    pub fn new() -> Self {
        VerificationConfig { scale: 2, ..Default::default() }
    }

    pub fn with_order(mut self, n: u32) -> Self {
        self.order = Some(n);
        self
    }

    pub fn with_scale(mut self, s: u32) -> Self {
        self.scale = s;
        self
    }

    pub fn with_family(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.family.insert(name.to_string(), (lo, hi));
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstMismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub order: u32,
    pub family_ranges: BTreeMap<String, [i64; 2]>,
    pub first_mismatch: Option<FirstMismatch>,
    pub elapsed_ms: u64,
    pub anchor: String,
    /// Why the entry was skipped or failed to build.
    pub reason: Option<String>,
    /// Family instance and check label of the first mismatch.
    pub instance: Option<String>,
    pub instances: usize,
    pub comparisons: usize,
    pub required_scale: u32,
    pub substitutions: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Verified => format!("verified to order {}", self.order),
            Status::Mismatch => "MISMATCH".to_string(),
            Status::Error => "ERROR".to_string(),
            Status::Skipped => "skipped".to_string(),
        };
        let mut line = format!("{:<44} {}", self.id, status);
        if let Some(r) = &self.reason {
            line.push_str(&format!(" ({r})"));
        }
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(" at {}", m.monomial));
            if let Some(at) = self.instance.as_deref().filter(|s| !s.is_empty()) {
                line.push_str(&format!(" [{at}]"));
            }
            line.push_str(&format!(": lhs {} vs rhs {}", m.lhs, m.rhs));
        }
        line
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub mismatch: usize,
    pub error: usize,
    pub skipped: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            Status::Verified => s.verified += 1,
            Status::Mismatch => s.mismatch += 1,
            Status::Error => s.error += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

/// All registered identities, in a fixed order.
pub fn registry() -> &'static [IdentitySpec] {
    static REG: std::sync::OnceLock<Vec<IdentitySpec>> = std::sync::OnceLock::new();
    REG.get_or_init(catalog::all)
}

/// Printed variants that differ from the registered forms; each is expected
/// to come out as a mismatch.
pub fn errata_registry() -> &'static [IdentitySpec] {
    static REG: std::sync::OnceLock<Vec<IdentitySpec>> = std::sync::OnceLock::new();
    REG.get_or_init(errata::all)
}

pub fn lookup(id: &str) -> Option<&'static IdentitySpec> {
    registry().iter().chain(errata_registry()).find(|s| s.id == id)
}

pub fn filter_registry<'a>(specs: &'a [IdentitySpec], prefix: Option<&str>) -> Vec<&'a IdentitySpec> {
    specs.iter().filter(|s| prefix.map_or(true, |p| s.id.starts_with(p))).collect()
}

pub fn verify(id: &str, config: &VerificationConfig) -> Result<VerificationReport> {
    let spec = lookup(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    Ok(verify_spec(spec, config))
}

/// Runs the filtered registry on a pool of `jobs` threads; reports keep
/// registry order.
pub fn verify_all(config: &VerificationConfig, prefix: Option<&str>, jobs: usize) -> Vec<VerificationReport> {
    verify_many(&filter_registry(registry(), prefix), config, jobs)
}

pub fn verify_many(specs: &[&IdentitySpec], config: &VerificationConfig, jobs: usize) -> Vec<VerificationReport> {
    // 0 lets rayon pick the thread count.
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build();
    match pool {
        Ok(pool) => pool.install(|| specs.par_iter().map(|s| verify_spec(s, config)).collect()),
        Err(_) => specs.iter().map(|s| verify_spec(s, config)).collect(),
    }
}

fn family_ranges(spec: &IdentitySpec, config: &VerificationConfig) -> Vec<(&'static str, i64, i64)> {
    spec.family
        .iter()
        .map(|p| {
            let (lo, hi) = config.family.get(p.name).copied().unwrap_or((p.lo, p.hi));
            (p.name, lo, hi)
        })
        .collect()
}

fn instances(ranges: &[(&'static str, i64, i64)], constraint: Option<ConstraintFn>) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(_, lo, hi) in ranges {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|vals| constraint.map_or(true, |f| f(vals)));
    out
}

struct Outcome {
    mismatch: Option<(FirstMismatch, String)>,
    comparisons: usize,
}

fn compare(table: &SymbolTable, check: &Check, order: u32) -> Result<Option<FirstMismatch>> {
    match &check.cmp {
        Comparison::Series(l, r) if l.order().min(r.order()) < order => Err(Error::Invalid(format!(
            "sides only known to order {}, below the requested {order}",
            l.order().min(r.order())
        ))),
        Comparison::Series(l, r) => match series_equal(l, r)? {
            SeriesComparison::Equal => Ok(None),
            SeriesComparison::Mismatch { monomial, lhs, rhs } => Ok(Some(FirstMismatch {
                monomial: monomial_text(&monomial, table, l.small()).unwrap_or_else(|| "1".into()),
                lhs: rational_inline(&lhs.reduce(), table),
                rhs: rational_inline(&rhs.reduce(), table),
            })),
        },
        Comparison::Poly(l, r) => {
            let diff = l - r;
            if diff.is_zero() {
                return Ok(None);
            }
            let mut all = SymbolSet::empty();
            for v in table.vars() {
                all.insert(v);
            }
            let first = diff.terms().iter().map(|(m, _)| *m).min_by(|a, b| graded_cmp(a, b, all));
            let m = first.expect("nonzero difference has a term");
            Ok(Some(FirstMismatch {
                monomial: monomial_text(&m, table, all).unwrap_or_else(|| "1".into()),
                lhs: l.coefficient(&m).to_string(),
                rhs: r.coefficient(&m).to_string(),
            }))
        }
        Comparison::Rational(l, r) => {
            if l.equals(r) {
                Ok(None)
            } else {
                Ok(Some(FirstMismatch {
                    monomial: "(whole expression)".into(),
                    lhs: rational_inline(l, table),
                    rhs: rational_inline(r, table),
                }))
            }
        }
        Comparison::Predicate { ok, lhs, rhs } => {
            if *ok {
                Ok(None)
            } else {
                Ok(Some(FirstMismatch { monomial: "(value)".into(), lhs: lhs.clone(), rhs: rhs.clone() }))
            }
        }
    }
}

fn run_instances(
    spec: &IdentitySpec,
    config: &VerificationConfig,
    order: u32,
    ranges: &[(&'static str, i64, i64)],
    list: &[Vec<i64>],
    started: Instant,
) -> Result<Outcome> {
    let mut comparisons = 0;
    for vals in list {
        if let Some(budget) = config.time_budget {
            if started.elapsed() > budget {
                return Err(Error::Invalid(format!("time budget of {} ms exceeded", budget.as_millis())));
            }
        }
        let inst = Inst::new(order, config.scale, ranges.iter().map(|r| r.0).zip(vals.iter().copied()).collect());
        let built = (spec.build)(&inst)?;
        for check in &built.checks {
            comparisons += 1;
            if let Some(m) = compare(&built.table, check, order)? {
                let mut where_ = inst.describe();
                if !check.label.is_empty() {
                    if !where_.is_empty() {
                        where_.push_str(", ");
                    }
                    where_.push_str(&check.label);
                }
                return Ok(Outcome { mismatch: Some((m, where_)), comparisons });
            }
        }
    }
    Ok(Outcome { mismatch: None, comparisons })
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "builder panicked".to_string()
    }
}

/// Verifies a single spec; also usable with specs outside the registry.
pub fn verify_spec(spec: &IdentitySpec, config: &VerificationConfig) -> VerificationReport {
    let started = Instant::now();
    let order = config.order.unwrap_or(spec.default_order);
    let ranges = family_ranges(spec, config);
    let mut report = VerificationReport {
        id: spec.id.to_string(),
        status: Status::Verified,
        order,
        family_ranges: ranges.iter().map(|&(n, lo, hi)| (n.to_string(), [lo, hi])).collect(),
        first_mismatch: None,
        elapsed_ms: 0,
        anchor: spec.anchor.to_string(),
        reason: None,
        instance: None,
        instances: 0,
        comparisons: 0,
        required_scale: spec.required_scale,
        substitutions: spec.substitutions.iter().map(|s| s.to_string()).collect(),
        notes: spec.notes.iter().map(|s| s.to_string()).collect(),
    };
    let scale = config.scale.max(1);
    if scale % spec.required_scale != 0 {
        report.status = Status::Skipped;
        report.reason = Some(format!(
            "needs base scale divisible by {} for half-integer powers of q; context has scale {scale}",
            spec.required_scale
        ));
        report.elapsed_ms = started.elapsed().as_millis() as u64;
        return report;
    }
    let list = instances(&ranges, spec.constraint);
    report.instances = list.len();
    let run = catch_unwind(AssertUnwindSafe(|| run_instances(spec, config, order, &ranges, &list, started)));
    match run {
        Ok(Ok(outcome)) => {
            report.comparisons = outcome.comparisons;
            if let Some((m, at)) = outcome.mismatch {
                report.status = Status::Mismatch;
                report.first_mismatch = Some(m);
                report.instance = Some(at);
            }
        }
        Ok(Err(Error::ScaleUnavailable { .. })) => {
            report.status = Status::Skipped;
            report.reason = Some(format!("half-integer powers of q unavailable at base scale {scale}"));
        }
        Ok(Err(e)) => {
            report.status = Status::Error;
            report.reason = Some(e.to_string());
        }
        Err(p) => {
            report.status = Status::Error;
            report.reason = Some(panic_text(p));
        }
    }
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    report
}
