//! Sweep driver behind the `markoff-lab` binary: job validation, a
//! rayon worker pool over the moduli, JSON-lines / CSV serialization,
//! and baseline verification for regression runs.
//!
//! Exit contract: 0 when every asserted check passed, 2 when an
//! unflagged bound was violated (a genuine red flag), 1 on operational
//! errors.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ff::{self, FieldCtx};
use crate::fibonacci;
use crate::hurwitz::{self, HurwitzParams};
use crate::markoff::{self, MarkoffParams};
use crate::recurrence::{self, random_spec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("no primes in range")]
    NoPrimes,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("unknown experiment '{0}'")]
    BadExperiment(String),
    #[error("unknown format '{0}' (expected json-lines or csv)")]
    BadFormat(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error(transparent)]
    Field(#[from] ff::FfError),
    #[error(transparent)]
    Markoff(#[from] markoff::MarkoffError),
    #[error(transparent)]
    Hurwitz(#[from] hurwitz::HurwitzError),
    #[error(transparent)]
    Recurrence(#[from] recurrence::RecurrenceError),
    #[error(transparent)]
    Fibonacci(#[from] fibonacci::FibError),
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    MarkoffComponents,
    HurwitzComponents,
    ReduceCheck,
    PropSuite,
    PisanoSuite,
    FibCorollaries,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::MarkoffComponents => "markoff-components",
            ExperimentKind::HurwitzComponents => "hurwitz-components",
            ExperimentKind::ReduceCheck => "reduce-check",
            ExperimentKind::PropSuite => "prop-suite",
            ExperimentKind::PisanoSuite => "pisano-suite",
            ExperimentKind::FibCorollaries => "fib-corollaries",
        }
    }

    /// pisano-suite sweeps arbitrary moduli; everything else needs primes.
    pub fn wants_primes(&self) -> bool {
        !matches!(self, ExperimentKind::PisanoSuite)
    }

    fn min_modulus(&self) -> u64 {
        match self {
            ExperimentKind::PisanoSuite => 2,
            ExperimentKind::FibCorollaries => 7,
            _ => 5,
        }
    }

    fn allowed_params(&self) -> &'static [&'static str] {
        match self {
            ExperimentKind::MarkoffComponents => &["A", "B"],
            ExperimentKind::HurwitzComponents => &["n", "a", "union_check"],
            ExperimentKind::ReduceCheck => &["n", "a", "paths"],
            ExperimentKind::PropSuite => &["cases"],
            ExperimentKind::PisanoSuite => &[],
            ExperimentKind::FibCorollaries => &[],
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "markoff-components" => ExperimentKind::MarkoffComponents,
            "hurwitz-components" => ExperimentKind::HurwitzComponents,
            "reduce-check" => ExperimentKind::ReduceCheck,
            "prop-suite" => ExperimentKind::PropSuite,
            "pisano-suite" => ExperimentKind::PisanoSuite,
            "fib-corollaries" => ExperimentKind::FibCorollaries,
            other => return Err(CliError::BadExperiment(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "json-lines" | "jsonl" | "json" => Format::JsonLines,
            "csv" => Format::Csv,
            other => return Err(CliError::BadFormat(other.to_string())),
        })
    }
}

/// A validated sweep: one experiment kind over a list of moduli.
#[derive(Debug, Clone)]
pub struct SweepJob {
    pub kind: ExperimentKind,
    pub moduli: Vec<u64>,
    pub params: BTreeMap<String, u64>,
    pub seed: u64,
}

impl SweepJob {
    pub fn new(
        kind: ExperimentKind,
        moduli: Vec<u64>,
        params: BTreeMap<String, u64>,
        seed: u64,
    ) -> Result<Self, CliError> {
        if moduli.is_empty() {
            return Err(CliError::NoPrimes);
        }
        for &m in &moduli {
            if m < kind.min_modulus() {
                return Err(CliError::BadParams(format!(
                    "modulus {m} below the minimum {} for {kind}",
                    kind.min_modulus()
                )));
            }
            if kind.wants_primes() && !ff::is_prime(m) {
                return Err(CliError::NotPrime(m));
            }
        }
        let allowed = kind.allowed_params();
        for key in params.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::BadParams(format!(
                    "unknown key '{key}' for {kind} (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(SweepJob { kind, moduli, params, seed })
    }

    fn param(&self, key: &str, default: u64) -> u64 {
        self.params.get(key).copied().unwrap_or(default)
    }
}

/// Parse "5..97" (inclusive range) or "5,7,11"; for prime sweeps the
/// range keeps only primes, for pisano-suite every integer.
pub fn parse_moduli(s: &str, kind: ExperimentKind) -> Result<Vec<u64>, CliError> {
    let s = s.trim();
    let bad = |s: &str| CliError::BadParams(format!("cannot parse modulus list '{s}'"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad(s))?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad(s))?;
        let all = (lo..=hi).filter(|&m| m >= kind.min_modulus());
        let out: Vec<u64> = if kind.wants_primes() {
            all.filter(|&m| ff::is_prime(m)).collect()
        } else {
            all.collect()
        };
        if out.is_empty() {
            return Err(CliError::NoPrimes);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse().map_err(|_| bad(s))?);
    }
    if out.is_empty() {
        return Err(CliError::NoPrimes);
    }
    Ok(out)
}

/// One output line: job echo, payload, timing, version.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub experiment: String,
    pub p: u64,
    pub params: BTreeMap<String, u64>,
    pub seed: u64,
    pub payload: Value,
    pub millis: u64,
    pub version: String,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v)?)
}

/// Per-modulus worker. Returns the payload plus the number of genuine
/// (unflagged) violations it observed.
fn run_one(job: &SweepJob, m: u64) -> Result<(Value, u64), CliError> {
    match job.kind {
        ExperimentKind::MarkoffComponents => {
            let ctx = FieldCtx::new(m)?;
            let params = MarkoffParams::new(ctx, job.param("A", 3), job.param("B", 0))?;
            let rec = markoff::record(&params)?;
            let violations = u64::from(rec.chen_divisible == Some(false));
            Ok((to_value(&rec)?, violations))
        }
        ExperimentKind::HurwitzComponents => {
            let ctx = FieldCtx::new(m)?;
            let params =
                HurwitzParams::new(ctx, job.param("n", 4) as usize, job.param("a", 4))?;
            let rec = hurwitz::record(&params, job.param("union_check", 0) != 0)?;
            let total = rec.total_nonzero as f64;
            let mut violations =
                u64::from(!(rec.sandwich_low < total && total < rec.sandwich_high));
            violations += u64::from(rec.union_check_passed == Some(false));
            Ok((to_value(&rec)?, violations))
        }
        ExperimentKind::ReduceCheck => run_reduce_check(job, m),
        ExperimentKind::PropSuite => run_prop_suite(job, m),
        ExperimentKind::PisanoSuite => run_pisano(m),
        ExperimentKind::FibCorollaries => run_fib_corollaries(m),
    }
}

/// Giant-union check plus fixed-seed reduction paths between random
/// reduced equations; paths must stay within the 2n-3 budget with
/// nonempty fibers.
fn run_reduce_check(job: &SweepJob, p: u64) -> Result<(Value, u64), CliError> {
    let ctx = FieldCtx::new(p)?;
    let n = job.param("n", 4) as usize;
    let params = HurwitzParams::new(ctx, n, job.param("a", 4))?;
    let union = hurwitz::giant_union_check(&params)?;
    let mut violations = u64::from(!union.passes());
    let specs = hurwitz::nonzero_reduced_specs(&params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed.wrapping_add(p));
    let mut paths = Vec::new();
    for _ in 0..job.param("paths", 3) {
        let from = &specs[rng.gen_range(0..specs.len())];
        let to = &specs[rng.gen_range(0..specs.len())];
        match hurwitz::reduction_path(&params, from, to) {
            Ok(path) => {
                let within = path.len() <= hurwitz::step_budget(n);
                let fibers_ok = path.steps.iter().all(|s| s.fiber > 0);
                violations += u64::from(!(within && fibers_ok));
                paths.push(json!({
                    "from_free": from.free,
                    "to_free": to.free,
                    "steps": path.len(),
                    "min_fiber": path.steps.iter().map(|s| s.fiber).min(),
                    "ok": within && fibers_ok,
                }));
            }
            Err(hurwitz::HurwitzError::ReductionBlocked(budget)) => {
                violations += 1;
                paths.push(json!({
                    "from_free": from.free,
                    "to_free": to.free,
                    "blocked_at_budget": budget,
                    "ok": false,
                }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((json!({ "union": to_value(&union)?, "paths": paths }), violations))
}

/// Fixed-seed randomized Prop 1-3 suite; one case bundles a prop1 pair,
/// a prop2 subgroup check and a prop3 shift on the same base spec.
fn run_prop_suite(job: &SweepJob, p: u64) -> Result<(Value, u64), CliError> {
    let ctx = FieldCtx::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed.wrapping_add(p));
    let subgroups = ctx.subgroups_of_units();
    let cases = job.param("cases", 30);
    let (mut r1, mut r2, mut r3) = (Vec::new(), Vec::new(), Vec::new());
    let mut violations = 0u64;
    let mut tally = |rep: &recurrence::BoundReport| {
        violations += u64::from(rep.holds == Some(false));
    };
    for _ in 0..cases {
        let s1 = random_spec(&ctx, &mut rng);
        let s2 = random_spec(&ctx, &mut rng);
        let rep = recurrence::prop1_check(&s1, &s2)?;
        tally(&rep);
        r1.push(rep);
        let g = &subgroups[rng.gen_range(0..subgroups.len())];
        let rep = recurrence::prop2_check(&s1, g)?;
        tally(&rep);
        r2.push(rep);
        let q = rng.gen_range(1..p);
        let rep = recurrence::prop3_check(&s1, q)?;
        tally(&rep);
        r3.push(rep);
    }
    Ok((
        json!({
            "cases": cases,
            "prop1": to_value(&r1)?,
            "prop2": to_value(&r2)?,
            "prop3": to_value(&r3)?,
        }),
        violations,
    ))
}

/// Period of one modulus plus the structural relations it takes part in:
/// the coprime-split lcm identity and, for prime powers, the p-scaling
/// membership.
fn run_pisano(n: u64) -> Result<(Value, u64), CliError> {
    let rec = fibonacci::pisano(n)?;
    let fs = ff::factor(n);
    let lcm_ok = if fs.len() >= 2 {
        let (q, e) = fs[0];
        let m = q.pow(e);
        Some(fibonacci::pisano_lcm_check(m, n / m)?)
    } else {
        None
    };
    let prime_power_ok = match fs.as_slice() {
        [(q, e)] if *e >= 2 => Some(fibonacci::pisano_prime_power_check(*q, *e - 1)?),
        _ => None,
    };
    let violations =
        u64::from(lcm_ok == Some(false)) + u64::from(prime_power_ok == Some(false));
    Ok((
        json!({
            "N": n,
            "period": rec.period,
            "residue_count": rec.residue_set.len(),
            "lcm_ok": lcm_ok,
            "prime_power_ok": prime_power_ok,
        }),
        violations,
    ))
}

/// Exhaustive corollary sweep at one prime: every subgroup of the unit
/// group and every nonzero shift.
fn run_fib_corollaries(p: u64) -> Result<(Value, u64), CliError> {
    let ctx = FieldCtx::new(p)?;
    let rec = fibonacci::pisano(p)?;
    let mut violations = 0u64;
    let mut cor2_checked = 0u64;
    for g in ctx.subgroups_of_units() {
        let rep = fibonacci::corollary2_check(p, &g)?;
        violations += u64::from(rep.holds == Some(false));
        cor2_checked += 1;
    }
    let mut cor3_checked = 0u64;
    for q in 1..p {
        let rep = fibonacci::corollary3_check(p, q)?;
        violations += u64::from(rep.holds == Some(false));
        cor3_checked += 1;
    }
    Ok((
        json!({
            "p": p,
            "period": rec.period,
            "residue_count": rec.residue_set.len(),
            "cor2_checked": cor2_checked,
            "cor3_checked": cor3_checked,
            "violations": violations,
        }),
        violations,
    ))
}

/// Execute a sweep and write one record per modulus, ordered by modulus
/// ascending regardless of worker completion order. Returns the exit
/// status per the contract (0 clean, 2 on unflagged violations).
pub fn run(job: &SweepJob, out: &Path, format: Format, threads: Option<usize>) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    let results: Vec<Result<(u64, Value, u64, u64), CliError>> = pool.install(|| {
        job.moduli
            .par_iter()
            .map(|&m| {
                let start = Instant::now();
                let (payload, violations) = run_one(job, m)?;
                Ok((m, payload, violations, start.elapsed().as_millis() as u64))
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    let mut total_violations = 0u64;
    for r in results {
        let (m, payload, violations, millis) = r?;
        total_violations += violations;
        rows.push(ResultRecord {
            experiment: job.kind.as_str().to_string(),
            p: m,
            params: job.params.clone(),
            seed: job.seed,
            payload,
            millis,
            version: VERSION.to_string(),
        });
    }
    rows.sort_by_key(|r| r.p);
    let mut file = std::io::BufWriter::new(std::fs::File::create(out)?);
    match format {
        Format::JsonLines => {
            for row in &rows {
                serde_json::to_writer(&mut file, row)?;
                file.write_all(b"\n")?;
            }
        }
        Format::Csv => write_csv(&mut file, &rows)?,
    }
    file.flush()?;
    Ok(if total_violations > 0 { 2 } else { 0 })
}

/// Flatten a record into dotted columns; scalar arrays become
/// pipe-joined strings, nested structures fall back to inline JSON.
fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items
                .iter()
                .map(|i| match i {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out.insert(prefix.to_string(), joined.join("|"));
        }
        Value::Array(_) => {
            out.insert(prefix.to_string(), v.to_string());
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
        Value::Null => {
            out.insert(prefix.to_string(), String::new());
        }
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn write_csv<W: Write>(w: &mut W, rows: &[ResultRecord]) -> Result<(), CliError> {
    let mut flat_rows = Vec::with_capacity(rows.len());
    let mut columns: BTreeMap<String, ()> = BTreeMap::new();
    for row in rows {
        let mut flat = BTreeMap::new();
        flatten("", &serde_json::to_value(row)?, &mut flat);
        for k in flat.keys() {
            columns.entry(k.clone()).or_insert(());
        }
        flat_rows.push(flat);
    }
    let header: Vec<&String> = columns.keys().collect();
    writeln!(
        w,
        "{}",
        header.iter().map(|h| csv_escape(h)).collect::<Vec<_>>().join(",")
    )?;
    for flat in &flat_rows {
        let line: Vec<String> = header
            .iter()
            .map(|&h| csv_escape(flat.get(h).map(String::as_str).unwrap_or("")))
            .collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Outcome of comparing a run against a stored baseline.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub matches: bool,
    pub first_divergence: Option<String>,
}

fn read_records(path: &Path) -> Result<Vec<Value>, CliError> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Strip nondeterministic fields before comparison.
fn canonical(mut v: Value) -> Value {
    if let Some(map) = v.as_object_mut() {
        map.remove("millis");
    }
    v
}

/// Field-by-field comparison of the deterministic payload of two
/// JSON-lines files. Experiment kinds must agree.
pub fn verify(baseline: &Path, current: &Path) -> Result<VerifyOutcome, CliError> {
    let base = read_records(baseline)?;
    let cur = read_records(current)?;
    let kind_of = |records: &[Value], name: &str| -> Result<String, CliError> {
        records
            .first()
            .and_then(|r| r.get("experiment"))
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| CliError::SchemaMismatch(format!("{name}: missing experiment field")))
    };
    let bk = kind_of(&base, "baseline")?;
    let ck = kind_of(&cur, "current")?;
    if bk != ck {
        return Err(CliError::SchemaMismatch(format!(
            "experiment kinds differ: baseline {bk}, current {ck}"
        )));
    }
    if base.len() != cur.len() {
        return Ok(VerifyOutcome {
            matches: false,
            first_divergence: Some(format!(
                "record counts differ: baseline {}, current {}",
                base.len(),
                cur.len()
            )),
        });
    }
    for (i, (b, c)) in base.into_iter().zip(cur).enumerate() {
        let (b, c) = (canonical(b), canonical(c));
        if b != c {
            let p = b.get("p").cloned().unwrap_or(Value::Null);
            return Ok(VerifyOutcome {
                matches: false,
                first_divergence: Some(format!("record {i} (p = {p}) differs")),
            });
        }
    }
    Ok(VerifyOutcome { matches: true, first_divergence: None })
}

/// Parse "A=3,B=0" into a parameter map.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, u64>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::BadParams(format!("expected key=value, got '{part}'")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::BadParams(format!("non-numeric value in '{part}'")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}
