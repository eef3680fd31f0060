//! Solutions of `x^2 + y^2 + z^2 = Axyz + B` over `F_p`, the graph
//! spanned by permutations, double sign flips and Vieta moves, and the
//! component reports that go with it.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{FfError, FieldCtx};
use crate::graph::{self, ComponentReport, Decomposition};

/// Enumeration materializes O(p^2) triples; keep it at desk scale.
pub const ENUM_PRIME_CAP: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkoffError {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("coefficient A must be nonzero mod p")]
    ZeroA,
    #[error("p = {0} exceeds the enumeration guard of 2^20")]
    EnumGuard(u64),
    #[error("triple is not a solution")]
    NotASolution,
    #[error("divisibility check cited only for the classical equation")]
    NotClassical,
    #[error("normalization divides by 3")]
    DividesByThree,
}

/// The equation `x^2 + y^2 + z^2 = Axyz + B` over the context field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkoffParams {
    pub ctx: FieldCtx,
    /// The cubic coefficient A, nonzero.
    pub a: u64,
    /// The constant term B.
    pub b: u64,
}

impl MarkoffParams {
    pub fn new(ctx: FieldCtx, a: u64, b: u64) -> Result<Self, MarkoffError> {
        let a = ctx.reduce(a);
        if a == 0 {
            return Err(MarkoffError::ZeroA);
        }
        Ok(MarkoffParams { ctx, a, b: ctx.reduce(b) })
    }

    /// The classical equation `x^2+y^2+z^2 = 3xyz`.
    pub fn classical(ctx: FieldCtx) -> Self {
        MarkoffParams { ctx, a: 3 % ctx.p(), b: 0 }
    }

    pub fn is_classical(&self) -> bool {
        self.a == 3 % self.ctx.p() && self.b == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Triple {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Triple { x, y, z }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0 && self.z == 0
    }

    /// Packed key `x + p*y + p^2*z`; fixes the on-disk report ordering.
    pub fn key(&self, p: u64) -> u64 {
        self.x + p * self.y + p * p * self.z
    }
}

/// Which transformation families feed the neighbor relation. All three
/// are on by default; dropping one is for connectivity exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSet {
    pub permutations: bool,
    pub sign_flips: bool,
    pub vieta: bool,
}

impl Default for GeneratorSet {
    fn default() -> Self {
        GeneratorSet { permutations: true, sign_flips: true, vieta: true }
    }
}

pub fn is_solution(t: Triple, params: &MarkoffParams) -> bool {
    let ctx = &params.ctx;
    let (x, y, z) = (ctx.reduce(t.x), ctx.reduce(t.y), ctx.reduce(t.z));
    let lhs = ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(y, y)), ctx.mul(z, z));
    let rhs = ctx.add(ctx.mul(params.a, ctx.mul(x, ctx.mul(y, z))), params.b);
    lhs == rhs
}

/// All solutions, sorted by packed key. Includes the zero triple when it
/// solves the equation (only possible for B = 0).
pub fn enumerate_solutions(params: &MarkoffParams) -> Result<Vec<Triple>, MarkoffError> {
    let ctx = &params.ctx;
    let p = ctx.p();
    if p > ENUM_PRIME_CAP {
        return Err(MarkoffError::EnumGuard(p));
    }
    // For each (x, y), z solves z^2 - (Axy) z + (x^2 + y^2 - B) = 0.
    let mut out = Vec::new();
    for x in 0..p {
        let x2 = ctx.mul(x, x);
        for y in 0..p {
            let b_lin = ctx.mul(params.a, ctx.mul(x, y));
            let c_const = ctx.sub(ctx.add(x2, ctx.mul(y, y)), params.b);
            let roots = ctx.quadratic_roots(b_lin, c_const)?;
            if roots.degenerate {
                out.push(Triple::new(x, y, roots.r1.a));
            } else if roots.r1.is_base() {
                out.push(Triple::new(x, y, roots.r1.a));
                out.push(Triple::new(x, y, roots.r2.a));
            }
        }
    }
    out.sort_by_key(|t| t.key(p));
    Ok(out)
}

/// Graph neighbors: the 6 coordinate permutations, the 3 double sign
/// flips and the 3 Vieta moves. Input must solve the equation.
pub fn neighbors(t: Triple, params: &MarkoffParams) -> Result<BTreeSet<Triple>, MarkoffError> {
    if !is_solution(t, params) {
        return Err(MarkoffError::NotASolution);
    }
    Ok(neighbors_unchecked(t, params, GeneratorSet::default()))
}

pub(crate) fn neighbors_unchecked(
    t: Triple,
    params: &MarkoffParams,
    gens: GeneratorSet,
) -> BTreeSet<Triple> {
    let ctx = &params.ctx;
    let (x, y, z) = (t.x, t.y, t.z);
    let mut out = BTreeSet::new();
    if gens.permutations {
        for (a, b, c) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            out.insert(Triple::new(a, b, c));
        }
    }
    if gens.sign_flips {
        out.insert(Triple::new(ctx.neg(x), ctx.neg(y), z));
        out.insert(Triple::new(ctx.neg(x), y, ctx.neg(z)));
        out.insert(Triple::new(x, ctx.neg(y), ctx.neg(z)));
    }
    if gens.vieta {
        let a = params.a;
        out.insert(Triple::new(ctx.sub(ctx.mul(a, ctx.mul(y, z)), x), y, z));
        out.insert(Triple::new(x, ctx.sub(ctx.mul(a, ctx.mul(x, z)), y), z));
        out.insert(Triple::new(x, y, ctx.sub(ctx.mul(a, ctx.mul(x, y)), z)));
    }
    out
}

/// Component decomposition of the nonzero solution set `X*(p)`.
pub fn decompose(params: &MarkoffParams) -> Result<Decomposition<Triple>, MarkoffError> {
    decompose_filtered(params, GeneratorSet::default())
}

pub fn decompose_filtered(
    params: &MarkoffParams,
    gens: GeneratorSet,
) -> Result<Decomposition<Triple>, MarkoffError> {
    let nodes: Vec<Triple> = enumerate_solutions(params)?
        .into_iter()
        .filter(|t| !t.is_zero())
        .collect();
    let params = *params;
    Ok(graph::decompose(nodes, move |t| {
        neighbors_unchecked(*t, &params, gens).into_iter().collect()
    }))
}

pub fn components(params: &MarkoffParams) -> Result<ComponentReport<Triple>, MarkoffError> {
    Ok(decompose(params)?.report)
}

/// One verdict per component (ordered as in the report): does p divide
/// its size? Cited only for the classical equation.
pub fn chen_divisibility(
    report: &ComponentReport<Triple>,
    params: &MarkoffParams,
) -> Result<Vec<bool>, MarkoffError> {
    if !params.is_classical() {
        return Err(MarkoffError::NotClassical);
    }
    let p = params.ctx.p();
    Ok(report.component_sizes.iter().map(|&s| s % p == 0).collect())
}

/// Scaling data taking solutions of `(A, B)` onto solutions of `(3, B')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub b_prime: u64,
    pub scale: u64,
}

/// `B' = A^2 B / 9`, `scale = A / 3`; `t -> scale * t` is a bijection of
/// the `(A, B)` solution set onto the `(3, B')` one.
pub fn normalize(a: u64, b: u64, ctx: &FieldCtx) -> Result<Normalization, MarkoffError> {
    if ctx.p() == 3 {
        return Err(MarkoffError::DividesByThree);
    }
    let a = ctx.reduce(a);
    if a == 0 {
        return Err(MarkoffError::ZeroA);
    }
    let inv3 = ctx.inv(3 % ctx.p());
    let scale = ctx.mul(a, inv3);
    let b_prime = ctx.mul(ctx.mul(scale, scale), ctx.reduce(b));
    Ok(Normalization { b_prime, scale })
}

/// Giant-component statistics next to the raw theorem-bound formulas.
/// The asymptotic inequalities are reported, not asserted: their
/// constants are unspecified.
#[derive(Debug, Clone, Serialize)]
pub struct GiantReport {
    pub p: u64,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub total_nonzero: u64,
    pub giant_size: u64,
    pub residual: u64,
    pub giant_fraction: f64,
    pub min_component: u64,
    /// `(log p)^{7/9}`, the min-component bound shape.
    pub log_p_pow_7_9: f64,
    /// `exp((log p)^{1/2})`, the residual bound shape.
    pub exp_sqrt_log_p: f64,
}

pub fn giant_report(params: &MarkoffParams) -> Result<GiantReport, MarkoffError> {
    let report = components(params)?;
    let p = params.ctx.p();
    let logp = (p as f64).ln();
    let fraction = if report.total_nonzero == 0 {
        0.0
    } else {
        report.giant_size as f64 / report.total_nonzero as f64
    };
    Ok(GiantReport {
        p,
        a: params.a,
        b: params.b,
        total_nonzero: report.total_nonzero,
        giant_size: report.giant_size,
        residual: report.residual,
        giant_fraction: fraction,
        min_component: report.min_component,
        log_p_pow_7_9: logp.powf(7.0 / 9.0),
        exp_sqrt_log_p: logp.sqrt().exp(),
    })
}

/// The serialized per-prime record consumed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct MarkoffRecord {
    pub p: u64,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub total_nonzero: u64,
    pub component_sizes: Vec<u64>,
    pub giant_size: u64,
    pub residual: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chen_divisible: Option<bool>,
}

pub fn record(params: &MarkoffParams) -> Result<MarkoffRecord, MarkoffError> {
    let report = components(params)?;
    let chen = if params.is_classical() {
        Some(chen_divisibility(&report, params)?.iter().all(|&b| b))
    } else {
        None
    };
    Ok(MarkoffRecord {
        p: params.ctx.p(),
        a: params.a,
        b: params.b,
        total_nonzero: report.total_nonzero,
        component_sizes: report.component_sizes,
        giant_size: report.giant_size,
        residual: report.residual,
        chen_divisible: chen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical(p: u64) -> MarkoffParams {
        MarkoffParams::classical(FieldCtx::new(p).unwrap())
    }

    #[test]
    fn is_solution_examples() {
        let params = classical(7);
        assert!(is_solution(Triple::new(1, 1, 1), &params));
        assert!(is_solution(Triple::new(0, 0, 0), &params));
        assert!(!is_solution(Triple::new(1, 2, 3), &params));
    }

    #[test]
    fn neighbors_examples() {
        let params = classical(7);
        let nb = neighbors(Triple::new(1, 1, 1), &params).unwrap();
        assert!(nb.contains(&Triple::new(2, 1, 1)));
        let nb = neighbors(Triple::new(0, 0, 0), &params).unwrap();
        assert_eq!(nb.into_iter().collect::<Vec<_>>(), vec![Triple::new(0, 0, 0)]);
        let nb = neighbors(Triple::new(2, 1, 1), &params).unwrap();
        assert!(nb.contains(&Triple::new(1, 1, 1)));
        assert!(neighbors(Triple::new(1, 2, 3), &params).is_err());
    }

    #[test]
    fn enumerate_contains_known_solutions() {
        let params = classical(7);
        let sols = enumerate_solutions(&params).unwrap();
        assert!(sols.contains(&Triple::new(1, 1, 1)));
        assert!(sols.contains(&Triple::new(2, 1, 1)));
        assert!(sols.contains(&Triple::new(0, 0, 0)));
        // sorted by packed key
        let p = 7;
        let keys: Vec<u64> = sols.iter().map(|t| t.key(p)).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classical_p7_single_component() {
        let report = components(&classical(7)).unwrap();
        assert_eq!(report.component_sizes.len(), 1);
        assert_eq!(report.residual, 0);
    }

    #[test]
    fn chen_rejects_generalized_equation() {
        let ctx = FieldCtx::new(7).unwrap();
        let params = MarkoffParams::new(ctx, 2, 0).unwrap();
        let report = components(&params).unwrap();
        assert_eq!(
            chen_divisibility(&report, &params).unwrap_err(),
            MarkoffError::NotClassical
        );
    }

    #[test]
    fn normalize_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        let n = normalize(3, 0, &ctx).unwrap();
        assert_eq!(n, Normalization { b_prime: 0, scale: 1 });
        let n = normalize(6, 1, &ctx).unwrap();
        assert_eq!(n, Normalization { b_prime: 4, scale: 2 });
        let ctx3 = FieldCtx::new_relaxed(3).unwrap();
        assert_eq!(normalize(1, 0, &ctx3).unwrap_err(), MarkoffError::DividesByThree);
    }

    #[test]
    fn zero_a_rejected() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(MarkoffParams::new(ctx, 0, 1).unwrap_err(), MarkoffError::ZeroA);
        assert_eq!(MarkoffParams::new(ctx, 7, 1).unwrap_err(), MarkoffError::ZeroA);
    }

    #[test]
    fn giant_report_p7() {
        let r = giant_report(&classical(7)).unwrap();
        assert_eq!(r.residual, 0);
        assert!((r.giant_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn enum_guard() {
        let ctx = FieldCtx::new((1 << 20) + 7).unwrap();
        let params = MarkoffParams::classical(ctx);
        assert!(matches!(enumerate_solutions(&params), Err(MarkoffError::EnumGuard(_))));
    }
}
