//! The n-variable Markoff-Hurwitz equation `x_1^2 + ... + x_n^2 =
//! a x_1 ... x_n` over `F_p`: solution enumeration, the transformation
//! graph, reduced three-variable equations obtained by freezing `n-3`
//! coordinates, shared-fiber counts and reduction chains between reduced
//! equations, and the giant-union check over all of them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::ff::{FfError, FieldCtx};
use crate::graph::{self, ComponentReport, Decomposition, UnionFind};
use crate::markoff::{self, MarkoffParams, Triple};

/// Enumeration loops over the first `n-1` coordinates.
pub const ENUM_GUARD: u64 = 100_000_000;
/// Largest supported variable count; beyond this enumeration is hopeless.
pub const MAX_VARS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HurwitzError {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Markoff(#[from] markoff::MarkoffError),
    #[error("need 3 <= n <= {MAX_VARS}, got {0}")]
    BadVarCount(usize),
    #[error("coefficient a must be nonzero mod p")]
    ZeroA,
    #[error("tuple has {got} coordinates, expected {want}")]
    Arity { got: usize, want: usize },
    #[error("p^(n-1) = {0} exceeds the enumeration guard")]
    EnumGuard(u64),
    #[error("tuple is not a solution")]
    NotASolution,
    #[error("free indices must be distinct and in range")]
    BadIndices,
    #[error("frozen tuple has {got} values, expected {want}")]
    FrozenArity { got: usize, want: usize },
    #[error("reduction endpoints disagree on the ambient equation")]
    ParamsMismatch,
    #[error("reduction requires nonzero frozen values")]
    ZeroFrozen,
    #[error("no reduction path within {0} steps (empty fiber at tiny p)")]
    ReductionBlocked(usize),
}

/// `x_1^2 + ... + x_n^2 = a x_1 ... x_n` over the context field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HurwitzParams {
    pub ctx: FieldCtx,
    pub n: usize,
    pub a: u64,
}

impl HurwitzParams {
    pub fn new(ctx: FieldCtx, n: usize, a: u64) -> Result<Self, HurwitzError> {
        if !(3..=MAX_VARS).contains(&n) {
            return Err(HurwitzError::BadVarCount(n));
        }
        let a = ctx.reduce(a);
        if a == 0 {
            return Err(HurwitzError::ZeroA);
        }
        Ok(HurwitzParams { ctx, n, a })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TupleN {
    pub coords: Vec<u64>,
}

impl TupleN {
    pub fn new(coords: Vec<u64>) -> Self {
        TupleN { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Mixed-radix key `sum coords[i] * p^i`.
    pub fn key(&self, p: u64) -> u64 {
        self.coords.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }
}

pub fn is_solution(t: &TupleN, params: &HurwitzParams) -> Result<bool, HurwitzError> {
    if t.coords.len() != params.n {
        return Err(HurwitzError::Arity { got: t.coords.len(), want: params.n });
    }
    let ctx = &params.ctx;
    let mut lhs = 0u64;
    let mut prod = params.a;
    for &c in &t.coords {
        lhs = ctx.add(lhs, ctx.mul(c, c));
        prod = ctx.mul(prod, c);
    }
    Ok(lhs == prod)
}

/// Neighbors: adjacent transpositions (they generate all permutations),
/// every pairwise double sign flip, and the n Vieta moves.
pub fn neighbors(t: &TupleN, params: &HurwitzParams) -> Result<BTreeSet<TupleN>, HurwitzError> {
    if !is_solution(t, params)? {
        return Err(HurwitzError::NotASolution);
    }
    Ok(neighbors_unchecked(t, params))
}

fn neighbors_unchecked(t: &TupleN, params: &HurwitzParams) -> BTreeSet<TupleN> {
    let ctx = &params.ctx;
    let n = params.n;
    let mut out = BTreeSet::new();
    for i in 0..n - 1 {
        let mut c = t.coords.clone();
        c.swap(i, i + 1);
        out.insert(TupleN::new(c));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut c = t.coords.clone();
            c[i] = ctx.neg(c[i]);
            c[j] = ctx.neg(c[j]);
            out.insert(TupleN::new(c));
        }
    }
    for l in 0..n {
        let mut prod = params.a;
        for (m, &c) in t.coords.iter().enumerate() {
            if m != l {
                prod = ctx.mul(prod, c);
            }
        }
        let mut c = t.coords.clone();
        c[l] = ctx.sub(prod, c[l]);
        out.insert(TupleN::new(c));
    }
    out
}

/// All solutions sorted by key; loops over the first `n-1` coordinates
/// and solves a quadratic in the last, so the count lands inside the
/// Weil sandwich by construction.
pub fn enumerate_solutions(params: &HurwitzParams) -> Result<Vec<TupleN>, HurwitzError> {
    let ctx = &params.ctx;
    let p = ctx.p();
    let space = (0..params.n - 1).try_fold(1u64, |acc, _| acc.checked_mul(p)).unwrap_or(u64::MAX);
    if space > ENUM_GUARD {
        return Err(HurwitzError::EnumGuard(space));
    }
    let mut out = Vec::new();
    let mut head = vec![0u64; params.n - 1];
    loop {
        let mut sum_sq = 0u64;
        let mut prod = params.a;
        for &c in &head {
            sum_sq = ctx.add(sum_sq, ctx.mul(c, c));
            prod = ctx.mul(prod, c);
        }
        // z^2 - (a * prod_head) z + sum_sq = 0
        let roots = ctx.quadratic_roots(prod, sum_sq)?;
        let mut push = |z: u64| {
            let mut coords = head.clone();
            coords.push(z);
            out.push(TupleN::new(coords));
        };
        if roots.degenerate {
            push(roots.r1.a);
        } else if roots.r1.is_base() {
            push(roots.r1.a);
            push(roots.r2.a);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == head.len() {
                let p_local = p;
                out.sort_by_key(|t| t.key(p_local));
                return Ok(out);
            }
            head[i] += 1;
            if head[i] < p {
                break;
            }
            head[i] = 0;
            i += 1;
        }
    }
}

/// Component decomposition of the nonzero solution set `H*(p)`.
pub fn decompose(params: &HurwitzParams) -> Result<Decomposition<TupleN>, HurwitzError> {
    let nodes: Vec<TupleN> = enumerate_solutions(params)?
        .into_iter()
        .filter(|t| !t.is_zero())
        .collect();
    let params = *params;
    Ok(graph::decompose(nodes, move |t| {
        neighbors_unchecked(t, &params).into_iter().collect()
    }))
}

pub fn components(params: &HurwitzParams) -> Result<ComponentReport<TupleN>, HurwitzError> {
    Ok(decompose(params)?.report)
}

/// Weil-based sandwich `(p-3-2*sqrt(p)) p^{n-2} < |H*(p)| < (p+1+2*sqrt(p)) p^{n-2}`.
pub fn sandwich_bounds(params: &HurwitzParams) -> (f64, f64) {
    let p = params.ctx.p() as f64;
    let shell = p.powi(params.n as i32 - 2);
    ((p - 3.0 - 2.0 * p.sqrt()) * shell, (p + 1.0 + 2.0 * p.sqrt()) * shell)
}

/// A three-variable reduction `E_{i,c}`: three free coordinates, the
/// rest frozen at constants. The induced Markoff equation has
/// `A = a * prod(c)` and `B = -sum(c^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedSpec {
    /// Free coordinate indices (0-based), ascending.
    pub free: [usize; 3],
    /// Frozen `(index, value)` pairs, ascending by index.
    pub frozen: Vec<(usize, u64)>,
    /// Derived Markoff coefficient `A`.
    pub a_red: u64,
    /// Derived Markoff constant `B`.
    pub b_red: u64,
}

impl ReducedSpec {
    pub fn frozen_value(&self, index: usize) -> Option<u64> {
        self.frozen.iter().find(|&&(i, _)| i == index).map(|&(_, v)| v)
    }

    pub fn has_nonzero_frozen(&self) -> bool {
        self.frozen.iter().all(|&(_, v)| v != 0)
    }

    /// The induced `(A, B)` Markoff equation; fails when `A = 0`.
    pub fn markoff_params(&self, params: &HurwitzParams) -> Result<MarkoffParams, HurwitzError> {
        Ok(MarkoffParams::new(params.ctx, self.a_red, self.b_red)?)
    }

    /// Place a solution of the reduced equation at the free coordinates.
    pub fn embed(&self, t: Triple, n: usize) -> TupleN {
        let mut coords = vec![0u64; n];
        coords[self.free[0]] = t.x;
        coords[self.free[1]] = t.y;
        coords[self.free[2]] = t.z;
        for &(i, v) in &self.frozen {
            coords[i] = v;
        }
        TupleN::new(coords)
    }
}

/// Build `E_{i,c}` from free indices and the frozen values listed in
/// ascending order of the complementary indices.
pub fn reduced_equation(
    params: &HurwitzParams,
    free: [usize; 3],
    frozen_values: &[u64],
) -> Result<ReducedSpec, HurwitzError> {
    let n = params.n;
    let mut free = free;
    free.sort_unstable();
    if free[0] == free[1] || free[1] == free[2] || free[2] >= n {
        return Err(HurwitzError::BadIndices);
    }
    let frozen_idx: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
    if frozen_values.len() != frozen_idx.len() {
        return Err(HurwitzError::FrozenArity { got: frozen_values.len(), want: frozen_idx.len() });
    }
    let ctx = &params.ctx;
    let frozen: Vec<(usize, u64)> = frozen_idx
        .into_iter()
        .zip(frozen_values.iter().map(|&v| ctx.reduce(v)))
        .collect();
    let (a_red, b_red) = reduced_coefficients(ctx, params.a, frozen.iter().map(|&(_, v)| v));
    Ok(ReducedSpec { free, frozen, a_red, b_red })
}

fn reduced_coefficients(
    ctx: &FieldCtx,
    a: u64,
    values: impl Iterator<Item = u64>,
) -> (u64, u64) {
    let mut prod = a;
    let mut sum_sq = 0u64;
    for v in values {
        prod = ctx.mul(prod, v);
        sum_sq = ctx.add(sum_sq, ctx.mul(v, v));
    }
    (prod, ctx.neg(sum_sq))
}

/// Irreducibility of `x1^2 + x2^2 - b x1 x2 + a = 0` by the exhaustive
/// factorization-ansatz search over `F_{p^2}`. Returns false iff a
/// consistent `(x1 + alpha x2 + beta)(x1 + gamma x2 + delta)`
/// factorization exists. Equivalent to `a != 0 && b^2 != 4`: the a != 0
/// shorthand alone misses `b = +-2`, where the quadratic form is the
/// square `(x1 -+ x2)^2` and the curve splits into two parallel lines.
pub fn is_irreducible_conic(b: u64, a_const: u64, ctx: &FieldCtx) -> bool {
    !conic_factorization_exists(b, a_const, ctx)
}

/// The a != 0 shorthand criterion; agrees with the ansatz search away
/// from the degenerate `b^2 = 4` boundary.
pub fn irreducibility_criterion(a_const: u64, ctx: &FieldCtx) -> bool {
    ctx.reduce(a_const) != 0
}

/// Exhaustive search for monic linear factors over `F_{p^2}`.
pub fn conic_factorization_exists(b: u64, a_const: u64, ctx: &FieldCtx) -> bool {
    use crate::ff::Fp2;
    let p = ctx.p();
    let b = Fp2::from_base(ctx.reduce(b));
    let a_const = Fp2::from_base(ctx.reduce(a_const));
    // matching coefficients of (x1 + alpha x2 + beta)(x1 + gamma x2 + delta):
    //   alpha + gamma = -b, alpha*gamma = 1, beta + delta = 0,
    //   alpha*delta + beta*gamma = 0, beta*delta = a
    for aa in 0..p {
        for ab in 0..p {
            let alpha = Fp2::new(aa, ab);
            let gamma = ctx.sub2(ctx.neg2(b), alpha);
            if ctx.mul2(alpha, gamma) != Fp2::ONE {
                continue;
            }
            for ba in 0..p {
                for bb in 0..p {
                    let beta = Fp2::new(ba, bb);
                    let delta = ctx.neg2(beta);
                    if ctx.add2(ctx.mul2(alpha, delta), ctx.mul2(beta, gamma)) != Fp2::ZERO {
                        continue;
                    }
                    if ctx.mul2(beta, delta) == a_const {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Exact count of solutions `(x, y)` of `x^2 + y^2 + sum(c^2) =
/// a*prod(c)*xy` for an `n-2`-value frozen tuple, by an O(p) sweep.
pub fn fiber_count(params: &HurwitzParams, shared_frozen: &[u64]) -> Result<u64, HurwitzError> {
    if shared_frozen.len() != params.n - 2 {
        return Err(HurwitzError::FrozenArity { got: shared_frozen.len(), want: params.n - 2 });
    }
    let ctx = &params.ctx;
    let mut prod = params.a;
    let mut sum_sq = 0u64;
    for &v in shared_frozen {
        let v = ctx.reduce(v);
        prod = ctx.mul(prod, v);
        sum_sq = ctx.add(sum_sq, ctx.mul(v, v));
    }
    fiber_count_raw(ctx, prod, sum_sq)
}

fn fiber_count_raw(ctx: &FieldCtx, m: u64, s: u64) -> Result<u64, HurwitzError> {
    let p = ctx.p();
    let mut count = 0u64;
    for x in 0..p {
        // y^2 - (m x) y + (x^2 + s) = 0
        let lin = ctx.mul(m, x);
        let cst = ctx.add(ctx.mul(x, x), s);
        let disc = ctx.sub(ctx.mul(lin, lin), ctx.mul(4, cst));
        count += match ctx.legendre(disc) {
            1 => 2,
            0 => 1,
            _ => 0,
        };
    }
    Ok(count)
}

/// Fiber count next to the Weil-derived lower bound `p - 2 sqrt(p) - 3`.
///
/// The bound needs the fiber conic `x^2 + y^2 - mxy + s` to be
/// absolutely irreducible, which takes more than a nonzero frozen
/// tuple: `s = sum c^2` can vanish when -1 is a square, and `m = +-2`
/// collapses the quadratic form to `(x -+ y)^2`. Both escapes are real
/// (the count can drop to 0), so `meets_bound` is asserted only for
/// genuinely irreducible conics and the rest stay tagged.
#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub count: u64,
    pub weil_lower: f64,
    /// All frozen values nonzero (the stated hypothesis).
    pub hypothesis_ok: bool,
    /// The conic is actually irreducible: `s != 0` and `m^2 != 4`.
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meets_bound: Option<bool>,
}

pub fn fiber_report(params: &HurwitzParams, shared_frozen: &[u64]) -> Result<FiberReport, HurwitzError> {
    let count = fiber_count(params, shared_frozen)?;
    let ctx = &params.ctx;
    let p = ctx.p() as f64;
    let weil_lower = p - 2.0 * p.sqrt() - 3.0;
    let hypothesis_ok = shared_frozen.iter().all(|&v| ctx.reduce(v) != 0);
    let mut m = params.a;
    let mut s = 0u64;
    for &v in shared_frozen {
        let v = ctx.reduce(v);
        m = ctx.mul(m, v);
        s = ctx.add(s, ctx.mul(v, v));
    }
    let irreducible = s != 0 && ctx.mul(m, m) != ctx.reduce(4);
    let meets_bound = (hypothesis_ok && irreducible).then(|| (count as f64) > weil_lower);
    Ok(FiberReport { count, weil_lower, hypothesis_ok, irreducible, meets_bound })
}

/// One application of the gluing lemma: two reduced equations sharing
/// two free coordinates, with the fiber count of the two-variable
/// equation they have in common.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub from: ReducedSpec,
    pub to: ReducedSpec,
    /// The `n-2` coordinates frozen in the shared equation.
    pub shared_frozen: Vec<(usize, u64)>,
    pub fiber: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionPath {
    pub steps: Vec<ReductionStep>,
}

impl ReductionPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Budget on lemma applications: 3 index swaps + 2 per rewritten value.
pub fn step_budget(n: usize) -> usize {
    2 * n - 3
}

struct StepOutcome {
    next: ReducedSpec,
    shared: Vec<(usize, u64)>,
    fiber: u64,
}

/// Swap free index `f` (frozen at `w` afterwards) with frozen index `g`.
fn swap_step(
    params: &HurwitzParams,
    cur: &ReducedSpec,
    f: usize,
    g: usize,
    w: u64,
) -> Result<StepOutcome, HurwitzError> {
    let old_g = cur.frozen_value(g).expect("g frozen in current spec");
    let mut free = [0usize; 3];
    let mut fi = 0;
    for &i in cur.free.iter().filter(|&&i| i != f).chain(std::iter::once(&g)) {
        free[fi] = i;
        fi += 1;
    }
    free.sort_unstable();
    let mut frozen: Vec<(usize, u64)> = cur
        .frozen
        .iter()
        .copied()
        .filter(|&(i, _)| i != g)
        .chain(std::iter::once((f, w)))
        .collect();
    frozen.sort_unstable();
    let ctx = &params.ctx;
    let (a_red, b_red) = reduced_coefficients(ctx, params.a, frozen.iter().map(|&(_, v)| v));
    let next = ReducedSpec { free, frozen: frozen.clone(), a_red, b_red };
    let mut shared = frozen;
    shared.push((g, old_g));
    shared.sort_unstable();
    let values: Vec<u64> = shared.iter().map(|&(_, v)| v).collect();
    let fiber = fiber_count(params, &values)?;
    Ok(StepOutcome { next, shared, fiber })
}

/// Chain of lemma applications from one reduced equation to another.
/// Routing is greedy (index swaps first, then frozen-value rewrites
/// left-to-right, each rewrite via the two-step swap maneuver); when a
/// greedy step hits an empty fiber at tiny p, a breadth-first search
/// over reduced specs takes over, still capped at `2n - 3` steps.
pub fn reduction_path(
    params: &HurwitzParams,
    from: &ReducedSpec,
    to: &ReducedSpec,
) -> Result<ReductionPath, HurwitzError> {
    if from.frozen.len() != params.n - 3 || to.frozen.len() != params.n - 3 {
        return Err(HurwitzError::ParamsMismatch);
    }
    if !from.has_nonzero_frozen() || !to.has_nonzero_frozen() {
        return Err(HurwitzError::ZeroFrozen);
    }
    if from == to {
        return Ok(ReductionPath { steps: vec![] });
    }
    if let Some(path) = greedy_path(params, from, to)? {
        return Ok(path);
    }
    bfs_path(params, from, to)
}

fn greedy_path(
    params: &HurwitzParams,
    from: &ReducedSpec,
    to: &ReducedSpec,
) -> Result<Option<ReductionPath>, HurwitzError> {
    let p = params.ctx.p();
    let mut cur = from.clone();
    let mut steps = Vec::new();
    // phase 1: align the free index set
    loop {
        let f = cur.free.iter().copied().find(|i| !to.free.contains(i));
        let g = to.free.iter().copied().find(|i| !cur.free.contains(i));
        let (f, g) = match (f, g) {
            (Some(f), Some(g)) => (f, g),
            _ => break,
        };
        let w = to.frozen_value(f).expect("f is frozen in the target");
        let out = swap_step(params, &cur, f, g, w)?;
        if out.fiber == 0 {
            return Ok(None);
        }
        steps.push(ReductionStep {
            from: cur.clone(),
            to: out.next.clone(),
            shared_frozen: out.shared,
            fiber: out.fiber,
        });
        cur = out.next;
    }
    // phase 2: rewrite frozen values left-to-right
    let positions: Vec<usize> = cur.frozen.iter().map(|&(i, _)| i).collect();
    for j in positions {
        let target = to.frozen_value(j).expect("same frozen index sets");
        if cur.frozen_value(j) == Some(target) {
            continue;
        }
        let helper = *cur.free.last().expect("three free indices");
        let mut committed = false;
        for w in 1..p {
            let step_a = swap_step(params, &cur, helper, j, w)?;
            if step_a.fiber == 0 {
                continue;
            }
            let step_b = swap_step(params, &step_a.next, j, helper, target)?;
            if step_b.fiber == 0 {
                continue;
            }
            steps.push(ReductionStep {
                from: cur.clone(),
                to: step_a.next.clone(),
                shared_frozen: step_a.shared,
                fiber: step_a.fiber,
            });
            steps.push(ReductionStep {
                from: step_a.next.clone(),
                to: step_b.next.clone(),
                shared_frozen: step_b.shared,
                fiber: step_b.fiber,
            });
            cur = step_b.next;
            committed = true;
            break;
        }
        if !committed {
            return Ok(None);
        }
    }
    debug_assert_eq!(&cur, to);
    if steps.len() > step_budget(params.n) {
        return Ok(None);
    }
    Ok(Some(ReductionPath { steps }))
}

type SpecKey = ([usize; 3], Vec<u64>);

fn spec_key(spec: &ReducedSpec) -> SpecKey {
    (spec.free, spec.frozen.iter().map(|&(_, v)| v).collect())
}

fn bfs_path(
    params: &HurwitzParams,
    from: &ReducedSpec,
    to: &ReducedSpec,
) -> Result<ReductionPath, HurwitzError> {
    let p = params.ctx.p();
    let budget = step_budget(params.n);
    let target = spec_key(to);
    let mut seen: HashMap<SpecKey, Option<(SpecKey, ReductionStep)>> = HashMap::new();
    seen.insert(spec_key(from), None);
    let mut frontier = VecDeque::new();
    frontier.push_back((from.clone(), 0usize));
    while let Some((cur, depth)) = frontier.pop_front() {
        if spec_key(&cur) == target {
            // walk the predecessor chain back to the start
            let mut steps = Vec::new();
            let mut key = spec_key(&cur);
            while let Some(Some((prev, step))) = seen.get(&key).cloned() {
                steps.push(step);
                key = prev;
            }
            steps.reverse();
            return Ok(ReductionPath { steps });
        }
        if depth == budget {
            continue;
        }
        for f in cur.free {
            let frozen_idx: Vec<usize> = cur.frozen.iter().map(|&(i, _)| i).collect();
            for g in frozen_idx {
                for w in 1..p {
                    let out = swap_step(params, &cur, f, g, w)?;
                    if out.fiber == 0 {
                        continue;
                    }
                    let next_key = spec_key(&out.next);
                    if seen.contains_key(&next_key) {
                        continue;
                    }
                    let step = ReductionStep {
                        from: cur.clone(),
                        to: out.next.clone(),
                        shared_frozen: out.shared,
                        fiber: out.fiber,
                    };
                    seen.insert(next_key, Some((spec_key(&cur), step)));
                    frontier.push_back((out.next, depth + 1));
                }
            }
        }
    }
    Err(HurwitzError::ReductionBlocked(budget))
}

/// Where the embedded reduced giants sit inside the full decomposition.
///
/// The gluing of two overlapping reduced equations is *certified* when
/// their shared fiber outnumbers both residuals combined: the fiber then
/// pigeonholes a common solution into both giants, forcing them into
/// one component. Certified gluings are theorems and any violation is a
/// bug; uncertified ones are tagged and only reported — at tiny p the
/// giants genuinely scatter (e.g. n = 4, a = 4 splits the largest
/// component in two at p = 13).
#[derive(Debug, Clone, Serialize)]
pub struct GiantUnionReport {
    pub p: u64,
    pub n: usize,
    pub a: u64,
    /// `C(n,3) * p^{n-3}`, counting every frozen tuple.
    pub reduced_spec_count: u64,
    /// Specs with all-nonzero frozen values actually checked.
    pub checked_specs: u64,
    /// Every embedded reduced giant lies in the largest full component.
    pub all_inside_giant: bool,
    /// All embedded reduced giants share one full component.
    pub single_union_component: bool,
    /// Overlapping spec pairs with `fiber > residual_1 + residual_2`.
    pub certified_pairs: u64,
    pub uncertified_pairs: u64,
    /// Certified pairs whose giants landed in different components.
    pub certified_violations: u64,
    /// Certified gluings alone connect every spec to every other.
    pub union_certified: bool,
    pub residual: u64,
    /// `C(n,3) * p^{n-3} * exp(sqrt(log p))`, the raw residual-bound shape
    /// (reported, not asserted).
    pub residual_bound_raw: f64,
}

impl GiantUnionReport {
    /// The assertable part: no certified gluing may fail, and when the
    /// certificates alone connect all specs their giants must form a
    /// single component.
    pub fn passes(&self) -> bool {
        self.certified_violations == 0 && (!self.union_certified || self.single_union_component)
    }
}

fn binomial3(n: usize) -> u64 {
    (n * (n - 1) * (n - 2) / 6) as u64
}

/// Iterate all ascending index triples in `0..n`.
pub fn index_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// All reduced specs with all-nonzero frozen values, in deterministic
/// (triple, odometer) order.
pub fn nonzero_reduced_specs(params: &HurwitzParams) -> Result<Vec<ReducedSpec>, HurwitzError> {
    let p = params.ctx.p();
    let m = params.n - 3;
    let mut out = Vec::new();
    for free in index_triples(params.n) {
        let mut vals = vec![1u64; m];
        loop {
            out.push(reduced_equation(params, free, &vals)?);
            let mut i = 0;
            loop {
                if i == m {
                    break;
                }
                vals[i] += 1;
                if vals[i] < p {
                    break;
                }
                vals[i] = 1;
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    Ok(out)
}

pub fn giant_union_check(params: &HurwitzParams) -> Result<GiantUnionReport, HurwitzError> {
    let p = params.ctx.p();
    let full = decompose(params)?;
    let specs = nonzero_reduced_specs(params)?;
    let checked = specs.len() as u64;

    // per spec: residual of the reduced graph and the full component its
    // giant lives in (None only when the reduced set is empty)
    let mut residuals = vec![0u64; specs.len()];
    let mut giant_comp: Vec<Option<u32>> = vec![None; specs.len()];
    for (si, spec) in specs.iter().enumerate() {
        let mp = spec.markoff_params(params)?;
        let dec = markoff::decompose(&mp)?;
        residuals[si] = dec.report.residual;
        if dec.report.total_nonzero == 0 {
            continue;
        }
        for (i, t) in dec.nodes.iter().enumerate() {
            if dec.comp_of[i] != 0 {
                continue;
            }
            let emb = spec.embed(*t, params.n);
            let c = full.component_of(&emb).expect("embedded giant node solves the full equation");
            match giant_comp[si] {
                None => giant_comp[si] = Some(c),
                // the embedded image of a connected set stays connected
                Some(prev) => debug_assert_eq!(prev, c),
            }
        }
    }
    let all_inside_giant = giant_comp.iter().all(|&c| c == Some(0));
    let single_union_component = {
        let mut seen = giant_comp.iter().flatten();
        match seen.next() {
            Some(first) => giant_comp.iter().flatten().all(|c| c == first),
            None => true,
        }
    };

    // certified gluings: one-swap neighbours whose shared fiber exceeds
    // both residuals, pigeonholing a common solution into both giants
    let index_of: HashMap<(Vec<usize>, Vec<(usize, u64)>), usize> = specs
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.free.to_vec(), s.frozen.clone()), i))
        .collect();
    let mut uf = UnionFind::new(specs.len());
    let mut certified_pairs = 0u64;
    let mut uncertified_pairs = 0u64;
    let mut certified_violations = 0u64;
    for (si, spec) in specs.iter().enumerate() {
        for &f in &spec.free {
            for &(g, _) in &spec.frozen {
                for w in 1..p {
                    let out = swap_step(params, spec, f, g, w)?;
                    let ti = index_of[&(out.next.free.to_vec(), out.next.frozen.clone())];
                    if ti <= si {
                        continue; // each unordered pair once
                    }
                    if out.fiber > residuals[si] + residuals[ti] {
                        certified_pairs += 1;
                        uf.union(si, ti);
                        if giant_comp[si].is_none()
                            || giant_comp[si] != giant_comp[ti]
                        {
                            certified_violations += 1;
                        }
                    } else {
                        uncertified_pairs += 1;
                    }
                }
            }
        }
    }
    let union_certified = {
        let root = uf.find(0);
        (1..specs.len()).all(|i| uf.find(i) == root)
    };

    let reduced_spec_count =
        binomial3(params.n) * (0..params.n - 3).fold(1u64, |acc, _| acc * p);
    let logp = (p as f64).ln();
    Ok(GiantUnionReport {
        p,
        n: params.n,
        a: params.a,
        reduced_spec_count,
        checked_specs: checked,
        all_inside_giant,
        single_union_component,
        certified_pairs,
        uncertified_pairs,
        certified_violations,
        union_certified,
        residual: full.report.residual,
        residual_bound_raw: reduced_spec_count as f64 * logp.sqrt().exp(),
    })
}

/// The serialized per-prime record consumed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct HurwitzRecord {
    pub p: u64,
    pub n: usize,
    pub a: u64,
    pub total_nonzero: u64,
    pub component_sizes: Vec<u64>,
    pub giant_size: u64,
    pub residual: u64,
    pub sandwich_low: f64,
    pub sandwich_high: f64,
    pub reduced_spec_count: u64,
    pub union_check_passed: Option<bool>,
}

pub fn record(params: &HurwitzParams, with_union_check: bool) -> Result<HurwitzRecord, HurwitzError> {
    let report = components(params)?;
    let (lo, hi) = sandwich_bounds(params);
    let p = params.ctx.p();
    let union = if with_union_check {
        Some(giant_union_check(params)?.passes())
    } else {
        None
    };
    Ok(HurwitzRecord {
        p,
        n: params.n,
        a: params.a,
        total_nonzero: report.total_nonzero,
        component_sizes: report.component_sizes,
        giant_size: report.giant_size,
        residual: report.residual,
        sandwich_low: lo,
        sandwich_high: hi,
        reduced_spec_count: binomial3(params.n) * (0..params.n - 3).fold(1u64, |acc, _| acc * p),
        union_check_passed: union,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: usize, a: u64) -> HurwitzParams {
        HurwitzParams::new(FieldCtx::new(p).unwrap(), n, a).unwrap()
    }

    #[test]
    fn is_solution_examples() {
        let pr = params(7, 4, 4);
        assert!(is_solution(&TupleN::new(vec![1, 1, 1, 1]), &pr).unwrap());
        assert!(is_solution(&TupleN::new(vec![0, 0, 0, 0]), &pr).unwrap());
        assert!(!is_solution(&TupleN::new(vec![1, 1, 1, 2]), &pr).unwrap());
        assert!(matches!(
            is_solution(&TupleN::new(vec![1, 1, 1]), &pr),
            Err(HurwitzError::Arity { got: 3, want: 4 })
        ));
    }

    #[test]
    fn neighbors_examples() {
        let pr = params(7, 4, 4);
        let nb = neighbors(&TupleN::new(vec![1, 1, 1, 1]), &pr).unwrap();
        assert!(nb.contains(&TupleN::new(vec![3, 1, 1, 1])));
        let zero = TupleN::new(vec![0, 0, 0, 0]);
        let nb = neighbors(&zero, &pr).unwrap();
        assert_eq!(nb.into_iter().collect::<Vec<_>>(), vec![zero.clone()]);
        let nb = neighbors(&TupleN::new(vec![3, 1, 1, 1]), &pr).unwrap();
        assert!(nb.contains(&TupleN::new(vec![1, 1, 1, 1])));
    }

    #[test]
    fn reduced_equation_examples() {
        let pr = params(11, 4, 4);
        let spec = reduced_equation(&pr, [0, 1, 2], &[2]).unwrap();
        assert_eq!(spec.a_red, 8);
        assert_eq!(spec.b_red, 7); // -4 mod 11

        let pr = params(7, 4, 4);
        let spec = reduced_equation(&pr, [0, 1, 2], &[1]).unwrap();
        assert_eq!(spec.a_red, 4);
        assert_eq!(spec.b_red, 6);

        let pr = params(7, 5, 5);
        let spec = reduced_equation(&pr, [0, 1, 2], &[1, 1]).unwrap();
        assert_eq!(spec.a_red, 5);
        assert_eq!(spec.b_red, 5);

        assert!(matches!(
            reduced_equation(&params(7, 4, 4), [0, 1, 1], &[1]),
            Err(HurwitzError::BadIndices)
        ));
    }

    #[test]
    fn irreducibility_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        assert!(!is_irreducible_conic(3, 0, &ctx));
        assert!(is_irreducible_conic(3, 1, &ctx));
        let ctx = FieldCtx::new(5).unwrap();
        assert!(is_irreducible_conic(0, 1, &ctx));
        // b = +-2 squares the form: (x -+ y)^2 + a splits over F_{p^2}
        let ctx = FieldCtx::new(7).unwrap();
        assert!(!is_irreducible_conic(2, 1, &ctx));
        assert!(!is_irreducible_conic(5, 3, &ctx));
    }

    #[test]
    fn fiber_zero_frozen_classification() {
        // x^2 + y^2 = 0 has 1 or 2p-1 solutions depending on legendre(-1)
        for p in [7u64, 11, 13, 17] {
            let pr = params(p, 4, 4);
            let ctx = pr.ctx;
            let count = fiber_count(&pr, &[0, 0]).unwrap();
            let expect = if ctx.legendre(p - 1) == 1 { 2 * p - 1 } else { 1 };
            assert_eq!(count, expect, "p = {p}");
        }
    }

    #[test]
    fn fiber_bound_example() {
        let pr = params(11, 4, 4);
        let rep = fiber_report(&pr, &[1, 1]).unwrap();
        assert!(rep.hypothesis_ok && rep.irreducible);
        assert_eq!(rep.meets_bound, Some(true));
        assert!(rep.count >= 2);
    }

    #[test]
    fn fiber_degenerate_conics_are_tagged() {
        // c = (1, 6) mod 11 gives m = 4*6 = 2: the conic collapses to
        // (x - y)^2 = -s with -s a nonresidue, so the fiber is empty
        let pr = params(11, 4, 4);
        let rep = fiber_report(&pr, &[1, 6]).unwrap();
        assert_eq!(rep.count, 0);
        assert!(rep.hypothesis_ok && !rep.irreducible);
        assert_eq!(rep.meets_bound, None);
        // sum of squares can vanish when -1 is a square: 2^2 + 3^2 = 0 mod 13
        let pr = params(13, 4, 4);
        let rep = fiber_report(&pr, &[2, 3]).unwrap();
        assert!(rep.hypothesis_ok && !rep.irreducible);
        assert_eq!(rep.meets_bound, None);
    }

    #[test]
    fn reduction_path_identity() {
        let pr = params(11, 4, 4);
        let spec = reduced_equation(&pr, [0, 1, 2], &[1]).unwrap();
        let path = reduction_path(&pr, &spec, &spec).unwrap();
        assert!(path.is_empty());
    }

    #[test]
    fn reduction_path_value_change_is_two_steps() {
        let pr = params(11, 4, 4);
        let from = reduced_equation(&pr, [0, 1, 2], &[1]).unwrap();
        let to = reduced_equation(&pr, [0, 1, 2], &[2]).unwrap();
        let path = reduction_path(&pr, &from, &to).unwrap();
        assert_eq!(path.len(), 2);
        assert!(path.steps.iter().all(|s| s.fiber > 0));
    }

    #[test]
    fn reduction_path_disjoint_triples_within_budget() {
        let pr = params(11, 5, 5);
        let from = reduced_equation(&pr, [0, 1, 2], &[1, 1]).unwrap();
        let to = reduced_equation(&pr, [2, 3, 4], &[2, 3]).unwrap();
        let path = reduction_path(&pr, &from, &to).unwrap();
        assert!(path.len() <= step_budget(5));
        assert!(path.steps.iter().all(|s| s.fiber > 0));
        assert_eq!(path.steps.last().unwrap().to, to);
    }

    #[test]
    fn n3_has_single_reduced_equation() {
        let pr = params(7, 3, 3);
        let specs = nonzero_reduced_specs(&pr).unwrap();
        assert_eq!(specs.len(), 1);
        let rep = giant_union_check(&pr).unwrap();
        assert_eq!(rep.reduced_spec_count, 1);
        assert!(rep.all_inside_giant);
        assert!(rep.union_certified && rep.passes());
    }

    #[test]
    fn sandwich_small() {
        let pr = params(7, 4, 4);
        let total = components(&pr).unwrap().total_nonzero as f64;
        let (lo, hi) = sandwich_bounds(&pr);
        assert!(lo < total && total < hi);
    }
}
