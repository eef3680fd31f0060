//! Markoff-equation oracles: brute-force enumeration, move closure, and
//! the normalization bijection, cross-checked against the library on
//! every prime small enough to enumerate cubically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use markoff_lab::ff::{self, FieldCtx};
use markoff_lab::markoff::{self, MarkoffParams, Triple};

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| ff::is_prime(p))
}

/// Independent O(p^3) enumeration of the full solution set (the zero
/// triple included when B = 0; X*-filtering happens in decompose).
fn brute_force(params: &MarkoffParams) -> Vec<Triple> {
    let ctx = &params.ctx;
    let p = ctx.p();
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let lhs = ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(y, y)), ctx.mul(z, z));
                let rhs = ctx.add(ctx.mul(params.a, ctx.mul(x, ctx.mul(y, z))), params.b);
                if lhs == rhs {
                    out.push(Triple::new(x, y, z));
                }
            }
        }
    }
    out.sort_by_key(|t| t.key(p));
    out
}

#[test]
fn enumeration_matches_brute_force_on_random_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for p in primes(5, 31) {
        let ctx = FieldCtx::new(p).unwrap();
        for _ in 0..20 {
            let a = rng.gen_range(1..p);
            let b = rng.gen_range(0..p);
            let params = MarkoffParams::new(ctx, a, b).unwrap();
            let fast = markoff::enumerate_solutions(&params).unwrap();
            assert_eq!(fast, brute_force(&params), "p = {p}, A = {a}, B = {b}");
        }
    }
}

#[test]
fn moves_are_closed_and_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for p in primes(5, 23) {
        let ctx = FieldCtx::new(p).unwrap();
        let a = rng.gen_range(1..p);
        let b = rng.gen_range(0..p);
        let params = MarkoffParams::new(ctx, a, b).unwrap();
        for t in markoff::enumerate_solutions(&params).unwrap() {
            for u in markoff::neighbors(t, &params).unwrap() {
                assert!(markoff::is_solution(u, &params), "move left the solution set");
                // the graph is undirected: every move family is an involution
                assert!(
                    markoff::neighbors(u, &params).unwrap().contains(&t),
                    "asymmetric edge {t:?} -> {u:?}"
                );
            }
        }
    }
}

#[test]
fn normalization_is_a_solution_set_bijection() {
    for p in primes(5, 19) {
        let ctx = FieldCtx::new(p).unwrap();
        for a in 1..p {
            for b in 0..p {
                let norm = markoff::normalize(a, b, &ctx).unwrap();
                let orig = markoff::enumerate_solutions(&MarkoffParams::new(ctx, a, b).unwrap()).unwrap();
                let target = MarkoffParams::new(ctx, 3, norm.b_prime).unwrap();
                let mut mapped: Vec<Triple> = orig
                    .iter()
                    .map(|t| {
                        Triple::new(
                            ctx.mul(norm.scale, t.x),
                            ctx.mul(norm.scale, t.y),
                            ctx.mul(norm.scale, t.z),
                        )
                    })
                    .collect();
                mapped.sort_by_key(|t| t.key(p));
                assert_eq!(mapped, markoff::enumerate_solutions(&target).unwrap(), "p = {p}, A = {a}, B = {b}");
            }
        }
    }
}

#[test]
fn decomposition_is_deterministic() {
    let ctx = FieldCtx::new(29).unwrap();
    let params = MarkoffParams::new(ctx, 5, 7).unwrap();
    let d1 = markoff::decompose(&params).unwrap();
    let d2 = markoff::decompose(&params).unwrap();
    assert_eq!(d1.nodes, d2.nodes);
    assert_eq!(d1.comp_of, d2.comp_of);
    assert_eq!(d1.report.component_sizes, d2.report.component_sizes);
}

#[test]
fn component_report_accounting() {
    for p in primes(5, 31) {
        let ctx = FieldCtx::new(p).unwrap();
        let params = MarkoffParams::classical(ctx);
        let report = markoff::components(&params).unwrap();
        let sum: u64 = report.component_sizes.iter().sum();
        assert_eq!(sum, report.total_nonzero);
        assert_eq!(report.giant_size, report.component_sizes.first().copied().unwrap_or(0));
        assert_eq!(report.residual, report.total_nonzero - report.giant_size);
        assert!(report.component_sizes.windows(2).all(|w| w[0] >= w[1]));
    }
}
