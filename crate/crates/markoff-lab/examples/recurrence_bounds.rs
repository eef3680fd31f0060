//! Second-order recurrences x_{n+2} = a x_{n+1} - eps x_n with eps a
//! k-th root of unity: closed form through the characteristic roots,
//! value-set periods, and the three subgroup-intersection bounds.
//!
//! Run with: cargo run --example recurrence_bounds

use markoff_lab::ff::FieldCtx;
use markoff_lab::recurrence::{self, RecurrenceSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let ctx = FieldCtx::new(101).unwrap();

    // Fibonacci mod 101: a = 1, eps = -1 (a square root of unity, k = 2)
    let fib = RecurrenceSpec::new(ctx, 1, 100, 2, 1, 1).unwrap();
    let vs = recurrence::iterate(&fib);
    println!(
        "Fibonacci mod 101: period {}, {} distinct values, subsequence sizes {:?}",
        vs.period,
        vs.values.len(),
        vs.subsequences.iter().map(|s| s.len()).collect::<Vec<_>>()
    );

    let cf = recurrence::closed_form(&fib).unwrap();
    println!("characteristic roots: {:?} and {:?}", cf.lambda1, cf.lambda2);
    for n in 1..=10 {
        assert_eq!(recurrence::evaluate(&fib, &cf, n).unwrap(), nth_term(&fib, n));
    }
    println!("closed form matches iteration on the first 10 terms");

    let l = recurrence::root_subgroup(&fib).unwrap();
    println!("root subgroup <lambda1^k> has order {}", l.order());

    // the three intersection bounds on fixed-seed random specs
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let s1 = recurrence::random_spec(&ctx, &mut rng);
    let s2 = recurrence::random_spec(&ctx, &mut rng);
    println!("\nspec 1: a = {}, eps = {}, k = {}, seeds ({}, {})", s1.a, s1.eps, s1.k, s1.x1, s1.x2);
    println!("spec 2: a = {}, eps = {}, k = {}, seeds ({}, {})", s2.a, s2.eps, s2.k, s2.x1, s2.x2);

    let r1 = recurrence::prop1_check(&s1, &s2).unwrap();
    println!(
        "two-sequence intersection: {} <= {:.1} (branch {}), flags {:?}, holds {:?}",
        r1.lhs_exact, r1.rhs_bound, r1.branch_taken, r1.flags, r1.holds
    );

    let g = ctx.subgroups_of_units().into_iter().max_by_key(|g| g.order()).unwrap();
    let r2 = recurrence::prop2_check(&s1, &g).unwrap();
    println!(
        "values inside F_p* itself (|G| = {}): {} <= {:.1}, holds {:?}",
        g.order(), r2.lhs_exact, r2.rhs_bound, r2.holds
    );

    let r3 = recurrence::prop3_check(&s1, 7).unwrap();
    println!(
        "self-intersection after shift by 7: {} <= {:.1}, holds {:?}",
        r3.lhs_exact, r3.rhs_bound, r3.holds
    );

    // the curve whose points dominate the two-sequence intersection
    let cf1 = recurrence::closed_form(&s1).unwrap();
    let cf2 = recurrence::closed_form(&s2).unwrap();
    if !cf1.degenerate && !cf2.degenerate {
        let curve = recurrence::prop1_curve(&s1, &s2, 0, 0).unwrap();
        let l1 = recurrence::root_subgroup(&s1).unwrap();
        let l2 = recurrence::root_subgroup(&s2).unwrap();
        let pts = recurrence::curve_points_on_subgroups(&curve, &l1, &l2, &ctx).unwrap();
        println!("P_00 has {} points on the {} x {} subgroup grid", pts, l1.order(), l2.order());
    }
}

// term x_n by direct iteration, n starting at 1
fn nth_term(spec: &RecurrenceSpec, n: u64) -> u64 {
    let ctx = spec.ctx;
    let (mut prev, mut cur) = (spec.x1, spec.x2);
    for _ in 2..n {
        let next = ctx.sub(ctx.mul(spec.a, cur), ctx.mul(spec.eps, prev));
        prev = cur;
        cur = next;
    }
    if n == 1 { spec.x1 } else { cur }
}
