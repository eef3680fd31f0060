//! The Fibonacci residue set mod p through the closed form: powers of
//! the golden-ratio root lambda in F_p or F_{p^2}, cross-checked against
//! plain iteration, plus the two intersection corollaries (residues in a
//! multiplicative subgroup; residues shared with a shifted copy).
//!
//! Run with: cargo run --example binet_residues

use markoff_lab::ff::FieldCtx;
use markoff_lab::fibonacci::{self, BinetPath};

fn main() {
    for p in [7u64, 11, 13, 29, 101] {
        let (set, path) = fibonacci::binet_residue_set(p).unwrap();
        let iterated = fibonacci::pisano(p).unwrap().residue_set;
        assert_eq!(set, iterated);
        println!(
            "p = {:>3}: {} residues of {} possible, via {:?}",
            p,
            set.len(),
            p,
            path
        );
    }

    // p = 5 degenerates (sqrt(5) = 0) and falls back to iteration
    let (_, path) = fibonacci::binet_residue_set(5).unwrap();
    assert_eq!(path, BinetPath::IterationFallback);
    println!("p = 5 uses the iteration fallback (sqrt(5) vanishes)");

    // corollary bounds at one prime: every subgroup, a few shifts
    let p = 101u64;
    let ctx = FieldCtx::new(p).unwrap();
    println!("\nFibonacci residues mod {p} against subgroup and shift bounds:");
    for g in ctx.subgroups_of_units() {
        let rep = fibonacci::corollary2_check(p, &g).unwrap();
        println!(
            "  |G| = {:>3}: intersection {:>3} <= {:>7.1}, holds {:?}",
            g.order(), rep.lhs_exact, rep.rhs_bound, rep.holds
        );
    }
    for q in [1u64, 2, 50] {
        let rep = fibonacci::corollary3_check(p, q).unwrap();
        println!(
            "  shift q = {:>2}: overlap {:>3} <= {:>7.1}, holds {:?}",
            q, rep.lhs_exact, rep.rhs_bound, rep.holds
        );
    }
}
