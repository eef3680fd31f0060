//! Count nonzero solutions of the Markoff-Hurwitz equation
//! x_1^2 + ... + x_n^2 = a x_1 ... x_n over F_p and check the
//! (p - 3 - 2 sqrt(p)) p^{n-2} < H*(p) < (p + 1 + 2 sqrt(p)) p^{n-2}
//! sandwich, alongside the component profile of the solution graph.
//!
//! Run with: cargo run --example hurwitz_sandwich

use markoff_lab::ff::{self, FieldCtx};
use markoff_lab::hurwitz::{self, HurwitzParams};

fn main() {
    println!("n = 4, a = 4: x1^2 + x2^2 + x3^2 + x4^2 = 4 x1 x2 x3 x4");
    println!("{:>5} {:>10} {:>12} {:>12} {:>8}", "p", "H*(p)", "lower", "upper", "inside");
    for p in (5u64..=31).filter(|&p| ff::is_prime(p)) {
        let ctx = FieldCtx::new(p).unwrap();
        let params = HurwitzParams::new(ctx, 4, 4).unwrap();
        let report = hurwitz::components(&params).unwrap();
        let (lo, hi) = hurwitz::sandwich_bounds(&params);
        let total = report.total_nonzero as f64;
        println!(
            "{:>5} {:>10} {:>12.1} {:>12.1} {:>8}",
            p,
            report.total_nonzero,
            lo,
            hi,
            lo < total && total < hi,
        );
    }

    // component profile at one prime, plus a five-variable instance
    let params = HurwitzParams::new(FieldCtx::new(13).unwrap(), 4, 4).unwrap();
    let report = hurwitz::components(&params).unwrap();
    println!("\np = 13 component sizes: {:?}", report.component_sizes);

    let params = HurwitzParams::new(FieldCtx::new(7).unwrap(), 5, 5).unwrap();
    let report = hurwitz::components(&params).unwrap();
    let (lo, hi) = hurwitz::sandwich_bounds(&params);
    println!(
        "n = 5, a = 5, p = 7: H*(7) = {} in ({:.1}, {:.1}), giant {}",
        report.total_nonzero, lo, hi, report.giant_size
    );
}
