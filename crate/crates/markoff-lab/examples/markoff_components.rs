//! Decompose the classical Markoff graph X*(p) for a range of primes and
//! print component statistics, the divisibility of each component size
//! by p, and the normalization taking a general (A, B) equation back to
//! A = 3.
//!
//! Run with: cargo run --example markoff_components

use markoff_lab::ff::{self, FieldCtx};
use markoff_lab::markoff::{self, MarkoffParams};

fn main() {
    println!("classical Markoff equation x^2 + y^2 + z^2 = 3xyz over F_p");
    println!("{:>5} {:>10} {:>10} {:>9} {:>12}", "p", "nonzero", "giant", "residual", "sizes % p");
    for p in (5u64..=61).filter(|&p| ff::is_prime(p)) {
        let ctx = FieldCtx::new(p).unwrap();
        let params = MarkoffParams::classical(ctx);
        let report = markoff::components(&params).unwrap();
        let chen = markoff::chen_divisibility(&report, &params).unwrap();
        println!(
            "{:>5} {:>10} {:>10} {:>9} {:>12}",
            p,
            report.total_nonzero,
            report.giant_size,
            report.residual,
            if chen.iter().all(|&d| d) { "all divide" } else { "violation!" },
        );
    }

    // a non-classical equation and its normalization back to A = 3
    let ctx = FieldCtx::new(31).unwrap();
    let norm = markoff::normalize(6, 5, &ctx).unwrap();
    println!("\n(A, B) = (6, 5) over F_31 normalizes to (3, {}) via t -> {} t", norm.b_prime, norm.scale);
    let orig = markoff::components(&MarkoffParams::new(ctx, 6, 5).unwrap()).unwrap();
    let image = markoff::components(&MarkoffParams::new(ctx, 3, norm.b_prime).unwrap()).unwrap();
    assert_eq!(orig.component_sizes, image.component_sizes);
    println!("component profiles agree: {:?}", orig.component_sizes);

    // the giant report carries the raw bound shapes for plotting
    let giant = markoff::giant_report(&MarkoffParams::classical(FieldCtx::new(97).unwrap())).unwrap();
    println!(
        "\np = 97: giant fraction {:.4}, min component {}, exp(sqrt(log p)) = {:.2}",
        giant.giant_fraction, giant.min_component, giant.exp_sqrt_log_p
    );
}
