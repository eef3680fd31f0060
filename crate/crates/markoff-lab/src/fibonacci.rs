//! Fibonacci residues: Pisano periods modulo arbitrary N >= 2, the two
//! structural period relations, the Binet parameterization of the
//! residue set over `F_p` / `F_{p^2}`, and the derived subgroup- and
//! shift-intersection bounds.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{self, FfError, FieldCtx, Fp2, Subgroup};
use crate::recurrence::{BoundReport, Flag};

/// `pi(N) <= 6N`, so the iteration guard caps N itself.
pub const MAX_MODULUS: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibError {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("modulus must be at least 2, got {0}")]
    SmallModulus(u64),
    #[error("modulus {0} exceeds the iteration guard")]
    Guard(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("corollary checks need p >= 7, got {0}")]
    SmallPrime(u64),
}

/// The Pisano period `pi(N)` and the set of residues `f_n mod N` visits.
#[derive(Debug, Clone, Serialize)]
pub struct PisanoRecord {
    pub modulus: u64,
    pub period: u64,
    pub residue_set: BTreeSet<u64>,
}

pub fn pisano(n: u64) -> Result<PisanoRecord, FibError> {
    if n < 2 {
        return Err(FibError::SmallModulus(n));
    }
    if n > MAX_MODULUS {
        return Err(FibError::Guard(n));
    }
    let mut residue_set = BTreeSet::new();
    let (mut a, mut b) = (0u64, 1u64 % n);
    let mut period = 0u64;
    loop {
        residue_set.insert(a);
        let next = (a + b) % n;
        a = b;
        b = next;
        period += 1;
        if a == 0 && b == 1 % n {
            break;
        }
    }
    Ok(PisanoRecord { modulus: n, period, residue_set })
}

/// `pi(mn) = lcm(pi(m), pi(n))` for coprime m, n.
pub fn pisano_lcm_check(m: u64, n: u64) -> Result<bool, FibError> {
    if ff::gcd(m, n) != 1 {
        return Err(FibError::NotCoprime(m, n));
    }
    let pm = pisano(m)?.period;
    let pn = pisano(n)?.period;
    Ok(pisano(m * n)?.period == ff::lcm(pm, pn))
}

/// `pi(p^{k+1})` is `pi(p^k)` or `p * pi(p^k)`.
pub fn pisano_prime_power_check(p: u64, k: u32) -> Result<bool, FibError> {
    if !ff::is_prime(p) {
        return Err(FibError::NotPrime(p));
    }
    let pk = p.checked_pow(k).filter(|&v| v <= MAX_MODULUS).ok_or(FibError::Guard(p))?;
    let pk1 = pk.checked_mul(p).filter(|&v| v <= MAX_MODULUS).ok_or(FibError::Guard(p))?;
    let lower = pisano(pk)?.period;
    let upper = pisano(pk1)?.period;
    Ok(upper == lower || upper == p * lower)
}

/// How the residue set was produced: through the closed form, or by
/// iteration when `sqrt(5)` degenerates (p = 2, 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BinetPath {
    ClosedForm,
    IterationFallback,
}

/// Fibonacci residues via `f_n = 5^{-1/2} (lambda^n - (-1)^n lambda^{-n})`
/// with `lambda = (1 + sqrt(5)) / 2` in `F_p` or `F_{p^2}`. The printed
/// Binet formula carries a plus between the terms, which already fails
/// at f_0; the minus is the reading iteration confirms.
pub fn binet_residue_set(p: u64) -> Result<(BTreeSet<u64>, BinetPath), FibError> {
    if !ff::is_prime(p) {
        return Err(FibError::NotPrime(p));
    }
    if p == 2 || p == 5 {
        // sqrt(5) is 0 or absent; iteration is authoritative
        return Ok((pisano(p)?.residue_set, BinetPath::IterationFallback));
    }
    let ctx = FieldCtx::new_relaxed(p)?;
    let sqrt5 = match ctx.sqrt(5) {
        Some(r) => Fp2::from_base(r),
        None => {
            // 5 = d t^2 for the fixed non-residue d, so sqrt(5) = t w
            let t = ctx
                .sqrt(ctx.mul(5, ctx.inv(ctx.nonresidue())))
                .expect("5/d is a residue when 5 is not");
            Fp2::new(0, t)
        }
    };
    let inv_sqrt5 = ctx.inv2(sqrt5);
    let half = Fp2::from_base(ctx.inv(2));
    let lambda = ctx.mul2(ctx.add2(Fp2::ONE, sqrt5), half);
    let order = ctx.mul_order(lambda)?;
    let span = ff::lcm(order, 2);
    let mut set = BTreeSet::new();
    let mut h = Fp2::ONE; // lambda^n, n = 0
    for n in 0..span {
        let alt = if n % 2 == 0 { ctx.inv2(h) } else { ctx.neg2(ctx.inv2(h)) };
        let val = ctx.mul2(inv_sqrt5, ctx.sub2(h, alt));
        debug_assert!(val.is_base(), "Binet value escaped the base field");
        set.insert(val.a);
        h = ctx.mul2(h, lambda);
    }
    Ok((set, BinetPath::ClosedForm))
}

/// `|F_p cap G| < max(6 * 2^{1/3} pi(p)^{1/3} |G|^{1/3}, 12 pi(p) |G| / p)`.
pub fn corollary2_check(p: u64, g: &Subgroup) -> Result<BoundReport, FibError> {
    if p < 7 {
        return Err(FibError::SmallPrime(p));
    }
    let rec = pisano(p)?;
    let lhs = rec
        .residue_set
        .iter()
        .filter(|&&v| v != 0 && g.contains(Fp2::from_base(v)))
        .count() as u64;
    let pi = rec.period as f64;
    let gs = g.order() as f64;
    let b1 = 6.0 * 2f64.cbrt() * pi.cbrt() * gs.cbrt();
    let b2 = 12.0 * pi * gs / p as f64;
    Ok(BoundReport::from_branches(p, lhs, b1, b2, vec![]))
}

/// `|F_p cap (F_p + q)| < max(12 pi(p)^{2/3}, 12 pi(p)^2 / p)`.
pub fn corollary3_check(p: u64, q: u64) -> Result<BoundReport, FibError> {
    if p < 7 {
        return Err(FibError::SmallPrime(p));
    }
    let rec = pisano(p)?;
    let q = q % p;
    let mut flags = Vec::new();
    if q == 0 {
        flags.push(Flag::TrivialShift);
    }
    // v in F and v in F + q  <=>  v - q in F
    let lhs = rec
        .residue_set
        .iter()
        .filter(|&&v| rec.residue_set.contains(&((v + p - q) % p)))
        .count() as u64;
    let pi = rec.period as f64;
    let b1 = 12.0 * pi.powf(2.0 / 3.0);
    let b2 = 12.0 * pi * pi / p as f64;
    Ok(BoundReport::from_branches(p, lhs, b1, b2, flags))
}
