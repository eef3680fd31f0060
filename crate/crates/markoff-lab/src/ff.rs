//! Exact arithmetic in `F_p` and the quadratic extension `F_{p^2}`.
//!
//! Everything else in the crate funnels through [`FieldCtx`]: it pins the
//! prime `p` together with the least quadratic non-residue `d`, so that
//! `F_{p^2} = F_p(w)` with `w^2 = d` is fixed once per context and
//! extension elements are comparable across runs.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Moduli are capped at `2^31` so that every product of two reduced
/// values fits a `u128` intermediate with room to spare.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Default cap on the number of elements a materialized subgroup may hold.
pub const DEFAULT_SUBGROUP_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^31 cap")]
    ModulusTooLarge(u64),
    #[error("p = {0} rejected by default (division by 2 or 3 occurs downstream); use FieldCtx::new_relaxed")]
    SmallPrime(u64),
    #[error("order of zero undefined")]
    OrderOfZero,
    #[error("subgroup order exceeds the cap of {0} elements")]
    SubgroupCapExceeded(u64),
    #[error("operation needs an odd modulus")]
    EvenModulus,
}

/// Deterministic Miller-Rabin, valid for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, with an early primality exit so
/// that `p^2 - 1` for desk-scale `p` stays cheap.
pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while n > 1 {
        if is_prime(n) {
            out.push((n, 1));
            break;
        }
        if d.saturating_mul(d) > n {
            out.push((n, 1));
            break;
        }
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    out
}

/// Element of `F_{p^2}` in the basis `(1, w)`, `w^2` equal to the
/// context's non-residue. `b = 0` embeds `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { a: 0, b: 0 };
    pub const ONE: Fp2 = Fp2 { a: 1, b: 0 };

    pub fn new(a: u64, b: u64) -> Self {
        Fp2 { a, b }
    }

    pub fn from_base(a: u64) -> Self {
        Fp2 { a, b: 0 }
    }

    pub fn is_base(&self) -> bool {
        self.b == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl Serialize for Fp2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The two roots of a monic quadratic, plus a flag for a double root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadRoots {
    pub r1: Fp2,
    pub r2: Fp2,
    pub degenerate: bool,
}

/// Prime modulus plus the least quadratic non-residue defining `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldCtx {
    p: u64,
    nonresidue: u64,
}

impl FieldCtx {
    /// Context for an odd prime `p >= 5`.
    pub fn new(p: u64) -> Result<Self, FfError> {
        if p == 2 || p == 3 {
            return Err(FfError::SmallPrime(p));
        }
        Self::new_relaxed(p)
    }

    /// Admits `p = 2` and `p = 3` for the operations that never divide
    /// by 2 or 3. For `p = 2` there is no quadratic non-residue and the
    /// extension-field operations are unavailable.
    pub fn new_relaxed(p: u64) -> Result<Self, FfError> {
        if p > MAX_MODULUS {
            return Err(FfError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        let nonresidue = if p == 2 {
            1
        } else {
            (2..p)
                .find(|&d| pow_mod(d, (p - 1) / 2, p) == p - 1)
                .expect("odd prime has a non-residue")
        };
        Ok(FieldCtx { p, nonresidue })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    // --- base field -------------------------------------------------------

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    /// Reduce a possibly negative integer.
    pub fn reduce_i64(&self, x: i64) -> u64 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u64
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        mul_mod(x, y, self.p)
    }

    pub fn pow(&self, x: u64, e: u64) -> u64 {
        pow_mod(x, e, self.p)
    }

    /// Inverse of a nonzero element via Fermat.
    pub fn inv(&self, x: u64) -> u64 {
        debug_assert!(x % self.p != 0, "inverse of zero");
        pow_mod(x, self.p - 2, self.p)
    }

    /// Legendre symbol as an integer in `{-1, 0, 1}`.
    pub fn legendre(&self, x: u64) -> i32 {
        let x = x % self.p;
        if x == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        let t = pow_mod(x, (self.p - 1) / 2, self.p);
        if t == 1 {
            1
        } else {
            -1
        }
    }

    /// Canonical square root (the smaller of the pair), Tonelli-Shanks.
    pub fn sqrt(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        if x == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(x);
        }
        if self.legendre(x) == -1 {
            return None;
        }
        let p = self.p;
        let r = if p % 4 == 3 {
            pow_mod(x, (p + 1) / 4, p)
        } else {
            // Tonelli-Shanks with the context's non-residue as the
            // 2-group generator seed.
            let mut q = p - 1;
            let mut s = 0u32;
            while q % 2 == 0 {
                q /= 2;
                s += 1;
            }
            let mut m = s;
            let mut c = pow_mod(self.nonresidue, q, p);
            let mut t = pow_mod(x, q, p);
            let mut r = pow_mod(x, (q + 1) / 2, p);
            while t != 1 {
                let mut i = 0u32;
                let mut t2 = t;
                while t2 != 1 {
                    t2 = mul_mod(t2, t2, p);
                    i += 1;
                }
                let mut b = c;
                for _ in 0..(m - i - 1) {
                    b = mul_mod(b, b, p);
                }
                m = i;
                c = mul_mod(b, b, p);
                t = mul_mod(t, c, p);
                r = mul_mod(r, b, p);
            }
            r
        };
        Some(r.min(p - r))
    }

    // --- extension field --------------------------------------------------

    pub fn add2(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2::new(self.add(x.a, y.a), self.add(x.b, y.b))
    }

    pub fn sub2(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2::new(self.sub(x.a, y.a), self.sub(x.b, y.b))
    }

    pub fn neg2(&self, x: Fp2) -> Fp2 {
        Fp2::new(self.neg(x.a), self.neg(x.b))
    }

    pub fn mul2(&self, x: Fp2, y: Fp2) -> Fp2 {
        // (a1 + b1 w)(a2 + b2 w) = a1a2 + d b1b2 + (a1b2 + a2b1) w
        let a = self.add(self.mul(x.a, y.a), self.mul(self.nonresidue, self.mul(x.b, y.b)));
        let b = self.add(self.mul(x.a, y.b), self.mul(x.b, y.a));
        Fp2::new(a, b)
    }

    pub fn scale2(&self, c: u64, x: Fp2) -> Fp2 {
        Fp2::new(self.mul(c, x.a), self.mul(c, x.b))
    }

    /// Norm `a^2 - d b^2` of an extension element, landing in `F_p`.
    pub fn norm2(&self, x: Fp2) -> u64 {
        self.sub(self.mul(x.a, x.a), self.mul(self.nonresidue, self.mul(x.b, x.b)))
    }

    pub fn inv2(&self, x: Fp2) -> Fp2 {
        debug_assert!(!x.is_zero(), "inverse of zero");
        let n = self.inv(self.norm2(x));
        Fp2::new(self.mul(x.a, n), self.mul(self.neg(x.b), n))
    }

    pub fn pow2(&self, x: Fp2, mut e: u64) -> Fp2 {
        let mut acc = Fp2::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul2(acc, base);
            }
            base = self.mul2(base, base);
            e >>= 1;
        }
        acc
    }

    /// `(a + b w) -> (a - b w)`, the p-power Frobenius.
    pub fn frobenius(&self, x: Fp2) -> Fp2 {
        Fp2::new(x.a, self.neg(x.b))
    }

    /// Roots of `t^2 - b t + c`, in `F_p` when the discriminant is a
    /// square and in `F_{p^2}` otherwise.
    pub fn quadratic_roots(&self, b: u64, c: u64) -> Result<QuadRoots, FfError> {
        if self.p == 2 {
            return Err(FfError::EvenModulus);
        }
        let b = b % self.p;
        let c = c % self.p;
        let half = self.inv(2);
        let disc = self.sub(self.mul(b, b), self.mul(4, c));
        match self.legendre(disc) {
            0 => {
                let r = Fp2::from_base(self.mul(b, half));
                Ok(QuadRoots { r1: r, r2: r, degenerate: true })
            }
            1 => {
                let s = self.sqrt(disc).expect("legendre said square");
                let r1 = Fp2::from_base(self.mul(self.add(b, s), half));
                let r2 = Fp2::from_base(self.mul(self.sub(b, s), half));
                Ok(QuadRoots { r1, r2, degenerate: false })
            }
            _ => {
                // disc = d * t^2 with t in F_p, so sqrt(disc) = t w.
                let t = self
                    .sqrt(self.mul(disc, self.inv(self.nonresidue)))
                    .expect("disc/d is a residue");
                let re = self.mul(b, half);
                let im = self.mul(t, half);
                let r1 = Fp2::new(re, im);
                let r2 = Fp2::new(re, self.neg(im));
                Ok(QuadRoots { r1, r2, degenerate: false })
            }
        }
    }

    /// Multiplicative order; divides `p - 1` for embedded base-field
    /// elements and `p^2 - 1` otherwise.
    pub fn mul_order(&self, x: Fp2) -> Result<u64, FfError> {
        if x.is_zero() {
            return Err(FfError::OrderOfZero);
        }
        let group = if x.is_base() {
            self.p - 1
        } else {
            self.p * self.p - 1
        };
        let mut order = group;
        for (q, _) in factor(group) {
            while order % q == 0 && self.pow2(x, order / q) == Fp2::ONE {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Smallest generator of `F_p^*`.
    pub fn primitive_root(&self) -> u64 {
        if self.p <= 3 {
            return self.p - 1;
        }
        let fs = factor(self.p - 1);
        (2..self.p)
            .find(|&g| fs.iter().all(|&(q, _)| pow_mod(g, (self.p - 1) / q, self.p) != 1))
            .expect("prime field has a generator")
    }

    /// All `x` in `F_p^*` with `x^k = 1`; there are `gcd(k, p-1)` of them.
    pub fn kth_roots_of_unity(&self, k: u64) -> Vec<u64> {
        assert!(k >= 1, "k must be positive");
        let d = gcd(k, self.p - 1);
        let h = pow_mod(self.primitive_root(), (self.p - 1) / d, self.p);
        let mut out = Vec::with_capacity(d as usize);
        let mut x = 1u64;
        for _ in 0..d {
            out.push(x);
            x = mul_mod(x, h, self.p);
        }
        out.sort_unstable();
        out
    }

    /// Materializes the cyclic subgroup generated by `x`, in power order.
    pub fn subgroup_generated(&self, x: Fp2, cap: Option<u64>) -> Result<Subgroup, FfError> {
        if x.is_zero() {
            return Err(FfError::OrderOfZero);
        }
        let cap = cap.unwrap_or(DEFAULT_SUBGROUP_CAP);
        let mut elements = vec![Fp2::ONE];
        let mut cur = x;
        while cur != Fp2::ONE {
            if elements.len() as u64 >= cap {
                return Err(FfError::SubgroupCapExceeded(cap));
            }
            elements.push(cur);
            cur = self.mul2(cur, x);
        }
        let members: HashSet<Fp2> = elements.iter().copied().collect();
        let order = elements.len() as u64;
        Ok(Subgroup { generator: x, elements, members, order })
    }

    /// One subgroup of `F_p^*` per divisor of `p - 1`, ascending by order.
    pub fn subgroups_of_units(&self) -> Vec<Subgroup> {
        let g = self.primitive_root();
        let n = self.p - 1;
        let mut divisors = divisors_of(n);
        divisors.sort_unstable();
        divisors
            .into_iter()
            .map(|d| {
                let gen = Fp2::from_base(pow_mod(g, n / d, self.p));
                self.subgroup_generated(gen, None).expect("order divides p-1")
            })
            .collect()
    }
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, e) in factor(n) {
        let base = divs.clone();
        let mut qe = 1u64;
        for _ in 0..e {
            qe *= q;
            divs.extend(base.iter().map(|d| d * qe));
        }
    }
    divs
}

/// A materialized cyclic subgroup of `F_{p^2}^*` (or `F_p^*`).
#[derive(Debug, Clone)]
pub struct Subgroup {
    generator: Fp2,
    elements: Vec<Fp2>,
    members: HashSet<Fp2>,
    order: u64,
}

impl Subgroup {
    pub fn generator(&self) -> Fp2 {
        self.generator
    }

    /// Elements in power order: `x^0, x^1, ...`.
    pub fn elements(&self) -> &[Fp2] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn contains(&self, x: Fp2) -> bool {
        self.members.contains(&x)
    }

    /// True when every element embeds `F_p`.
    pub fn is_base_field(&self) -> bool {
        self.elements.iter().all(Fp2::is_base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ctx_rejects_bad_moduli() {
        assert_eq!(FieldCtx::new(2).unwrap_err(), FfError::SmallPrime(2));
        assert_eq!(FieldCtx::new(3).unwrap_err(), FfError::SmallPrime(3));
        assert_eq!(FieldCtx::new(9).unwrap_err(), FfError::NotPrime(9));
        assert!(FieldCtx::new((1 << 31) + 11).is_err());
        assert!(FieldCtx::new_relaxed(3).is_ok());
    }

    #[test]
    fn least_nonresidue() {
        assert_eq!(FieldCtx::new(7).unwrap().nonresidue(), 3);
        assert_eq!(FieldCtx::new(11).unwrap().nonresidue(), 2);
        assert_eq!(FieldCtx::new(5).unwrap().nonresidue(), 2);
    }

    #[test]
    fn legendre_cases() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(ctx.legendre(0), 0);
        assert_eq!(ctx.legendre(1), 1);
        // squares mod 7 are {1, 2, 4}
        assert_eq!(ctx.legendre(3), -1);
        assert_eq!(ctx.legendre(2), 1);
    }

    #[test]
    fn sqrt_cases() {
        let ctx = FieldCtx::new(11).unwrap();
        assert_eq!(ctx.sqrt(4), Some(2));
        assert_eq!(ctx.sqrt(0), Some(0));
        assert_eq!(ctx.sqrt(5), Some(4)); // 4^2 = 16 = 5 mod 11
        assert_eq!(ctx.sqrt(2), None);
    }

    #[test]
    fn sqrt_exhaustive_small() {
        for p in [5u64, 13, 17, 41, 97, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            for x in 0..p {
                match ctx.sqrt(x) {
                    Some(r) => {
                        assert_eq!(ctx.mul(r, r), x);
                        assert!(r <= p - r || r == 0);
                        assert!(ctx.legendre(x) >= 0);
                    }
                    None => assert_eq!(ctx.legendre(x), -1),
                }
            }
        }
    }

    #[test]
    fn quadratic_roots_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        let r = ctx.quadratic_roots(2, 1).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.r1, Fp2::from_base(1));

        let ctx = FieldCtx::new(11).unwrap();
        let r = ctx.quadratic_roots(3, 1).unwrap();
        assert!(!r.degenerate);
        let roots: std::collections::BTreeSet<u64> = [r.r1.a, r.r2.a].into();
        assert_eq!(roots, [5u64, 9].into());

        // b=1, c=-1 over F_7: disc = 5, a non-residue (w^2 = 3)
        let ctx = FieldCtx::new(7).unwrap();
        let r = ctx.quadratic_roots(1, ctx.reduce_i64(-1)).unwrap();
        assert!(!r.r1.is_base());
        for root in [r.r1, r.r2] {
            // substitute back into t^2 - t + (-1)
            let check = ctx.add2(
                ctx.sub2(ctx.mul2(root, root), root),
                Fp2::from_base(ctx.reduce_i64(-1)),
            );
            assert!(check.is_zero(), "root {root} fails");
        }
    }

    #[test]
    fn vieta_on_roots() {
        for p in [7u64, 11, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            for b in 0..p.min(20) {
                for c in 0..p.min(20) {
                    let r = ctx.quadratic_roots(b, c).unwrap();
                    assert_eq!(ctx.add2(r.r1, r.r2), Fp2::from_base(b));
                    assert_eq!(ctx.mul2(r.r1, r.r2), Fp2::from_base(c));
                }
            }
        }
    }

    #[test]
    fn mul_order_examples() {
        let ctx = FieldCtx::new(11).unwrap();
        assert_eq!(ctx.mul_order(Fp2::ONE).unwrap(), 1);
        assert_eq!(ctx.mul_order(Fp2::from_base(10)).unwrap(), 2);
        assert_eq!(ctx.mul_order(Fp2::from_base(2)).unwrap(), 10);
        assert_eq!(ctx.mul_order(Fp2::ZERO).unwrap_err(), FfError::OrderOfZero);
    }

    #[test]
    fn kth_roots_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(ctx.kth_roots_of_unity(1), vec![1]);
        assert_eq!(ctx.kth_roots_of_unity(2), vec![1, 6]);
        assert_eq!(ctx.kth_roots_of_unity(3), vec![1, 2, 4]);
    }

    #[test]
    fn kth_roots_cardinality() {
        for p in [5u64, 7, 11, 13, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            for k in 1..=30 {
                let roots = ctx.kth_roots_of_unity(k);
                assert_eq!(roots.len() as u64, gcd(k, p - 1));
                for &x in &roots {
                    assert_eq!(ctx.pow(x, k), 1);
                }
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        let s = ctx.subgroup_generated(Fp2::from_base(3), None).unwrap();
        assert_eq!(s.order(), 6);
        let elems: Vec<u64> = s.elements().iter().map(|e| e.a).collect();
        assert_eq!(elems, vec![1, 3, 2, 6, 4, 5]);
        let s = ctx.subgroup_generated(Fp2::from_base(2), None).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.order(), ctx.mul_order(Fp2::from_base(2)).unwrap());
        let s = ctx.subgroup_generated(Fp2::ONE, None).unwrap();
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn subgroup_cap() {
        let ctx = FieldCtx::new(101).unwrap();
        let err = ctx
            .subgroup_generated(Fp2::from_base(ctx.primitive_root()), Some(10))
            .unwrap_err();
        assert_eq!(err, FfError::SubgroupCapExceeded(10));
    }

    #[test]
    fn frobenius_is_p_power() {
        for p in [5u64, 7, 11, 13] {
            let ctx = FieldCtx::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    let x = Fp2::new(a, b);
                    assert_eq!(ctx.pow2(x, p), ctx.frobenius(x));
                }
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [5u64, 11, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            for _ in 0..1000 {
                let x = Fp2::new(rng.gen_range(0..p), rng.gen_range(0..p));
                let y = Fp2::new(rng.gen_range(0..p), rng.gen_range(0..p));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let lhs = ctx.inv2(ctx.mul2(x, y));
                let rhs = ctx.mul2(ctx.inv2(y), ctx.inv2(x));
                assert_eq!(lhs, rhs);
                assert_eq!(ctx.pow2(x, p * p - 1), Fp2::ONE);
                let z = Fp2::new(rng.gen_range(0..p), rng.gen_range(0..p));
                assert_eq!(ctx.mul2(ctx.mul2(x, y), z), ctx.mul2(x, ctx.mul2(y, z)));
            }
        }
    }

    #[test]
    fn subgroups_of_units_cover_divisors() {
        let ctx = FieldCtx::new(13).unwrap();
        let subs = ctx.subgroups_of_units();
        let orders: Vec<u64> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
        for s in &subs {
            assert!(s.is_base_field());
        }
    }

    #[test]
    fn fp2_display() {
        assert_eq!(Fp2::from_base(5).to_string(), "5");
        assert_eq!(Fp2::new(2, 3).to_string(), "2+3*w");
    }
}
