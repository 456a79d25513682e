//! Coefficient rings.
//!
//! Elements carry their own context (prime, cap, modulus) so that generic
//! code never needs a separate ring object. `zero_like`/`one_like` build a
//! constant in the same ring as `self`.

mod capped;
mod ext_field;
pub mod fpoly;
mod local;
mod prime_field;

pub use capped::{max_cap, CappedResidue};
pub use ext_field::{ExtElem, ExtField};
pub use local::LocalRational;
pub use prime_field::{Fp, PrimeField};

use core::fmt::Debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_bigint_like(&self, v: &BigInt) -> Self;

    fn from_i64_like(&self, v: i64) -> Self {
        self.from_bigint_like(&BigInt::from(v))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A ring in which `p` is the only prime that matters: `Z_(p)` or `Z/p^N`.
pub trait LocalRing: Ring {
    fn prime(&self) -> u64;
    fn valuation(&self) -> Valuation;
    /// `self / p^m`; the caller guarantees `valuation >= m`.
    fn div_p_pow(&self, m: u32) -> Self;
    /// Inverse of a `p`-adic unit, `None` otherwise.
    fn unit_inverse(&self) -> Option<Self>;

    /// The cap of a truncated residue, `None` for exact elements.
    fn precision(&self) -> Option<u32> {
        None
    }

    fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }
}

/// `p`-adic valuation of an element.
///
/// `AtLeast(N)` is what a capped residue that is zero modulo `p^N` knows
/// about itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
    Infinite,
}

impl Valuation {
    /// The guaranteed lower bound, `None` for `Infinite`.
    pub fn lower_bound(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Valuation::AtLeast(_))
    }

    /// Valuation of a product. An `AtLeast` factor makes the result a lower
    /// bound too.
    pub fn mul(self, other: Valuation) -> Valuation {
        use Valuation::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a + b),
            (Finite(a), AtLeast(b)) | (AtLeast(a), Finite(b)) | (AtLeast(a), AtLeast(b)) => AtLeast(a + b),
        }
    }

    /// Order used for pivot selection: smaller guaranteed valuation first.
    pub fn sort_key(self) -> u64 {
        match self {
            Valuation::Finite(v) => 2 * v as u64,
            Valuation::AtLeast(v) => 2 * v as u64 + 1,
            Valuation::Infinite => u64::MAX,
        }
    }
}

pub fn valuation_u64(mut x: u64, p: u64) -> Valuation {
    if x == 0 {
        return Valuation::Infinite;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

pub fn valuation_bigint(x: &BigInt, p: u64) -> Valuation {
    if Zero::is_zero(x) {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !Zero::is_zero(&r) {
            return Valuation::Finite(v);
        }
        x = q;
        v += 1;
    }
}

/// Strips all factors of `p`, returning `(v, x / p^v)`. `x` must be nonzero.
pub fn split_p_power(x: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !Zero::is_zero(&r) {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

/// Reduces a big integer into `[0, m)`.
pub fn bigint_mod_u64(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `floor(log_p(x))` for `x >= 1`.
pub fn ilog(x: u64, p: u64) -> u32 {
    debug_assert!(x >= 1 && p >= 2);
    let mut v = 0;
    let mut acc = 1u128;
    while acc * p as u128 <= x as u128 {
        acc *= p as u128;
        v += 1;
    }
    v
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        v.clone()
    }
}
