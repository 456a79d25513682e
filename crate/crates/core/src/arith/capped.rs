use super::{bigint_mod_u64, invmod, mulmod, valuation_u64, LocalRing, Ring, Valuation};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// Largest cap `N` with `p^N < 2^63`.
pub fn max_cap(p: u64) -> u32 {
    let mut n = 0;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 63) {
        acc *= p as u128;
        n += 1;
    }
    n
}

/// A residue modulo `p^cap`.
///
/// Binary operations on different caps work modulo the smaller one; division
/// by `p^m` lowers the cap by `m`. Nothing ever raises a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CappedResidue {
    value: u64,
    p: u64,
    cap: u32,
    modulus: u64,
}

impl CappedResidue {
    pub fn new(value: u64, p: u64, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::ZeroCap);
        }
        if cap > max_cap(p) {
            return Err(Error::CapTooLarge { p, cap });
        }
        let modulus = p.pow(cap);
        Ok(CappedResidue { value: value % modulus, p, cap, modulus })
    }

    pub fn from_bigint(v: &BigInt, p: u64, cap: u32) -> Result<Self> {
        let c = Self::new(0, p, cap)?;
        Ok(CappedResidue { value: bigint_mod_u64(v, c.modulus), ..c })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Narrows to a smaller cap (never widens).
    pub fn truncate(&self, cap: u32) -> Self {
        if cap >= self.cap {
            return *self;
        }
        let modulus = self.p.pow(cap);
        CappedResidue { value: self.value % modulus, p: self.p, cap, modulus }
    }

    /// Symmetric lift to `(-p^cap/2, p^cap/2]`.
    pub fn lift_signed(&self) -> i128 {
        let v = self.value as i128;
        if v > self.modulus as i128 / 2 {
            v - self.modulus as i128
        } else {
            v
        }
    }

    fn common(&self, o: &Self) -> (u64, u64, u32, u64) {
        debug_assert_eq!(self.p, o.p);
        if self.cap == o.cap {
            (self.value, o.value, self.cap, self.modulus)
        } else if self.cap < o.cap {
            (self.value, o.value % self.modulus, self.cap, self.modulus)
        } else {
            (self.value % o.modulus, o.value, o.cap, o.modulus)
        }
    }
}

impl Ring for CappedResidue {
    fn zero_like(&self) -> Self {
        CappedResidue { value: 0, ..*self }
    }
    fn one_like(&self) -> Self {
        CappedResidue { value: 1 % self.modulus, ..*self }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b, cap, m) = self.common(o);
        let s = a + b;
        CappedResidue { value: if s >= m { s - m } else { s }, p: self.p, cap, modulus: m }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b, cap, m) = self.common(o);
        CappedResidue { value: if a >= b { a - b } else { a + m - b }, p: self.p, cap, modulus: m }
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b, cap, m) = self.common(o);
        CappedResidue { value: mulmod(a, b, m), p: self.p, cap, modulus: m }
    }
    fn neg(&self) -> Self {
        CappedResidue { value: if self.value == 0 { 0 } else { self.modulus - self.value }, ..*self }
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        CappedResidue { value: bigint_mod_u64(v, self.modulus), ..*self }
    }
}

impl LocalRing for CappedResidue {
    fn prime(&self) -> u64 {
        self.p
    }
    fn valuation(&self) -> Valuation {
        match valuation_u64(self.value, self.p) {
            Valuation::Infinite => Valuation::AtLeast(self.cap),
            v => v,
        }
    }
    fn div_p_pow(&self, m: u32) -> Self {
        if m == 0 {
            return *self;
        }
        let pm = self.p.pow(m);
        debug_assert!(self.value % pm == 0 && m <= self.cap);
        let cap = self.cap - m;
        let modulus = self.modulus / pm;
        CappedResidue { value: (self.value / pm) % modulus, p: self.p, cap, modulus }
    }
    fn precision(&self) -> Option<u32> {
        Some(self.cap)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.value % self.p == 0 {
            return None;
        }
        invmod(self.value, self.modulus).map(|v| CappedResidue { value: v, ..*self })
    }
}
