use super::{bigint_mod_u64, invmod, is_prime, mulmod, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// `F_p` with primality checked once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 62 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { value: v % self.p, p: self.p }
    }

    pub fn from_i64(&self, v: i64) -> Fp {
        Fp { value: v.rem_euclid(self.p as i64) as u64, p: self.p }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fp {
        Fp { value: bigint_mod_u64(v, self.p), p: self.p }
    }

    /// All elements in the order `0, 1, ..., p-1`.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp { value: v, p: self.p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    /// Checks primality of `p`; prefer [`PrimeField::elem`] in loops.
    pub fn new(value: u64, p: u64) -> Result<Self> {
        Ok(PrimeField::new(p)?.elem(value))
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn inv(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        invmod(self.value, self.p).map(|v| Fp { value: v, p: self.p })
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let s = self.value + o.value;
        Fp { value: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let v = if self.value >= o.value { self.value - o.value } else { self.value + self.p - o.value };
        Fp { value: v, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp { value: mulmod(self.value, o.value, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        Fp { value: bigint_mod_u64(v, self.p), p: self.p }
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Fp { value: v.rem_euclid(self.p as i64) as u64, p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert!(Fp::new(3, 1).is_err());
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(13).unwrap();
        for a in f.elements().skip(1) {
            assert!(a.pow(12).is_one());
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }
}
