use super::{bigint_mod_u64, invmod, mulmod, split_p_power, valuation_bigint, LocalRing, Ring, Valuation};
use crate::error::{Error, Result};
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element of `Z_(p)`: a reduced fraction whose denominator is prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRational {
    num: BigInt,
    den: BigInt,
    p: u64,
}

impl LocalRational {
    pub fn new(num: BigInt, den: BigInt, p: u64) -> Result<Self> {
        if Zero::is_zero(&den) {
            return Err(Error::NotInvertible);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if Zero::is_zero(&(&den % BigInt::from(p))) {
            return Err(Error::DenominatorNotUnit { p });
        }
        Ok(LocalRational { num, den, p })
    }

    pub fn from_int(v: impl Into<BigInt>, p: u64) -> Self {
        LocalRational { num: v.into(), den: BigInt::one(), p }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        One::is_one(&self.den)
    }

    fn reduced(num: BigInt, den: BigInt, p: u64) -> Self {
        if Zero::is_zero(&num) {
            return LocalRational { num, den: BigInt::one(), p };
        }
        let g = num.gcd(&den);
        if One::is_one(&g) {
            LocalRational { num, den, p }
        } else {
            LocalRational { num: num / &g, den: den / &g, p }
        }
    }

    /// Image in `Z/p^N`, given `m = p^N`.
    pub fn residue(&self, m: u64) -> u64 {
        let n = bigint_mod_u64(&self.num, m);
        let d = bigint_mod_u64(&self.den, m);
        mulmod(n, invmod(d, m).expect("denominator is a unit"), m)
    }
}

impl fmt::Display for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if One::is_one(&self.den) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Ring for LocalRational {
    fn zero_like(&self) -> Self {
        LocalRational::from_int(0, self.p)
    }
    fn one_like(&self) -> Self {
        LocalRational::from_int(1, self.p)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.num)
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduced(&self.num + &o.num, self.den.clone(), self.p);
        }
        Self::reduced(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den, self.p)
    }
    fn sub(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduced(&self.num - &o.num, self.den.clone(), self.p);
        }
        Self::reduced(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den, self.p)
    }
    fn mul(&self, o: &Self) -> Self {
        Self::reduced(&self.num * &o.num, &self.den * &o.den, self.p)
    }
    fn neg(&self) -> Self {
        LocalRational { num: -&self.num, den: self.den.clone(), p: self.p }
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        LocalRational::from_int(v.clone(), self.p)
    }
}

impl LocalRing for LocalRational {
    fn prime(&self) -> u64 {
        self.p
    }
    fn valuation(&self) -> Valuation {
        valuation_bigint(&self.num, self.p)
    }
    fn div_p_pow(&self, m: u32) -> Self {
        let pm = BigInt::from(self.p).pow(m);
        let (q, r) = self.num.div_rem(&pm);
        debug_assert!(Zero::is_zero(&r), "valuation below divisor");
        LocalRational { num: q, den: self.den.clone(), p: self.p }
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(&self.num) || split_p_power(&self.num, self.p).0 > 0 {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Some(LocalRational { num, den, p: self.p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(n: i64, d: i64) -> LocalRational {
        LocalRational::new(n.into(), d.into(), 5).unwrap()
    }

    #[test]
    fn denominator_must_be_unit() {
        assert_eq!(LocalRational::new(6.into(), 35.into(), 5), Err(Error::DenominatorNotUnit { p: 5 }));
        // 10/15 reduces to 2/3, which is fine
        assert!(LocalRational::new(10.into(), 15.into(), 5).is_ok());
    }

    #[test]
    fn valuations() {
        assert_eq!(lr(50, 3).valuation(), Valuation::Finite(2));
        assert_eq!(lr(0, 1).valuation(), Valuation::Infinite);
        assert_eq!(lr(50, 3).div_p_pow(2), lr(2, 3));
    }

    #[test]
    fn residue_roundtrip() {
        let x = lr(7, 3);
        let m = 625;
        assert_eq!(mulmod(x.residue(m), 3, m), 7);
        assert_eq!(lr(-1, 1).residue(m), 624);
    }

    #[test]
    fn inverse() {
        assert_eq!(lr(-2, 3).unit_inverse(), Some(lr(-3, 2)));
        assert_eq!(lr(10, 3).unit_inverse(), None);
    }
}
