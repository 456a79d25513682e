//! Dense univariate integer polynomials in `T`, lowest degree first.

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// `1 - c T^k`.
    pub fn one_minus(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[0] = BigInt::one();
        v[k] -= c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly { coeffs: Vec::new() };
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `P(cT)`.
    pub fn scale_var(&self, c: &BigInt) -> Self {
        let mut f = BigInt::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &f);
            f *= c;
        }
        Self::new(v)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    /// `T^deg P(1/T)` for a given `deg >= degree`.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            v[deg - i] = a.clone();
        }
        Self::new(v)
    }

    /// Exact quotient by a divisor with constant term `±1`, computed as a
    /// power series and checked.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let d0 = d.coeffs.first().ok_or(Error::NotInvertible)?;
        if !d0.abs().is_one() {
            return Err(Error::NotInvertible);
        }
        let (ld, ls) = (d.coeffs.len(), self.coeffs.len());
        if ls == 0 {
            return Ok(self.clone());
        }
        if ls < ld {
            return Err(Error::InexactDivision);
        }
        let n = ls - ld + 1;
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n];
        for i in 0..n {
            let c = &rem[i] * d0;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(q))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}
