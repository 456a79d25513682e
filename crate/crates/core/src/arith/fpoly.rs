//! Dense univariate polynomials over `F_p` (coefficients low to high).

use super::{invmod, mulmod};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FPoly::new(p, vec![1])
    }

    /// `x`
    pub fn x(p: u64) -> Self {
        FPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect();
        FPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect();
        FPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FPoly) -> FPoly {
        if self.is_zero() || o.is_zero() {
            return FPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        FPoly::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> FPoly {
        FPoly::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, s, self.p)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &FPoly) -> (FPoly, FPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = invmod(d.lead(), self.p).expect("leading coefficient is a unit");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mulmod(r[i], inv, self.p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let t = mulmod(c, b, self.p);
                r[i - dd + j] = (r[i - dd + j] + self.p - t) % self.p;
            }
        }
        (FPoly::new(self.p, q), FPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &FPoly) -> FPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> FPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), self.p).expect("unit lead"))
    }

    pub fn gcd(&self, o: &FPoly) -> FPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FPoly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p)).collect();
        FPoly::new(self.p, c)
    }

    pub fn mulmod(&self, o: &FPoly, m: &FPoly) -> FPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &FPoly) -> FPoly {
        let mut base = self.rem(m);
        let mut acc = FPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// Square-free test via `gcd(f, f') = 1`. A zero derivative (a `p`-th
    /// power) counts as not square-free unless `f` is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Rabin's test: `gcd(f, x^{p^i} - x) = 1` for every `i <= m/2`.
    pub fn is_irreducible(&self) -> bool {
        let m = match self.degree() {
            None | Some(0) => return false,
            Some(m) => m,
        };
        let x = FPoly::x(self.p);
        let mut h = x.clone();
        for _ in 1..=m / 2 {
            h = h.powmod(self.p, self);
            if self.gcd(&h.sub(&x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Degrees of the irreducible factors of a square-free polynomial,
    /// ascending, by distinct-degree factorization.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = FPoly::x(self.p);
        let mut h = x.clone();
        let mut i = 0;
        while let Some(df) = f.degree() {
            if df == 0 {
                break;
            }
            i += 1;
            if 2 * i > df {
                out.push(df);
                break;
            }
            h = h.powmod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                for _ in 0..dg / i {
                    out.push(i);
                }
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }
}

/// The first monic irreducible of degree `m` in the order
/// `x^m + c_{m-1}x^{m-1} + ... + c_0` where `(c_0, ..., c_{m-1})` are the
/// base-`p` digits of `t = 0, 1, 2, ...` (least significant first).
pub fn find_irreducible(p: u64, m: usize) -> FPoly {
    assert!(m >= 1);
    let mut t: u128 = 0;
    loop {
        let mut c = Vec::with_capacity(m + 1);
        let mut u = t;
        for _ in 0..m {
            c.push((u % p as u128) as u64);
            u /= p as u128;
        }
        c.push(1);
        let f = FPoly::new(p, c);
        if f.is_irreducible() {
            return f;
        }
        t += 1;
    }
}
