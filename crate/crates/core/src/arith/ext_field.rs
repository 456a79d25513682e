use super::fpoly::{find_irreducible, FPoly};
use super::{bigint_mod_u64, mulmod, Ring};
use crate::error::{Error, Result};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;

/// `F_{p^m} = F_p[x]/(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    m: usize,
    modulus: FPoly,
}

impl ExtField {
    /// Uses the deterministic search of [`find_irreducible`].
    pub fn new(p: u64, m: usize) -> Result<Arc<Self>> {
        super::PrimeField::new(p)?;
        if m == 0 {
            return Err(Error::InvalidSpec("extension degree must be positive".into()));
        }
        Ok(Arc::new(ExtField { p, m, modulus: find_irreducible(p, m) }))
    }

    pub fn with_modulus(modulus: FPoly) -> Result<Arc<Self>> {
        let p = modulus.p();
        super::PrimeField::new(p)?;
        let m = modulus.degree().unwrap_or(0);
        if m == 0 || modulus.lead() != 1 || !modulus.is_irreducible() {
            return Err(Error::NotInvertible);
        }
        Ok(Arc::new(ExtField { p, m, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &FPoly {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(self: &Arc<Self>) -> ExtElem {
        ExtElem { c: vec![0; self.m], field: self.clone() }
    }

    pub fn from_u64(self: &Arc<Self>, v: u64) -> ExtElem {
        let mut c = vec![0; self.m];
        c[0] = v % self.p;
        ExtElem { c, field: self.clone() }
    }

    /// The element whose coordinates are the base-`p` digits of `t`.
    pub fn element(self: &Arc<Self>, mut t: u64) -> ExtElem {
        let mut c = vec![0; self.m];
        for slot in c.iter_mut() {
            *slot = t % self.p;
            t /= self.p;
        }
        ExtElem { c, field: self.clone() }
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order()).map(move |t| self.element(t))
    }
}

#[derive(Debug, Clone)]
pub struct ExtElem {
    c: Vec<u64>,
    field: Arc<ExtField>,
}

impl PartialEq for ExtElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.field, &o.field) || self.field == o.field)
    }
}

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    fn from_poly(&self, f: FPoly) -> ExtElem {
        let mut c = vec![0; self.field.m];
        for (i, &v) in f.coeffs().iter().enumerate() {
            c[i] = v;
        }
        ExtElem { c, field: self.field.clone() }
    }

    fn poly(&self) -> FPoly {
        FPoly::new(self.field.p, self.c.clone())
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> ExtElem {
        self.pow(self.field.p)
    }

    pub fn inv(&self) -> Option<ExtElem> {
        if Ring::is_zero(self) {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }
}

impl Ring for ExtElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.from_u64(1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.field.p;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect();
        ExtElem { c, field: self.field.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        let p = self.field.p;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + p - b) % p).collect();
        ExtElem { c, field: self.field.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.field.p;
        let m = self.field.m;
        if m == 1 {
            return ExtElem { c: vec![mulmod(self.c[0], o.c[0], p)], field: self.field.clone() };
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(a, b, p)) % p;
            }
        }
        // reduce using the monic modulus
        let f = self.field.modulus.coeffs();
        for i in (m..2 * m - 1).rev() {
            let t = prod[i];
            if t == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &fj) in f.iter().enumerate().take(m) {
                let k = i - m + j;
                prod[k] = (prod[k] + p - mulmod(t, fj, p)) % p;
            }
        }
        prod.truncate(m);
        ExtElem { c: prod, field: self.field.clone() }
    }
    fn neg(&self) -> Self {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        ExtElem { c, field: self.field.clone() }
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        self.field.from_u64(bigint_mod_u64(v, self.field.p))
    }
}

impl ExtElem {
    /// Reference multiplication through [`FPoly`], used by tests.
    pub fn mul_via_poly(&self, o: &Self) -> Self {
        self.from_poly(self.poly().mulmod(&o.poly(), &self.field.modulus))
    }
}
