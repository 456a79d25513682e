//! Sparse multivariate polynomials: exponent vector -> nonzero coefficient.

use crate::arith::Ring;
use crate::error::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct SparsePoly<R> {
    names: Vec<String>,
    weights: Option<Vec<u32>>,
    terms: BTreeMap<Exponent, R>,
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All exponent vectors of `n` variables with total degree `<= max`,
/// ordered by degree, then lexicographically descending in the first
/// variable.
pub fn monomials_up_to(n: usize, max: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for t in 0..=max {
        monomials_of_degree(n, t, &mut out);
    }
    out
}

pub fn monomials_of_degree(n: usize, t: u32, out: &mut Vec<Exponent>) {
    fn rec(n: usize, t: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() + 1 == n {
            cur.push(t);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=t).rev() {
            cur.push(a);
            rec(n, t - a, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(n, t, &mut Vec::with_capacity(n), out);
}

impl<R: Ring> SparsePoly<R> {
    pub fn zero(names: Vec<String>) -> Self {
        SparsePoly { names, weights: None, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(names: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, R)>,
    {
        let mut p = SparsePoly::zero(names);
        for (e, c) in terms {
            if e.len() != p.arity() {
                return Err(Error::ArityMismatch { expected: p.arity(), got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn monomial(names: Vec<String>, e: Exponent, c: R) -> Self {
        let mut p = SparsePoly::zero(names);
        p.add_term(e, c);
        p
    }

    pub fn with_weights(mut self, weights: Option<Vec<u32>>) -> Result<Self> {
        if let Some(w) = &weights {
            if w.len() != self.arity() {
                return Err(Error::ArityMismatch { expected: self.arity(), got: w.len() });
            }
            if w.iter().any(|&a| a == 0) {
                return Err(Error::InvalidSpec("weights must be positive".into()));
            }
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&R> {
        self.terms.get(e)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Exponent, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn weighted_degree_of(&self, e: &[u32]) -> u32 {
        match &self.weights {
            Some(w) => e.iter().zip(w).map(|(a, b)| a * b).sum(),
            None => total_degree(e),
        }
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.weighted_degree_of(e)).max()
    }

    /// Checks (weighted) homogeneity of degree `d`, reporting the first
    /// offending term.
    pub fn check_homogeneous(&self, d: u32) -> Result<()> {
        for e in self.terms.keys() {
            let found = self.weighted_degree_of(e);
            if found != d {
                return Err(Error::NotHomogeneous { degree: d, found });
            }
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut r = SparsePoly { names: self.names.clone(), weights: self.weights.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.mul(s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = SparsePoly { names: self.names.clone(), weights: self.weights.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca.mul(cb));
            }
        }
        r
    }

    /// `self * c x^e`
    pub fn mul_monomial(&self, e: &[u32], c: &R) -> Self {
        let mut r = SparsePoly { names: self.names.clone(), weights: self.weights.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            let ee = ea.iter().zip(e).map(|(a, b)| a + b).collect();
            r.add_term(ee, ca.mul(c));
        }
        r
    }

    pub fn pow(&self, k: u32, one: &R) -> Self {
        let mut acc = SparsePoly::monomial(self.names.clone(), alloc::vec![0; self.arity()], one.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = SparsePoly { names: self.names.clone(), weights: self.weights.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            r.add_term(f, c.mul(&c.from_i64_like(e[i] as i64)));
        }
        r
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparsePoly<S> {
        let mut r = SparsePoly { names: self.names.clone(), weights: self.weights.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Substitutes `x_i = v` and drops the variable.
    pub fn specialize(&self, i: usize, v: &R) -> Self {
        let mut names = self.names.clone();
        names.remove(i);
        let weights = self.weights.clone().map(|mut w| {
            w.remove(i);
            w
        });
        let mut r = SparsePoly { names, weights, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f.remove(i);
            r.add_term(f, c.mul(&v.pow(k as u64)));
        }
        r
    }

    /// Inserts a new variable at position `i` (with weight `w` if weighted)
    /// and raises every term to weighted degree `d` with it.
    pub fn homogenize(&self, i: usize, name: String, w: u32, d: u32) -> Result<Self> {
        let mut names = self.names.clone();
        names.insert(i, name);
        let weights = self.weights.clone().map(|mut ws| {
            ws.insert(i, w);
            ws
        });
        let mut r = SparsePoly { names, weights, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let deg = self.weighted_degree_of(e);
            if deg > d || (d - deg) % w != 0 {
                return Err(Error::NotHomogeneous { degree: d, found: deg });
            }
            let mut f = e.clone();
            f.insert(i, (d - deg) / w);
            r.add_term(f, c.clone());
        }
        Ok(r)
    }

    /// Substitutes `x_i -> x_i^{a_i}`; the result is unweighted.
    pub fn compose_powers(&self, a: &[u32]) -> Self {
        let mut r = SparsePoly { names: self.names.clone(), weights: None, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let f = e.iter().zip(a).map(|(x, y)| x * y).collect();
            r.add_term(f, c.clone());
        }
        r
    }

    /// Evaluates at a point over another ring, converting coefficients.
    pub fn eval<S: Ring>(&self, point: &[S], conv: impl Fn(&R) -> S) -> S {
        let one = point[0].one_like();
        let mut acc = one.zero_like();
        for (e, c) in &self.terms {
            let mut t = conv(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.pow(k as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Renames without touching terms.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: names.len() });
        }
        self.names = names;
        Ok(self)
    }
}

impl SparsePoly<num_bigint::BigInt> {
    /// Parses a sum of terms like `3*x^2*y - z^4 + 2x`. A coefficient may
    /// be written directly in front of a variable; variables must be
    /// separated by `*`.
    pub fn parse(names: Vec<String>, text: &str) -> Result<Self> {
        use num_bigint::BigInt;
        let bad = |msg: &str| Error::InvalidSpec(format!("polynomial: {msg}"));
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = SparsePoly::zero(names.clone());
        let mut i = 0;
        let number = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            let s: String = chars[start..*i].iter().collect();
            s.parse().ok()
        };
        if chars.is_empty() {
            return Err(bad("empty input"));
        }
        while i < chars.len() {
            let mut sign = BigInt::from(1);
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let mut coeff = sign;
            let mut e = alloc::vec![0u32; names.len()];
            let mut factors = 0;
            loop {
                if i < chars.len() && chars[i].is_ascii_digit() {
                    coeff *= number(&mut i).ok_or_else(|| bad("bad integer"))?;
                } else if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().collect();
                    let v = names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| bad(&format!("unknown variable {name}")))?;
                    let mut k = 1u32;
                    if i < chars.len() && chars[i] == '^' {
                        i += 1;
                        k = number(&mut i).and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad("bad exponent"))?;
                    }
                    e[v] += k;
                } else {
                    return Err(bad("expected a coefficient or variable"));
                }
                factors += 1;
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                    continue;
                }
                // `2x` juxtaposition: a number directly followed by a name
                if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') && chars[i - 1].is_ascii_digit() {
                    continue;
                }
                break;
            }
            if factors == 0 {
                return Err(bad("empty term"));
            }
            out.add_term(e, coeff);
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(bad(&format!("unexpected character {:?}", chars[i])));
            }
        }
        Ok(out)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (name, &k) in self.names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| String::from(*x)).collect()
    }

    fn poly(terms: &[(Vec<u32>, i64)], vars: &[&str]) -> SparsePoly<BigInt> {
        SparsePoly::from_terms(names(vars), terms.iter().map(|(e, c)| (e.clone(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(2, 17).len(), 171);
        assert_eq!(monomials_up_to(3, 4).len(), 35);
    }

    #[test]
    fn arity_checked() {
        let r = SparsePoly::from_terms(names(&["x", "y"]), [(vec![1, 2, 3], BigInt::from(1))]);
        assert_eq!(r, Err(Error::ArityMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn dehomogenize_fermat() {
        let q = poly(&[(vec![3, 0, 0], 1), (vec![0, 3, 0], 1), (vec![0, 0, 3], 1)], &["X", "Y", "Z"]);
        let a = q.specialize(2, &BigInt::from(1));
        assert_eq!(a, poly(&[(vec![3, 0], 1), (vec![0, 3], 1), (vec![0, 0], 1)], &["X", "Y"]));
        let back = a.homogenize(2, "Z".into(), 1, 3).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn parse_terms() {
        let f = SparsePoly::parse(names(&["x", "y", "z"]), "x^7 + 3x^5*y^2 - 2*x*y^6 + 3 - z + z").unwrap();
        assert_eq!(
            f,
            poly(&[(vec![7, 0, 0], 1), (vec![5, 2, 0], 3), (vec![1, 6, 0], -2), (vec![0, 0, 0], 3)], &["x", "y", "z"])
        );
        assert!(SparsePoly::parse(names(&["x"]), "x + w").is_err());
        assert!(SparsePoly::parse(names(&["x"]), "x^").is_err());
        assert!(SparsePoly::parse(names(&["x"]), "").is_err());
        assert!(SparsePoly::parse(names(&["x"]), "x)").is_err());
    }

    #[test]
    fn derivative_and_cancellation() {
        let f = poly(&[(vec![2, 1], 3), (vec![0, 1], 1)], &["x", "y"]);
        assert_eq!(f.derivative(0), poly(&[(vec![1, 1], 6)], &["x", "y"]));
        assert!(f.sub(&f).is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly<BigInt>> {
        proptest::collection::vec(((0u32..4, 0u32..4), -5i64..5), 0..6).prop_map(|ts| {
            SparsePoly::from_terms(names(&["x", "y"]), ts.into_iter().map(|((a, b), c)| (vec![a, b], BigInt::from(c))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn leibniz(a in arb_poly(), b in arb_poly()) {
            let lhs = a.mul(&b).derivative(0);
            let rhs = a.derivative(0).mul(&b).add(&a.mul(&b.derivative(0)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogenize_roundtrip(a in arb_poly()) {
            let h = a.homogenize(2, "z".into(), 1, 8).unwrap();
            prop_assert!(h.check_homogeneous(8).is_ok());
            prop_assert_eq!(h.specialize(2, &BigInt::from(1)), a);
        }
    }
}
