//! Brute-force point counts and the zeta function bookkeeping around them.
//!
//! Counting uses log/antilog tables for `F_{p^m}` (elements are encoded by
//! their base-`p` digit vector), so evaluating a term of `Q` is a handful of
//! table lookups. Weighted hypersurfaces are counted on the affine cone:
//! `G_m` is connected, so the `F_q`-points of the quotient number
//! `(#cone - 1) / (q - 1)`.

use crate::arith::fpoly::FPoly;
use crate::arith::{bigint_mod_u64, valuation_bigint, ExtField, Ring, Valuation};
use crate::error::{Error, Result};
use crate::hodge::{Height, HodgePolygon};
use crate::upoly::IntPoly;
use crate::variety::{projective_point_count, PairSpec};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `F_{p^m}` with multiplication by discrete logarithms.
#[derive(Debug, Clone)]
struct FieldTables {
    p: u64,
    m: usize,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const LOG_ZERO: u32 = u32::MAX;

impl FieldTables {
    fn new(p: u64, m: usize) -> Result<Self> {
        let field = ExtField::new(p, m)?;
        let q = field.order();
        if q > (1 << 26) {
            return Err(Error::BudgetExceeded { needed: q as u128, budget: 1 << 26 });
        }
        let encode = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32;
        let order = q - 1;
        let primes = prime_factors(order);
        let g = (1..q)
            .map(|t| field.element(t))
            .find(|g| primes.iter().all(|r| !g.pow(order / r).is_one()))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![LOG_ZERO; q as usize];
        let mut x = field.from_u64(1);
        for i in 0..order {
            let e = encode(x.coeffs());
            exp.push(e);
            log[e as usize] = i as u32;
            x = x.mul(&g);
        }
        Ok(FieldTables { p, m, q, exp, log })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut r = 2;
    while r * r <= n {
        if n % r == 0 {
            out.push(r);
            while n % r == 0 {
                n /= r;
            }
        }
        r += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CountMode {
    Projective,
    Cone,
}

/// Enumerates the points of `X` over `F_{p^m}` by a flat index, so that
/// callers can split `0..total()` into slices and add the partial sums.
#[derive(Debug, Clone)]
pub struct PointCounter {
    tables: FieldTables,
    /// `(log of the coefficient, [(variable, exponent)])`.
    terms: Vec<(u32, Vec<(usize, u32)>)>,
    k: usize,
    mode: CountMode,
    total: u128,
}

impl PointCounter {
    pub fn new(spec: &PairSpec, m: u32, budget: u128) -> Result<Self> {
        let k = spec.n() + 2;
        let p = spec.p();
        let mode = if spec.is_weighted() { CountMode::Cone } else { CountMode::Projective };
        let q = (p as u128).checked_pow(m).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
        let total = match mode {
            CountMode::Projective => projective_point_count(q as u64, k),
            CountMode::Cone => q.checked_pow(k as u32).unwrap_or(u128::MAX),
        };
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        let tables = FieldTables::new(p, m as usize)?;
        let mut terms = Vec::new();
        for (e, c) in spec.q().terms() {
            let c = bigint_mod_u64(c, p);
            if c == 0 {
                continue;
            }
            let vars = e.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, &a)| (i, a)).collect();
            terms.push((tables.log[c as usize], vars));
        }
        Ok(PointCounter { tables, terms, k, mode, total })
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn field_order(&self) -> u64 {
        self.tables.q
    }

    fn eval(&self, pt: &[u32]) -> u32 {
        let order = self.tables.q - 1;
        let logs: Vec<u32> = pt.iter().map(|&x| self.tables.log[x as usize]).collect();
        let mut acc = 0u32;
        'terms: for (c, vars) in &self.terms {
            let mut l = *c as u64;
            for &(i, a) in vars {
                if logs[i] == LOG_ZERO {
                    continue 'terms;
                }
                l += logs[i] as u64 * a as u64;
            }
            acc = self.tables.add(acc, self.tables.exp[(l % order) as usize]);
        }
        acc
    }

    fn point(&self, mut t: u128, out: &mut [u32]) {
        let q = self.tables.q as u128;
        match self.mode {
            CountMode::Cone => {
                for slot in out.iter_mut().rev() {
                    *slot = (t % q) as u32;
                    t /= q;
                }
            }
            CountMode::Projective => {
                // blocks by the first nonzero coordinate, largest block first
                let mut lead = 0;
                let mut size = q.pow((self.k - 1) as u32);
                while t >= size {
                    t -= size;
                    lead += 1;
                    size /= q;
                }
                for slot in out[..lead].iter_mut() {
                    *slot = 0;
                }
                out[lead] = 1;
                for slot in out[lead + 1..].iter_mut().rev() {
                    *slot = (t % q) as u32;
                    t /= q;
                }
            }
        }
    }

    /// Zeros of `Q` among the points with flat index in `range`.
    pub fn count_range(&self, range: core::ops::Range<u128>) -> u128 {
        let mut pt = vec![0u32; self.k];
        let mut n = 0;
        for t in range.start..range.end.min(self.total) {
            self.point(t, &mut pt);
            if self.eval(&pt) == 0 {
                n += 1;
            }
        }
        n
    }

    /// Turns the sum of `count_range` over `0..total()` into the point
    /// count of `X`.
    pub fn finish(&self, raw: u128) -> Result<u128> {
        match self.mode {
            CountMode::Projective => Ok(raw),
            CountMode::Cone => {
                let q1 = (self.tables.q - 1) as u128;
                // the origin is always a zero
                let raw = raw.checked_sub(1).ok_or(Error::InexactDivision)?;
                if raw % q1 != 0 {
                    return Err(Error::InexactDivision);
                }
                Ok(raw / q1)
            }
        }
    }
}

/// `#X(F_{p^m})`, one representative per (weighted) projective class.
pub fn count_points(spec: &PairSpec, m: u32, budget: u128) -> Result<u128> {
    let c = PointCounter::new(spec, m, budget)?;
    c.finish(c.count_range(0..c.total()))
}

/// `#X(F_{p^m})` for `m = 1..=max_m`.
pub fn count_vector(spec: &PairSpec, max_m: u32, budget: u128) -> Result<Vec<u128>> {
    (1..=max_m).map(|m| count_points(spec, m, budget)).collect()
}

/// `P_1(T)` together with what it is the characteristic polynomial of:
/// Frobenius on the primitive middle cohomology (weight `n`) of an
/// `n`-dimensional variety over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaNumerator {
    pub poly: IntPoly,
    pub q: u64,
    pub n: usize,
}

impl ZetaNumerator {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Sign `ε` with `q^{nr/2} T^r P(1/(q^n T)) = ε P(T)`, `r = deg P`, if
    /// the functional equation holds.
    pub fn functional_equation_sign(&self) -> Option<i32> {
        functional_equation_sign(&self.poly, self.q, self.n as u32)
    }

    /// `a_1^2 <= r^2 q^n`, that is `|a_1| <= r q^{n/2}`.
    pub fn satisfies_weil_bound(&self) -> bool {
        let r = BigInt::from(self.degree());
        let a1 = self.poly.coeff(1);
        &a1 * &a1 <= &r * &r * BigInt::from(self.q).pow(self.n as u32)
    }
}

pub fn functional_equation_sign(p: &IntPoly, q: u64, weight: u32) -> Option<i32> {
    let r = p.degree().unwrap_or(0);
    if (weight as usize * r) % 2 == 1 {
        return None;
    }
    let q = BigInt::from(q);
    let half = weight as usize * r / 2;
    // q^{w i} a_{r-i} = ε q^{w r / 2} a_i for every i
    'sign: for eps in [1i32, -1] {
        for i in 0..=r {
            let lhs = q.pow((weight as usize * i) as u32) * p.coeff(r - i);
            let rhs = q.pow(half as u32) * p.coeff(i) * eps;
            if lhs != rhs {
                continue 'sign;
            }
        }
        return Some(eps);
    }
    None
}

/// Newton–Girard: `k a_k = -Σ_{j=1}^{k} s_j a_{k-j}`.
fn coefficients_from_power_sums(s: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut a = vec![BigInt::one()];
    for k in 1..=s.len() {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc -= &s[j - 1] * &a[k - j];
        }
        let (quo, rem) = acc.div_rem(&BigInt::from(k));
        if !Zero::is_zero(&rem) {
            return Err(Error::NonIntegralCoefficient { index: k });
        }
        a.push(quo);
    }
    Ok(a)
}

/// `s_k = -k a_k - Σ_{j=1}^{k-1} s_j a_{k-j}`.
fn power_sums_from_coefficients(p: &IntPoly, len: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(len);
    for k in 1..=len {
        let mut acc = -BigInt::from(k) * p.coeff(k);
        for j in 1..k {
            acc -= &s[j - 1] * p.coeff(k - j);
        }
        s.push(acc);
    }
    s
}

/// Recovers `P_1` of a smooth projective curve of genus `g` over `F_q` from
/// `#C(F_{q^m})`, `m = 1..=g`.
pub fn curve_zeta_numerator(counts: &[u128], q: u64, g: usize) -> Result<ZetaNumerator> {
    if counts.len() < g {
        return Err(Error::DimensionMismatch { expected: g, got: counts.len() });
    }
    let qb = BigInt::from(q);
    let s: Vec<BigInt> = (1..=g).map(|m| qb.pow(m as u32) + 1 - BigInt::from(counts[m - 1])).collect();
    let mut a = coefficients_from_power_sums(&s)?;
    a.resize(2 * g + 1, BigInt::zero());
    for i in 0..g {
        a[2 * g - i] = qb.pow((g - i) as u32) * &a[i];
    }
    Ok(ZetaNumerator { poly: IntPoly::new(a), q, n: 1 })
}

/// `Z(X, T) = P_1(T)^{(-1)^{n+1}} / ((1-T)(1-qT)...(1-q^n T))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    pub numerator: ZetaNumerator,
}

pub fn assemble_zeta(p1: ZetaNumerator) -> ZetaFunction {
    ZetaFunction { numerator: p1 }
}

impl ZetaFunction {
    pub fn n(&self) -> usize {
        self.numerator.n
    }

    /// `(-1)^{n+1}`.
    pub fn numerator_exponent(&self) -> i32 {
        if self.n() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// `N_m = Σ_{i=0}^{n} q^{im} - (-1)^{n+1} s_m` for `m = 1..=len`, where
    /// `s_m` are the power sums of the reciprocal roots of `P_1`.
    pub fn counts(&self, len: usize) -> Vec<BigInt> {
        let q = BigInt::from(self.numerator.q);
        let s = power_sums_from_coefficients(&self.numerator.poly, len);
        (1..=len)
            .map(|m| {
                let base: BigInt = (0..=self.n()).map(|i| q.pow((i * m) as u32)).sum();
                base - &s[m - 1] * self.numerator_exponent()
            })
            .collect()
    }

    /// Power series coefficients of `Z(X, T)` up to `T^len` (exclusive).
    pub fn series(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        if len == 0 {
            return out;
        }
        out[0] = BigInt::one();
        let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            let mut c = vec![BigInt::zero(); len];
            for (i, x) in a.iter().enumerate() {
                if Zero::is_zero(x) {
                    continue;
                }
                for (j, y) in b.iter().enumerate().take(len - i) {
                    c[i + j] += x * y;
                }
            }
            c
        };
        let q = BigInt::from(self.numerator.q);
        for i in 0..=self.n() {
            let c = q.pow(i as u32);
            let geo: Vec<BigInt> = (0..len).map(|j| c.pow(j as u32)).collect();
            out = mul(&out, &geo);
        }
        let p: Vec<BigInt> = (0..len).map(|i| self.numerator.poly.coeff(i)).collect();
        let factor = if self.numerator_exponent() == 1 { p } else { series_inverse(&p) };
        mul(&out, &factor)
    }
}

/// Inverse of a power series with constant term 1.
fn series_inverse(p: &[BigInt]) -> Vec<BigInt> {
    let mut inv = vec![BigInt::zero(); p.len()];
    if p.is_empty() {
        return inv;
    }
    inv[0] = BigInt::one();
    for k in 1..p.len() {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc -= &p[j] * &inv[k - j];
        }
        inv[k] = acc;
    }
    inv
}

/// `P(T) / P_D(T)` where `P_D` is already twisted (`T -> qT`).
pub fn split_charpoly(p: &IntPoly, p_d_twisted: &IntPoly) -> Result<IntPoly> {
    p.div_exact(p_d_twisted)
}

/// `P(qT)`: the characteristic polynomial of Frobenius on a Tate twist.
pub fn twist(p: &IntPoly, q: u64) -> IntPoly {
    p.scale_var(&BigInt::from(q))
}

/// Frobenius on `H^0` of a reduced 0-dimensional `D` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsCharpoly {
    /// Degrees of the closed points of `D`, ascending.
    pub degrees: Vec<usize>,
    pub full: IntPoly,
    pub primitive: IntPoly,
}

/// `det(1 - FT | H^0(D)) = Π (1 - T^{d_j})` over the closed points of `D`;
/// the primitive part drops one `1 - T`. With `twist` both are evaluated at
/// `pT`.
pub fn points_charpoly_on_d(spec: &PairSpec, twist_by_q: bool) -> Result<PointsCharpoly> {
    if spec.n() != 0 {
        return Err(Error::InvalidSpec("D must be 0-dimensional".into()));
    }
    if spec.is_weighted() {
        return Err(Error::InvalidSpec("weighted 0-dimensional D is not supported".into()));
    }
    let p = spec.p();
    let y = spec.hyperplane();
    let x = 1 - y;
    let d = spec.d() as usize;
    // f(t) = F(X = t, Y = 1); the degree drop is the multiplicity of (1:0)
    let mut c = vec![0u64; d + 1];
    for (e, v) in spec.q().terms() {
        c[e[x] as usize] = (c[e[x] as usize] + bigint_mod_u64(v, p)) % p;
    }
    let f = FPoly::new(p, c);
    let deg = f.degree().ok_or(Error::ZeroModP)?;
    let at_infinity = d - deg;
    if at_infinity > 1 || !f.is_squarefree() {
        return Err(Error::NonReducedForm);
    }
    let mut degrees = f.factor_degrees();
    if at_infinity == 1 {
        degrees.push(1);
    }
    degrees.sort_unstable();
    let mut full = IntPoly::one();
    for &k in &degrees {
        full = full.mul(&IntPoly::one_minus(BigInt::one(), k));
    }
    let mut primitive = full.div_exact(&IntPoly::one_minus(BigInt::one(), 1))?;
    if twist_by_q {
        full = twist(&full, p);
        primitive = twist(&primitive, p);
    }
    Ok(PointsCharpoly { degrees, full, primitive })
}

/// Lower convex hull of `(i, ord_p a_i)` over the nonzero coefficients.
pub fn newton_polygon(poly: &IntPoly, p: u64) -> HodgePolygon {
    let pts: Vec<(u64, u64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| match valuation_bigint(a, p) {
            Valuation::Finite(v) => Some((i as u64, v as u64)),
            _ => None,
        })
        .collect();
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a..pt
            let lhs = (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            let rhs = (pt.1 as i128 - a.1 as i128) * (b.0 as i128 - a.0 as i128);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    HodgePolygon { vertices: hull }
}

/// First abscissa where the Newton polygon dips below `gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonWitness {
    pub i: u64,
    pub newton: Height,
    pub hodge: Height,
}

/// `Ok(())` iff `NP(i) >= Γ(i)` at every integer `i` where both are
/// defined.
pub fn check_newton_above_hodge(np: &HodgePolygon, gamma: &HodgePolygon) -> core::result::Result<(), PolygonWitness> {
    for i in 0..=np.width().min(gamma.width()) {
        let (Some(a), Some(b)) = (np.height(i), gamma.height(i)) else { continue };
        let ord = (a.num as u128 * b.den as u128).cmp(&(b.num as u128 * a.den as u128));
        if ord == Ordering::Less {
            return Err(PolygonWitness { i, newton: a, hodge: b });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{hodge_polygon, primitive_hodge_numbers};
    use crate::poly::{default_names, SparsePoly};

    fn spec(
        p: u64,
        n: usize,
        d: u32,
        terms: &[(&[u32], i64)],
        hyperplane: Option<usize>,
        w: Option<Vec<u32>>,
    ) -> PairSpec {
        let k = terms[0].0.len();
        let q = SparsePoly::from_terms(default_names(k), terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
            .unwrap();
        PairSpec::new(p, n, d, q, hyperplane, w).unwrap()
    }

    fn elliptic() -> PairSpec {
        // y^2 z - x^3 - x z^2 - z^3
        spec(5, 1, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[1, 0, 2], -1), (&[0, 0, 3], -1)], Some(0), None)
    }

    #[test]
    fn counts_small() {
        let conic = spec(5, 1, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)], None, None);
        assert_eq!(count_points(&conic, 1, 1 << 20).unwrap(), 6);
        assert_eq!(count_points(&conic, 2, 1 << 20).unwrap(), 26);
        let fermat = spec(2, 1, 3, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)], None, None);
        assert_eq!(count_points(&fermat, 1, 1 << 20).unwrap(), 3);
        assert_eq!(count_points(&elliptic(), 1, 1 << 20).unwrap(), 9);
        assert_eq!(count_points(&elliptic(), 2, 1 << 20).unwrap(), 27);
        assert!(matches!(count_points(&elliptic(), 3, 100), Err(Error::BudgetExceeded { .. })));
    }

    /// Direct evaluation with `ExtElem` arithmetic, no tables.
    fn naive_count(s: &PairSpec, m: u32) -> u128 {
        let f = ExtField::new(s.p(), m as usize).unwrap();
        let zero = f.zero();
        crate::variety::projective_points(&f, s.n() + 2)
            .filter(|pt| s.q().eval(pt, |c| zero.from_bigint_like(c)).is_zero())
            .count() as u128
    }

    #[test]
    fn tables_agree_with_direct_evaluation() {
        let quartic = spec(3, 1, 4, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1), (&[1, 1, 2], 2)], None, None);
        for m in 1..=3 {
            assert_eq!(count_points(&quartic, m, 1 << 20).unwrap(), naive_count(&quartic, m), "m = {m}");
            assert_eq!(count_points(&elliptic(), m, 1 << 20).unwrap(), naive_count(&elliptic(), m));
        }
    }

    #[test]
    fn weighted_cone_count() {
        // x0^2 + x1^2 = x2 in P(1,1,2) is a graph over P^1
        let s = spec(5, 1, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 1], -1)], None, Some(vec![1, 1, 2]));
        assert_eq!(count_points(&s, 1, 1 << 20).unwrap(), 6);
        assert_eq!(count_points(&s, 2, 1 << 20).unwrap(), 26);
    }

    #[test]
    fn range_split_is_additive() {
        let c = PointCounter::new(&elliptic(), 2, 1 << 20).unwrap();
        let t = c.total();
        let parts: u128 = (0..7).map(|i| c.count_range(i * t / 7..(i + 1) * t / 7)).sum();
        assert_eq!(c.finish(parts).unwrap(), 27);
    }

    #[test]
    fn elliptic_numerator() {
        let z = curve_zeta_numerator(&[9], 5, 1).unwrap();
        assert_eq!(z.poly, IntPoly::from_i64(&[1, 3, 5]));
        assert_eq!(z.functional_equation_sign(), Some(1));
        assert!(z.satisfies_weil_bound());
        let zeta = assemble_zeta(z);
        assert_eq!(zeta.counts(3), vec![BigInt::from(9), BigInt::from(27), BigInt::from(108)]);
        assert_eq!(count_points(&elliptic(), 3, 1 << 20).unwrap(), 108);
        assert_eq!(curve_zeta_numerator(&[], 5, 0).unwrap().poly, IntPoly::one());
    }

    #[test]
    fn bad_counts_are_caught() {
        // a_2 = (s_1^2 - s_2)/2 must be an integer
        assert_eq!(curve_zeta_numerator(&[6, 27], 5, 2), Err(Error::NonIntegralCoefficient { index: 2 }));
    }

    #[test]
    fn series_matches_counts() {
        // P^1: 1/((1-T)(1-qT)) has coefficients (q^{j+1} - 1)/(q - 1)
        let z = assemble_zeta(ZetaNumerator { poly: IntPoly::one(), q: 5, n: 1 });
        assert_eq!(z.series(4), [1, 6, 31, 156].map(BigInt::from).to_vec());
        assert_eq!(z.counts(2), vec![BigInt::from(6), BigInt::from(26)]);
        // n = 2 puts P_1 in the denominator: s_m enters with a plus sign
        let z = assemble_zeta(ZetaNumerator { poly: IntPoly::from_i64(&[1, -5]), q: 5, n: 2 });
        assert_eq!(z.numerator_exponent(), -1);
        assert_eq!(z.counts(1), vec![BigInt::from(1 + 5 + 25 + 5)]);
        // 1/((1-T)(1-5T)(1-25T)(1-5T)): coefficient of T is 1+5+25+5
        assert_eq!(z.series(2)[1], BigInt::from(36));
    }

    #[test]
    fn split_examples() {
        let p = IntPoly::from_i64(&[1, 3, 5]).mul(&IntPoly::from_i64(&[1, -5]));
        assert_eq!(split_charpoly(&p, &IntPoly::from_i64(&[1, -5])).unwrap(), IntPoly::from_i64(&[1, 3, 5]));
        assert_eq!(split_charpoly(&p, &IntPoly::one()).unwrap(), p);
        assert_eq!(split_charpoly(&p, &IntPoly::from_i64(&[1, -3])), Err(Error::InexactDivision));
    }

    #[test]
    fn points_on_d() {
        // x y (x^4 - y^4): all six points of P^1(F_5)
        let six = spec(5, 0, 6, &[(&[5, 1], 1), (&[1, 5], -1)], None, None);
        let r = points_charpoly_on_d(&six, false).unwrap();
        assert_eq!(r.degrees, vec![1; 6]);
        assert_eq!(r.full, IntPoly::one_minus(BigInt::one(), 1).pow(6));
        assert_eq!(r.primitive, IntPoly::one_minus(BigInt::one(), 1).pow(5));
        let t = points_charpoly_on_d(&six, true).unwrap();
        assert_eq!(t.primitive, IntPoly::one_minus(BigInt::from(5), 1).pow(5));
        // (x^2 - 2 y^2) y over F_5: an irreducible quadratic and (1:0)
        let mixed = spec(5, 0, 3, &[(&[2, 1], 1), (&[0, 3], -2)], Some(0), None);
        let r = points_charpoly_on_d(&mixed, false).unwrap();
        assert_eq!(r.degrees, vec![1, 2]);
        assert_eq!(r.primitive, IntPoly::from_i64(&[1, 0, -1]));
        assert_eq!(points_charpoly_on_d(&mixed, true).unwrap().primitive, IntPoly::from_i64(&[1, 0, -25]));
        let doubled = spec(5, 0, 2, &[(&[2, 0], 1)], None, None);
        assert_eq!(points_charpoly_on_d(&doubled, false), Err(Error::NonReducedForm));
    }

    #[test]
    fn newton_examples() {
        let np = newton_polygon(&IntPoly::from_i64(&[1, 3, 5]), 5);
        assert_eq!(np.vertices, vec![(0, 0), (1, 0), (2, 1)]);
        let gamma = hodge_polygon(&primitive_hodge_numbers(1, 3));
        assert_eq!(np, gamma);
        assert_eq!(check_newton_above_hodge(&np, &gamma), Ok(()));
        let ss = newton_polygon(&IntPoly::from_i64(&[1, 0, 5]), 5);
        assert_eq!(ss.height(1), Some(Height::new(1, 2)));
        assert_eq!(check_newton_above_hodge(&ss, &gamma), Ok(()));
        // Γ above NP: a polygon of slopes (0, 2)
        let steep = HodgePolygon { vertices: vec![(0, 0), (1, 0), (2, 2)] };
        let w = check_newton_above_hodge(&ss, &steep).unwrap_err();
        assert_eq!((w.i, w.newton, w.hodge), (2, Height::integer(1), Height::integer(2)));
    }
}
