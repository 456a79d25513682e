//! How much `p`-adic precision a Frobenius matrix on the lattice needs, and
//! a randomized check of the char-poly loss bound on Hodge-adapted matrices.

use crate::arith::{ilog, is_prime, valuation_bigint, Ring, Valuation};
use crate::error::{Error, Result};
use crate::hodge::{hodge_polygon, Height, HodgePolygon, HodgeVector};
use crate::linalg::{charpoly_dense, mat_mul};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// `n ⌊log_p(k+1)⌋`.
pub fn torsion_exponent(n: usize, k: u32, p: u64) -> u32 {
    n as u32 * ilog(k as u64 + 1, p)
}

/// `B_i = x + y √q`, an upper bound for `|a_i|`, and the precision `N_i`
/// that pins `a_i` down from its residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBound {
    pub i: usize,
    pub x: BigInt,
    pub y: BigInt,
    pub n_i: u32,
}

/// `(a, b)` stands for `a + b √q`.
type Surd = (BigInt, BigInt);

fn surd_mul(u: &Surd, v: &Surd, q: &BigInt) -> Surd {
    (&u.0 * &v.0 + &u.1 * &v.1 * q, &u.0 * &v.1 + &u.1 * &v.0)
}

/// Whether `p^e > 2 (x + y √q)`, decided without square roots.
fn power_exceeds(p: &BigInt, e: u32, x: &BigInt, y: &BigInt, q: &BigInt) -> bool {
    let l = p.pow(e) - BigInt::from(2) * x;
    if !l.is_positive() {
        return false;
    }
    Zero::is_zero(y) || &l * &l > BigInt::from(4) * y * y * q
}

/// `B_i` is the `i`-th elementary symmetric function of the root absolute
/// values, a root of weight `w` having absolute value `q^{w/2}`.
pub fn coefficient_precisions(pairs: &[(u64, u32)], q: u64, p: u64) -> Result<Vec<CoefficientBound>> {
    check_prime_power(q, p)?;
    let qb = BigInt::from(q);
    let mut poly: Vec<Surd> = vec![(BigInt::one(), BigInt::zero())];
    for &(count, w) in pairs {
        let r: Surd = if w % 2 == 0 { (qb.pow(w / 2), BigInt::zero()) } else { (BigInt::zero(), qb.pow(w / 2)) };
        for _ in 0..count {
            let mut next = poly.clone();
            next.push((BigInt::zero(), BigInt::zero()));
            for (j, c) in poly.iter().enumerate() {
                let t = surd_mul(c, &r, &qb);
                next[j + 1].0 += t.0;
                next[j + 1].1 += t.1;
            }
            poly = next;
        }
    }
    let pb = BigInt::from(p);
    Ok(poly
        .into_iter()
        .enumerate()
        .map(|(i, (x, y))| {
            let mut n_i = 0;
            while !power_exceeds(&pb, n_i, &x, &y, &qb) {
                n_i += 1;
            }
            CoefficientBound { i, x, y, n_i }
        })
        .collect())
}

fn check_prime_power(q: u64, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut a = 0;
    let mut r = q;
    while r > 1 && r % p == 0 {
        r /= p;
        a += 1;
    }
    if r != 1 || a == 0 {
        return Err(Error::InvalidSpec(format!("q = {q} is not a power of p = {p}")));
    }
    Ok(a)
}

/// Root multiset of `det(1 - FT)` on the log lattice: `h^n_prim(X)` roots of
/// weight `n` and `h^{n-1}_prim(D)` of weight `n + 1`.
pub fn weight_pairs(hx: &HodgeVector, hd: &HodgeVector) -> Vec<(u64, u32)> {
    vec![(hx.total(), hx.n as u32), (hd.total(), hx.n as u32 + 1)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusPrecision {
    pub n_f: u32,
    /// `max_i (N_i - ⌊Γ(i)⌋) + τ` before the floor is applied.
    pub unclamped: i64,
    /// `n + τ + 1`, the smallest precision the loss bound accepts.
    pub floor: u32,
    pub clamped: bool,
    pub tau: u32,
}

/// `N_F = max_i (N_i - ⌊Γ(i)⌋) + τ`, raised to `n + τ + 1` if smaller.
pub fn required_frobenius_precision(
    ns: &[u32],
    polygon: &HodgePolygon,
    n: usize,
    k: u32,
    p: u64,
) -> Result<FrobeniusPrecision> {
    let width = polygon.width() as usize;
    if ns.len() != width + 1 {
        return Err(Error::DimensionMismatch { expected: width + 1, got: ns.len() });
    }
    let tau = torsion_exponent(n, k, p);
    let best = ns
        .iter()
        .enumerate()
        .map(|(i, &ni)| ni as i64 - polygon.height_floor(i as u64).expect("in range") as i64)
        .max()
        .expect("nonempty");
    let unclamped = best + tau as i64;
    let floor = n as u32 + tau + 1;
    let clamped = unclamped < floor as i64;
    Ok(FrobeniusPrecision { n_f: if clamped { floor } else { unclamped as u32 }, unclamped, floor, clamped, tau })
}

/// Guaranteed `ord_p(a_i - ã_i)` for a Frobenius matrix known modulo
/// `p^N`: `N + ⌊Γ(i)⌋ - τ`.
pub fn coefficient_error_bound(big_n: u32, polygon: &HodgePolygon, i: usize, n: usize, k: u32, p: u64) -> Result<u64> {
    let tau = torsion_exponent(n, k, p);
    let floor = n as u32 + tau + 1;
    if big_n < floor {
        return Err(Error::PrecisionBelowFloor { precision: big_n, floor });
    }
    let g = polygon
        .height_floor(i as u64)
        .ok_or(Error::DimensionMismatch { expected: polygon.width() as usize, got: i })?;
    Ok(big_n as u64 + g - tau as u64)
}

/// Everything a point-counting run needs to know about precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionPlan {
    pub p: u64,
    pub q: u64,
    pub n: usize,
    pub k: u32,
    pub tau: u32,
    pub pair: HodgeVector,
    pub polygon: HodgePolygon,
    pub bounds: Vec<CoefficientBound>,
    pub gamma: Vec<Height>,
    pub frobenius: FrobeniusPrecision,
    /// The guaranteed valuations at `N_F`.
    pub error_bounds: Vec<u64>,
    /// Set when `q != p`: the bounds only hold for the `p`-power Frobenius.
    pub p_power_only: bool,
}

pub fn precision_plan(p: u64, q: u64, n: usize, k: u32, hx: &HodgeVector, hd: &HodgeVector) -> Result<PrecisionPlan> {
    let a = check_prime_power(q, p)?;
    let pair = crate::hodge::pair_hodge_numbers(hx, hd)?;
    let polygon = hodge_polygon(&pair);
    let bounds = coefficient_precisions(&weight_pairs(hx, hd), q, p)?;
    let ns: Vec<u32> = bounds.iter().map(|b| b.n_i).collect();
    let frobenius = required_frobenius_precision(&ns, &polygon, n, k, p)?;
    let gamma = (0..=polygon.width()).map(|i| polygon.height(i).expect("in range")).collect();
    let error_bounds =
        (0..ns.len()).map(|i| coefficient_error_bound(frobenius.n_f, &polygon, i, n, k, p)).collect::<Result<_>>()?;
    Ok(PrecisionPlan {
        p,
        q,
        n,
        k,
        tau: frobenius.tau,
        pair,
        polygon,
        bounds,
        gamma,
        frobenius,
        error_bounds,
        p_power_only: a > 1,
    })
}

impl PrecisionPlan {
    /// `N_F` meets every target: `N_F + ⌊Γ(i)⌋ - τ >= N_i`.
    pub fn is_self_consistent(&self) -> bool {
        self.error_bounds.iter().zip(&self.bounds).all(|(e, b)| *e >= b.n_i as u64)
    }
}

/// `A · A^σ · A^{σ^2} ··· A^{σ^{a-1}}`.
pub fn sigma_twisted_power<R: Ring>(m: &[Vec<R>], sigma: impl Fn(&R) -> R, a: u32) -> Result<Vec<Vec<R>>> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::NotSquare { rows: m.len(), cols: m.first().map_or(0, |r| r.len()) });
    }
    if a == 0 {
        return Err(Error::InvalidSpec("the twisted power needs a >= 1".into()));
    }
    let mut acc = m.to_vec();
    let mut cur = m.to_vec();
    for _ in 1..a {
        cur = cur.iter().map(|r| r.iter().map(&sigma).collect()).collect();
        acc = mat_mul(&acc, &cur);
    }
    Ok(acc)
}

/// Block widths of a Hodge-adapted matrix: `x[j] = h^{n-j,j}` of `X` and
/// `d[j] = h^{n-1-j,j}` of `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeBlockShape {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
}

impl HodgeBlockShape {
    pub fn new(x: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::InvalidShape("X part needs n + 1 >= 2 blocks".into()));
        }
        if d.len() + 1 != x.len() {
            return Err(Error::InvalidShape(format!(
                "X has {} blocks, so D needs {}, got {}",
                x.len(),
                x.len() - 1,
                d.len()
            )));
        }
        if x.iter().chain(&d).all(|&w| w == 0) {
            return Err(Error::InvalidShape("all blocks are empty".into()));
        }
        Ok(HodgeBlockShape { x, d })
    }

    pub fn n(&self) -> usize {
        self.x.len() - 1
    }

    pub fn size(&self) -> usize {
        self.x.iter().chain(&self.d).map(|&w| w as usize).sum()
    }

    fn x_size(&self) -> usize {
        self.x.iter().map(|&w| w as usize).sum()
    }

    /// Multiplicity of slope `s` in the pair polygon.
    pub fn polygon(&self) -> HodgePolygon {
        let n = self.n();
        let h: Vec<u64> =
            (0..=n).map(|s| self.x[n - s] as u64 + if s >= 1 { self.d[n - s] as u64 } else { 0 }).collect();
        HodgePolygon::from_slopes(&h)
    }

    /// Lower bounds for entry valuations, with `None` for the block that
    /// must vanish exactly in `A` (valuation `N` after perturbation).
    ///
    /// Rows: the `X` part then the `D` part. Column blocks: `X` blocks with
    /// valuation `n - j` on top, then `D` blocks with valuation 0 on top and
    /// `n - j` below.
    pub fn valuation_pattern(&self) -> Vec<Vec<Option<u32>>> {
        let n = self.n() as u32;
        let mut col_top = Vec::new();
        let mut col_bottom = Vec::new();
        for (j, &w) in self.x.iter().enumerate() {
            for _ in 0..w {
                col_top.push(Some(n - j as u32));
                col_bottom.push(None);
            }
        }
        for (j, &w) in self.d.iter().enumerate() {
            for _ in 0..w {
                col_top.push(Some(0));
                col_bottom.push(Some(n - j as u32));
            }
        }
        let hx = self.x_size();
        (0..self.size()).map(|r| if r < hx { col_top.clone() } else { col_bottom.clone() }).collect()
    }
}

impl FromStr for HodgeBlockShape {
    type Err = Error;

    /// `"1,2,1|1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').ok_or_else(|| Error::InvalidShape(format!("missing '|' in {s:?}")))?;
        let parse = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(|w| w.trim())
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<u32>().map_err(|_| Error::InvalidShape(format!("bad block width {w:?}"))))
                .collect()
        };
        HodgeBlockShape::new(parse(a)?, parse(b)?)
    }
}

impl core::fmt::Display for HodgeBlockShape {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let j = |v: &[u32]| v.iter().map(|w| format!("{w}")).collect::<Vec<String>>().join(",");
        write!(f, "{}|{}", j(&self.x), j(&self.d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    Random,
    Zero,
}

/// Digits of randomness above the valuation floor of each sampled entry.
const SAMPLE_DIGITS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub shape: HodgeBlockShape,
    pub precision: u32,
    pub p: u64,
    pub trials: u64,
    pub violations: u64,
    /// Per coefficient `l`: the smallest `ord_p(a_l - ã_l) - N - ⌈Γ(l)⌉`
    /// seen, `None` while every difference was zero. A negative value is a
    /// violation of `ord_p(a_l - ã_l) >= N + Γ(l)`.
    pub min_excess: Vec<Option<i64>>,
    /// `(trial, l)` of the first violation.
    pub first_violation: Option<(u64, usize)>,
}

impl HarnessReport {
    fn empty(shape: &HodgeBlockShape, precision: u32, p: u64) -> Self {
        HarnessReport {
            shape: shape.clone(),
            precision,
            p,
            trials: 0,
            violations: 0,
            min_excess: vec![None; shape.size() + 1],
            first_violation: None,
        }
    }

    /// Order-insensitive combination of two partial reports.
    pub fn merge(mut self, o: &HarnessReport) -> Self {
        self.trials += o.trials;
        self.violations += o.violations;
        for (a, b) in self.min_excess.iter_mut().zip(&o.min_excess) {
            *a = match (*a, *b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            };
        }
        self.first_violation = match (self.first_violation, o.first_violation) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        self
    }
}

fn sample_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    // rejection sampling keeps the distribution uniform
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

fn signed(rng: &mut ChaCha8Rng, mag: BigInt) -> BigInt {
    if rng.next_u32() & 1 == 1 {
        -mag
    } else {
        mag
    }
}

/// An entry of valuation at least `v`: exactly `v` with probability 1/2.
fn sample_entry(rng: &mut ChaCha8Rng, p: u64, v: u32) -> BigInt {
    let span = p.pow(SAMPLE_DIGITS);
    let u = if rng.next_u32() & 1 == 1 {
        loop {
            let u = sample_below(rng, span);
            if u % p != 0 {
                break u;
            }
        }
    } else {
        sample_below(rng, span)
    };
    signed(rng, BigInt::from(p).pow(v) * BigInt::from(u))
}

/// One trial: the matrices are determined by `(seed, trial)` alone.
pub fn loss_harness_trial(
    shape: &HodgeBlockShape,
    precision: u32,
    p: u64,
    seed: u64,
    trial: u64,
    mode: Perturbation,
) -> HarnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let pattern = shape.valuation_pattern();
    let m = shape.size();
    let a: Vec<Vec<BigInt>> = pattern
        .iter()
        .map(|row| row.iter().map(|v| v.map_or_else(BigInt::zero, |v| sample_entry(&mut rng, p, v))).collect())
        .collect();
    let pn = BigInt::from(p).pow(precision);
    let at: Vec<Vec<BigInt>> = match mode {
        Perturbation::Zero => a.clone(),
        Perturbation::Random => a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let mag = BigInt::from(sample_below(&mut rng, p.pow(SAMPLE_DIGITS)));
                        let e = signed(&mut rng, mag);
                        x + &pn * e
                    })
                    .collect()
            })
            .collect(),
    };
    let zero = BigInt::zero();
    let ca = charpoly_dense(&a, &zero);
    let cb = charpoly_dense(&at, &zero);
    let gamma = shape.polygon();
    let mut rep = HarnessReport::empty(shape, precision, p);
    rep.trials = 1;
    for l in 0..=m {
        let diff = &ca[l] - &cb[l];
        if let Valuation::Finite(v) = valuation_bigint(&diff, p) {
            let excess = v as i64 - precision as i64 - gamma.height(l as u64).expect("in range").ceil() as i64;
            rep.min_excess[l] = Some(excess);
            if excess < 0 {
                rep.violations += 1;
                if rep.first_violation.is_none() {
                    rep.first_violation = Some((trial, l));
                }
            }
        }
    }
    rep
}

fn check_harness_inputs(shape: &HodgeBlockShape, precision: u32, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let floor = 2 * (shape.n() as u32 + 1);
    if precision < floor {
        return Err(Error::PrecisionBelowFloor { precision, floor });
    }
    if p.checked_pow(SAMPLE_DIGITS).is_none() {
        return Err(Error::InvalidSpec(format!("p = {p} too large for the harness sampler")));
    }
    Ok(())
}

/// Trials `range.start .. range.end`, merged.
pub fn loss_harness_range(
    shape: &HodgeBlockShape,
    precision: u32,
    p: u64,
    seed: u64,
    range: core::ops::Range<u64>,
    mode: Perturbation,
) -> Result<HarnessReport> {
    check_harness_inputs(shape, precision, p)?;
    Ok(range.fold(HarnessReport::empty(shape, precision, p), |acc, t| {
        acc.merge(&loss_harness_trial(shape, precision, p, seed, t, mode))
    }))
}

pub fn loss_harness(shape: &HodgeBlockShape, precision: u32, p: u64, trials: u64, seed: u64) -> Result<HarnessReport> {
    loss_harness_range(shape, precision, p, seed, 0..trials, Perturbation::Random)
}

/// The shapes exercised by the acceptance suite, with their precisions and
/// primes.
pub fn standard_harness_cases() -> Vec<(HodgeBlockShape, u32, u64)> {
    vec![
        (HodgeBlockShape::new(vec![1, 1], vec![1]).expect("valid"), 4, 5),
        (HodgeBlockShape::new(vec![1, 2, 1], vec![1, 1]).expect("valid"), 6, 3),
        (HodgeBlockShape::new(vec![1, 2, 2, 1], vec![1, 1, 1]).expect("valid"), 8, 3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::primitive_hodge_numbers;
    use alloc::string::ToString;

    #[test]
    fn torsion() {
        assert_eq!(torsion_exponent(1, 12, 5), 1);
        assert_eq!(torsion_exponent(2, 53, 11), 2);
        assert_eq!(torsion_exponent(3, 100, 2), 18);
        for p in [2u64, 3, 5, 7, 11] {
            for k in 1..60 {
                assert_eq!(torsion_exponent(2, k, p) == 0, k as u64 + 1 < p);
            }
        }
    }

    #[test]
    fn small_precisions() {
        let b = coefficient_precisions(&[(1, 0)], 5, 5).unwrap();
        assert_eq!((b[0].n_i, b[1].n_i), (1, 1));
        assert_eq!(b[1].x, BigInt::one());
    }

    #[test]
    fn curve_precisions() {
        let b = coefficient_precisions(&[(30, 1), (6, 2)], 5, 5).unwrap();
        assert_eq!(b.len(), 37);
        assert_eq!((b[1].x.clone(), b[1].y.clone()), (BigInt::from(30), BigInt::from(30)));
        assert_eq!(b[1].n_i, 4);
        // top coefficient: (√5)^30 5^6 = 5^21, and 2 * 5^21 < 5^22
        assert_eq!(b[36].x, BigInt::from(5).pow(21));
        assert_eq!(b[36].n_i, 22);
    }

    /// Same bounds through floating point, away from the boundary.
    #[test]
    fn precisions_against_float() {
        let b = coefficient_precisions(&[(4, 1), (3, 2)], 7, 7).unwrap();
        let r: Vec<f64> = [7f64.sqrt(); 4].into_iter().chain([7.0; 3]).collect();
        for (i, cb) in b.iter().enumerate() {
            // elementary symmetric e_i(r) by DP
            let mut e = vec![0f64; r.len() + 1];
            e[0] = 1.0;
            for &x in &r {
                for j in (1..=r.len()).rev() {
                    e[j] += e[j - 1] * x;
                }
            }
            let mut n = 0;
            while 7f64.powi(n) <= 2.0 * e[i] {
                n += 1;
            }
            assert_eq!(cb.n_i, n as u32, "i = {i}");
        }
    }

    fn curve_polygon() -> HodgePolygon {
        HodgePolygon::from_slopes(&[15, 21])
    }

    #[test]
    fn frobenius_precision() {
        let g = HodgePolygon::from_slopes(&[4]);
        let f = required_frobenius_precision(&[4; 5], &g, 1, 12, 5).unwrap();
        assert_eq!((f.n_f, f.clamped), (5, false));
        let f = required_frobenius_precision(&[0; 5], &g, 1, 12, 5).unwrap();
        assert_eq!((f.n_f, f.clamped, f.floor), (3, true, 3));
        assert!(required_frobenius_precision(&[1; 3], &g, 1, 12, 5).is_err());
    }

    #[test]
    fn error_bounds() {
        let g = HodgePolygon::from_slopes(&[5, 10]);
        assert_eq!(coefficient_error_bound(10, &g, 10, 1, 12, 5).unwrap(), 14);
        assert_eq!(coefficient_error_bound(10, &g, 0, 1, 12, 5).unwrap(), 9);
        assert_eq!(
            coefficient_error_bound(2, &g, 0, 1, 12, 5),
            Err(Error::PrecisionBelowFloor { precision: 2, floor: 3 })
        );
        let c = curve_polygon();
        for i in 0..=36 {
            assert_eq!(
                coefficient_error_bound(11, &c, i, 1, 12, 5).unwrap(),
                coefficient_error_bound(10, &c, i, 1, 12, 5).unwrap() + 1
            );
        }
    }

    #[test]
    fn curve_plan() {
        let hx = primitive_hodge_numbers(1, 7);
        let hd = primitive_hodge_numbers(0, 7);
        let plan = precision_plan(5, 5, 1, 12, &hx, &hd).unwrap();
        assert_eq!(plan.tau, 1);
        assert_eq!(plan.polygon.vertices, vec![(0, 0), (15, 0), (36, 21)]);
        assert!(plan.is_self_consistent());
        assert!(!plan.p_power_only);
        let plan25 = precision_plan(5, 25, 1, 12, &hx, &hd).unwrap();
        assert!(plan25.p_power_only);
        assert!(precision_plan(5, 15, 1, 12, &hx, &hd).is_err());
        // increasing k never lowers N_F
        let mut last = 0;
        for k in 12..200 {
            let nf = precision_plan(5, 5, 1, k, &hx, &hd).unwrap().frobenius.n_f;
            assert!(nf >= last);
            last = nf;
        }
    }

    #[test]
    fn genus_zero_plan_hits_floor() {
        let hx = primitive_hodge_numbers(1, 2);
        let hd = primitive_hodge_numbers(0, 2);
        let plan = precision_plan(5, 5, 1, 3, &hx, &hd).unwrap();
        assert_eq!(plan.frobenius.n_f, plan.frobenius.floor);
    }

    #[test]
    fn twisted_power() {
        let a = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(3), BigInt::from(4)]];
        assert_eq!(sigma_twisted_power(&a, |x| x.clone(), 1).unwrap(), a);
        let a3 = mat_mul(&mat_mul(&a, &a), &a);
        assert_eq!(sigma_twisted_power(&a, |x| x.clone(), 3).unwrap(), a3);
    }

    /// `Z[i]` with conjugation.
    #[derive(Debug, Clone, PartialEq)]
    struct Gauss(i64, i64);

    impl Ring for Gauss {
        fn zero_like(&self) -> Self {
            Gauss(0, 0)
        }
        fn one_like(&self) -> Self {
            Gauss(1, 0)
        }
        fn is_zero(&self) -> bool {
            self.0 == 0 && self.1 == 0
        }
        fn add(&self, o: &Self) -> Self {
            Gauss(self.0 + o.0, self.1 + o.1)
        }
        fn sub(&self, o: &Self) -> Self {
            Gauss(self.0 - o.0, self.1 - o.1)
        }
        fn mul(&self, o: &Self) -> Self {
            Gauss(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
        }
        fn neg(&self) -> Self {
            Gauss(-self.0, -self.1)
        }
        fn from_bigint_like(&self, v: &BigInt) -> Self {
            Gauss(i64::try_from(v).unwrap(), 0)
        }
    }

    #[test]
    fn twisted_power_conjugation() {
        let a = vec![vec![Gauss(1, 1), Gauss(0, 2)], vec![Gauss(3, 0), Gauss(1, -1)]];
        // A · conj(A) by hand: conj(A) = [[1-i, -2i], [3, 1+i]]
        let expect = vec![vec![Gauss(2, 6), Gauss(0, 0)], vec![Gauss(6, -6), Gauss(2, -6)]];
        assert_eq!(sigma_twisted_power(&a, |x| Gauss(x.0, -x.1), 2).unwrap(), expect);
    }

    #[test]
    fn shapes() {
        let s: HodgeBlockShape = "1,2,1|1,1".parse().unwrap();
        assert_eq!(s.size(), 6);
        assert_eq!(s.to_string(), "1,2,1|1,1");
        assert_eq!(s.polygon().vertices, vec![(0, 0), (1, 0), (4, 3), (6, 7)]);
        assert!("1,1|1,1".parse::<HodgeBlockShape>().is_err());
        assert!("1|".parse::<HodgeBlockShape>().is_err());
        let v = HodgeBlockShape::new(vec![1, 1], vec![1]).unwrap().valuation_pattern();
        assert_eq!(
            v,
            vec![vec![Some(1), Some(0), Some(0)], vec![Some(1), Some(0), Some(0)], vec![None, None, Some(1)]]
        );
    }

    #[test]
    fn harness_zero_perturbation() {
        let s = HodgeBlockShape::new(vec![1, 1], vec![1]).unwrap();
        let r = loss_harness_range(&s, 4, 5, 7, 0..20, Perturbation::Zero).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_excess.iter().all(|x| x.is_none()));
    }

    #[test]
    fn harness_trace_never_violates() {
        for (s, n, p) in standard_harness_cases() {
            let r = loss_harness(&s, n, p, 20, 1).unwrap();
            assert_eq!(r.trials, 20);
            // a_1 - ã_1 = p^N tr(E) and Γ(1) = 0
            assert!(r.min_excess[1].map_or(true, |e| e >= 0), "{s}");
            assert_eq!(r.min_excess[0], None);
        }
        let s = HodgeBlockShape::new(vec![1, 1], vec![1]).unwrap();
        assert!(matches!(loss_harness(&s, 3, 5, 1, 0), Err(Error::PrecisionBelowFloor { .. })));
    }

    /// An error of `p^N` in a single entry of valuation floor 1 moves the
    /// determinant by `p^N` times a unit cofactor, one digit short of
    /// `N + Γ(2)` for the `(1,1|)`-type block of an elliptic curve.
    #[test]
    fn single_entry_error_reaches_only_n() {
        let p = BigInt::from(5);
        let pn = p.pow(4);
        let a = vec![vec![p.clone() * 2, BigInt::from(1)], vec![p.clone() * 3, BigInt::from(1)]];
        let mut at = a.clone();
        at[0][0] += &pn;
        let z = BigInt::zero();
        let d = &charpoly_dense(&a, &z)[2] - &charpoly_dense(&at, &z)[2];
        assert_eq!(valuation_bigint(&d, 5), Valuation::Finite(4));
        assert_eq!(HodgePolygon::from_slopes(&[1, 1]).height(2), Some(Height::integer(1)));
    }

    #[test]
    fn harness_is_deterministic_and_mergeable() {
        let s = HodgeBlockShape::new(vec![1, 2, 1], vec![1, 1]).unwrap();
        let all = loss_harness(&s, 6, 3, 12, 42).unwrap();
        let a = loss_harness_range(&s, 6, 3, 42, 0..5, Perturbation::Random).unwrap();
        let b = loss_harness_range(&s, 6, 3, 42, 5..12, Perturbation::Random).unwrap();
        assert_eq!(b.clone().merge(&a), all);
        assert_eq!(a.merge(&b), all);
    }

    /// Sanity check that the harness can see a violation: drop the
    /// valuation pattern entirely and the bound fails for some trial.
    #[test]
    fn unstructured_matrices_violate() {
        let p = 5u64;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = false;
        for _ in 0..50 {
            let a: Vec<Vec<BigInt>> =
                (0..3).map(|_| (0..3).map(|_| BigInt::from(sample_below(&mut rng, 125))).collect()).collect();
            let at: Vec<Vec<BigInt>> = a
                .iter()
                .map(|r| r.iter().map(|x| x + BigInt::from(625) * BigInt::from(sample_below(&mut rng, 125))).collect())
                .collect();
            let z = BigInt::zero();
            let d = &charpoly_dense(&a, &z)[3] - &charpoly_dense(&at, &z)[3];
            // Γ(3) = 1 for the (1,1|1) polygon; require ord >= 5
            if valuation_bigint(&d, p).lower_bound().is_some_and(|v| v < 5) {
                seen = true;
            }
        }
        assert!(seen);
    }
}
