//! The input pair `(X, D)`: a (weighted) projective hypersurface and a
//! coordinate hyperplane section.

use crate::arith::{bigint_mod_u64, is_prime, ExtElem, ExtField, Ring};
use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;

/// `Q` is homogeneous of degree `d` in `n + 2` variables (weighted
/// homogeneous when `weights` is set); `D` is cut out by the coordinate
/// `hyperplane`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpec {
    p: u64,
    n: usize,
    d: u32,
    q: SparsePoly<BigInt>,
    hyperplane: usize,
    weights: Option<Vec<u32>>,
}

impl PairSpec {
    pub fn new(
        p: u64,
        n: usize,
        d: u32,
        q: SparsePoly<BigInt>,
        hyperplane: Option<usize>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if q.arity() != n + 2 {
            return Err(Error::ArityMismatch { expected: n + 2, got: q.arity() });
        }
        let hyperplane = hyperplane.unwrap_or(n + 1);
        if hyperplane > n + 1 {
            return Err(Error::InvalidSpec(format!("hyperplane index {hyperplane} out of range 0..={}", n + 1)));
        }
        if d == 0 {
            return Err(Error::InvalidSpec("degree must be positive".into()));
        }
        if let Some(w) = &weights {
            check_weights(w, n + 2)?;
        }
        let weights = weights.filter(|w| w.iter().any(|&a| a != 1));
        let q = q.with_weights(weights.clone())?;
        q.check_homogeneous(d)?;
        if q.terms().all(|(_, c)| bigint_mod_u64(c, p) == 0) {
            return Err(Error::ZeroModP);
        }
        Ok(PairSpec { p, n, d, q, hyperplane, weights })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> &SparsePoly<BigInt> {
        &self.q
    }

    pub fn hyperplane(&self) -> usize {
        self.hyperplane
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Orders of the cyclic factors of `G`; all ones when unweighted.
    pub fn group_orders(&self) -> Vec<u32> {
        self.weights.clone().unwrap_or_else(|| vec![1; self.n + 2])
    }

    /// The same pair with every coefficient reduced into `[0, p)`.
    pub fn canonical_lift(&self) -> PairSpec {
        let p = BigInt::from(self.p);
        let q = self.q.map_coeffs(|c| c.mod_floor(&p));
        PairSpec { q, ..self.clone() }
    }
}

fn check_weights(w: &[u32], len: usize) -> Result<()> {
    if w.len() != len {
        return Err(Error::ArityMismatch { expected: len, got: w.len() });
    }
    if w.iter().any(|&a| a == 0) {
        return Err(Error::InvalidSpec("weights must be positive".into()));
    }
    for i in 0..len {
        let g = w.iter().enumerate().filter(|(j, _)| *j != i).fold(0u64, |g, (_, &a)| g.gcd(&(a as u64)));
        if g != 1 {
            return Err(Error::WeightGcd { index: i, gcd: g });
        }
    }
    Ok(())
}

/// `q~ = Q(..., l = 1, ...)` on `U = X \ D`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineChart {
    pub q: SparsePoly<BigInt>,
    pub d: u32,
    pub hyperplane: usize,
    pub hyperplane_name: String,
    pub hyperplane_weight: u32,
    /// `deg q~ < d`: `Q` has no monomial free of the hyperplane coordinate
    /// at full degree, so `D` contains a coordinate point.
    pub degree_deficient: bool,
}

impl AffineChart {
    pub fn nvars(&self) -> usize {
        self.q.arity()
    }
}

pub fn dehomogenize(spec: &PairSpec) -> AffineChart {
    let one = BigInt::from(1);
    let q = spec.q.specialize(spec.hyperplane, &one);
    let deg = q.weighted_degree().unwrap_or(0);
    AffineChart {
        degree_deficient: deg < spec.d,
        hyperplane: spec.hyperplane,
        hyperplane_name: spec.q.names()[spec.hyperplane].clone(),
        hyperplane_weight: spec.weights.as_ref().map_or(1, |w| w[spec.hyperplane]),
        d: spec.d,
        q,
    }
}

pub fn homogenize(chart: &AffineChart) -> Result<SparsePoly<BigInt>> {
    chart.q.homogenize(chart.hyperplane, chart.hyperplane_name.clone(), chart.hyperplane_weight, chart.d)
}

/// `D` as a hypersurface in `P^n`: substitute `l = 0`. The result may be
/// 0-dimensional (a binary form). The gcd condition is not re-imposed on
/// the remaining weights.
pub fn hyperplane_section(spec: &PairSpec) -> Result<PairSpec> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("a 0-dimensional spec has no hyperplane section".into()));
    }
    let q = spec.q.specialize(spec.hyperplane, &BigInt::from(0));
    if q.terms().all(|(_, c)| bigint_mod_u64(c, spec.p) == 0) {
        return Err(Error::HyperplaneDividesQ);
    }
    let weights = q.weights().map(|w| w.to_vec()).filter(|w| w.iter().any(|&a| a != 1));
    let q = q.with_weights(weights.clone())?;
    Ok(PairSpec { p: spec.p, n: spec.n - 1, d: spec.d, hyperplane: spec.n, weights, q })
}

/// The smooth cover: `x_i = X_i^{a_i}`, same degree, no weights.
pub fn smooth_cover(spec: &PairSpec) -> PairSpec {
    match &spec.weights {
        None => spec.clone(),
        Some(w) => PairSpec { q: spec.q.compose_powers(w), weights: None, ..spec.clone() },
    }
}

/// Makes a general linear form the hyperplane coordinate.
///
/// With `l = Σ c_i X_i` and `c_j` a unit mod `p` (the first such index),
/// the new variables are `Y_j = l` and `Y_i = X_i` otherwise; `Q` is
/// rewritten as `c_j^d Q(X(Y))` so that the coefficients stay integral.
pub fn hyperplane_to_coordinate(spec: &PairSpec, linear: &[i64]) -> Result<PairSpec> {
    if spec.weights.is_some() {
        return Err(Error::InvalidSpec("linear coordinate changes need an unweighted spec".into()));
    }
    let m = spec.n + 2;
    if linear.len() != m {
        return Err(Error::ArityMismatch { expected: m, got: linear.len() });
    }
    let j = linear
        .iter()
        .position(|&c| c.rem_euclid(spec.p as i64) != 0)
        .ok_or_else(|| Error::InvalidSpec("linear form vanishes mod p".into()))?;
    let names: Vec<String> = spec.q.names().to_vec();
    let var = |i: usize| {
        let mut e = vec![0u32; m];
        e[i] = 1;
        SparsePoly::monomial(names.clone(), e, BigInt::from(1))
    };
    // c_j X_j = Y_j - Σ_{i≠j} c_i Y_i ; every other X_i becomes c_j Y_i
    let cj = BigInt::from(linear[j]);
    let mut subs: Vec<SparsePoly<BigInt>> = Vec::with_capacity(m);
    for i in 0..m {
        if i == j {
            let mut s = var(j);
            for (k, &c) in linear.iter().enumerate() {
                if k != j && c != 0 {
                    s = s.sub(&var(k).scale(&BigInt::from(c)));
                }
            }
            subs.push(s);
        } else {
            subs.push(var(i).scale(&cj));
        }
    }
    let mut out = SparsePoly::zero(names.clone());
    let one = SparsePoly::monomial(names.clone(), vec![0; m], BigInt::from(1));
    for (e, c) in spec.q.terms() {
        let mut t = one.scale(c);
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.mul(&subs[i]);
            }
        }
        out = out.add(&t);
    }
    PairSpec::new(spec.p, spec.n, spec.d, out, Some(j), None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeReport {
    /// Exhaustive search over `F_{p^m}`, `m <= up_to`, found nothing. This is
    /// not a proof of smoothness.
    NoSingularPointFound { up_to: u32, points_checked: u64 },
    /// A point where `Q` and every partial derivative vanish, as coordinates
    /// over `F_{p^m}` (each a list of `F_p` digits of the basis `1, x, ...`).
    Singular { m: u32, point: Vec<Vec<u64>> },
}

impl ProbeReport {
    pub fn is_singular(&self) -> bool {
        matches!(self, ProbeReport::Singular { .. })
    }
}

/// Normalized representatives of `P^{k-1}(F)`: the last nonzero coordinate
/// position first, so that visiting order is lexicographic in the element
/// indices of the coordinates.
pub fn projective_points(field: &Arc<ExtField>, k: usize) -> impl Iterator<Item = Vec<ExtElem>> + '_ {
    let q = field.order();
    (0..k).rev().flat_map(move |lead| {
        let free = k - lead - 1;
        let count = q.checked_pow(free as u32).expect("point count overflow");
        (0..count).map(move |mut t| {
            let mut pt = Vec::with_capacity(k);
            for _ in 0..lead {
                pt.push(field.zero());
            }
            pt.push(field.from_u64(1));
            let mut tail = vec![0u64; free];
            for slot in tail.iter_mut().rev() {
                *slot = t % q;
                t /= q;
            }
            pt.extend(tail.into_iter().map(|x| field.element(x)));
            pt
        })
    })
}

pub fn projective_point_count(q: u64, k: usize) -> u128 {
    (0..k as u32).map(|i| (q as u128).pow(i)).sum()
}

/// Searches `P^{n+1}(F_{p^m})`, `m = 1..=max_ext`, for a common zero of
/// `Q` and its partials; weighted specs are probed on their smooth cover.
/// `budget` caps the number of points visited.
pub fn smoothness_probe(spec: &PairSpec, max_ext: u32, budget: u128) -> Result<ProbeReport> {
    let cover = smooth_cover(spec);
    let k = cover.n + 2;
    let needed: u128 = (1..=max_ext).map(|m| projective_point_count(cover.p.pow(m), k)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut polys = vec![cover.q.clone()];
    for i in 0..k {
        polys.push(cover.q.derivative(i));
    }
    let mut checked = 0u64;
    for m in 1..=max_ext {
        let field = ExtField::new(cover.p, m as usize)?;
        let zero = field.zero();
        for pt in projective_points(&field, k) {
            checked += 1;
            let vanishes = polys.iter().all(|f| f.eval(&pt, |c| zero.from_bigint_like(c)).is_zero());
            if vanishes {
                return Ok(ProbeReport::Singular { m, point: pt.iter().map(|x| x.coeffs().to_vec()).collect() });
            }
        }
    }
    Ok(ProbeReport::NoSingularPointFound { up_to: max_ext, points_checked: checked })
}
