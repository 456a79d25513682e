//! Primitive Hodge numbers from the Jacobian ring and the Hodge polygon of
//! a pair.

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// `entries[i] = h^{i, n-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeVector {
    pub n: usize,
    pub entries: Vec<u64>,
    pub primitive: bool,
}

impl HodgeVector {
    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// Middle Betti number of the full cohomology: one more than the
    /// primitive part in even dimension, where the hyperplane class power
    /// contributes a rank-one piece with Frobenius `q^{n/2}`.
    pub fn full_middle_betti(&self) -> u64 {
        if self.primitive && self.n % 2 == 0 {
            self.total() + 1
        } else {
            self.total()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let e = &self.entries;
        (0..e.len()).all(|i| e[i] == e[e.len() - 1 - i])
    }
}

/// Coefficient of `t^m` in `((1 - t^{d-1}) / (1 - t))^k`, i.e. the number of
/// ways to write `m` as an ordered sum of `k` parts in `[0, d-2]`.
fn bounded_compositions(k: usize, d: u32, m: i64) -> u64 {
    if m < 0 || d < 2 {
        return if m == 0 && k == 0 { 1 } else { 0 };
    }
    let m = m as usize;
    let top = d as usize - 2;
    let mut poly = vec![0u64; m + 1];
    poly[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; m + 1];
        for (i, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..=top.min(m - i) {
                next[i + j] += c;
            }
        }
        poly = next;
    }
    poly[m]
}

/// `h^{N-q,q}_prim` of a smooth degree `d` hypersurface in `P^{N+1}` is the
/// coefficient of `t^{(q+1)d - (N+2)}` in `((1 - t^{d-1})/(1 - t))^{N+2}`.
pub fn primitive_hodge_numbers(dim: usize, d: u32) -> HodgeVector {
    let entries = (0..=dim)
        .map(|i| {
            let q = (dim - i) as i64;
            bounded_compositions(dim + 2, d, (q + 1) * d as i64 - (dim as i64 + 2))
        })
        .collect();
    HodgeVector { n: dim, entries, primitive: true }
}

/// Invariant part under `G = Π μ_{a_i}` acting on the smooth cover
/// `Q(X_0^{a_0}, ...)` of degree `d`.
///
/// The Jacobian ring of the cover is graded by degree and character; the
/// Koszul resolution of the partials gives, one variable at a time,
/// `(1 - t^{d-1} χ_i^{-1}) / (1 - t χ_i)`. A class `X^m Ω` is invariant iff
/// `m_i ≡ -1 (mod a_i)` for every `i`, so variable `i` contributes
/// `[m ≡ -1] - [m >= d-1][m ≡ d-1]` (congruences mod `a_i`) in degree `m`.
pub fn invariant_primitive_hodge_numbers(dim: usize, d: u32, weights: &[u32]) -> Result<HodgeVector> {
    if weights.len() != dim + 2 {
        return Err(Error::ArityMismatch { expected: dim + 2, got: weights.len() });
    }
    if weights.iter().any(|&a| a == 0) {
        return Err(Error::InvalidSpec("weights must be positive".into()));
    }
    let mut entries = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let q = (dim - i) as i64;
        let m = (q + 1) * d as i64 - (dim as i64 + 2);
        if m < 0 {
            entries.push(0);
            continue;
        }
        let m = m as usize;
        let mut poly = vec![0i64; m + 1];
        poly[0] = 1;
        for &a in weights {
            let a = a as i64;
            let factor: Vec<i64> = (0..=m as i64)
                .map(|t| {
                    let mut c = ((t + 1) % a == 0) as i64;
                    if t >= d as i64 - 1 && (t - (d as i64 - 1)) % a == 0 {
                        c -= 1;
                    }
                    c
                })
                .collect();
            let mut next = vec![0i64; m + 1];
            for (u, &x) in poly.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (v, &y) in factor.iter().enumerate().take(m + 1 - u) {
                    next[u + v] += x * y;
                }
            }
            poly = next;
        }
        if poly[m] < 0 {
            return Err(Error::InvalidSpec("negative invariant Hodge number: weights incompatible with degree".into()));
        }
        entries.push(poly[m] as u64);
    }
    Ok(HodgeVector { n: dim, entries, primitive: true })
}

/// `h^{i,n-i}_{(X,D)} = h^{i,n-i}_X + h^{i-1,n-i}_D` (the second term absent
/// for `i = 0`).
pub fn pair_hodge_numbers(hx: &HodgeVector, hd: &HodgeVector) -> Result<HodgeVector> {
    if hd.n + 1 != hx.n {
        return Err(Error::DimensionMismatch { expected: hx.n - 1, got: hd.n });
    }
    let entries = (0..=hx.n).map(|i| hx.entries[i] + if i >= 1 { hd.entries[i - 1] } else { 0 }).collect();
    Ok(HodgeVector { n: hx.n, entries, primitive: false })
}

/// A non-negative rational `num / den`, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Height {
    pub num: u64,
    pub den: u64,
}

impl Height {
    pub fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den).max(1);
        Height { num: num / g, den: den / g }
    }

    pub fn integer(v: u64) -> Self {
        Height { num: v, den: 1 }
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Compares with an integer.
    pub fn cmp_int(&self, v: i128) -> Ordering {
        (self.num as i128).cmp(&(v * self.den as i128))
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lower convex polygon from `(0,0)` with integer vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgePolygon {
    pub vertices: Vec<(u64, u64)>,
}

impl HodgePolygon {
    /// The hull of `(Σ_{i<=j} h_i, Σ_{i<=j} i h_i)`; slope `i` has length
    /// `h_i`, so the points are already convex and only zero-length blocks
    /// need dropping.
    pub fn from_slopes(h: &[u64]) -> Self {
        let mut vertices = vec![(0u64, 0u64)];
        let (mut x, mut y) = (0u64, 0u64);
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            x += c;
            y += c * i as u64;
            vertices.push((x, y));
        }
        HodgePolygon { vertices }
    }

    pub fn width(&self) -> u64 {
        self.vertices.last().map_or(0, |v| v.0)
    }

    /// Exact height at `x` in `[0, width]`; `None` outside.
    pub fn height(&self, x: u64) -> Option<Height> {
        if x > self.width() {
            return None;
        }
        if x == 0 {
            return Some(Height::integer(0));
        }
        for w in self.vertices.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x <= x1 {
                // y0 + (x - x0)(y1 - y0)/(x1 - x0)
                let dx = x1 - x0;
                return Some(Height::new(y0 * dx + (x - x0) * (y1 - y0), dx));
            }
        }
        None
    }

    /// `floor(Γ(x))`: the conservative integer when a bound is consumed as
    /// a guaranteed valuation.
    pub fn height_floor(&self, x: u64) -> Option<u64> {
        self.height(x).map(|h| h.floor())
    }

    pub fn slopes(&self) -> Vec<Height> {
        self.vertices.windows(2).map(|w| Height::new(w[1].1 - w[0].1, w[1].0 - w[0].0)).collect()
    }
}

pub fn hodge_polygon(h: &HodgeVector) -> HodgePolygon {
    HodgePolygon::from_slopes(&h.entries)
}
