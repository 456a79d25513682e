//! Sparse matrices over the coefficient rings of [`crate::arith`].

mod charpoly;
mod echelon;
mod lattice;

pub use charpoly::{char_poly, charpoly_dense, det_cofactor};
pub use echelon::{echelonize_unit_pivot, Echelon};
pub use lattice::{lattice_quotient_basis, SaturatedReducer};

use crate::arith::Ring;
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Sorted `(column, value)` pairs with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<R> {
    entries: Vec<(usize, R)>,
}

impl<R: Ring> Default for SparseVec<R> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<R: Ring> SparseVec<R> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts, merges duplicates and drops zeros.
    pub fn from_unsorted(mut v: Vec<(usize, R)>) -> Self {
        v.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, R)> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match entries.last_mut() {
                Some((lc, lx)) if *lc == c => *lx = lx.add(&x),
                _ => entries.push((c, x)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[R]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|e| !e.1.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, n: usize, zero: &R) -> Vec<R> {
        let mut out = vec![zero.clone(); n];
        for (c, x) in &self.entries {
            out[*c] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, R)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, c: usize) -> Option<&R> {
        self.entries.binary_search_by_key(&c, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        let mut entries: Vec<(usize, R)> = self.entries.iter().map(|(c, x)| (*c, f(x))).collect();
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    /// `self - f * other`
    pub fn sub_scaled(&self, f: &R, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = f.mul(&b[j].1).neg();
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = a[i].1.sub(&f.mul(&b[j].1));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let minus_one = match (self.entries.first(), other.entries.first()) {
            (Some(e), _) | (None, Some(e)) => e.1.one_like().neg(),
            (None, None) => return self.clone(),
        };
        self.sub_scaled(&minus_one, other)
    }
}

/// Row-sparse matrix with homogeneous entry ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<R>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn new(cols: usize, data: Vec<SparseVec<R>>) -> Result<Self> {
        for r in &data {
            if let Some(c) = r.max_col() {
                if c >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, got: c + 1 });
                }
            }
        }
        Ok(SparseMatrix { rows: data.len(), cols, data })
    }

    pub fn from_dense(m: &[Vec<R>]) -> Result<Self> {
        let cols = m.first().map_or(0, |r| r.len());
        for r in m {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
        }
        Self::new(cols, m.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn identity(n: usize, one: &R) -> Self {
        let data = (0..n).map(|i| SparseVec { entries: vec![(i, one.clone())] }).collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<R> {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<R>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec<R>> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn to_dense(&self, zero: &R) -> Vec<Vec<R>> {
        self.data.iter().map(|r| r.to_dense(self.cols, zero)).collect()
    }
}

pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let zero = match a.first().and_then(|r| r.first()) {
        Some(z) => z.zero_like(),
        None => return Vec::new(),
    };
    let mut out = vec![vec![zero.clone(); m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = &a[i][t];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].add(&x.mul(&b[t][j]));
            }
        }
    }
    out
}

pub fn mat_apply<R: Ring>(a: &[Vec<R>], f: impl Fn(&R) -> R) -> Vec<Vec<R>> {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}
