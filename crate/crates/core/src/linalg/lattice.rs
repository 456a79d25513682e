//! Quotients of `Z_(p)^N` by `p`-saturated submodules.

use super::{echelonize_unit_pivot, SparseMatrix, SparseVec};
use crate::arith::{LocalRational, LocalRing, Ring};
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// The saturation `W = (span S ⊗ Q) ∩ Z_(p)^N` of a set of rows, kept as a
/// fully reduced echelon basis with pivots equal to 1.
///
/// Saturation is built into the elimination: every row is divided by the
/// largest power of `p` dividing all its entries before a pivot is looked
/// for, so pivots can always be units. The free columns then give a
/// monomial basis of `Z_(p)^N / W`, which is torsion-free.
#[derive(Debug, Clone)]
pub struct SaturatedReducer<R> {
    ncols: usize,
    pivot_rows: Vec<(usize, SparseVec<R>)>,
    pivot_of: Vec<Option<usize>>,
    free: Vec<usize>,
    free_index: Vec<Option<usize>>,
    torsion_ledger: u64,
    min_precision: Option<u32>,
    zero_declared_at: Option<u32>,
}

fn row_precision<R: LocalRing>(r: &SparseVec<R>) -> Option<u32> {
    r.entries().iter().filter_map(|e| e.1.precision()).min()
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: LocalRing> SaturatedReducer<R> {
    pub fn new(ncols: usize, rows: Vec<SparseVec<R>>) -> Result<Self> {
        for r in &rows {
            if let Some(c) = r.max_col() {
                if c >= ncols {
                    return Err(Error::ArityMismatch { expected: ncols, got: c + 1 });
                }
            }
        }
        let mut me = SaturatedReducer {
            ncols,
            pivot_rows: Vec::new(),
            pivot_of: vec![None; ncols],
            free: Vec::new(),
            free_index: vec![None; ncols],
            torsion_ledger: 0,
            min_precision: None,
            zero_declared_at: None,
        };
        let mut rem: Vec<SparseVec<R>> = Vec::with_capacity(rows.len());
        for r in rows {
            if let Some(r) = me.primitive(r) {
                rem.push(r);
            }
        }
        while !rem.is_empty() {
            let slot = (0..rem.len()).min_by_key(|&i| (rem[i].nnz(), i)).expect("nonempty");
            let r = rem.swap_remove(slot);
            let (c, x) = r
                .entries()
                .iter()
                .find(|e| e.1.is_unit())
                .map(|e| (e.0, e.1.clone()))
                .expect("primitive row has a unit entry");
            let r = r.scale(&x.unit_inverse().expect("unit"));
            me.min_precision = min_opt(me.min_precision, row_precision(&r));
            let mut next = Vec::with_capacity(rem.len());
            for s in rem.drain(..) {
                let s = match s.get(c) {
                    Some(f) => {
                        let f = f.clone();
                        s.sub_scaled(&f, &r)
                    }
                    None => s,
                };
                if let Some(s) = me.primitive(s) {
                    next.push(s);
                }
            }
            rem = next;
            for (_, s) in me.pivot_rows.iter_mut() {
                if let Some(f) = s.get(c) {
                    let f = f.clone();
                    *s = s.sub_scaled(&f, &r);
                }
            }
            me.pivot_of[c] = Some(me.pivot_rows.len());
            me.pivot_rows.push((c, r));
        }
        for j in 0..ncols {
            if me.pivot_of[j].is_none() {
                me.free_index[j] = Some(me.free.len());
                me.free.push(j);
            }
        }
        Ok(me)
    }

    /// Divides out the content; `None` for rows that became zero.
    fn primitive(&mut self, r: SparseVec<R>) -> Option<SparseVec<R>> {
        if r.is_zero() {
            return None;
        }
        let m = r.entries().iter().filter_map(|e| e.1.valuation().finite()).min();
        let m = match m {
            Some(m) => m,
            None => {
                // all entries are "zero at their cap"
                self.zero_declared_at = min_opt(self.zero_declared_at, row_precision(&r));
                return None;
            }
        };
        if m == 0 {
            return Some(r);
        }
        self.torsion_ledger += m as u64;
        let out = r.map(|x| x.div_p_pow(m));
        if out.is_zero() {
            self.zero_declared_at = min_opt(self.zero_declared_at, row_precision(&r));
            return None;
        }
        Some(out)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Dimension of the saturated submodule.
    pub fn sub_rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Rank of the quotient.
    pub fn quotient_rank(&self) -> usize {
        self.free.len()
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_rows.iter().map(|e| e.0)
    }

    /// Total power of `p` divided out of rows while saturating.
    pub fn torsion_ledger(&self) -> u64 {
        self.torsion_ledger
    }

    /// Smallest precision of a pivot row (capped rings only).
    pub fn min_precision(&self) -> Option<u32> {
        self.min_precision
    }

    /// Smallest cap at which a row was declared zero (capped rings only).
    pub fn zero_declared_at(&self) -> Option<u32> {
        self.zero_declared_at
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of[c].is_some()
    }

    /// Coordinates of the image of `v` in the quotient, indexed like
    /// [`free_columns`](Self::free_columns).
    pub fn reduce(&self, v: &SparseVec<R>, zero: &R) -> Result<Vec<R>> {
        if let Some(c) = v.max_col() {
            if c >= self.ncols {
                return Err(Error::ArityMismatch { expected: self.ncols, got: c + 1 });
            }
        }
        let mut out = vec![zero.clone(); self.free.len()];
        for (j, x) in v.entries() {
            match self.pivot_of[*j] {
                None => {
                    let k = self.free_index[*j].expect("free");
                    out[k] = out[k].add(x);
                }
                Some(pi) => {
                    let r = &self.pivot_rows[pi].1;
                    for (jj, y) in r.entries() {
                        if let Some(k) = self.free_index[*jj] {
                            out[k] = out[k].sub(&x.mul(y));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether `v` lies in the saturated submodule.
    pub fn contains(&self, v: &SparseVec<R>, zero: &R) -> Result<bool> {
        Ok(self.reduce(v, zero)?.iter().all(|x| x.is_zero()))
    }
}

/// A `Z_(p)`-basis of the image of `span(ambient)` in
/// `Q^N / span_Q(sub)`, returned as representatives in ambient coordinates.
///
/// The image is torsion-free by construction because the quotient is taken
/// against the `p`-saturation of `sub`.
pub fn lattice_quotient_basis(
    ambient: &[Vec<LocalRational>],
    sub: &[Vec<LocalRational>],
    p: u64,
) -> Result<Vec<Vec<LocalRational>>> {
    let n = ambient.first().or(sub.first()).map_or(0, |v| v.len());
    for v in ambient.iter().chain(sub) {
        if v.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: v.len() });
        }
        if let Some(x) = v.first() {
            if x.prime() != p {
                return Err(Error::InvalidSpec(alloc::format!("entry over Z_({}) in a Z_({p}) problem", x.prime())));
            }
        }
    }
    let zero = LocalRational::from_int(0, p);
    let red = SaturatedReducer::new(n, sub.iter().map(|v| SparseVec::from_dense(v)).collect())?;
    let images: Vec<SparseVec<LocalRational>> = ambient
        .iter()
        .map(|v| red.reduce(&SparseVec::from_dense(v), &zero).map(|c| SparseVec::from_dense(&c)))
        .collect::<Result<_>>()?;
    let ech = echelonize_unit_pivot(&SparseMatrix::new(red.quotient_rank(), images)?);
    let mut out = Vec::with_capacity(ech.rank());
    for t in ech.transform.iter().take(ech.rank()) {
        let mut acc = vec![zero.clone(); n];
        for (j, f) in t.entries() {
            for (k, x) in ambient[*j].iter().enumerate() {
                acc[k] = acc[k].add(&f.mul(x));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CappedResidue, Valuation};
    use crate::linalg::det_cofactor;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn lv(v: &[i64], p: u64) -> Vec<LocalRational> {
        v.iter().map(|&x| LocalRational::from_int(x, p)).collect()
    }

    #[test]
    fn saturation_kills_torsion_line() {
        let amb = [lv(&[1, 0], 5), lv(&[0, 1], 5)];
        let b = lattice_quotient_basis(&amb, &[lv(&[5, 0], 5)], 5).unwrap();
        assert_eq!(b, vec![lv(&[0, 1], 5)]);
        let b = lattice_quotient_basis(&amb, &[lv(&[2, 0], 5)], 5).unwrap();
        assert_eq!(b, vec![lv(&[0, 1], 5)]);
    }

    #[test]
    fn arity_mismatch() {
        let r = lattice_quotient_basis(&[lv(&[1, 0], 5)], &[lv(&[1, 0, 0], 5)], 5);
        assert_eq!(r, Err(Error::ArityMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn ledger_counts_divisions() {
        let rows = vec![SparseVec::from_dense(&lv(&[25, 50, 0], 5)), SparseVec::from_dense(&lv(&[0, 5, 10], 5))];
        let red = SaturatedReducer::new(3, rows).unwrap();
        assert_eq!(red.torsion_ledger(), 3);
        assert_eq!(red.quotient_rank(), 1);
        let z = LocalRational::from_int(0, 5);
        assert!(red.contains(&SparseVec::from_dense(&lv(&[1, 2, 0], 5)), &z).unwrap());
    }

    /// Rank of a list of rational vectors by plain Gaussian elimination over Q.
    fn rank_q(vs: &[Vec<LocalRational>]) -> usize {
        let n = vs.first().map_or(0, |v| v.len());
        let p = vs.first().and_then(|v| v.first()).map_or(5, |x| x.prime());
        let mut rows: Vec<Vec<(BigInt, BigInt)>> =
            vs.iter().map(|v| v.iter().map(|x| (x.numer().clone(), x.denom().clone())).collect()).collect();
        // clear denominators, then fraction-free elimination over Z
        let mut zr: Vec<Vec<BigInt>> = rows
            .drain(..)
            .map(|r| {
                let l = r.iter().fold(BigInt::from(1), |a, (_, d)| a * d);
                r.into_iter().map(|(nn, d)| nn * &l / d).collect()
            })
            .collect();
        let _ = p;
        let mut rank = 0;
        for c in 0..n {
            let Some(i) = (rank..zr.len()).find(|&i| zr[i][c] != BigInt::from(0)) else { continue };
            zr.swap(rank, i);
            for j in 0..zr.len() {
                if j != rank && zr[j][c] != BigInt::from(0) {
                    let (a, b) = (zr[rank][c].clone(), zr[j][c].clone());
                    zr[j] = zr[j].iter().zip(&zr[rank]).map(|(x, y)| x * &a - y * &b).collect();
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn matches_rational_oracle(
            sub in proptest::collection::vec(proptest::collection::vec(-12i64..13, 8), 3),
            scale in proptest::collection::vec(0u32..3, 3),
        ) {
            let p = 5;
            let sub: Vec<Vec<LocalRational>> = sub
                .iter()
                .zip(&scale)
                .map(|(v, &k)| lv(&v.iter().map(|x| x * 5i64.pow(k)).collect::<Vec<_>>(), p))
                .collect();
            let amb: Vec<Vec<LocalRational>> = (0..8).map(|i| {
                let mut e = vec![0i64; 8];
                e[i] = 1;
                lv(&e, p)
            }).collect();
            let basis = lattice_quotient_basis(&amb, &sub, p).unwrap();
            let rs = rank_q(&sub);
            prop_assert_eq!(basis.len(), 8 - rs);
            // same Q-quotient: basis + sub spans everything
            let mut all = basis.clone();
            all.extend(sub.iter().cloned());
            prop_assert_eq!(rank_q(&all), 8);
            // every ambient generator is an integral combination of the basis
            // modulo the saturation: coordinates in the quotient are integral
            // and the basis has unit determinant there
            let zero = LocalRational::from_int(0, p);
            let red = SaturatedReducer::new(8, sub.iter().map(|v| SparseVec::from_dense(v)).collect()).unwrap();
            let m: Vec<Vec<LocalRational>> = basis.iter().map(|b| red.reduce(&SparseVec::from_dense(b), &zero).unwrap()).collect();
            if !m.is_empty() {
                prop_assert_eq!(det_cofactor(&m, &zero).valuation(), Valuation::Finite(0));
            }
        }

        #[test]
        fn capped_agrees_with_exact(rows in proptest::collection::vec(proptest::collection::vec(-30i64..31, 6), 1..5)) {
            let p = 5;
            let exact = SaturatedReducer::new(6, rows.iter().map(|v| SparseVec::from_dense(&lv(v, p))).collect()).unwrap();
            let capped = SaturatedReducer::new(6, rows.iter().map(|v| {
                SparseVec::from_dense(&v.iter().map(|&x| CappedResidue::from_bigint(&BigInt::from(x), p, 20).unwrap()).collect::<Vec<_>>())
            }).collect()).unwrap();
            prop_assert_eq!(exact.free_columns(), capped.free_columns());
            prop_assert_eq!(exact.torsion_ledger(), capped.torsion_ledger());
        }
    }
}
