//! `det(1 - M T)` without divisions (Berkowitz).

use super::SparseMatrix;
use crate::arith::Ring;
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Coefficients of `det(1 - M T)`, lowest degree first, length `dim + 1`.
/// `zero` fixes the ring for the empty matrix.
pub fn char_poly<R: Ring>(m: &SparseMatrix<R>, zero: &R) -> Result<Vec<R>> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(charpoly_dense(&m.to_dense(zero), zero))
}

pub fn charpoly_dense<R: Ring>(a: &[Vec<R>], zero: &R) -> Vec<R> {
    let n = a.len();
    let one = zero.one_like();
    if n == 0 {
        return vec![one];
    }
    // coefficients of det(tI - A_r), highest degree first
    let mut vect = vec![one.clone(), a[0][0].neg()];
    for r in 1..n {
        let col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        let row = &a[r][..r];
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(a[r][r].neg());
        // t_k = -R A_r^{k-2} C
        let mut v = col;
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)));
            t.push(dot.neg());
            v = (0..r).map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add(&a[i][j].mul(&v[j])))).collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = zero.clone();
            for j in 0..=i.min(r) {
                s = s.add(&t[i - j].mul(&vect[j]));
            }
            next.push(s);
        }
        vect = next;
    }
    vect
}

/// Cofactor-expansion determinant; exponential, for tests and tiny matrices.
pub fn det_cofactor<R: Ring>(a: &[Vec<R>], zero: &R) -> R {
    let n = a.len();
    if n == 0 {
        return zero.one_like();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = zero.clone();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = a[0][j].mul(&det_cofactor(&minor, zero));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CappedResidue;
    use crate::linalg::SparseVec;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn big(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// det(1 - M T) through cofactor expansion over Z[T], evaluated at
    /// enough integer points and interpolated would be heavy; instead expand
    /// the determinant of (I - M T) with polynomial entries directly.
    fn oracle(a: &[Vec<BigInt>]) -> Vec<BigInt> {
        let n = a.len();
        type P = Vec<BigInt>;
        fn pmul(x: &P, y: &P) -> P {
            let mut out = vec![BigInt::from(0); x.len() + y.len() - 1];
            for (i, u) in x.iter().enumerate() {
                for (j, v) in y.iter().enumerate() {
                    out[i + j] += u * v;
                }
            }
            out
        }
        fn padd(x: &P, y: &P, sign: i64) -> P {
            let n = x.len().max(y.len());
            (0..n)
                .map(|i| {
                    x.get(i).cloned().unwrap_or_default() + BigInt::from(sign) * y.get(i).cloned().unwrap_or_default()
                })
                .collect()
        }
        fn det(m: &[Vec<P>]) -> P {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = vec![BigInt::from(0)];
            for j in 0..m.len() {
                let minor: Vec<Vec<P>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = pmul(&m[0][j], &det(&minor));
                acc = padd(&acc, &t, if j % 2 == 0 { 1 } else { -1 });
            }
            acc
        }
        let m: Vec<Vec<P>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c0 = BigInt::from((i == j) as i64);
                        vec![c0, -a[i][j].clone()]
                    })
                    .collect()
            })
            .collect();
        let mut d = det(&m);
        d.resize(n + 1, BigInt::from(0));
        d
    }

    #[test]
    fn small_cases() {
        let z = BigInt::from(0);
        assert_eq!(charpoly_dense(&big(&[&[0, 0], &[0, 0]]), &z), big(&[&[1, 0, 0]])[0]);
        assert_eq!(charpoly_dense(&big(&[&[2, 0], &[0, 3]]), &z), big(&[&[1, -5, 6]])[0]);
        assert_eq!(charpoly_dense(&[], &z), vec![BigInt::from(1)]);
        let rect = SparseMatrix::new(3, vec![SparseVec::<BigInt>::new()]).unwrap();
        assert_eq!(char_poly(&rect, &z), Err(Error::NotSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn capped_matches_cofactor_oracle() {
        // 5x5 over Z/5^8 against the integer oracle reduced mod 5^8
        let a = big(&[&[3, 10, 0, 7, 1], &[25, 4, 6, 0, 2], &[1, 1, 5, 125, 0], &[0, 9, 2, 8, 3], &[4, 0, 0, 1, 50]]);
        let want = oracle(&a);
        let c = |x: &BigInt| CappedResidue::from_bigint(x, 5, 8).unwrap();
        let ac: Vec<Vec<CappedResidue>> = a.iter().map(|r| r.iter().map(c).collect()).collect();
        let got = charpoly_dense(&ac, &c(&BigInt::from(0)));
        let want: Vec<CappedResidue> = want.iter().map(c).collect();
        assert_eq!(got, want);
    }

    proptest! {
        #[test]
        fn berkowitz_matches_expansion(n in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect();
            let z = BigInt::from(0);
            let cp = charpoly_dense(&a, &z);
            prop_assert_eq!(&cp, &oracle(&a));
            let trace: BigInt = (0..n).map(|i| a[i][i].clone()).sum();
            prop_assert_eq!(cp[0].clone(), BigInt::from(1));
            prop_assert_eq!(cp[1].clone(), -trace);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(cp[n].clone(), BigInt::from(sign) * det_cofactor(&a, &z));
        }
    }
}
