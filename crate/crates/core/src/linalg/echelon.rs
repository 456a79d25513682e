use super::{SparseMatrix, SparseVec};
use crate::arith::LocalRing;
use alloc::vec::Vec;

/// Result of [`echelonize_unit_pivot`].
///
/// `rows[i] = Σ_j transform[i][j] * input[j]`. The first `rank` rows carry a
/// pivot `p^{v_i}` at column `pivots[i]` and vanish in the pivot columns of
/// every later row. The rest are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<R> {
    pub rows: Vec<SparseVec<R>>,
    pub pivots: Vec<usize>,
    pub pivot_valuations: Vec<u32>,
    pub transform: Vec<SparseVec<R>>,
    /// Total valuation of the pivots; zero iff every pivot is a unit.
    pub ledger: u64,
}

impl<R> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row echelon form over `Z_(p)` with full pivoting: each step takes an
/// entry of least valuation among the remaining rows (ties broken by row,
/// then column) and clears its column in the other remaining rows.
///
/// Only unit scalings and integral row operations are used, so the
/// transform is invertible over `Z_(p)`. Because the chosen valuation is
/// minimal over the whole remaining block, the sequence of pivot valuations
/// is the list of elementary divisors of the input.
pub fn echelonize_unit_pivot<R: LocalRing>(m: &SparseMatrix<R>) -> Echelon<R> {
    let n = m.rows();
    let mut work: Vec<SparseVec<R>> = m.row_vecs().to_vec();
    let one = m.row_vecs().iter().find_map(|r| r.entries().first().map(|e| e.1.one_like()));
    let mut transform: Vec<SparseVec<R>> = match &one {
        Some(one) => (0..n).map(|i| SparseVec::from_unsorted(alloc::vec![(i, one.clone())])).collect(),
        None => {
            return Echelon {
                rows: work,
                pivots: Vec::new(),
                pivot_valuations: Vec::new(),
                transform: Vec::new(),
                ledger: 0,
            }
        }
    };
    let mut active: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut pivots = Vec::new();
    let mut vals = Vec::new();
    let mut ledger = 0u64;
    loop {
        let mut best: Option<(u64, usize, usize, usize)> = None;
        for (slot, &i) in active.iter().enumerate() {
            for (c, x) in work[i].entries() {
                let key = x.valuation().sort_key();
                if best.is_none_or(|b| key < b.0) {
                    best = Some((key, slot, i, *c));
                }
            }
        }
        let Some((_, slot, i, c)) = best else { break };
        active.remove(slot);
        let x = work[i].get(c).expect("pivot entry").clone();
        let v = x.valuation().lower_bound().expect("nonzero pivot");
        let u_inv = x.div_p_pow(v).unit_inverse().expect("unit part");
        work[i] = work[i].scale(&u_inv);
        transform[i] = transform[i].scale(&u_inv);
        for &j in &active {
            if let Some(y) = work[j].get(c) {
                let f = y.div_p_pow(v);
                work[j] = work[j].sub_scaled(&f, &work[i]);
                transform[j] = transform[j].sub_scaled(&f, &transform[i]);
            }
        }
        order.push(i);
        pivots.push(c);
        vals.push(v);
        ledger += v as u64;
    }
    order.extend(active);
    Echelon {
        rows: order.iter().map(|&i| work[i].clone()).collect(),
        pivots,
        pivot_valuations: vals,
        transform: order.iter().map(|&i| transform[i].clone()).collect(),
        ledger,
    }
}
