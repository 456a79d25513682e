use super::{
    exact_of_generator, omega_degree_bound, section_generators, shifted_exact_generators, CharacterContext, FormSymbol,
    OmegaSpace, SectionModel,
};
use crate::arith::{max_cap, CappedResidue, LocalRational, LocalRing, Ring, Valuation};
use crate::error::{Error, Result};
use crate::hodge::{invariant_primitive_hodge_numbers, primitive_hodge_numbers, HodgeVector};
use crate::linalg::{echelonize_unit_pivot, SaturatedReducer, SparseMatrix, SparseVec};
use crate::poly::{monomials_up_to, Exponent, SparsePoly};
use crate::variety::{dehomogenize, hyperplane_section, smooth_cover, AffineChart, PairSpec};
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient ring used for the elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact `Z_(p)` fractions.
    Exact,
    /// Residues modulo `p^cap`.
    Capped(u32),
    /// Exact for small problems, the largest word-size cap otherwise.
    Auto,
}

const AUTO_EXACT_COLUMNS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Capped(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisStats {
    pub columns: usize,
    pub relation_rows: usize,
    pub exact_rows: usize,
    pub shifted_exact_rows: usize,
    pub sub_rank: usize,
    /// Total power of `p` divided out while saturating.
    pub torsion_ledger: u64,
    pub backend: Backend,
    /// Smallest precision of a pivot row (capped backend).
    pub min_precision: Option<u32>,
    /// Smallest cap at which a row was found to vanish (capped backend).
    pub zero_declared_at: Option<u32>,
}

/// One basis element `Σ c_e x^e ω`; coefficients are `num / den` with `den`
/// prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisForm {
    pub terms: Vec<(Exponent, BigInt, BigInt)>,
}

#[derive(Debug, Clone)]
enum Reducer {
    Exact(SaturatedReducer<LocalRational>),
    Capped(SaturatedReducer<CappedResidue>, u32),
}

#[derive(Debug, Clone)]
struct Reduction {
    space: OmegaSpace,
    reducer: Reducer,
}

/// A `Z_(p)`-basis of the image of the top log sections of pole order `k`
/// in cohomology, in `ω`-coordinates on the chart `x_l = 1`.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    pub p: u64,
    pub n: usize,
    pub d: u32,
    pub k: u32,
    pub hyperplane: usize,
    pub weights: Option<Vec<u32>>,
    /// `n ⌊log_p(k+1)⌋`: `p` to this power kills the cokernel of the log
    /// lattice inside this one.
    pub torsion_exponent: u32,
    pub forms: Vec<BasisForm>,
    pub stats: Option<BasisStats>,
    reduction: Option<Arc<Reduction>>,
}

/// Equality of the serialized content; statistics and the reduction data
/// are ignored.
impl PartialEq for LatticeBasis {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p
            && self.n == o.n
            && self.d == o.d
            && self.k == o.k
            && self.hyperplane == o.hyperplane
            && self.weights == o.weights
            && self.torsion_exponent == o.torsion_exponent
            && self.forms == o.forms
    }
}

impl LatticeBasis {
    /// Rebuilds a basis from serialized content, without reduction data.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        p: u64,
        n: usize,
        d: u32,
        k: u32,
        hyperplane: usize,
        weights: Option<Vec<u32>>,
        torsion_exponent: u32,
        forms: Vec<BasisForm>,
    ) -> Self {
        LatticeBasis { p, n, d, k, hyperplane, weights, torsion_exponent, forms, stats: None, reduction: None }
    }

    pub fn rank(&self) -> usize {
        self.forms.len()
    }

    pub fn has_reduction(&self) -> bool {
        self.reduction.is_some()
    }

    /// The `ω`-coefficient polynomial of basis form `i`.
    pub fn form_poly(&self, i: usize) -> Result<SparsePoly<BigInt>> {
        let names = crate::poly::default_names(self.n + 1);
        let f = &self.forms[i];
        let mut out = SparsePoly::zero(names);
        for (e, num, den) in &f.terms {
            if !One::is_one(den) {
                return Err(Error::NonIntegralCoefficient { index: i });
            }
            out.add_term(e.clone(), num.clone());
        }
        Ok(out)
    }
}

/// `n ⌊log_p(k+1)⌋`.
pub(crate) fn torsion_exponent(n: usize, k: u32, p: u64) -> u32 {
    n as u32 * crate::arith::ilog(k as u64 + 1, p)
}

struct Rows {
    space: OmegaSpace,
    rows: Vec<Vec<(usize, BigInt)>>,
    relation_rows: usize,
    exact_rows: usize,
    shifted_exact_rows: usize,
}

fn assemble(chart: &AffineChart, ctx: &CharacterContext, k: u32) -> Result<Rows> {
    let m = chart.nvars();
    let n = m - 1;
    if n == 0 {
        return Err(Error::InvalidSpec("lattice bases need n >= 1".into()));
    }
    let bound = omega_degree_bound(n, chart.d, k).ok_or(Error::KBelowBound { k, minimal: (n + 1) as u32 })?;
    let space = OmegaSpace::new(m, bound, ctx);
    let one = BigInt::one();
    let mut rows = Vec::new();
    if let Ok(b) = u32::try_from(k as i64 - n as i64 - 1) {
        for e in monomials_up_to(m, b) {
            if ctx.character(&e, &FormSymbol::Omega, 1).is_trivial() {
                rows.push(space.vector(&chart.q.mul_monomial(&e, &one))?);
            }
        }
    }
    let relation_rows = rows.len();
    for g in section_generators(chart, n - 1, k, SectionModel::Ambient) {
        if ctx.is_invariant(&g) {
            rows.push(space.vector(&exact_of_generator(chart, &g, false))?);
        }
    }
    let exact_rows = rows.len() - relation_rows;
    for g in shifted_exact_generators(chart, k) {
        if ctx.character(&g.monomial, &g.symbol, 1).is_trivial() {
            rows.push(space.vector(&exact_of_generator(chart, &g, true))?);
        }
    }
    let shifted_exact_rows = rows.len() - relation_rows - exact_rows;
    Ok(Rows { space, rows, relation_rows, exact_rows, shifted_exact_rows })
}

fn build(spec: &PairSpec, k: u32, arithmetic: Arithmetic) -> Result<LatticeBasis> {
    let cover = smooth_cover(spec);
    let chart = dehomogenize(&cover);
    let ctx = CharacterContext::new(spec.group_orders(), spec.hyperplane(), spec.d())?;
    let bound = super::pole_bound_k(spec.n(), spec.d());
    bound.with_k(k)?;
    let rows = assemble(&chart, &ctx, k)?;
    let p = spec.p();
    let backend = match arithmetic {
        Arithmetic::Exact => Backend::Exact,
        Arithmetic::Capped(c) => Backend::Capped(c),
        Arithmetic::Auto if rows.space.len() <= AUTO_EXACT_COLUMNS => Backend::Exact,
        Arithmetic::Auto => Backend::Capped(max_cap(p)),
    };
    let ncols = rows.space.len();
    let reducer = match backend {
        Backend::Exact => {
            let v = rows
                .rows
                .iter()
                .map(|r| {
                    SparseVec::from_unsorted(
                        r.iter().map(|(i, c)| (*i, LocalRational::from_int(c.clone(), p))).collect(),
                    )
                })
                .collect();
            Reducer::Exact(SaturatedReducer::new(ncols, v)?)
        }
        Backend::Capped(cap) => {
            CappedResidue::new(0, p, cap)?;
            let v = rows
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(i, c)| CappedResidue::from_bigint(c, p, cap).map(|x| (*i, x)))
                        .collect::<Result<Vec<_>>>()
                        .map(SparseVec::from_unsorted)
                })
                .collect::<Result<Vec<_>>>()?;
            Reducer::Capped(SaturatedReducer::new(ncols, v)?, cap)
        }
    };
    let (free, sub_rank, ledger, minp, zda) = match &reducer {
        Reducer::Exact(r) => (r.free_columns().to_vec(), r.sub_rank(), r.torsion_ledger(), None, None),
        Reducer::Capped(r, _) => {
            (r.free_columns().to_vec(), r.sub_rank(), r.torsion_ledger(), r.min_precision(), r.zero_declared_at())
        }
    };
    let forms = free
        .iter()
        .map(|&c| BasisForm { terms: alloc::vec![(rows.space.columns[c].clone(), BigInt::one(), BigInt::one())] })
        .collect();
    let stats = BasisStats {
        columns: ncols,
        relation_rows: rows.relation_rows,
        exact_rows: rows.exact_rows,
        shifted_exact_rows: rows.shifted_exact_rows,
        sub_rank,
        torsion_ledger: ledger,
        backend,
        min_precision: minp,
        zero_declared_at: zda,
    };
    Ok(LatticeBasis {
        p,
        n: spec.n(),
        d: spec.d(),
        k,
        hyperplane: spec.hyperplane(),
        weights: spec.weights().map(|w| w.to_vec()),
        torsion_exponent: torsion_exponent(spec.n(), k, p),
        forms,
        stats: Some(stats),
        reduction: Some(Arc::new(Reduction { space: rows.space, reducer })),
    })
}

/// Primitive Hodge vectors of `X` and `D` (invariant parts on the cover
/// when weighted).
pub fn pair_hodge_vectors(spec: &PairSpec) -> Result<(HodgeVector, HodgeVector)> {
    let n = spec.n();
    match spec.weights() {
        None => Ok((primitive_hodge_numbers(n, spec.d()), primitive_hodge_numbers(n - 1, spec.d()))),
        Some(w) => {
            let sec = hyperplane_section(spec)?;
            let ws = sec.group_orders();
            Ok((
                invariant_primitive_hodge_numbers(n, spec.d(), w)?,
                invariant_primitive_hodge_numbers(n - 1, spec.d(), &ws)?,
            ))
        }
    }
}

/// Predicted rank `h^n_prim(X) + h^{n-1}_prim(D)`.
pub fn expected_rank(spec: &PairSpec) -> Result<usize> {
    let (hx, hd) = pair_hodge_vectors(spec)?;
    Ok((hx.total() + hd.total()) as usize)
}

fn checked(spec: &PairSpec, k: u32, arithmetic: Arithmetic) -> Result<LatticeBasis> {
    let b = build(spec, k, arithmetic)?;
    let expected = expected_rank(spec)?;
    if b.rank() != expected {
        if let Some(BasisStats { backend: Backend::Capped(cap), zero_declared_at: Some(_), .. }) = &b.stats {
            return Err(Error::PrecisionExhausted { needed: cap + 1, cap: *cap });
        }
        return Err(Error::RankMismatch { expected, got: b.rank() });
    }
    Ok(b)
}

/// Lattice basis for an unweighted pair, checked against the Hodge numbers.
pub fn lattice_basis(spec: &PairSpec, k: u32, arithmetic: Arithmetic) -> Result<LatticeBasis> {
    if spec.is_weighted() {
        return Err(Error::InvalidSpec("weighted spec: use the invariant lattice basis".into()));
    }
    checked(spec, k, arithmetic)
}

/// Same pipeline without the rank check.
pub fn lattice_basis_unchecked(spec: &PairSpec, k: u32, arithmetic: Arithmetic) -> Result<LatticeBasis> {
    build(spec, k, arithmetic)
}

/// Lattice basis of the `G`-invariant part on the smooth cover of a
/// weighted pair. Trivial weights give the plain lattice basis.
pub fn invariant_lattice_basis(spec: &PairSpec, k: u32, arithmetic: Arithmetic) -> Result<LatticeBasis> {
    checked(spec, k, arithmetic)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForm {
    /// Coordinates of `p^multiplier · form` in the basis.
    pub coords: Vec<LocalRational>,
    /// Smallest power of `p` making the form land in the lattice.
    pub multiplier: u32,
    /// Number of correct `p`-adic digits (capped backend).
    pub precision: Option<u32>,
}

/// Coordinates of `form / p^e` (an `ω`-coefficient on the same chart as the
/// basis) modulo the saturated span of relations and exact forms.
pub fn reduce_form(basis: &LatticeBasis, form: &SparsePoly<BigInt>, e: u32) -> Result<ReducedForm> {
    let red = basis.reduction.as_ref().ok_or_else(|| Error::InvalidSpec("basis carries no reduction data".into()))?;
    if form.arity() != basis.n + 1 {
        return Err(Error::ArityMismatch { expected: basis.n + 1, got: form.arity() });
    }
    let v = red.space.vector(form)?;
    let p = basis.p;
    let (raw, precision): (Vec<(Valuation, BigInt)>, Option<u32>) = match &red.reducer {
        Reducer::Exact(r) => {
            let zero = LocalRational::from_int(0, p);
            let sv = SparseVec::from_unsorted(v.into_iter().map(|(i, c)| (i, LocalRational::from_int(c, p))).collect());
            let c = r.reduce(&sv, &zero)?;
            return finish_exact(c, e, p);
        }
        Reducer::Capped(r, cap) => {
            let zero = CappedResidue::new(0, p, *cap)?;
            let sv = SparseVec::from_unsorted(
                v.into_iter()
                    .map(|(i, c)| CappedResidue::from_bigint(&c, p, *cap).map(|x| (i, x)))
                    .collect::<Result<_>>()?,
            );
            let c = r.reduce(&sv, &zero)?;
            let prec = c.iter().map(|x| x.cap()).min().or(Some(*cap));
            (c.iter().map(|x| (x.valuation(), BigInt::from(x.lift_signed()))).collect(), prec)
        }
    };
    let minv = raw.iter().filter_map(|(v, _)| v.finite()).min();
    let multiplier = match minv {
        Some(m) if m < e => e - m,
        _ => 0,
    };
    let pb = BigInt::from(p);
    let coords = raw
        .into_iter()
        .map(|(v, x)| {
            // x · p^{multiplier - e}
            let shift = multiplier as i64 - e as i64;
            let y = if v.finite().is_none() {
                BigInt::zero()
            } else if shift >= 0 {
                x * pb.pow(shift as u32)
            } else {
                x / pb.pow((-shift) as u32)
            };
            LocalRational::from_int(y, p)
        })
        .collect();
    Ok(ReducedForm { coords, multiplier, precision: precision.map(|c| c.saturating_sub(e)) })
}

fn finish_exact(c: Vec<LocalRational>, e: u32, p: u64) -> Result<ReducedForm> {
    let minv = c.iter().filter_map(|x| x.valuation().finite()).min();
    let multiplier = match minv {
        Some(m) if m < e => e - m,
        _ => 0,
    };
    let shift = multiplier as i64 - e as i64;
    let pb = BigInt::from(p);
    let coords = c
        .into_iter()
        .map(|x| {
            if shift >= 0 {
                x.mul(&LocalRational::from_int(pb.pow(shift as u32), p))
            } else {
                let s = (-shift) as u32;
                if x.is_zero() {
                    x
                } else {
                    x.div_p_pow(s)
                }
            }
        })
        .collect();
    Ok(ReducedForm { coords, multiplier, precision: None })
}

/// Matrix of coordinates of `forms` (each an `ω`-coefficient) in `basis`.
pub fn coordinate_matrix(basis: &LatticeBasis, forms: &[SparsePoly<BigInt>]) -> Result<Vec<Vec<LocalRational>>> {
    forms
        .iter()
        .map(|f| {
            let r = reduce_form(basis, f, 0)?;
            Ok(r.coords)
        })
        .collect()
}

/// Valuations of the elementary divisors of the change of basis from
/// `basis` to `forms`. All zero iff `forms` span the same `Z_(p)`-lattice.
pub fn change_of_basis_divisors(basis: &LatticeBasis, forms: &[SparsePoly<BigInt>]) -> Result<Vec<u32>> {
    let m = coordinate_matrix(basis, forms)?;
    let e = echelonize_unit_pivot(&SparseMatrix::from_dense(&m)?);
    if e.rank() < forms.len() || forms.len() != basis.rank() {
        return Err(Error::RankMismatch { expected: basis.rank(), got: e.rank() });
    }
    Ok(e.pivot_valuations)
}
