//! Sections of the twisted log de Rham complex on the affine chart
//! `U = X \ D`, and the lattice they cut out in middle cohomology.
//!
//! Top-degree sections are written as `g ω`, where `ω` is the
//! Gelfand-Leray form of the chart equation `q~`, normalised by
//! `dq~ ∧ ω = dx_0 ∧ ... ∧ dx_n`. With that choice an `n`-form `dx_I`
//! restricts to `sign(c, I) ∂q~/∂x_c · ω`, `c` the missing variable.

mod basis;

pub use basis::{
    change_of_basis_divisors, coordinate_matrix, expected_rank, invariant_lattice_basis, lattice_basis,
    lattice_basis_unchecked, pair_hodge_vectors, reduce_form, Arithmetic, Backend, BasisForm, BasisStats, LatticeBasis,
    ReducedForm,
};

use crate::error::{Error, Result};
use crate::poly::{monomials_up_to, total_degree, Exponent, SparsePoly};
use crate::variety::AffineChart;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistBound {
    pub n: usize,
    pub d: u32,
    pub minimal_k: u32,
    pub chosen_k: u32,
}

/// Smallest admissible pole order: `k > max(nd, (n+1)d - (n+2))`.
pub fn pole_bound_k(n: usize, d: u32) -> TwistBound {
    let a = n as i64 * d as i64;
    let b = (n as i64 + 1) * d as i64 - (n as i64 + 2);
    let minimal_k = (a.max(b).max(-1) + 1) as u32;
    TwistBound { n, d, minimal_k, chosen_k: minimal_k }
}

impl TwistBound {
    pub fn with_k(self, k: u32) -> Result<Self> {
        if k < self.minimal_k {
            return Err(Error::KBelowBound { k, minimal: self.minimal_k });
        }
        Ok(TwistBound { chosen_k: k, ..self })
    }
}

/// `Dx(I)` is `dx_I` for a sorted index set `I`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormSymbol {
    Dx(Vec<usize>),
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormGenerator {
    pub monomial: Exponent,
    pub symbol: FormSymbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionModel {
    /// Polynomial forms `m dx_I` in the ambient affine space.
    Ambient,
    /// Top degree as multiples of `ω` (lower degrees are ambient anyway).
    Omega,
}

/// Sorted `j`-subsets of `0..m`.
pub fn subsets(m: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= m {
        rec(0, m, j, &mut Vec::new(), &mut out);
    }
    out
}

/// Largest degree of `g` in a top section `g ω`.
pub fn omega_degree_bound(n: usize, d: u32, k: u32) -> Option<u32> {
    (k as i64 + d as i64 - n as i64 - 1).try_into().ok()
}

/// Generators of `Γ(X, Ω^j(log D)(k))` on the chart.
pub fn section_generators(chart: &AffineChart, j: usize, k: u32, model: SectionModel) -> Vec<FormGenerator> {
    let m = chart.nvars();
    let n = m - 1;
    if j == n && model == SectionModel::Omega {
        return match omega_degree_bound(n, chart.d, k) {
            Some(b) => monomials_up_to(m, b)
                .into_iter()
                .map(|e| FormGenerator { monomial: e, symbol: FormSymbol::Omega })
                .collect(),
            None => Vec::new(),
        };
    }
    if j > n || (k as usize) < j {
        return Vec::new();
    }
    let mons = monomials_up_to(m, k - j as u32);
    let mut out = Vec::with_capacity(mons.len() * subsets(m, j).len());
    for e in &mons {
        for s in subsets(m, j) {
            out.push(FormGenerator { monomial: e.clone(), symbol: FormSymbol::Dx(s) });
        }
    }
    out
}

/// Sign of the permutation sorting `seq` (entries distinct).
fn sort_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `dx_I ↦ sign · ∂q~/∂x_c` for `|I| = n`, returned with the sign.
fn dx_to_omega(q: &SparsePoly<BigInt>, set: &[usize]) -> (usize, i64, SparsePoly<BigInt>) {
    let m = q.arity();
    debug_assert_eq!(set.len() + 1, m);
    let c = (0..m).find(|i| !set.contains(i)).expect("complement");
    let mut seq = vec![c];
    seq.extend_from_slice(set);
    (c, sort_sign(&seq), q.derivative(c))
}

/// The `ω`-coefficient of an `n`-form `Σ h_I dx_I` (each `I` sorted).
pub fn omega_coefficient(
    q: &SparsePoly<BigInt>,
    form: &[(SparsePoly<BigInt>, Vec<usize>)],
) -> Result<SparsePoly<BigInt>> {
    let m = q.arity();
    let mut acc = SparsePoly::zero(q.names().to_vec());
    for (h, set) in form {
        if set.len() + 1 != m || set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i >= m) {
            return Err(Error::InvalidSpec("form symbol is not a sorted n-subset of the chart variables".into()));
        }
        if h.arity() != m {
            return Err(Error::ArityMismatch { expected: m, got: h.arity() });
        }
        let (_, s, dq) = dx_to_omega(q, set);
        acc = acc.add(&h.mul(&dq).scale(&BigInt::from(s)));
    }
    Ok(acc)
}

/// `ω`-coefficient of a single generator.
pub fn generator_to_omega(q: &SparsePoly<BigInt>, g: &FormGenerator) -> Result<SparsePoly<BigInt>> {
    let mono = SparsePoly::monomial(q.names().to_vec(), g.monomial.clone(), BigInt::from(1));
    match &g.symbol {
        FormSymbol::Omega => Ok(mono),
        FormSymbol::Dx(set) => omega_coefficient(q, &[(mono, set.clone())]),
    }
}

/// `ω`-coefficient of `d(h dx_J)` for `|J| = n - 1`:
/// `Σ_{i ∉ J} ∂h/∂x_i · sign(c, i, J) · ∂q~/∂x_c`.
pub fn exact_image(q: &SparsePoly<BigInt>, h: &SparsePoly<BigInt>, set: &[usize]) -> SparsePoly<BigInt> {
    let m = q.arity();
    let mut acc = SparsePoly::zero(q.names().to_vec());
    for i in (0..m).filter(|i| !set.contains(i)) {
        let dh = h.derivative(i);
        if dh.is_zero() {
            continue;
        }
        let c = (0..m).find(|&c| c != i && !set.contains(&c)).expect("one free index left");
        let mut seq = vec![c, i];
        seq.extend_from_slice(set);
        let s = sort_sign(&seq);
        acc = acc.add(&dh.mul(&q.derivative(c)).scale(&BigInt::from(s)));
    }
    acc
}

/// `q~ · m` for `deg m <= k - n - 1`, as `ω`-coefficients.
pub fn relation_subspace(chart: &AffineChart, k: u32) -> Vec<SparsePoly<BigInt>> {
    let m = chart.nvars();
    let n = m - 1;
    match (k as i64 - n as i64 - 1).try_into() {
        Ok(b) => monomials_up_to(m, b).into_iter().map(|e| chart.q.mul_monomial(&e, &BigInt::from(1))).collect(),
        Err(_) => Vec::new(),
    }
}

/// Exterior derivatives of the `(n-1)`-form generators, as `ω`-coefficients,
/// followed by those of the `q~`-multiples `q~ h' dx_J` with
/// `deg h' <= k - (n-1) - d`. The latter lie in the span of the relations
/// and the former; they are kept so the presentation is complete.
pub fn exact_subspace(chart: &AffineChart, k: u32) -> Vec<SparsePoly<BigInt>> {
    let gens = section_generators(chart, chart.nvars() - 2, k, SectionModel::Ambient);
    let mut out: Vec<_> = gens.iter().map(|g| exact_of_generator(chart, g, false)).collect();
    for g in shifted_exact_generators(chart, k) {
        out.push(exact_of_generator(chart, &g, true));
    }
    out
}

fn shifted_exact_generators(chart: &AffineChart, k: u32) -> Vec<FormGenerator> {
    let m = chart.nvars();
    let j = m - 2;
    let Ok(b) = (k as i64 - j as i64 - chart.d as i64).try_into() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for e in monomials_up_to(m, b) {
        for s in subsets(m, j) {
            out.push(FormGenerator { monomial: e.clone(), symbol: FormSymbol::Dx(s) });
        }
    }
    out
}

fn exact_of_generator(chart: &AffineChart, g: &FormGenerator, times_q: bool) -> SparsePoly<BigInt> {
    let FormSymbol::Dx(set) = &g.symbol else { unreachable!("exact generators are ambient forms") };
    let mut h = SparsePoly::monomial(chart.q.names().to_vec(), g.monomial.clone(), BigInt::from(1));
    if times_q {
        h = h.mul(&chart.q);
    }
    exact_image(&chart.q, &h, set)
}

/// Character of a generator under `G = Π μ_{a_i}`, one residue per
/// homogeneous coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupCharacter {
    pub residues: Vec<u32>,
    pub orders: Vec<u32>,
}

impl GroupCharacter {
    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

/// Group data of a chart: orders of the factors (indexed by homogeneous
/// coordinate), the hyperplane coordinate `l`, and the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterContext {
    pub orders: Vec<u32>,
    pub hyperplane: usize,
    pub d: u32,
}

impl CharacterContext {
    pub fn new(orders: Vec<u32>, hyperplane: usize, d: u32) -> Result<Self> {
        if hyperplane >= orders.len() {
            return Err(Error::InvalidSpec("hyperplane index outside the weight vector".into()));
        }
        if orders.iter().any(|&a| a == 0) {
            return Err(Error::InvalidSpec("weights must be positive".into()));
        }
        Ok(CharacterContext { orders, hyperplane, d })
    }

    pub fn trivial(nvars_homogeneous: usize, hyperplane: usize, d: u32) -> Self {
        CharacterContext { orders: vec![1; nvars_homogeneous], hyperplane, d }
    }

    fn affine_index(&self, h: usize) -> usize {
        if h < self.hyperplane {
            h
        } else {
            h - 1
        }
    }

    /// Character of `x^e · sym`, plus `q_power` copies of the character of
    /// `q~`. On the chart `x_i = X_i / X_l`, so `ζ ∈ μ_{a_l}` scales every
    /// affine coordinate by `ζ^{-1}`; `q~` has character `-d` there and 0
    /// elsewhere, and `ω` has `1` at each non-hyperplane factor and
    /// `d - (n+1)` at the hyperplane factor.
    pub fn character(&self, e: &[u32], sym: &FormSymbol, q_power: u32) -> GroupCharacter {
        let m = e.len();
        let mut residues = Vec::with_capacity(self.orders.len());
        for (h, &a) in self.orders.iter().enumerate() {
            let a = a as i64;
            let r = if h == self.hyperplane {
                let dx = match sym {
                    FormSymbol::Dx(s) => s.len() as i64,
                    FormSymbol::Omega => 0,
                };
                let om = if matches!(sym, FormSymbol::Omega) { self.d as i64 - m as i64 } else { 0 };
                -(total_degree(e) as i64) - dx + om - q_power as i64 * self.d as i64
            } else {
                let i = self.affine_index(h);
                let dx = match sym {
                    FormSymbol::Dx(s) => s.contains(&i) as i64,
                    FormSymbol::Omega => 1,
                };
                e[i] as i64 + dx
            };
            residues.push(r.rem_euclid(a) as u32);
        }
        GroupCharacter { residues, orders: self.orders.clone() }
    }

    pub fn is_invariant(&self, g: &FormGenerator) -> bool {
        self.character(&g.monomial, &g.symbol, 0).is_trivial()
    }
}

/// Keeps the generators with trivial character.
pub fn invariant_filter(gens: &[FormGenerator], ctx: &CharacterContext) -> Vec<FormGenerator> {
    gens.iter().filter(|g| ctx.is_invariant(g)).cloned().collect()
}

/// Coordinates for top sections: the monomials `g` of `g ω` up to the
/// degree bound, restricted to trivial character.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSpace {
    pub columns: Vec<Exponent>,
    pub degree_bound: u32,
    index: BTreeMap<Exponent, usize>,
}

impl OmegaSpace {
    pub fn new(nvars: usize, degree_bound: u32, ctx: &CharacterContext) -> Self {
        let columns: Vec<Exponent> = monomials_up_to(nvars, degree_bound)
            .into_iter()
            .filter(|e| ctx.character(e, &FormSymbol::Omega, 0).is_trivial())
            .collect();
        let index = columns.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        OmegaSpace { columns, degree_bound, index }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Coordinates of `g ω`.
    pub fn vector(&self, g: &SparsePoly<BigInt>) -> Result<Vec<(usize, BigInt)>> {
        let mut out = Vec::with_capacity(g.len());
        for (e, c) in g.terms() {
            let deg = total_degree(e);
            if deg > self.degree_bound {
                return Err(Error::DegreeOverflow { degree: deg, bound: self.degree_bound });
            }
            match self.index.get(e) {
                Some(&i) => out.push((i, c.clone())),
                None => return Err(Error::NotSemiInvariant),
            }
        }
        Ok(out)
    }
}

/// `g(X^a) · Π a_i X_i^{a_i - 1}`: the cover coefficient of the pullback of
/// `g ω` along `x_i = X_i^{a_i}` (`a` indexed by chart variable).
pub fn pullback_to_cover(g: &SparsePoly<BigInt>, a: &[u32]) -> Result<SparsePoly<BigInt>> {
    if a.len() != g.arity() {
        return Err(Error::ArityMismatch { expected: g.arity(), got: a.len() });
    }
    let jac: Exponent = a.iter().map(|&x| x - 1).collect();
    let scale: BigInt = a.iter().map(|&x| BigInt::from(x)).product();
    Ok(g.compose_powers(a).mul_monomial(&jac, &scale))
}

/// `f / x^e`, failing unless every term is divisible.
pub fn divide_by_monomial(f: &SparsePoly<BigInt>, e: &[u32]) -> Result<SparsePoly<BigInt>> {
    let mut out = SparsePoly::zero(f.names().to_vec());
    for (t, c) in f.terms() {
        if t.iter().zip(e).any(|(a, b)| a < b) {
            return Err(Error::InexactDivision);
        }
        out.add_term(t.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::default_names;
    use crate::variety::{dehomogenize, PairSpec};

    fn poly(terms: &[(&[u32], i64)]) -> SparsePoly<BigInt> {
        let n = terms[0].0.len();
        SparsePoly::from_terms(default_names(n), terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    /// The degree 7 plane curve over `F_5` from the worked example.
    fn curve() -> AffineChart {
        let q = poly(&[(&[7, 0, 0], 1), (&[0, 7, 0], 1), (&[2, 5, 0], 1), (&[0, 0, 7], 1), (&[1, 1, 5], 1)]);
        dehomogenize(&PairSpec::new(5, 1, 7, q, None, None).unwrap())
    }

    #[test]
    fn pole_bounds() {
        assert_eq!(pole_bound_k(1, 7).minimal_k, 12);
        assert_eq!(pole_bound_k(1, 3).minimal_k, 4);
        let s = pole_bound_k(2, 18);
        assert_eq!(s.minimal_k, 51);
        assert_eq!(s.with_k(53).unwrap().chosen_k, 53);
        assert_eq!(pole_bound_k(1, 7).with_k(11), Err(Error::KBelowBound { k: 11, minimal: 12 }));
    }

    #[test]
    fn generator_counts() {
        let c = curve();
        let g0 = section_generators(&c, 0, 3, SectionModel::Ambient);
        assert_eq!(g0.len(), 10);
        let amb = section_generators(&c, 1, 12, SectionModel::Ambient);
        let has = |e: &[u32]| amb.iter().any(|g| g.monomial == e && g.symbol == FormSymbol::Dx(vec![1]));
        assert!(has(&[1, 10]));
        assert!(!has(&[2, 10]));
        let om = section_generators(&c, 1, 12, SectionModel::Omega);
        assert_eq!(om.len(), 171);
        assert_eq!(relation_subspace(&c, 12).len(), 66);
        assert!(relation_subspace(&c, 1).is_empty());
        assert_eq!(relation_subspace(&c, 2).len(), 1);
    }

    #[test]
    fn omega_images() {
        let c = curve();
        let g = FormGenerator { monomial: vec![1, 10], symbol: FormSymbol::Dx(vec![1]) };
        let img = generator_to_omega(&c.q, &g).unwrap();
        let qx = c.q.derivative(0);
        assert_eq!(img, qx.mul_monomial(&[1, 10], &BigInt::from(1)));
        assert_eq!(img.degree(), Some(17));
        let dx = FormGenerator { monomial: vec![0, 0], symbol: FormSymbol::Dx(vec![0]) };
        assert_eq!(generator_to_omega(&c.q, &dx).unwrap(), c.q.derivative(1).neg());
    }

    #[test]
    fn exactness_rules() {
        let c = curve();
        let y = poly(&[(&[0, 1], 1)]);
        assert_eq!(exact_image(&c.q, &y, &[]), c.q.derivative(0));
        let one = poly(&[(&[0, 0], 5)]);
        assert!(exact_image(&c.q, &one, &[]).is_zero());
        // dq~ ∧ anything vanishes: d(q~) maps to q_x(-q_y) + q_y q_x
        assert!(exact_image(&c.q, &c.q, &[]).is_zero());
    }

    #[test]
    fn three_dimensional_signs() {
        // q = z: dx∧dy ↦ +1 · ω; d(x dy) = dx∧dy
        let q = poly(&[(&[0, 0, 1], 1)]);
        let x = poly(&[(&[1, 0, 0], 1)]);
        assert_eq!(exact_image(&q, &x, &[1]), poly(&[(&[0, 0, 0], 1)]));
        // d(y dx) = dy∧dx = -dx∧dy
        let y = poly(&[(&[0, 1, 0], 1)]);
        assert_eq!(exact_image(&q, &y, &[0]), poly(&[(&[0, 0, 0], -1)]));
        // q = y: dx∧dz ↦ sign(y,x,z) = -1
        let qy = poly(&[(&[0, 1, 0], 1)]);
        let one = poly(&[(&[0, 0, 0], 1)]);
        assert_eq!(omega_coefficient(&qy, &[(one, vec![0, 2])]).unwrap(), poly(&[(&[0, 0, 0], -1)]));
    }

    #[test]
    fn characters() {
        // Z/2 on y in a (1, 2, 1) pattern, hyperplane last
        let ctx = CharacterContext::new(vec![1, 2, 1], 2, 4).unwrap();
        for b in 0..6 {
            let g = FormGenerator { monomial: vec![3, b], symbol: FormSymbol::Dx(vec![1]) };
            assert_eq!(ctx.is_invariant(&g), b % 2 == 1);
        }
        let triv = CharacterContext::trivial(3, 2, 7);
        let gens = section_generators(&curve(), 1, 12, SectionModel::Ambient);
        assert_eq!(invariant_filter(&gens, &triv).len(), gens.len());
    }

    #[test]
    fn weighted_surface_columns() {
        let ctx = CharacterContext::new(vec![6, 9, 1, 1], 3, 18).unwrap();
        let sp = OmegaSpace::new(3, 68, &ctx);
        assert_eq!(sp.len(), 785);
        assert!(sp.columns.iter().all(|e| e[0] % 6 == 5 && e[1] % 9 == 8));
    }

    #[test]
    fn pullback_and_division() {
        let g = poly(&[(&[1, 0, 2], 1)]);
        let pb = pullback_to_cover(&g, &[6, 9, 1]).unwrap();
        assert_eq!(pb, poly(&[(&[11, 8, 2], 54)]));
        let f = poly(&[(&[2, 1], 3), (&[0, 3], 1)]);
        assert_eq!(divide_by_monomial(&f, &[0, 1]).unwrap(), poly(&[(&[2, 0], 3), (&[0, 2], 1)]));
        assert_eq!(divide_by_monomial(&f, &[1, 0]), Err(Error::InexactDivision));
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
