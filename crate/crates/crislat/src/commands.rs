//! Subcommand bodies. Each returns a report; failed checks are recorded in
//! the report, errors that stop the computation are returned.

use crate::report::*;
use crate::spec_file::{BasisDoc, SpecFile};
use anyhow::{bail, Context, Result};
use crislat_core::fixtures::{
    elliptic_f5, golden_curve, golden_curve_forms, golden_surface, golden_surface_forms, GOLDEN_CURVE_K,
    GOLDEN_CURVE_RANK, GOLDEN_SURFACE_K, GOLDEN_SURFACE_RANK,
};
use crislat_core::hodge::{hodge_polygon, primitive_hodge_numbers};
use crislat_core::logdr::{
    change_of_basis_divisors, expected_rank, invariant_lattice_basis, lattice_basis, pair_hodge_vectors, pole_bound_k,
    Arithmetic, LatticeBasis,
};
use crislat_core::poly::SparsePoly;
use crislat_core::precision::{
    loss_harness_range, precision_plan, standard_harness_cases, HarnessReport, HodgeBlockShape, Perturbation,
};
use crislat_core::upoly::IntPoly;
use crislat_core::variety::{hyperplane_section, smoothness_probe, PairSpec, ProbeReport};
use crislat_core::zeta::{
    assemble_zeta, check_newton_above_hodge, curve_zeta_numerator, newton_polygon, points_charpoly_on_d, twist,
    PointCounter,
};
use num_bigint::BigInt;
use std::path::PathBuf;

/// Flags shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Options {
    pub spec: Option<PathBuf>,
    pub k: Option<u32>,
    pub q: Option<u64>,
    pub max_ext: Option<u32>,
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
    pub budget: u128,
    pub shape: Option<String>,
    pub precision: Option<u32>,
    pub p: Option<u64>,
}

struct Loaded {
    file: SpecFile,
    pair: PairSpec,
    k: PoleOrder,
}

fn load(o: &Options) -> Result<Loaded> {
    let path = o.spec.as_ref().context("--spec FILE is required")?;
    let file = SpecFile::read(path)?;
    let pair = file.to_pair()?;
    let tb = pole_bound_k(pair.n(), pair.d());
    let tb = tb.with_k(o.k.or(file.k).unwrap_or(tb.minimal_k))?;
    Ok(Loaded { file, pair, k: PoleOrder { minimal: tb.minimal_k, chosen: tb.chosen_k } })
}

fn basis_for(spec: &PairSpec, k: u32) -> Result<LatticeBasis> {
    Ok(if spec.is_weighted() {
        invariant_lattice_basis(spec, k, Arithmetic::Auto)?
    } else {
        lattice_basis(spec, k, Arithmetic::Auto)?
    })
}

/// Hodge section and precision plan for `spec` at pole order `k`.
fn hodge_and_plan(r: &mut ReportDocument, spec: &PairSpec, k: u32, q: u64) -> Result<()> {
    let (hx, hd) = pair_hodge_vectors(spec)?;
    let plan = precision_plan(spec.p(), q, spec.n(), k, &hx, &hd)?;
    r.hodge = Some(HodgeDoc::new(&hx, &hd, &plan.pair, &plan.polygon));
    let doc = PlanDoc::new(&plan);
    r.check("precision plan self-consistent", doc.self_consistent, format!("N_F = {}, tau = {}", doc.n_f, doc.tau));
    r.plan = Some(doc);
    Ok(())
}

fn probe(r: &mut ReportDocument, spec: &PairSpec, max_ext: u32, budget: u128) -> Result<()> {
    match smoothness_probe(spec, max_ext, budget)? {
        ProbeReport::NoSingularPointFound { up_to, points_checked } => r.check(
            "smoothness probe",
            true,
            format!("no singular point over F_(p^m), m <= {up_to} ({points_checked} points); not a proof"),
        ),
        ProbeReport::Singular { m, point } => {
            r.check("smoothness probe", false, format!("singular point over F_(p^{m}): {point:?}"))
        }
    }
    Ok(())
}

pub fn lattice_basis_cmd(o: &Options) -> Result<ReportDocument> {
    let l = load(o)?;
    let mut r = ReportDocument::new("lattice-basis", o.seed);
    r.input = Some(l.file.clone());
    r.k = Some(l.k.clone());
    if let Some(m) = o.max_ext {
        probe(&mut r, &l.pair, m, o.budget)?;
    }
    let b = basis_for(&l.pair, l.k.chosen)?;
    let want = expected_rank(&l.pair)?;
    r.check("rank equals Hodge prediction", b.rank() == want, format!("rank {}, predicted {want}", b.rank()));
    r.basis_stats = b.stats.as_ref().map(StatsDoc::new);
    r.basis = Some(BasisDoc::from_basis(&b));
    hodge_and_plan(&mut r, &l.pair, l.k.chosen, o.q.unwrap_or(l.pair.p()))?;
    Ok(r)
}

pub fn precision_plan_cmd(o: &Options) -> Result<ReportDocument> {
    let l = load(o)?;
    let mut r = ReportDocument::new("precision-plan", o.seed);
    r.input = Some(l.file.clone());
    r.k = Some(l.k.clone());
    hodge_and_plan(&mut r, &l.pair, l.k.chosen, o.q.unwrap_or(l.pair.p()))?;
    Ok(r)
}

/// `#X(F_{p^m})`, the enumeration split into `threads` contiguous slices.
pub fn count_points_parallel(spec: &PairSpec, m: u32, budget: u128, threads: usize) -> Result<u128> {
    let c = PointCounter::new(spec, m, budget)?;
    let total = c.total();
    let t = threads.max(1) as u128;
    let chunk = total.div_ceil(t).max(1);
    let raw = std::thread::scope(|s| {
        let handles: Vec<_> = (0..t)
            .map(|i| {
                let c = &c;
                let lo = (i * chunk).min(total);
                let hi = ((i + 1) * chunk).min(total);
                s.spawn(move || c.count_range(lo..hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("counting thread")).sum::<u128>()
    });
    Ok(c.finish(raw)?)
}

fn genus(d: u32) -> usize {
    ((d as usize - 1) * (d as usize - 2)) / 2
}

pub fn zeta_cmd(o: &Options) -> Result<ReportDocument> {
    let l = load(o)?;
    let s = &l.pair;
    let mut r = ReportDocument::new("zeta", o.seed);
    r.input = Some(l.file.clone());
    let plane_curve = s.n() == 1 && !s.is_weighted();
    let g = plane_curve.then(|| genus(s.d()));
    let m = o.max_ext.unwrap_or(g.unwrap_or(1).max(1) as u32);
    if m == 0 {
        bail!("--max-ext must be positive");
    }
    let counts = (1..=m).map(|j| count_points_parallel(s, j, o.budget, o.threads)).collect::<Result<Vec<_>>>()?;
    let mut z = ZetaDoc {
        q: s.p(),
        counts: counts.clone(),
        genus: g,
        numerator: None,
        numerator_text: None,
        functional_equation_sign: None,
        regenerated_counts: None,
        newton_polygon: None,
        hodge_polygon: None,
        points_on_d: None,
        notes: Vec::new(),
    };
    match g {
        None => z.notes.push("numerator recovery from counts is implemented for plane curves only".into()),
        Some(g) if (m as usize) < g => z.notes.push(format!("numerator needs counts up to m = {g}")),
        Some(g) => {
            let num = curve_zeta_numerator(&counts, s.p(), g)?;
            let fe = num.functional_equation_sign();
            let weil = num.satisfies_weil_bound();
            r.check("functional equation", fe.is_some(), format!("sign {fe:?}"));
            r.check("Weil bound on a_1", weil, format!("a_1 = {}", num.poly.coeff(1)));
            let regen = assemble_zeta(num.clone()).counts(m as usize);
            let agree = regen.iter().zip(&counts).all(|(a, b)| *a == BigInt::from(*b));
            r.check("regenerated counts match enumeration", agree, format!("{regen:?}"));
            let np = newton_polygon(&num.poly, s.p());
            let gamma = hodge_polygon(&primitive_hodge_numbers(1, s.d()));
            match check_newton_above_hodge(&np, &gamma) {
                Ok(()) => r.check("Newton polygon above Hodge polygon", true, ""),
                Err(w) => r.check(
                    "Newton polygon above Hodge polygon",
                    false,
                    format!("at i = {}: Newton {} < Hodge {}", w.i, w.newton, w.hodge),
                ),
            }
            z.numerator = Some(poly_doc(&num.poly));
            z.numerator_text = Some(num.poly.to_string());
            z.functional_equation_sign = fe;
            z.regenerated_counts = Some(regen.iter().map(crate::spec_file::Int::from_bigint).collect());
            z.newton_polygon = Some(np.vertices);
            z.hodge_polygon = Some(gamma.vertices);
        }
    }
    if plane_curve {
        let d = hyperplane_section(s)?;
        match points_charpoly_on_d(&d, false) {
            Ok(pc) => {
                z.points_on_d = Some(DPointsDoc {
                    degrees: pc.degrees.clone(),
                    full: poly_doc(&pc.full),
                    primitive: poly_doc(&pc.primitive),
                    twisted_primitive: poly_doc(&twist(&pc.primitive, s.p())),
                })
            }
            Err(e) => r.check("D is reduced", false, e.to_string()),
        }
    }
    r.zeta = Some(z);
    Ok(r)
}

fn golden_example(
    r: &mut ReportDocument,
    name: &str,
    spec: &PairSpec,
    k: u32,
    rank: usize,
    forms: Result<Vec<SparsePoly<BigInt>>, crislat_core::Error>,
) -> Result<()> {
    let minimal = pole_bound_k(spec.n(), spec.d()).minimal_k;
    let b = basis_for(spec, k)?;
    let want = expected_rank(spec)?;
    r.check(
        &format!("{name}: rank"),
        b.rank() == rank && want == rank,
        format!("rank {}, Hodge prediction {want}, listed {rank}", b.rank()),
    );
    let divisors = match forms.map_err(anyhow::Error::from).and_then(|f| Ok(change_of_basis_divisors(&b, &f)?)) {
        Ok(v) => {
            let det: u32 = v.iter().sum();
            r.check(
                &format!("{name}: listed forms span the lattice"),
                det == 0,
                format!("change of basis determinant has valuation {det}"),
            );
            Some(v)
        }
        Err(e) => {
            r.check(&format!("{name}: listed forms span the lattice"), false, e.to_string());
            None
        }
    };
    r.examples.push(ExampleDoc {
        name: name.into(),
        minimal_k: minimal,
        k,
        rank: b.rank(),
        expected_rank: want,
        divisors,
    });
    Ok(())
}

pub fn verify_examples_cmd(o: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("verify-examples", o.seed);
    let curve = golden_curve();
    let tb = pole_bound_k(1, 7);
    r.check(
        "curve: minimal k",
        tb.minimal_k == GOLDEN_CURVE_K && tb.with_k(GOLDEN_CURVE_K - 1).is_err(),
        format!("minimal k {}", tb.minimal_k),
    );
    golden_example(&mut r, "curve", &curve, GOLDEN_CURVE_K, GOLDEN_CURVE_RANK, golden_curve_forms())?;
    hodge_and_plan(&mut r, &curve, GOLDEN_CURVE_K, 5)?;
    let plan = r.plan.as_ref().expect("plan set");
    let poly = &r.hodge.as_ref().expect("hodge set").polygon;
    r.check(
        "curve: tau and polygon",
        plan.tau == 1 && *poly == vec![(0, 0), (15, 0), (36, 21)],
        format!("tau {}, vertices {poly:?}", plan.tau),
    );

    let surface = golden_surface();
    let tb = pole_bound_k(2, 18);
    r.check(
        "surface: k accepted",
        tb.with_k(GOLDEN_SURFACE_K).is_ok(),
        format!("minimal k {}, k {GOLDEN_SURFACE_K}", tb.minimal_k),
    );
    golden_example(&mut r, "surface", &surface, GOLDEN_SURFACE_K, GOLDEN_SURFACE_RANK, golden_surface_forms())?;
    let (hx, hd) = pair_hodge_vectors(&surface)?;
    let sp = precision_plan(11, 11, 2, GOLDEN_SURFACE_K, &hx, &hd)?;
    r.check("surface: tau", sp.tau == 2, format!("tau {}", sp.tau));

    let e = elliptic_f5();
    let counts = (1..=2).map(|m| count_points_parallel(&e, m, o.budget, o.threads)).collect::<Result<Vec<_>>>()?;
    let num = curve_zeta_numerator(&counts, 5, 1)?;
    r.check(
        "elliptic curve zeta",
        counts == [9, 27] && num.poly == IntPoly::from_i64(&[1, 3, 5]),
        format!("counts {counts:?}, P = {}", num.poly),
    );
    Ok(r)
}

/// Trials split into `threads` contiguous ranges and merged; the merge is
/// order-insensitive, so the result does not depend on `threads`.
pub fn harness_parallel(
    shape: &HodgeBlockShape,
    precision: u32,
    p: u64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<HarnessReport> {
    let t = (threads.max(1) as u64).min(trials.max(1));
    let chunk = trials.div_ceil(t);
    let parts = std::thread::scope(|s| {
        let handles: Vec<_> = (0..t)
            .map(|i| {
                let lo = (i * chunk).min(trials);
                let hi = ((i + 1) * chunk).min(trials);
                s.spawn(move || loss_harness_range(shape, precision, p, seed, lo..hi, Perturbation::Random))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("harness thread")).collect::<Vec<_>>()
    });
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one part")?;
    for part in it {
        acc = acc.merge(&part?);
    }
    Ok(acc)
}

pub fn loss_harness_cmd(o: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("loss-harness", o.seed);
    let cases = match &o.shape {
        Some(s) => {
            let shape: HodgeBlockShape = s.parse()?;
            let p = o.p.unwrap_or(3);
            let n = o.precision.unwrap_or(2 * (shape.n() as u32 + 1));
            vec![(shape, n, p)]
        }
        None => standard_harness_cases(),
    };
    for (shape, n, p) in cases {
        let rep = harness_parallel(&shape, n, p, o.trials, o.seed, o.threads)?;
        r.check(
            &format!("loss bound {shape} N={n} p={p}"),
            rep.violations == 0,
            format!("{} coefficient violations in {} trials", rep.violations, rep.trials),
        );
        r.harness.push(HarnessDoc::new(&rep));
    }
    Ok(r)
}
