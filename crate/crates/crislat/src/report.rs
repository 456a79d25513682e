//! The report document written by every subcommand.
//!
//! Reports are pretty-printed JSON. Nothing in them depends on wall-clock
//! time or the thread count, so identical invocations give identical bytes.

use crate::spec_file::{BasisDoc, Int, SpecFile};
use crislat_core::hodge::{HodgePolygon, HodgeVector};
use crislat_core::logdr::{Backend, BasisStats};
use crislat_core::precision::{HarnessReport, PrecisionPlan};
use crislat_core::upoly::IntPoly;
use serde::{Deserialize, Serialize};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleOrder {
    pub minimal: u32,
    pub chosen: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub backend: String,
    pub columns: usize,
    pub relation_rows: usize,
    pub exact_rows: usize,
    pub shifted_exact_rows: usize,
    pub sub_rank: usize,
    pub torsion_ledger: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_precision: Option<u32>,
}

impl StatsDoc {
    pub fn new(s: &BasisStats) -> Self {
        let backend = match s.backend {
            Backend::Exact => "exact".to_string(),
            Backend::Capped(c) => format!("capped({c})"),
        };
        StatsDoc {
            backend,
            columns: s.columns,
            relation_rows: s.relation_rows,
            exact_rows: s.exact_rows,
            shifted_exact_rows: s.shifted_exact_rows,
            sub_rank: s.sub_rank,
            torsion_ledger: s.torsion_ledger,
            min_precision: s.min_precision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDoc {
    /// `h^{i, n-i}` of the primitive middle cohomology of `X`.
    pub x: Vec<u64>,
    /// The same for `D`, one dimension down.
    pub d: Vec<u64>,
    pub pair: Vec<u64>,
    pub polygon: Vec<(u64, u64)>,
}

impl HodgeDoc {
    pub fn new(hx: &HodgeVector, hd: &HodgeVector, pair: &HodgeVector, polygon: &HodgePolygon) -> Self {
        HodgeDoc {
            x: hx.entries.clone(),
            d: hd.entries.clone(),
            pair: pair.entries.clone(),
            polygon: polygon.vertices.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub i: usize,
    /// `|a_i| <= x + y √q`.
    pub x: Int,
    pub y: Int,
    pub n_i: u32,
    pub gamma: String,
    /// Guaranteed `ord_p(a_i - ã_i)` at `N_F`.
    pub guaranteed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub p: u64,
    pub q: u64,
    pub n: usize,
    pub k: u32,
    pub tau: u32,
    pub n_f: u32,
    pub unclamped: i64,
    pub floor: u32,
    pub clamped: bool,
    pub p_power_only: bool,
    pub self_consistent: bool,
    pub coefficients: Vec<BoundDoc>,
}

impl PlanDoc {
    pub fn new(p: &PrecisionPlan) -> Self {
        let coefficients = p
            .bounds
            .iter()
            .zip(&p.gamma)
            .zip(&p.error_bounds)
            .map(|((b, g), e)| BoundDoc {
                i: b.i,
                x: Int::from_bigint(&b.x),
                y: Int::from_bigint(&b.y),
                n_i: b.n_i,
                gamma: g.to_string(),
                guaranteed: *e,
            })
            .collect();
        PlanDoc {
            p: p.p,
            q: p.q,
            n: p.n,
            k: p.k,
            tau: p.tau,
            n_f: p.frobenius.n_f,
            unclamped: p.frobenius.unclamped,
            floor: p.frobenius.floor,
            clamped: p.frobenius.clamped,
            p_power_only: p.p_power_only,
            self_consistent: p.is_self_consistent(),
            coefficients,
        }
    }
}

pub fn poly_doc(p: &IntPoly) -> Vec<Int> {
    p.coeffs().iter().map(Int::from_bigint).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPointsDoc {
    pub degrees: Vec<usize>,
    pub full: Vec<Int>,
    pub primitive: Vec<Int>,
    pub twisted_primitive: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaDoc {
    pub q: u64,
    /// `#X(F_{q^m})` for `m = 1, 2, ...`.
    pub counts: Vec<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerator_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional_equation_sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regenerated_counts: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton_polygon: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_polygon: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_on_d: Option<DPointsDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessDoc {
    pub shape: String,
    pub precision: u32,
    pub p: u64,
    pub trials: u64,
    pub violations: u64,
    /// Per `l`, the least `ord_p(a_l - ã_l) - N - ⌈Γ(l)⌉` seen.
    pub min_excess: Vec<Option<i64>>,
    pub first_violation: Option<(u64, usize)>,
}

impl HarnessDoc {
    pub fn new(r: &HarnessReport) -> Self {
        HarnessDoc {
            shape: r.shape.to_string(),
            precision: r.precision,
            p: r.p,
            trials: r.trials,
            violations: r.violations,
            min_excess: r.min_excess.clone(),
            first_violation: r.first_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub name: String,
    pub minimal_k: u32,
    pub k: u32,
    pub rank: usize,
    pub expected_rank: usize,
    /// Elementary divisor valuations of the change of basis to the listed
    /// forms; the lattices agree iff they are all zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: Tool,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<SpecFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<PoleOrder>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_stats: Option<StatsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub harness: Vec<HarnessDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub examples: Vec<ExampleDoc>,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn new(command: &str, seed: u64) -> Self {
        ReportDocument {
            tool: Tool { name: TOOL.into(), version: VERSION.into() },
            command: command.into(),
            seed,
            input: None,
            k: None,
            hodge: None,
            basis: None,
            basis_stats: None,
            plan: None,
            zeta: None,
            harness: Vec::new(),
            examples: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
