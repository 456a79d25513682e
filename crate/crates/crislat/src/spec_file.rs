//! JSON input documents and the serialized form of a lattice basis.
//!
//! A spec lists `p`, `n`, `d`, the hyperplane index, optional weights and
//! the polynomial as `[exponent vector, coefficient]` pairs. Coefficients
//! are JSON integers when they fit in an `i64` and decimal strings
//! otherwise, so arbitrary integer lifts survive a round trip.

use anyhow::{bail, Context, Result};
use crislat_core::logdr::{BasisForm, LatticeBasis};
use crislat_core::poly::{default_names, SparsePoly};
use crislat_core::variety::PairSpec;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    pub fn from_bigint(v: &BigInt) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(v.to_string()),
        }
    }

    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Int::Small(v) => Ok(BigInt::from(*v)),
            Int::Big(s) => s.trim().parse().with_context(|| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub p: u64,
    pub n: usize,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// Pole order; the command line `--k` wins over this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub terms: Vec<(Vec<u32>, Int)>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("spec file is not a valid spec document")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn to_pair(&self) -> Result<PairSpec> {
        let names = match &self.variables {
            Some(v) => v.clone(),
            None => default_names(self.n + 2),
        };
        if names.len() != self.n + 2 {
            bail!("{} variable names for n = {} (need {})", names.len(), self.n, self.n + 2);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((e.clone(), c.to_bigint()?));
        }
        let q = SparsePoly::from_terms(names, terms)?;
        Ok(PairSpec::new(self.p, self.n, self.d, q, self.hyperplane, self.weights.clone())?)
    }

    /// Canonical document for a pair: terms in the polynomial's order,
    /// hyperplane always written out.
    pub fn from_pair(spec: &PairSpec, k: Option<u32>) -> Self {
        let names = spec.q().names().to_vec();
        let variables = (names != default_names(spec.n() + 2)).then_some(names);
        SpecFile {
            p: spec.p(),
            n: spec.n(),
            d: spec.d(),
            hyperplane: Some(spec.hyperplane()),
            weights: spec.weights().map(|w| w.to_vec()),
            variables,
            k,
            terms: spec.q().terms().map(|(e, c)| (e.clone(), Int::from_bigint(c))).collect(),
        }
    }
}

/// A basis form as `[exponent, numerator, denominator]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub p: u64,
    pub n: usize,
    pub d: u32,
    pub k: u32,
    pub hyperplane: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    pub torsion_exponent: u32,
    pub rank: usize,
    pub forms: Vec<Vec<(Vec<u32>, Int, Int)>>,
}

impl BasisDoc {
    pub fn from_basis(b: &LatticeBasis) -> Self {
        let forms = b
            .forms
            .iter()
            .map(|f| f.terms.iter().map(|(e, a, c)| (e.clone(), Int::from_bigint(a), Int::from_bigint(c))).collect())
            .collect();
        BasisDoc {
            p: b.p,
            n: b.n,
            d: b.d,
            k: b.k,
            hyperplane: b.hyperplane,
            weights: b.weights.clone(),
            torsion_exponent: b.torsion_exponent,
            rank: b.rank(),
            forms,
        }
    }

    pub fn to_basis(&self) -> Result<LatticeBasis> {
        if self.rank != self.forms.len() {
            bail!("basis document lists {} forms but rank {}", self.forms.len(), self.rank);
        }
        let mut forms = Vec::with_capacity(self.forms.len());
        for f in &self.forms {
            let mut terms = Vec::with_capacity(f.len());
            for (e, a, c) in f {
                terms.push((e.clone(), a.to_bigint()?, c.to_bigint()?));
            }
            forms.push(BasisForm { terms });
        }
        Ok(LatticeBasis::from_parts(
            self.p,
            self.n,
            self.d,
            self.k,
            self.hyperplane,
            self.weights.clone(),
            self.torsion_exponent,
            forms,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crislat_core::fixtures::{elliptic_f5, golden_surface};
    use crislat_core::logdr::{lattice_basis, Arithmetic};

    #[test]
    fn pair_round_trip() {
        for s in [elliptic_f5(), golden_surface()] {
            let doc = SpecFile::from_pair(&s, Some(4));
            let text = doc.to_json();
            let back = SpecFile::from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_pair().unwrap(), s);
            assert_eq!(SpecFile::from_pair(&back.to_pair().unwrap(), Some(4)).to_json(), text);
        }
    }

    #[test]
    fn big_coefficients_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let i = Int::from_bigint(&big);
        assert!(matches!(i, Int::Big(_)));
        assert_eq!(i.to_bigint().unwrap(), big);
        assert_eq!(Int::from_bigint(&BigInt::from(-7)), Int::Small(-7));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(SpecFile::from_json(r#"{"p":5,"n":1,"d":3}"#).is_err());
        assert!(SpecFile::from_json(r#"{"p":5,"n":1,"d":3,"terms":[],"colour":1}"#).is_err());
        // wrong arity
        let s = SpecFile::from_json(r#"{"p":5,"n":1,"d":3,"terms":[[[3,0],1]]}"#).unwrap();
        assert!(s.to_pair().is_err());
        // not homogeneous
        let s = SpecFile::from_json(r#"{"p":5,"n":1,"d":3,"terms":[[[3,0,0],1],[[1,0,0],1]]}"#).unwrap();
        assert!(s.to_pair().is_err());
    }

    #[test]
    fn basis_round_trip() {
        let b = lattice_basis(&elliptic_f5(), 4, Arithmetic::Exact).unwrap();
        let doc = BasisDoc::from_basis(&b);
        let text = serde_json::to_string(&doc).unwrap();
        let back: BasisDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_basis().unwrap(), b);
    }

    proptest::proptest! {
        #[test]
        fn parse_serialize_parse(
            coeffs in proptest::collection::vec(-(1i64 << 62)..(1i64 << 62), 1..8),
            exps in proptest::collection::vec(0u32..=4, 1..8),
            big in proptest::bool::ANY,
            hyperplane in 0usize..3,
        ) {
            // degree 4 monomials in three variables
            let mut terms = Vec::new();
            for (c, a) in coeffs.iter().zip(&exps) {
                let b = (*c as u64 % 5) as u32 % (5 - a);
                let mut v = BigInt::from(*c);
                if big {
                    v *= BigInt::from(u64::MAX);
                }
                terms.push((vec![*a, b, 4 - a - b], Int::from_bigint(&v)));
            }
            let doc = SpecFile { p: 7, n: 1, d: 4, hyperplane: Some(hyperplane), weights: None, variables: None, k: None, terms };
            let Ok(pair) = doc.to_pair() else { return Ok(()) };
            let once = SpecFile::from_pair(&pair, None).to_json();
            let back = SpecFile::from_json(&once).unwrap();
            proptest::prop_assert_eq!(back.to_pair().unwrap(), pair);
            proptest::prop_assert_eq!(SpecFile::from_pair(&back.to_pair().unwrap(), None).to_json(), once);
        }
    }
}
