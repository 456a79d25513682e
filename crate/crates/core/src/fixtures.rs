//! Worked examples and small smooth pairs used by the tests, the acceptance
//! suite and `verify-examples`.

use crate::error::Result;
use crate::logdr::{divide_by_monomial, omega_coefficient, pullback_to_cover};
use crate::poly::SparsePoly;
use crate::variety::{dehomogenize, hyperplane_to_coordinate, PairSpec};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn plane(p: u64, d: u32, text: &str, hyperplane: usize) -> PairSpec {
    let q = SparsePoly::parse(names(&["x", "y", "z"]), text).expect("fixture polynomial");
    PairSpec::new(p, 1, d, q, Some(hyperplane), None).expect("fixture spec")
}

fn space(p: u64, d: u32, text: &str) -> PairSpec {
    let q = SparsePoly::parse(names(&["x", "y", "z", "w"]), text).expect("fixture polynomial");
    PairSpec::new(p, 2, d, q, Some(3), None).expect("fixture spec")
}

pub const GOLDEN_CURVE_K: u32 = 12;
pub const GOLDEN_CURVE_RANK: usize = 36;
pub const GOLDEN_SURFACE_K: u32 = 53;
pub const GOLDEN_SURFACE_RANK: usize = 34;

/// The degree 7 plane curve over `F_5`, homogenized with `z`, `D = {z = 0}`.
pub fn golden_curve() -> PairSpec {
    plane(
        5,
        7,
        "x^7 + x^6*y + 3*x^5*y^2 + x^3*y^3*z + x^2*y^5 + 3*x^2*y*z^4 + 2*x*y^6 + 2*x*z^6 \
         + 3*y^7 + y^5*z^2 + 3*y^4*z^3 + y*z^6 + 3*z^7",
        2,
    )
}

/// Exponents `(a, b)` of the listed forms `x^a y^b dy`.
pub fn golden_curve_form_exponents() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (a, top) in [(1, 10), (2, 9), (3, 8), (4, 5)] {
        for b in 0..=top {
            out.push((a, b));
        }
    }
    out
}

/// The listed forms as `ω`-coefficients on the chart `z = 1`.
pub fn golden_curve_forms() -> Result<Vec<SparsePoly<BigInt>>> {
    let chart = dehomogenize(&golden_curve());
    golden_curve_form_exponents()
        .into_iter()
        .map(|(a, b)| {
            let h = SparsePoly::monomial(chart.q.names().to_vec(), vec![a, b], BigInt::from(1));
            omega_coefficient(&chart.q, &[(h, vec![1])])
        })
        .collect()
}

/// The elliptic surface `y^2 = x^3 + f(t) x + g(t)` over `F_11` in
/// `P(6, 9, 1, 1)` with coordinates `(X, Y, T, Z)` and `D = {Z = 0}`.
pub fn golden_surface() -> PairSpec {
    let q = SparsePoly::parse(
        names(&["X", "Y", "T", "Z"]),
        "Y^2 - X^3 - T^12*X - T^9*X*Z^3 - 3*T^2*X*Z^10 - T*X*Z^11 - X*Z^12 \
         - T^18 - 2*T^17*Z - T^15*Z^3 - T^7*Z^11 - T^3*Z^15 - Z^18",
    )
    .expect("fixture polynomial");
    PairSpec::new(11, 2, 18, q, Some(3), Some(vec![6, 9, 1, 1])).expect("fixture spec")
}

/// Exponents `(a, c)` of the listed forms `x^a t^c dx dt / y`.
pub fn golden_surface_form_exponents() -> Vec<(u32, u32)> {
    (0..=22).map(|c| (0, c)).chain((0..=10).map(|c| (1, c))).collect()
}

/// The listed forms pulled back to the smooth cover, as `ω`-coefficients on
/// the chart `Z = 1` of the cover.
pub fn golden_surface_forms() -> Result<Vec<SparsePoly<BigInt>>> {
    let chart = dehomogenize(&golden_surface());
    let names = chart.q.names().to_vec();
    golden_surface_form_exponents()
        .into_iter()
        .map(|(a, c)| {
            let h = SparsePoly::monomial(names.clone(), vec![a, 0, c], BigInt::from(1));
            let g = omega_coefficient(&chart.q, &[(h, vec![0, 2])])?;
            let g = divide_by_monomial(&g, &[0, 1, 0])?;
            pullback_to_cover(&g, &[6, 9, 1])
        })
        .collect()
}

/// `y^2 z = x^3 + x z^2 + z^3` over `F_5`. The line `z = 0` meets the curve
/// only at the flex `(0:1:0)`, so `D` is `{x = 0}`: three rational points.
pub fn elliptic_f5() -> PairSpec {
    plane(5, 3, "y^2*z - x^3 - x*z^2 - z^3", 0)
}

/// The Klein quartic `x^3 y + y^3 z + z^3 x` over `F_5` with
/// `D = {x + 2y + 3z = 0}` (a rational point and a cubic point) moved to a
/// coordinate. The line `x + y + z` is tangent mod 5.
pub fn klein_quartic_f5() -> PairSpec {
    let s = plane(5, 4, "x^3*y + y^3*z + z^3*x", 2);
    hyperplane_to_coordinate(&s, &[1, 2, 3]).expect("unit coefficient")
}

/// A named pair and the pole order used for it.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: PairSpec,
    pub k: u32,
}

/// Smooth pairs with smooth `D` for the rank identity: plane curves of
/// degree 3, 4, 5 over `F_5` and `F_7`, and a cubic and a quartic surface
/// over `F_5`.
pub fn rank_fixtures() -> Vec<Fixture> {
    let klein5 =
        hyperplane_to_coordinate(&plane(5, 5, "x^4*y + y^4*z + z^4*x", 2), &[1, 1, 1]).expect("unit coefficient");
    vec![
        Fixture { name: "cubic curve F_5", spec: elliptic_f5(), k: 4 },
        Fixture { name: "Fermat cubic F_7", spec: plane(7, 3, "x^3 + y^3 + z^3", 2), k: 4 },
        Fixture { name: "Fermat quartic curve F_5", spec: plane(5, 4, "x^4 + y^4 + z^4", 2), k: 6 },
        Fixture { name: "Fermat quartic curve F_7", spec: plane(7, 4, "x^4 + y^4 + z^4", 2), k: 6 },
        Fixture { name: "Klein-type quintic F_5", spec: klein5, k: 8 },
        Fixture { name: "Fermat quintic curve F_7", spec: plane(7, 5, "x^5 + y^5 + z^5", 2), k: 8 },
        Fixture { name: "Fermat cubic surface F_5", spec: space(5, 3, "x^3 + y^3 + z^3 + w^3"), k: 7 },
        Fixture { name: "Fermat quartic surface F_5", spec: space(5, 4, "x^4 + y^4 + z^4 + w^4"), k: 9 },
    ]
}

/// Curves whose zeta numerator is recovered from counts at desk scale.
pub fn zeta_fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "elliptic F_5", spec: elliptic_f5(), k: 4 },
        Fixture { name: "Klein quartic F_5", spec: klein_quartic_f5(), k: 6 },
        Fixture { name: "Fermat cubic F_7", spec: plane(7, 3, "x^3 + y^3 + z^3", 2), k: 4 },
        Fixture { name: "Fermat quartic curve F_5", spec: plane(5, 4, "x^4 + y^4 + z^4", 2), k: 6 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logdr::pole_bound_k;
    use crate::variety::{hyperplane_section, smoothness_probe};
    use crate::zeta::points_charpoly_on_d;

    #[test]
    fn form_counts() {
        assert_eq!(golden_curve_form_exponents().len(), GOLDEN_CURVE_RANK);
        assert_eq!(golden_surface_form_exponents().len(), GOLDEN_SURFACE_RANK);
        assert_eq!(pole_bound_k(1, 7).minimal_k, GOLDEN_CURVE_K);
    }

    #[test]
    fn surface_form_pullback() {
        // dx dt / y = -2 y ω / y; the cover contributes 6 * 9 X^5 Y^8
        let f = golden_surface_forms().unwrap();
        let want = SparsePoly::monomial(f[0].names().to_vec(), vec![11, 8, 2], BigInt::from(-108));
        assert_eq!(f[22 + 1 + 2], want);
    }

    #[test]
    fn curve_form_shape() {
        let f = golden_curve_forms().unwrap();
        assert_eq!(f.len(), 36);
        let chart = dehomogenize(&golden_curve());
        let qx = chart.q.derivative(0);
        // x y^2 dy = x y^2 q~_x ω up to the orientation sign
        let h = SparsePoly::monomial(chart.q.names().to_vec(), vec![1, 2], BigInt::from(1));
        let g = h.mul(&qx);
        assert!(f[2] == g || f[2] == g.neg());
    }

    #[test]
    fn sections_are_reduced() {
        for fx in rank_fixtures().into_iter().chain(zeta_fixtures()) {
            let d = hyperplane_section(&fx.spec).unwrap();
            if d.n() == 0 {
                points_charpoly_on_d(&d, false).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            }
            assert!(fx.k >= pole_bound_k(fx.spec.n(), fx.spec.d()).minimal_k, "{}", fx.name);
        }
    }

    #[test]
    fn curve_fixtures_probe_smooth() {
        for fx in rank_fixtures().into_iter().chain(zeta_fixtures()).filter(|f| f.spec.n() == 1) {
            let r = smoothness_probe(&fx.spec, 2, 1 << 22).unwrap();
            assert!(!r.is_singular(), "{}: {r:?}", fx.name);
        }
        assert!(!smoothness_probe(&elliptic_f5(), 3, 1 << 22).unwrap().is_singular());
    }
}
