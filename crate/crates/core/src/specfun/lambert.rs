//! Real branches of the Lambert W function.

use std::f64::consts::E;

use crate::error::{domain, Error, Result};

/// Lambert W branch: principal (`k = 0`, `W ≥ -1`) or lower (`k = -1`, `W ≤ -1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchK {
    Principal,
    MinusOne,
}

impl BranchK {
    pub fn index(self) -> i32 {
        match self {
            BranchK::Principal => 0,
            BranchK::MinusOne => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchK::Principal => "principal",
            BranchK::MinusOne => "minus_one",
        }
    }
}

/// `1/e` split into a double and its rounding residue.
pub(crate) const INV_E: f64 = 0.367_879_441_171_442_33;
const INV_E_LO: f64 = -1.242_875_367_278_836_3e-17;

/// Tolerance band below `-1/e` that is still treated as the branch point.
pub const BRANCH_POINT_TOL: f64 = 1e-14;
/// Inside this distance from `-1/e` the branch-point series is returned directly.
const SERIES_ONLY: f64 = 1e-9;

/// Distance `z + 1/e` evaluated with the extra bits of `1/e`.
#[inline]
pub(crate) fn offset_from_branch_point(z: f64) -> f64 {
    (z + INV_E) + INV_E_LO
}

/// Expansion of W about `-1/e` in `p = ±sqrt(2(1 + e z))`.
fn branch_point_series(p: f64) -> f64 {
    const C: [f64; 7] = [
        -1.0,
        1.0,
        -1.0 / 3.0,
        11.0 / 72.0,
        -43.0 / 540.0,
        769.0 / 17280.0,
        -221.0 / 8505.0,
    ];
    C.iter().rev().fold(0.0, |acc, &c| acc * p + c)
}

/// Evaluates `W_k(z)`.
///
/// The result satisfies `|w e^w - z| <= 1e-12 max(1, |z|)`. Arguments below
/// `-1/e` by no more than [`BRANCH_POINT_TOL`] return `-1`.
pub fn lambert_w(k: BranchK, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return domain("lambert_w", z);
    }
    let t = offset_from_branch_point(z);
    if t < 0.0 {
        return if t >= -BRANCH_POINT_TOL {
            Ok(-1.0)
        } else {
            domain("lambert_w", z)
        };
    }
    if k == BranchK::MinusOne && z >= 0.0 {
        return domain("lambert_w (k = -1)", z);
    }
    if z == 0.0 {
        return Ok(0.0);
    }

    let p = (2.0 * E * t).sqrt();
    let signed_p = match k {
        BranchK::Principal => p,
        BranchK::MinusOne => -p,
    };
    if t <= SERIES_ONLY {
        return Ok(branch_point_series(signed_p));
    }

    match k {
        BranchK::Principal => {
            if z > E {
                let l1 = z.ln();
                let l2 = l1.ln();
                Ok(log_form_newton(l1 - l2 + l2 / l1, z.ln(), 1.0))
            } else {
                let seed = if t < 0.25 {
                    branch_point_series(signed_p)
                } else {
                    // Winitzki's approximation.
                    let l = z.ln_1p();
                    l * (1.0 - l.ln_1p() / (2.0 + l))
                };
                Ok(halley(seed, z))
            }
        }
        BranchK::MinusOne => {
            if t < 0.25 {
                Ok(halley(branch_point_series(signed_p), z))
            } else {
                let seed = lambert_ladder_upper(z)?;
                let l1 = (-z).ln();
                Ok(log_form_newton(seed, l1, -1.0))
            }
        }
    }
}

/// Halley iteration on `w e^w - z`, suitable for moderate `|w|`.
fn halley(mut w: f64, z: f64) -> f64 {
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !dw.is_finite() {
            break;
        }
        w -= dw;
        if dw.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

/// Newton iteration on `w + ln(sign·w) - ln|z| = 0`, used where `|w|` is large
/// and `w e^w` would lose accuracy to overflow or underflow.
fn log_form_newton(mut w: f64, ln_abs_z: f64, sign: f64) -> f64 {
    for _ in 0..64 {
        let f = w + (sign * w).ln() - ln_abs_z;
        let dw = f / (1.0 + 1.0 / w);
        w -= dw;
        if dw.abs() <= 2.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    w
}

/// First rung of the infinite-ladder solution of `z = w e^w` on the lower
/// branch: `ln(-z) - ln(-ln(-z))`, an upper bound on `W_{-1}(z)`.
pub fn lambert_ladder_upper(z: f64) -> Result<f64> {
    let t = offset_from_branch_point(z);
    if !(z < 0.0) || t < -BRANCH_POINT_TOL || !z.is_finite() {
        return Err(Error::Domain {
            what: "lambert_ladder_upper",
            value: z,
        });
    }
    let l1 = (-z).ln();
    Ok(l1 - (-l1).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::oracle;
    use proptest::prelude::*;

    fn residual(w: f64, z: f64) -> f64 {
        (w * w.exp() - z).abs() / z.abs().max(1.0)
    }

    #[test]
    fn trivial_and_branch_point_values() {
        assert_eq!(lambert_w(BranchK::Principal, 0.0).unwrap(), 0.0);
        let w0 = lambert_w(BranchK::Principal, -INV_E).unwrap();
        let wm = lambert_w(BranchK::MinusOne, -INV_E).unwrap();
        assert!((w0 + 1.0).abs() < 1e-7);
        assert!((wm + 1.0).abs() < 1e-7);
    }

    #[test]
    fn omega_constant_matches_bisection() {
        let w = lambert_w(BranchK::Principal, 1.0).unwrap();
        let reference = oracle::bisect(|w| w * w.exp() - 1.0, 0.0, 1.0, 1e-13);
        assert!((w - reference).abs() < 1e-12);
        assert!((w - 0.567_143_290_409_784).abs() < 1e-15);
    }

    #[test]
    fn lower_branch_matches_bisection() {
        for &z in &[-0.367, -0.3, -0.1, -1e-3, -1e-10] {
            let w = lambert_w(BranchK::MinusOne, z).unwrap();
            let reference = oracle::bisect(|w| w * w.exp() - z, -800.0, -1.0, 1e-14);
            assert!(
                (w - reference).abs() < 1e-9 * reference.abs(),
                "z = {z}: {w} vs {reference}"
            );
            assert!(w <= -1.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(lambert_w(BranchK::Principal, -0.5).is_err());
        assert!(lambert_w(BranchK::MinusOne, 0.0).is_err());
        assert!(lambert_w(BranchK::MinusOne, 1.0).is_err());
        assert!(lambert_w(BranchK::Principal, f64::NAN).is_err());
        // Inside the tolerance band below the branch point.
        assert_eq!(lambert_w(BranchK::MinusOne, -INV_E - 5e-15).unwrap(), -1.0);
    }

    #[test]
    fn residual_on_log_grids() {
        // Both branches on [-1/e + 1e-9, -1e-12].
        for i in 0..=400 {
            let s = i as f64 / 400.0;
            let dist = 10f64.powf(-9.0 + s * (9.0 + INV_E.log10()));
            let z = -INV_E + dist;
            let z = z.min(-1e-12);
            for k in [BranchK::Principal, BranchK::MinusOne] {
                let w = lambert_w(k, z).unwrap();
                assert!(residual(w, z) <= 1e-12, "k = {k:?}, z = {z}, w = {w}");
            }
            let z = -10f64.powf(-12.0 + s * (12.0 + INV_E.log10()));
            for k in [BranchK::Principal, BranchK::MinusOne] {
                let w = lambert_w(k, z).unwrap();
                assert!(residual(w, z) <= 1e-12, "k = {k:?}, z = {z}, w = {w}");
            }
        }
        // Principal on [0, 1e6].
        for i in 0..=400 {
            let z = 10f64.powf(-12.0 + 18.0 * i as f64 / 400.0);
            let w = lambert_w(BranchK::Principal, z).unwrap();
            assert!(residual(w, z) <= 1e-12, "z = {z}, w = {w}");
        }
    }

    #[test]
    fn ladder_examples() {
        assert!((lambert_ladder_upper(-INV_E).unwrap() + 1.0).abs() < 1e-15);
        let v = lambert_ladder_upper(-0.1).unwrap();
        assert!((v + 3.136_617_538_242_001_4).abs() < 1e-12);
        let w = oracle::bisect(|w| w * w.exp() + 0.1, -10.0, -1.0, 1e-14);
        assert!(v >= w);
        let w = oracle::bisect(|w| w * w.exp() + 0.3, -10.0, -1.0, 1e-14);
        assert!(lambert_ladder_upper(-0.3).unwrap() >= w);
        assert!(lambert_ladder_upper(0.0).is_err());
        assert!(lambert_ladder_upper(-0.5).is_err());
    }

    proptest! {
        #[test]
        fn ladder_bounds_lower_branch(u in 1e-12f64..1.0) {
            let z = -INV_E * u;
            let w = lambert_w(BranchK::MinusOne, z).unwrap();
            prop_assert!(lambert_ladder_upper(z).unwrap() >= w - 1e-12);
        }

        #[test]
        fn branches_are_ordered(u in 1e-9f64..1.0) {
            let z = -INV_E * u;
            let w0 = lambert_w(BranchK::Principal, z).unwrap();
            let wm = lambert_w(BranchK::MinusOne, z).unwrap();
            prop_assert!(w0 >= -1.0 && wm <= -1.0 && wm <= w0);
        }
    }
}
