//! The SNR ↔ mass-point relation of the optimal on-off input.
//!
//! With `X = x₁²`, the stationarity condition of the low-SNR capacity can be
//! inverted in closed form through the Lambert W function:
//!
//! ```text
//! a(x₁) = exp[X·W_k(φ(x₁)) − X + π cot(π/X) + ln X + ln(1+X) − 1]
//! ```
//!
//! The lower branch `k = -1` applies for `a ≤ a₀` and the principal branch
//! above it. The two meet at `x₀`, the point where `φ(x₀) = −1/e`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::channel::{mi_closed, mi_quadrature, OnOffInput};
use crate::error::{domain, Error, Result};
use crate::optimize::{brent_max, brent_root};
use crate::specfun::{lambert_w, offset_from_branch_point, BranchK};
use crate::Snr;

/// SNR above which the truncated expansion behind the fixed point is flagged
/// as order-limited.
pub const ORDER_LIMIT_SNR: f64 = 2e-2;

/// Default upper limit accepted by [`solve_x1`].
pub const DEFAULT_A_MAX: f64 = 0.1;

/// `x₀`, `a₀` and `ξ₀ = ln a₀ + x₀²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowSnrConstants {
    pub x0: f64,
    pub x0_sq: f64,
    pub a0: f64,
    pub xi0: f64,
}

impl LowSnrConstants {
    /// Solves `φ(x) = -1/e` on `[1.5, 3]` by bisection and evaluates the
    /// branch junction there.
    pub fn compute() -> Result<Self> {
        let g = |x: f64| phi(x).map(offset_from_branch_point);
        let (mut lo, mut hi) = (1.5, 3.0);
        if !(g(lo)? < 0.0 && g(hi)? > 0.0) {
            return Err(Error::Bracket { what: "x0", lo, hi });
        }
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid)? <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Keep the side with φ ≤ -1/e: both Lambert branches return -1 there.
        let x0 = lo;
        let a0 = snr_of_x1(x0, BranchK::Principal)?;
        let x0_sq = x0 * x0;
        Ok(LowSnrConstants {
            x0,
            x0_sq,
            a0,
            xi0: a0.ln() + x0_sq,
        })
    }
}

/// Process-wide constants, computed on first use.
pub fn constants() -> &'static LowSnrConstants {
    static CONSTANTS: OnceLock<LowSnrConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| LowSnrConstants::compute().expect("x0 bracket is fixed and valid"))
}

/// Lambert branch that applies at SNR `a`.
pub fn branch_for(a: f64) -> BranchK {
    if a <= constants().a0 {
        BranchK::MinusOne
    } else {
        BranchK::Principal
    }
}

/// `φ(x) = -[sin(π/x²)(-x² + ln(1+x²) + x² ln(1+x²)) / (π x²)] · exp(-π cot(π/x²)/x² + 1 + 1/x²)`
pub fn phi(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return domain("phi: x must exceed 1", x);
    }
    let x_sq = x * x;
    let angle = PI / x_sq;
    let l = x_sq.ln_1p();
    let prefactor = angle.sin() * (-x_sq + l + x_sq * l) / (PI * x_sq);
    let exponent = -PI / angle.tan() / x_sq + 1.0 + 1.0 / x_sq;
    Ok(-prefactor * exponent.exp())
}

/// `ln a(x₁)` on the given branch.
pub fn ln_snr_of_x1(x1: f64, branch: BranchK) -> Result<f64> {
    let w = lambert_w(branch, phi(x1)?)?;
    let x_sq = x1 * x1;
    let angle = PI / x_sq;
    Ok(x_sq * w - x_sq + PI / angle.tan() + x_sq.ln() + x_sq.ln_1p() - 1.0)
}

/// The SNR at which `x1` is the optimal mass point, on the given branch.
pub fn snr_of_x1(x1: f64, branch: BranchK) -> Result<f64> {
    ln_snr_of_x1(x1, branch).map(f64::exp)
}

/// Left-hand side of the stationarity equation for `x₁` at SNR `a`:
/// `X − (1+X)ln(1+X) − π u^{1/X} csc(π/X)[1 + X − π cot(π/X) + ln u]`,
/// `u = a/(X + X²)`.
pub fn stationarity_residual(x1: f64, a: Snr) -> Result<f64> {
    if !(x1 > 1.0) || !x1.is_finite() {
        return domain("stationarity_residual: x1 must exceed 1", x1);
    }
    let x_sq = x1 * x1;
    let a = a.linear();
    if !(a < x_sq) {
        return domain("stationarity_residual: a must be below x1²", a);
    }
    let angle = PI / x_sq;
    let u = a / (x_sq + x_sq * x_sq);
    let bracket = 1.0 + x_sq - PI / angle.tan() + u.ln();
    Ok(x_sq - (1.0 + x_sq) * x_sq.ln_1p() - PI * u.powf(1.0 / x_sq) / angle.sin() * bracket)
}

/// Natural magnitude of [`stationarity_residual`] at `x1`, for relative comparisons.
pub fn stationarity_scale(x1: f64) -> f64 {
    let x_sq = x1 * x1;
    (1.0 + x_sq) * x_sq.ln_1p()
}

/// Outcome of a root solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    pub value: f64,
    /// Relative residual `|a(x₁) − a| / a`.
    pub residual: f64,
    pub iterations: usize,
    pub branch: BranchK,
    /// Set when `a` exceeds [`ORDER_LIMIT_SNR`].
    pub order_limited: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub a_max: f64,
    /// Bracket doublings allowed on the lower branch.
    pub max_expansions: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            a_max: DEFAULT_A_MAX,
            max_expansions: 16,
        }
    }
}

/// Mass point of the optimal on-off input at SNR `a`, with default options.
pub fn solve_x1(a: Snr) -> Result<SolveResult> {
    solve_x1_with(a, &SolveOptions::default())
}

/// Inverts `a(x₁) = a` on the branch selected by `a ≶ a₀`.
pub fn solve_x1_with(a: Snr, opts: &SolveOptions) -> Result<SolveResult> {
    let a_lin = a.linear();
    if a_lin > opts.a_max {
        return Err(Error::SnrAboveMax {
            snr: a_lin,
            a_max: opts.a_max,
        });
    }
    let c = constants();
    let branch = branch_for(a_lin);
    let ln_a = a_lin.ln();
    let g = |x: f64| ln_snr_of_x1(x, branch).map(|v| v - ln_a);

    let lo = c.x0;
    let mut hi = match branch {
        BranchK::MinusOne => (c.xi0 - ln_a).max(c.x0_sq).sqrt() * (1.0 + 1e-12),
        BranchK::Principal => 4.0 * c.x0,
    };
    let g_lo = g(lo)?;
    if g_lo == 0.0 {
        return Ok(SolveResult {
            value: lo,
            residual: 0.0,
            iterations: 0,
            branch,
            order_limited: a_lin > ORDER_LIMIT_SNR,
        });
    }
    let mut expansions = 0;
    while g(hi)?.signum() == g_lo.signum() {
        if expansions == opts.max_expansions {
            return Err(Error::Bracket {
                what: "solve_x1",
                lo,
                hi,
            });
        }
        hi *= 2.0;
        expansions += 1;
    }

    // Domain errors cannot occur inside [x0, hi]; map them to NaN defensively
    // so Brent reports non-convergence instead of panicking.
    let root = brent_root(|x| g(x).unwrap_or(f64::NAN), lo, hi, 1e-15, 1e-13, 200)?;
    let residual = (snr_of_x1(root.x, branch)? - a_lin).abs() / a_lin;
    Ok(SolveResult {
        value: root.x,
        residual,
        iterations: root.iterations + expansions,
        branch,
        order_limited: a_lin > ORDER_LIMIT_SNR,
    })
}

/// Outcome of [`maximize_mi`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxResult {
    pub x1: f64,
    /// Attained maximum of the mutual information (nats).
    pub max_value: f64,
    pub iterations: usize,
    pub bracket_width: f64,
    pub branch: BranchK,
}

/// Search bracket for [`maximize_mi`]:
/// `[max(√a, 1 + 1e-6), max(10, 2√(ξ₀ − ln a))]`.
pub fn maximize_bracket(a: Snr) -> (f64, f64) {
    let a = a.linear();
    let lo = a.sqrt().max(1.0 + 1e-6);
    let hi = (2.0 * (constants().xi0 - a.ln()).max(0.0).sqrt()).max(10.0);
    (lo, hi.max(2.0 * lo))
}

/// Maximizes the on-off mutual information over `x₁ ≥ √a` directly, using
/// the closed form or, when `use_closed_form` is false, quadrature.
pub fn maximize_mi(a: Snr, use_closed_form: bool) -> Result<MaxResult> {
    let (lo, hi) = maximize_bracket(a);
    let objective = |x: f64| -> Result<f64> {
        if use_closed_form {
            mi_closed(x, a)
        } else {
            Ok(mi_quadrature(&OnOffInput::for_snr(x, a)?)?.value)
        }
    };
    let m = brent_max(objective, lo, hi, 1e-10, 0.0, 500)?;
    if hi - m.x <= 1e-6 * hi {
        return Err(Error::BoundaryMaximum { x1: m.x });
    }
    Ok(MaxResult {
        x1: m.x,
        max_value: m.value,
        iterations: m.iterations,
        bracket_width: m.bracket_width,
        branch: branch_for(a.linear()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::INV_E;

    fn snr(a: f64) -> Snr {
        Snr::new(a).unwrap()
    }

    #[test]
    fn constants_match_published_values() {
        let c = constants();
        assert!((c.x0_sq - 3.93388).abs() < 5e-5, "{}", c.x0_sq);
        assert!((c.a0 - 0.0582).abs() < 1e-4, "{}", c.a0);
        assert!((phi(c.x0_sq.sqrt()).unwrap() + INV_E).abs() < 1e-9);
        assert_eq!(c.xi0, c.a0.ln() + c.x0_sq);
        let a0_again = snr_of_x1(c.x0_sq.sqrt(), BranchK::MinusOne).unwrap();
        assert!((a0_again - c.a0).abs() < 1e-6);
        // mpmath at 40 digits: x0² = 3.9338828551881929..., a0 = 0.0582923937146427...
        assert!((c.x0_sq - 3.933_882_855_188_193).abs() < 1e-12);
        assert!((c.a0 - 0.058_292_393_714_642_79).abs() < 1e-12);
    }

    #[test]
    fn phi_sign_and_monotonicity() {
        for x in [2.5, 3.0, 5.0, 10.0] {
            assert!(phi(x).unwrap() < 0.0);
        }
        let x0 = constants().x0;
        let mut prev = phi(x0).unwrap();
        for i in 1..=400 {
            let x = x0 + (20.0 - x0) * i as f64 / 400.0;
            let v = phi(x).unwrap();
            assert!(v > prev, "x = {x}");
            assert!(v > -INV_E && v < 0.0);
            prev = v;
        }
        assert!(phi(1.0).is_err());
        assert!(phi(0.5).is_err());
    }

    #[test]
    fn branch_continuity_at_junction() {
        let c = constants();
        let p = snr_of_x1(c.x0, BranchK::Principal).unwrap();
        let m = snr_of_x1(c.x0, BranchK::MinusOne).unwrap();
        assert!((p - m).abs() <= 1e-10);
        assert!((p - 0.0582).abs() < 1e-4);
    }

    #[test]
    fn branches_are_monotone() {
        let x0 = constants().x0;
        let grid: Vec<f64> = (1..=200)
            .map(|i| x0 + (10.0 - x0) * i as f64 / 200.0)
            .collect();
        for w in grid.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            assert!(
                snr_of_x1(hi, BranchK::MinusOne).unwrap()
                    < snr_of_x1(lo, BranchK::MinusOne).unwrap()
            );
            assert!(
                snr_of_x1(hi, BranchK::Principal).unwrap()
                    > snr_of_x1(lo, BranchK::Principal).unwrap()
            );
        }
    }

    #[test]
    fn lower_branch_vanishes_for_large_mass_points() {
        for x_sq in [40.0f64, 60.0, 100.0, 400.0] {
            assert!(snr_of_x1(x_sq.sqrt(), BranchK::MinusOne).unwrap() < 1e-8);
        }
    }

    #[test]
    fn below_junction_is_outside_the_domain() {
        assert!(snr_of_x1(1.9, BranchK::MinusOne).is_err());
        assert!(snr_of_x1(1.9, BranchK::Principal).is_err());
    }

    #[test]
    fn stationarity_equation_matches_lambert_form() {
        let c = constants();
        for x_sq in [4.2f64, 5.0, 8.0, 12.0] {
            let x1 = x_sq.sqrt();
            let a = snr_of_x1(x1, BranchK::MinusOne).unwrap();
            let r = stationarity_residual(x1, snr(a)).unwrap();
            assert!(
                r.abs() <= 1e-8 * stationarity_scale(x1),
                "x1² = {x_sq}: {r}"
            );
        }
        let r = stationarity_residual(c.x0, snr(c.a0)).unwrap();
        assert!(r.abs() <= 1e-8 * stationarity_scale(c.x0));
        // With the rounded published pair the residual is still small.
        let r = stationarity_residual(3.93388f64.sqrt(), snr(0.0582)).unwrap();
        assert!(r.abs() <= 1e-3 * stationarity_scale(c.x0), "{r}");
        assert!(stationarity_residual(1.0, snr(1e-3)).is_err());
    }

    #[test]
    fn headline_point_recomputed() {
        // Stationarity root at a = 1e-3, computed with mpmath at 40 digits.
        let s = solve_x1(snr(1e-3)).unwrap();
        assert!((s.value * s.value - 4.921_637_349_297_176).abs() < 1e-9);
        assert_eq!(s.branch, BranchK::MinusOne);
        assert!(s.residual <= 1e-10);
        assert!(!s.order_limited);
    }

    #[test]
    fn junction_solve() {
        let c = constants();
        let s = solve_x1(snr(c.a0)).unwrap();
        assert!((s.value - c.x0).abs() < 1e-9);
        let s = solve_x1(snr(0.0582)).unwrap();
        assert!((s.value * s.value / 3.93388 - 1.0).abs() < 1e-3);
        assert!(s.order_limited);
        let s = solve_x1(snr(0.08)).unwrap();
        assert_eq!(s.branch, BranchK::Principal);
        assert!(s.residual <= 1e-10);
    }

    #[test]
    fn very_low_snr_respects_bounds() {
        let c = constants();
        let a = 1e-6;
        let s = solve_x1(snr(a)).unwrap();
        assert!(s.value * s.value <= c.xi0 - a.ln());
        assert!(s.value >= c.x0);
        let m = maximize_mi(snr(a), true).unwrap();
        assert!((m.x1 - s.value).abs() <= 1e-2 * s.value);
    }

    #[test]
    fn round_trip_through_forward_map() {
        for x_sq in [4.0f64, 4.5, 6.0, 10.0] {
            let x1 = x_sq.sqrt();
            let a = snr_of_x1(x1, BranchK::MinusOne).unwrap();
            let s = solve_x1(snr(a)).unwrap();
            assert!((s.value - x1).abs() <= 1e-8 * x1, "x1² = {x_sq}");
        }
        // Principal side: a in (a0, 0.1].
        let x1 = 1.99;
        let a = snr_of_x1(x1, BranchK::Principal).unwrap();
        assert!(a > constants().a0 && a < 0.1, "{a}");
        let s = solve_x1(snr(a)).unwrap();
        assert!((s.value - x1).abs() <= 1e-8 * x1);
    }

    #[test]
    fn scaled_mass_point_vanishes() {
        for alpha in [0.5, 1.0] {
            let mut prev = f64::INFINITY;
            for k in 2..=8 {
                let a = 10f64.powi(-k);
                let x = solve_x1(snr(a)).unwrap().value;
                let scaled = a.powf(alpha) * x * x;
                assert!(scaled < prev, "alpha = {alpha}, a = {a}");
                prev = scaled;
            }
        }
    }

    #[test]
    fn rejects_snr_above_limit() {
        assert!(matches!(solve_x1(snr(0.2)), Err(Error::SnrAboveMax { .. })));
        let opts = SolveOptions {
            a_max: 0.5,
            ..SolveOptions::default()
        };
        assert!(solve_x1_with(snr(0.2), &opts).is_ok());
    }

    #[test]
    fn maximizer_agrees_with_fixed_point_at_low_snr() {
        let a = snr(1e-3);
        let m = maximize_mi(a, true).unwrap();
        let s = solve_x1(a).unwrap();
        assert!((m.x1 - s.value).abs() <= 1e-2 * s.value);
        let (lo, hi) = maximize_bracket(a);
        let mut state = 12345u64;
        for _ in 0..20 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let x = lo + u * (hi - lo);
            assert!(m.max_value >= mi_closed(x, a).unwrap());
        }
    }

    #[test]
    fn maximizer_by_quadrature_matches_closed_form() {
        let a = snr(1e-2);
        let q = maximize_mi(a, false).unwrap();
        let c = maximize_mi(a, true).unwrap();
        assert!((q.x1 - c.x1).abs() <= 1e-4 * c.x1);
        assert!((q.max_value - c.max_value).abs() <= 1e-10);
    }

    #[test]
    fn maximizer_shows_discrepancy_above_order_limit() {
        let a = snr(5e-2);
        let m = maximize_mi(a, true).unwrap();
        let s = solve_x1(a).unwrap();
        let rel = (m.x1 - s.value).abs() / s.value;
        assert!(rel > 1e-3 && rel < 5e-2, "{rel}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn lower_branch_round_trip(x_sq in 4.0f64..12.0) {
                let x1 = x_sq.sqrt();
                let a = snr_of_x1(x1, BranchK::MinusOne).unwrap();
                prop_assume!(a > 1e-300);
                let s = solve_x1(snr(a)).unwrap();
                prop_assert!((s.value - x1).abs() <= 1e-8 * x1);
            }

            #[test]
            fn solution_satisfies_stationarity(log_a in -9.0f64..-1.0) {
                let a = 10f64.powf(log_a);
                let s = solve_x1(snr(a)).unwrap();
                let r = stationarity_residual(s.value, snr(a)).unwrap();
                prop_assert!(r.abs() <= 1e-9 * stationarity_scale(s.value));
            }
        }
    }
}
