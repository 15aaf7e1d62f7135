//! Capacity, sub-linear term, non-coherence penalty, energy per nat, and the
//! closed-form bounds on the mass point and the capacity.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::solver::{self, constants, maximize_mi, solve_x1_with, SolveOptions, ORDER_LIMIT_SNR};
use crate::specfun::{lambert_w, BranchK};
use crate::Snr;

/// How a capacity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Lambert-W fixed point plugged into the capacity expression.
    FixedPoint,
    /// Direct maximization of the closed-form mutual information.
    NumericMax,
    /// Capacity expression at the mass-point lower bound.
    BoundUB,
    /// Capacity expression at the mass-point upper bound.
    BoundLB,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FixedPoint => "fixed_point",
            Method::NumericMax => "numeric_max",
            Method::BoundUB => "bound_ub",
            Method::BoundLB => "bound_lb",
        }
    }
}

/// Everything known about the channel at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint {
    pub a: Snr,
    pub x1: f64,
    pub p1: f64,
    /// nats per channel use
    pub capacity: f64,
    /// `Δ(a) = a − C`
    pub delta: f64,
    pub delta_over_a: f64,
    pub penalty: f64,
    /// `E_n / σ_w² = a / C`
    pub energy_per_nat: f64,
    pub branch: BranchK,
    pub method: Method,
    pub order_limited: bool,
}

impl CapacityPoint {
    fn assemble(a: Snr, x1: f64, capacity: f64, penalty: f64, method: Method) -> Self {
        let a_lin = a.linear();
        let delta = a_lin - capacity;
        CapacityPoint {
            a,
            x1,
            p1: a_lin / (x1 * x1),
            capacity,
            delta,
            delta_over_a: delta / a_lin,
            penalty,
            energy_per_nat: a_lin / capacity,
            branch: solver::branch_for(a_lin),
            method,
            order_limited: a_lin > ORDER_LIMIT_SNR,
        }
    }

    /// First-order approximation `1 + Δ/a` of the energy per nat.
    pub fn energy_per_nat_first_order(&self) -> f64 {
        1.0 + self.delta_over_a
    }

    /// Energy per information bit in dB, `10 log₁₀(ln 2 · E_n/σ_w²)`.
    pub fn energy_per_bit_db(&self) -> f64 {
        10.0 * (std::f64::consts::LN_2 * self.energy_per_nat).log10()
    }
}

fn check_mass_point(what: &'static str, a: Snr, x1: f64) -> Result<f64> {
    if !(x1 > 1.0) || !x1.is_finite() {
        return domain(what, x1);
    }
    let x_sq = x1 * x1;
    if !(a.linear() < x_sq) {
        return domain(what, a.linear());
    }
    Ok(x_sq)
}

/// `π csc(π/X) (1/(X + X²))^{1/X} / (1+X)`, the coefficient of `a^{1+1/X}`.
fn sublinear_coefficient(x_sq: f64) -> f64 {
    PI / (PI / x_sq).sin() * (1.0 / (x_sq + x_sq * x_sq)).powf(1.0 / x_sq) / (1.0 + x_sq)
}

/// Low-SNR capacity expression at mass point `x1`:
/// `a − a ln(1+X)/X − a^{1+1/X} π csc(π/X) (1/(X+X²))^{1/X} / (1+X)`.
pub fn capacity_at(a: Snr, x1: f64) -> Result<f64> {
    let x_sq = check_mass_point("capacity_at", a, x1)?;
    let a = a.linear();
    Ok(a - a * x_sq.ln_1p() / x_sq - a.powf(1.0 + 1.0 / x_sq) * sublinear_coefficient(x_sq))
}

/// Non-coherence penalty per SNR, `(a − C(a, x₁)) / a`, in its closed form
/// `ln(1+X)/X + a^{1/X} π csc(π/X) (1/(X+X²))^{1/X} / (1+X)`.
pub fn penalty_per_snr(a: Snr, x1: f64) -> Result<f64> {
    let x_sq = check_mass_point("penalty_per_snr", a, x1)?;
    Ok(x_sq.ln_1p() / x_sq + a.linear().powf(1.0 / x_sq) * sublinear_coefficient(x_sq))
}

/// Capacity at the fixed-point mass point, with default solver options.
pub fn capacity_low_snr(a: Snr) -> Result<CapacityPoint> {
    capacity_low_snr_with(a, &SolveOptions::default())
}

pub fn capacity_low_snr_with(a: Snr, opts: &SolveOptions) -> Result<CapacityPoint> {
    let x1 = solve_x1_with(a, opts)?.value;
    let capacity = capacity_at(a, x1)?;
    let penalty = penalty_per_snr(a, x1)?;
    Ok(CapacityPoint::assemble(
        a,
        x1,
        capacity,
        penalty,
        Method::FixedPoint,
    ))
}

/// Capacity from direct maximization of the exact on-off mutual information.
pub fn capacity_numeric(a: Snr) -> Result<CapacityPoint> {
    let m = maximize_mi(a, true)?;
    let capacity = m.max_value;
    let penalty = (a.linear() - capacity) / a.linear();
    Ok(CapacityPoint::assemble(
        a,
        m.x1,
        capacity,
        penalty,
        Method::NumericMax,
    ))
}

/// Upper bound `√(ξ₀ − ln a)` on the optimal mass point, valid for `a ≤ a₀`.
pub fn x1_upper_bound(a: Snr) -> Result<f64> {
    let c = constants();
    if a.linear() > c.a0 {
        return domain("x1_upper_bound: a above a0", a.linear());
    }
    Ok((c.xi0 - a.linear().ln()).sqrt())
}

/// `ρ = √(1 + ln(1/a))`.
pub fn rho(a: Snr) -> f64 {
    (1.0 - a.linear().ln()).sqrt()
}

/// `ρ / √(−W₋₁(φ(u)))`, defined while `φ(u) ∈ (−1/e, 0)`.
fn ladder_step(rho: f64, u: f64) -> Result<f64> {
    let p = solver::phi(u)?;
    let w = lambert_w(BranchK::MinusOne, p)?;
    if !(w < -1.0) {
        return domain("x1 lower bound: phi outside (-1/e, 0)", u);
    }
    Ok(rho / (-w).sqrt())
}

/// One-step lower bound `ρ / √(−W₋₁(φ(ρ)))`.
pub fn x1_lower_bound_first(a: Snr) -> Result<f64> {
    let r = rho(a);
    ladder_step(r, r)
}

/// Two-step lower bound on the optimal mass point for `a < a₀`:
/// `ρ / √(−W₋₁(φ(u)))` with `u = ρ / √(−ln(−φ(ρ)))`.
///
/// Requires `φ(ρ) > −1/e`, i.e. `a < exp(1 − x₀²) ≈ 0.0532`; closer to `a₀`
/// the bound is undefined and a domain error is returned.
pub fn x1_lower_bound(a: Snr) -> Result<f64> {
    if a.linear() >= constants().a0 {
        return domain("x1_lower_bound: a must be below a0", a.linear());
    }
    let r = rho(a);
    let p = solver::phi(r)?;
    let depth = -(-p).ln();
    if !(depth > 1.0) {
        return domain("x1_lower_bound: phi(rho) outside (-1/e, 0)", a.linear());
    }
    ladder_step(r, r / depth.sqrt())
}

/// Mass-point bounds and the capacity expression evaluated at them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsPoint {
    pub a: Snr,
    pub x1_lower: f64,
    pub x1_upper: f64,
    /// Capacity expression at `x1_lower`.
    pub c_upper: f64,
    /// Capacity expression at `x1_upper`.
    pub c_lower: f64,
}

/// Evaluates both mass-point bounds and the capacity expression at each.
///
/// The capacity expression peaks at the exact mass point, so `c_upper` and
/// `c_lower` both sit at or below the fixed-point capacity.
pub fn capacity_bounds(a: Snr) -> Result<BoundsPoint> {
    let x1_lower = x1_lower_bound(a)?;
    let x1_upper = x1_upper_bound(a)?;
    Ok(BoundsPoint {
        a,
        x1_lower,
        x1_upper,
        c_upper: capacity_at(a, x1_lower)?,
        c_lower: capacity_at(a, x1_upper)?,
    })
}
