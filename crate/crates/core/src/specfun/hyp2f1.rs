//! The Gauss hypergeometric family `₂F₁(1, b; b+1; z)` on `z ≤ 0`.
//!
//! Integral representation: `b ∫₀¹ t^{b-1} / (1 - z t) dt`.

use std::f64::consts::PI;

use super::quad::{integrate, QuadOptions, QuadResult};
use crate::error::{domain, Error, Result};

/// Error target for every evaluation route.
pub const TARGET_ERROR: f64 = 1e-10;

/// `₂F₁(1, b; b+1; z)` for `b > 0`, `z ≤ 0`.
///
/// Uses the power series for `|z| ≤ 0.5`, a Pfaff transformation on
/// `[-2, -0.5)`, the `1/z` connection formula below `-2`, and falls back to
/// adaptive quadrature of the integral representation when `b` sits too
/// close to an integer for the connection formula.
pub fn gauss_2f1_1b(b: f64, z: f64) -> Result<QuadResult> {
    if !(b > 0.0) || !b.is_finite() {
        return domain("gauss_2f1_1b: b", b);
    }
    if !(z <= 0.0) || z.is_infinite() {
        return domain("gauss_2f1_1b: z", z);
    }
    if z == 0.0 {
        return Ok(QuadResult::exact(1.0));
    }

    let analytic = if z >= -0.5 {
        Some(power_series(b, z))
    } else if z >= -2.0 {
        Some(pfaff(b, z))
    } else if (b - b.round()).abs() > 1e-3 {
        Some(connection(b, z))
    } else {
        None
    };
    if let Some(r) = analytic {
        if r.abs_error_estimate <= TARGET_ERROR {
            return Ok(r);
        }
    }
    by_quadrature(b, z)
}

/// `Σ_{n≥0} b/(b+n) zⁿ` for `|z| ≤ 0.5`; `b` may be negative but not a
/// non-positive integer.
fn power_series(b: f64, z: f64) -> QuadResult {
    debug_assert!(z.abs() <= 0.5 + 1e-15);
    let mut sum = 0.0;
    let mut zn = 1.0;
    let mut n = 0usize;
    let mut magnitude = 0.0f64;
    loop {
        let term = b / (b + n as f64) * zn;
        sum += term;
        magnitude = magnitude.max(term.abs());
        n += 1;
        zn *= z;
        let next = (b / (b + n as f64) * zn).abs();
        if (n as f64) > -b && next <= 0.25 * f64::EPSILON * sum.abs() || n > 200 {
            let truncation = next / (1.0 - z.abs());
            return QuadResult {
                value: sum,
                abs_error_estimate: truncation + 4.0 * f64::EPSILON * magnitude * n as f64,
                evaluations: n,
            };
        }
    }
}

/// `(1-z)^{-1} ₂F₁(1, 1; b+1; z/(z-1))`, with `z/(z-1) ∈ (1/3, 2/3]`.
fn pfaff(b: f64, z: f64) -> QuadResult {
    let w = z / (z - 1.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0usize;
    while term > 0.25 * f64::EPSILON * sum && n < 400 {
        term *= (n as f64 + 1.0) / (b + 1.0 + n as f64) * w;
        sum += term;
        n += 1;
    }
    let scale = 1.0 / (1.0 - z);
    let tail = term * w / (1.0 - w);
    QuadResult {
        value: sum * scale,
        abs_error_estimate: (tail + 2.0 * f64::EPSILON * sum * n as f64) * scale,
        evaluations: n + 1,
    }
}

/// `b/(b-1) (-1/z) F(1-b, 1/z) + (π b / sin π b) (-z)^{-b}` for `z < -2`.
fn connection(b: f64, z: f64) -> QuadResult {
    let inner = power_series(1.0 - b, 1.0 / z);
    let lead = b / (b - 1.0) * (-1.0 / z);
    let algebraic = PI * b / (PI * b).sin() * (-z).powf(-b);
    let first = lead * inner.value;
    let rounding = 8.0 * f64::EPSILON * (first.abs() + algebraic.abs());
    QuadResult {
        value: first + algebraic,
        abs_error_estimate: lead.abs() * inner.abs_error_estimate + rounding,
        evaluations: inner.evaluations + 1,
    }
}

/// `∫₀¹ ds / (1 - z s^{1/b})`, the integral representation after `s = t^b`.
fn by_quadrature(b: f64, z: f64) -> Result<QuadResult> {
    let inv_b = 1.0 / b;
    let f = |s: f64| 1.0 / (1.0 - z * s.powf(inv_b));
    // Put a breakpoint where the integrand has dropped to half.
    let knee = (-1.0 / z).powf(b).clamp(1e-12, 0.5);
    let opts = QuadOptions {
        abs_tol: 1e-16,
        rel_tol: 1e-13,
        max_evals: 400_000,
    };
    let r = super::quad::integrate_pieces(&f, &[0.0, knee, 1.0], opts)
        .or_else(|_| integrate(f, 0.0, 1.0, opts))?;
    if r.abs_error_estimate > TARGET_ERROR {
        return Err(Error::Convergence {
            what: "gauss_2f1_1b",
            partial: r.value,
            error_estimate: r.abs_error_estimate,
        });
    }
    Ok(r)
}
