//! Cross-module invariant battery.
//!
//! Every check compares two independent routes to the same quantity, or
//! asserts an ordering that must hold between them. The capacity expression
//! under test is injectable so the harness itself can be fault-tested.

use std::fmt;

use crate::analysis::{self, capacity_at};
use crate::channel::{mi_closed, mi_derivative_x1, mi_quadrature, mi_series, OnOffInput};
use crate::simulate::{estimate_mi, SimConfig};
use crate::solver::{constants, snr_of_x1, solve_x1};
use crate::specfun::{gauss_2f1_1b, lambert_w, BranchK, INV_E};
use crate::{Result, Snr};

/// Capacity expression `C(a, x₁)`.
pub type CapacityFn = fn(Snr, f64) -> Result<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:width$}  {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Battery {
    pub capacity: CapacityFn,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Battery {
    fn default() -> Self {
        Battery {
            capacity: capacity_at,
            seed: 1,
            samples: 1_000_000,
        }
    }
}

/// The 16-point `(x₁², a)` grid shared by several checks.
pub fn mass_point_grid() -> Vec<(f64, f64)> {
    let mut g = Vec::with_capacity(16);
    for x_sq in [4.0, 5.0, 8.0, 16.0] {
        for a in [1e-4, 1e-3, 1e-2, 5e-2] {
            g.push((x_sq, a));
        }
    }
    g
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = lo;
    g[n - 1] = hi;
    g
}

fn outcome(name: &'static str, r: Result<(bool, String)>) -> CheckOutcome {
    match r {
        Ok((passed, detail)) => CheckOutcome {
            name,
            passed,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn snr(a: f64) -> Result<Snr> {
    Snr::new(a)
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (x_sq, a) in mass_point_grid() {
        let x1 = f64::sqrt(x_sq);
        let closed = mi_closed(x1, snr(a)?)?;
        let quad = mi_quadrature(&OnOffInput::for_snr(x1, snr(a)?)?)?.value;
        worst = worst.max((closed - quad).abs());
    }
    Ok((
        worst <= 1e-7,
        format!("max |closed - quadrature| = {worst:.3e}"),
    ))
}

fn branch_continuity() -> Result<(bool, String)> {
    let x0 = constants().x0;
    let gap = (snr_of_x1(x0, BranchK::Principal)? - snr_of_x1(x0, BranchK::MinusOne)?).abs();
    Ok((gap <= 1e-10, format!("branch gap at x0 = {gap:.3e}")))
}

fn lambert_residual() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut check = |k: BranchK, z: f64| -> Result<()> {
        let w = lambert_w(k, z)?;
        worst = worst.max((w * w.exp() - z).abs() / z.abs().max(1.0));
        Ok(())
    };
    for i in 0..=100 {
        let s = i as f64 / 100.0;
        let near = (-INV_E + 10f64.powf(-9.0 + s * (9.0 + INV_E.log10()))).min(-1e-12);
        let far = -10f64.powf(-12.0 + s * (12.0 + INV_E.log10()));
        for k in [BranchK::Principal, BranchK::MinusOne] {
            check(k, near)?;
            check(k, far)?;
        }
        check(BranchK::Principal, 10f64.powf(-12.0 + 18.0 * s))?;
    }
    Ok((
        worst <= 1e-12,
        format!("max relative residual = {worst:.3e}"),
    ))
}

fn contiguous_identity() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (x_sq, a) in mass_point_grid() {
        let alpha = 1.0 + x_sq;
        let p1 = a / x_sq;
        let beta = p1 / ((1.0 - p1) * alpha);
        let b = 1.0 / (alpha - 1.0);
        let z = -1.0 / beta;
        let lhs = gauss_2f1_1b(b, z)?.value + (1.0 - p1) / p1 * gauss_2f1_1b(b + 1.0, z)?.value;
        worst = worst.max((lhs - 1.0).abs());
    }
    Ok((
        worst <= 1e-8,
        format!("max |F(b) + (1-p)/p F(b+1) - 1| = {worst:.3e}"),
    ))
}

fn capacity_identity(capacity: CapacityFn) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (x_sq, a) in mass_point_grid() {
        let x1 = f64::sqrt(x_sq);
        let c = capacity(snr(a)?, x1)?;
        let s = mi_series(x1, snr(a)?)?;
        worst = worst.max((c - s).abs() / s.abs());
    }
    Ok((
        worst <= 1e-12,
        format!("max relative |C - series| = {worst:.3e}"),
    ))
}

fn monotonicity() -> Result<(bool, String)> {
    let mut min_slope = f64::INFINITY;
    for (x_sq, a) in mass_point_grid() {
        let input = OnOffInput::new(f64::sqrt(x_sq), a / x_sq)?;
        min_slope = min_slope.min(mi_derivative_x1(&input)?.value);
    }
    Ok((min_slope > 0.0, format!("min dI/dx1 = {min_slope:.3e}")))
}

fn bound_sandwich(capacity: CapacityFn) -> Result<(bool, String)> {
    let mut violations = 0;
    let grid = log_grid(1e-6, 5e-2, 25);
    for &a in &grid {
        let s = snr(a)?;
        let x1 = solve_x1(s)?.value;
        let lo = analysis::x1_lower_bound(s)?;
        let lo1 = analysis::x1_lower_bound_first(s)?;
        let hi = analysis::x1_upper_bound(s)?;
        let c = capacity(s, x1)?;
        let ok = lo1 <= lo
            && lo <= x1
            && x1 <= hi
            && capacity(s, lo)? <= c
            && capacity(s, hi)? <= c
            && c <= a;
        if !ok {
            violations += 1;
        }
    }
    Ok((
        violations == 0,
        format!("{violations} of {} grid points violate", grid.len()),
    ))
}

fn scaled_divergence() -> Result<(bool, String)> {
    let mut ok = true;
    for alpha in [0.5, 1.0] {
        let mut prev = f64::INFINITY;
        for e in 2..=8 {
            let a = 10f64.powi(-e);
            let v = a.powf(alpha) * solve_x1(snr(a)?)?.value.powi(2);
            ok &= v < prev;
            prev = v;
        }
    }
    let mut prev = 0.0;
    for e in [2, 4, 6, 8] {
        let a = 10f64.powi(-e);
        let p = analysis::capacity_low_snr(snr(a)?)?;
        let r = p.delta / a.powf(1.5);
        ok &= r > 2.0 * prev;
        prev = r;
    }
    Ok((ok, "a^k x1^2 decreasing, delta/a^1.5 growing".to_string()))
}

fn monte_carlo(seed: u64, samples: usize) -> Result<(bool, String)> {
    let x1 = 5f64.sqrt();
    let a = snr(1e-2)?;
    let exact = mi_closed(x1, a)?;
    let input = OnOffInput::for_snr(x1, a)?;
    let mut within = 0;
    for i in 0..20 {
        let cfg = SimConfig::new(seed.wrapping_add(i), samples, input)?;
        let e = estimate_mi(&cfg);
        if (e.estimate - exact).abs() <= 4.0 * e.std_error {
            within += 1;
        }
    }
    Ok((
        within >= 19,
        format!("{within} of 20 seeds within 4 standard errors"),
    ))
}

impl Battery {
    pub fn run(&self, level: Level) -> Report {
        let mut checks = vec![
            outcome("oracle_equivalence", oracle_equivalence()),
            outcome("branch_continuity", branch_continuity()),
            outcome("lambert_residual", lambert_residual()),
            outcome("contiguous_identity", contiguous_identity()),
            outcome("capacity_identity", capacity_identity(self.capacity)),
            outcome("mi_monotonicity", monotonicity()),
            outcome("bound_sandwich", bound_sandwich(self.capacity)),
            outcome("scaled_divergence", scaled_divergence()),
        ];
        if level == Level::Full {
            checks.push(outcome("monte_carlo", monte_carlo(self.seed, self.samples)));
        }
        Report { checks }
    }
}

/// Runs the default battery.
pub fn run(level: Level) -> Report {
    Battery::default().run(level)
}
