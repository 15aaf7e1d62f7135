//! Normalized channel model and the on-off mutual information.
//!
//! After normalizing `y = |r|²/σ_w²` and `x = |s| σ_h/σ_w`, the output given
//! the input is exponential with mean `1 + x²`. Three routes to the mutual
//! information of the two-point input `{0, x₁}` live here: the closed form in
//! terms of `₂F₁`, its small-SNR series, and adaptive quadrature of the
//! defining integral.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specfun::quad::{integrate_pieces, QuadOptions};
use crate::specfun::{gauss_2f1_1b, QuadResult};
use crate::Snr;

/// Physical parameters of `r = h s + w` with `h ~ CN(0, σ_h²)`, `w ~ CN(0, σ_w²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub sigma_h_sq: f64,
    pub sigma_w_sq: f64,
    pub power: f64,
}

impl ChannelParams {
    pub fn new(sigma_h_sq: f64, sigma_w_sq: f64, power: f64) -> Result<Self> {
        if !(sigma_h_sq > 0.0 && sigma_h_sq.is_finite()) {
            return domain("ChannelParams: sigma_h_sq", sigma_h_sq);
        }
        if !(sigma_w_sq > 0.0 && sigma_w_sq.is_finite()) {
            return domain("ChannelParams: sigma_w_sq", sigma_w_sq);
        }
        if !(power >= 0.0 && power.is_finite()) {
            return domain("ChannelParams: power", power);
        }
        Ok(ChannelParams {
            sigma_h_sq,
            sigma_w_sq,
            power,
        })
    }

    /// `a = P σ_h² / σ_w²`.
    pub fn snr(&self) -> f64 {
        self.power * self.sigma_h_sq / self.sigma_w_sq
    }

    /// Normalized amplitude `x = |s| σ_h / σ_w`.
    pub fn normalized_amplitude(&self, s_abs: f64) -> f64 {
        s_abs * (self.sigma_h_sq / self.sigma_w_sq).sqrt()
    }

    /// Physical amplitude `|s|` for a normalized `x`.
    pub fn physical_amplitude(&self, x: f64) -> f64 {
        x * (self.sigma_w_sq / self.sigma_h_sq).sqrt()
    }
}

/// Two-point input: amplitude `x1` with probability `p1`, zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnOffInput {
    x1: f64,
    p1: f64,
}

impl OnOffInput {
    /// Accepts `x1 ≥ 0` and `p1 ∈ [0, 1]`; the endpoints are the degenerate laws.
    pub fn new(x1: f64, p1: f64) -> Result<Self> {
        if !(x1 >= 0.0 && x1.is_finite()) {
            return domain("OnOffInput: x1", x1);
        }
        if !(0.0..=1.0).contains(&p1) {
            return domain("OnOffInput: p1", p1);
        }
        Ok(OnOffInput { x1, p1 })
    }

    /// The input meeting the power constraint with equality: `p1 = a / x1²`.
    pub fn for_snr(x1: f64, a: Snr) -> Result<Self> {
        let x1_sq = x1 * x1;
        if !(x1_sq >= a.linear()) {
            return domain("OnOffInput::for_snr: x1 below sqrt(a)", x1);
        }
        Self::new(x1, (a.linear() / x1_sq).min(1.0))
    }

    #[inline]
    pub fn x1(&self) -> f64 {
        self.x1
    }

    #[inline]
    pub fn p1(&self) -> f64 {
        self.p1
    }

    #[inline]
    pub fn p0(&self) -> f64 {
        1.0 - self.p1
    }

    /// Average power `p1 x1²`.
    pub fn power(&self) -> f64 {
        self.p1 * self.x1 * self.x1
    }

    fn is_degenerate(&self) -> bool {
        self.p1 == 0.0 || self.p1 == 1.0 || self.x1 == 0.0
    }
}

/// `α = 1 + x₁²` and `β = p₁ / (p₀ α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBeta {
    pub alpha: f64,
    pub beta: f64,
}

impl AlphaBeta {
    pub fn from_input(input: &OnOffInput) -> Result<Self> {
        if input.p1 >= 1.0 {
            return domain("AlphaBeta: beta undefined at p1", input.p1);
        }
        let alpha = 1.0 + input.x1 * input.x1;
        Ok(AlphaBeta {
            alpha,
            beta: input.p1 / (input.p0() * alpha),
        })
    }

    /// Parameter `b = 1/(α - 1)` of the hypergeometric terms.
    pub fn hyper_b(&self) -> f64 {
        1.0 / (self.alpha - 1.0)
    }

    /// Argument `-1/β` of the hypergeometric terms.
    pub fn hyper_z(&self) -> f64 {
        -1.0 / self.beta
    }
}

/// `f(y | x) = exp(-y/(1+x²)) / (1+x²)`.
pub fn cond_density(y: f64, x: f64) -> f64 {
    let mean = 1.0 + x * x;
    (-y / mean).exp() / mean
}

/// Mixture density `p₀ e^{-y} + p₁ f(y | x₁)`.
pub fn output_density(y: f64, input: &OnOffInput) -> f64 {
    input.p0() * (-y).exp() + input.p1 * cond_density(y, input.x1)
}

/// Log-likelihood ratios at one output value.
struct LogRatios {
    /// `ln f(y|0) - ln f(y)`
    off: f64,
    /// `ln f(y|x₁) - ln f(y)`
    on: f64,
    /// `f(y|0)`
    f_off: f64,
    /// `f(y|x₁)`
    f_on: f64,
}

fn log_ratios(y: f64, input: &OnOffInput) -> LogRatios {
    let alpha = 1.0 + input.x1 * input.x1;
    let ln_p1 = input.p1.ln();
    let ln_f_off = -y;
    let ln_f_on = -y / alpha - alpha.ln();
    // lr = ln(f_on / f_off)
    let lr = ln_f_on - ln_f_off;
    // ln(f / f_off) = ln(p0 + p1 e^{lr}), kept accurate when p1 is tiny.
    let mix = if lr + ln_p1 < 0.0 {
        (input.p1 * lr.exp_m1()).ln_1p()
    } else {
        ln_p1 + lr + (input.p0() * (-lr).exp() / input.p1).ln_1p()
    };
    LogRatios {
        off: -mix,
        on: lr - mix,
        f_off: ln_f_off.exp(),
        f_on: ln_f_on.exp(),
    }
}

/// Information density `ln(f(y|x)/f(y))` for an output `y` produced by the
/// "on" symbol (`on = true`) or the zero symbol.
pub fn information_density(y: f64, on: bool, input: &OnOffInput) -> f64 {
    let l = log_ratios(y, input);
    if on {
        l.on
    } else {
        l.off
    }
}

const QUAD_OPTS: QuadOptions = QuadOptions {
    abs_tol: 1e-15,
    rel_tol: 1e-13,
    max_evals: 400_000,
};

/// Truncation point of the semi-infinite output integrals.
fn y_max(alpha: f64) -> f64 {
    50.0 * alpha
}

fn breakpoints(alpha: f64) -> Vec<f64> {
    let mut b = vec![0.0, 1.0, alpha, 5.0 * alpha, 20.0 * alpha, y_max(alpha)];
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Bound on `∫_{Y}^{∞} p_i f_i |ln(f_i/f)| dy` past the truncation point.
fn tail_bound(input: &OnOffInput, alpha: f64) -> f64 {
    let y = y_max(alpha);
    let ln_p1 = input.p1.ln().abs();
    // On the tail f ≈ p1 f_on, so |ln(f_on/f)| ≤ |ln p1| + 1 and
    // |ln(f_off/f)| ≤ y + |ln p1| + ln α + 1.
    let on = input.p1 * (-y / alpha).exp() * (ln_p1 + 1.0);
    let off = input.p0() * (-y).exp() * (y + 2.0 + ln_p1 + alpha.ln());
    on + off
}

fn with_tail(r: QuadResult, tail: f64) -> QuadResult {
    QuadResult {
        abs_error_estimate: r.abs_error_estimate + tail,
        ..r
    }
}

/// Mutual information of the on-off input, by adaptive quadrature of
/// `Σ_i p_i ∫ f(y|x_i) ln(f(y|x_i)/f(y)) dy` over `[0, 50(1+x₁²)]`.
///
/// Degenerate inputs (`p1 ∈ {0, 1}` or `x1 = 0`) return exactly 0.
pub fn mi_quadrature(input: &OnOffInput) -> Result<QuadResult> {
    if input.is_degenerate() {
        return Ok(QuadResult::exact(0.0));
    }
    let alpha = 1.0 + input.x1 * input.x1;
    let integrand = |y: f64| {
        let l = log_ratios(y, input);
        input.p0() * l.f_off * l.off + input.p1 * l.f_on * l.on
    };
    let r = integrate_pieces(&integrand, &breakpoints(alpha), QUAD_OPTS).map_err(|e| match e {
        Error::Convergence {
            partial,
            error_estimate,
            ..
        } => Error::Convergence {
            what: "mi_quadrature",
            partial,
            error_estimate,
        },
        other => other,
    })?;
    Ok(with_tail(r, tail_bound(input, alpha)))
}

/// `∂I/∂x₁` at fixed `p₁`:
/// `(2 p₁ x₁ / (1+x₁²)²) ∫ (y - (1+x₁²)) f(y|x₁) ln(f(y|x₁)/f(y)) dy`.
pub fn mi_derivative_x1(input: &OnOffInput) -> Result<QuadResult> {
    if input.p1 == 0.0 || input.x1 == 0.0 || input.p1 == 1.0 {
        return Ok(QuadResult::exact(0.0));
    }
    let alpha = 1.0 + input.x1 * input.x1;
    let integrand = |y: f64| {
        let l = log_ratios(y, input);
        (y - alpha) * l.f_on * l.on
    };
    let r = integrate_pieces(&integrand, &breakpoints(alpha), QUAD_OPTS)?;
    let scale = 2.0 * input.p1 * input.x1 / (alpha * alpha);
    let tail = input.p1.ln().abs() * y_max(alpha) * (-y_max(alpha) / alpha).exp();
    Ok(QuadResult {
        value: scale * r.value,
        abs_error_estimate: scale * (r.abs_error_estimate + tail),
        evaluations: r.evaluations,
    })
}

/// Closed-form mutual information `I(x₁, a)` of the on-off input with
/// `p₁ = a/x₁²`:
///
/// `a - a[ln(1+x₁²)/x₁² + 1/(1+x₁²) + x₁²/(1+x₁²) ₂F₁(1, 1/x₁²; 1+1/x₁²; z)]
///  - ln(1 - a/x₁²) - ln(1 + a/((1+x₁²)(x₁²-a)))` with
/// `z = -(1+x₁²)(x₁²-a)/a`.
///
/// Exactly 0 at `x₁ = √a`. Within `1e-8` relative of that point the
/// logarithms cancel catastrophically and the quadrature route is used.
pub fn mi_closed(x1: f64, a: Snr) -> Result<f64> {
    let a = a.linear();
    let x1_sq = x1 * x1;
    if !(x1_sq >= a) || !x1.is_finite() {
        return domain("mi_closed: x1 below sqrt(a)", x1);
    }
    if x1_sq == a {
        return Ok(0.0);
    }
    if x1_sq - a < 1e-8 * x1_sq {
        let input = OnOffInput::new(x1, a / x1_sq)?;
        return Ok(mi_quadrature(&input)?.value);
    }
    let input = OnOffInput::new(x1, a / x1_sq)?;
    let ab = AlphaBeta::from_input(&input)?;
    let hyper = gauss_2f1_1b(ab.hyper_b(), ab.hyper_z())?.value;
    let one_plus = 1.0 + x1_sq;
    let bracket = x1_sq.ln_1p() / x1_sq + 1.0 / one_plus + x1_sq / one_plus * hyper;
    let value = a - a * bracket - (-a / x1_sq).ln_1p() - (a / (one_plus * (x1_sq - a))).ln_1p();
    Ok(value)
}

/// Small-SNR expansion of the mutual information, truncated below order 2:
/// `(1 - ln(1+x₁²)/x₁²) a - π x₁² (x₁²(1+x₁²))^{-(1+x₁²)/x₁²} csc(π/x₁²) a^{1+1/x₁²}`.
pub fn mi_series(x1: f64, a: Snr) -> Result<f64> {
    if !(x1 > 1.0) {
        return domain("mi_series: x1 must exceed 1", x1);
    }
    let a = a.linear();
    let x1_sq = x1 * x1;
    if !(a < x1_sq) {
        return domain("mi_series: a must be below x1²", a);
    }
    let linear = (1.0 - x1_sq.ln_1p() / x1_sq) * a;
    let exponent = -(1.0 + x1_sq) / x1_sq;
    let coeff = PI * x1_sq * (x1_sq * (1.0 + x1_sq)).powf(exponent) / (PI / x1_sq).sin();
    Ok(linear - coeff * a.powf(1.0 + 1.0 / x1_sq))
}
