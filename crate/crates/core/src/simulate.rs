//! Monte Carlo check of the channel model.
//!
//! Samples `(x, y)` pairs from the on-off input and the exponential output
//! law (or from the complex Gaussian sample path, then normalized), and
//! averages the known information density `ln(f(y|x)/f(y))`.
//!
//! The stream is cut into fixed blocks of [`BLOCK_LEN`] samples; block `k`
//! draws from ChaCha8 stream `k` under the configured seed. Per-block
//! statistics are merged in block order, so results do not depend on how
//! many threads run the blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::channel::{information_density, ChannelParams, OnOffInput};
use crate::error::{domain, Result};

pub const BLOCK_LEN: usize = 1 << 16;
pub const MIN_SAMPLES: usize = 1000;

/// How output samples are generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplePath {
    /// `y = (1 + x²) E` with `E` standard exponential.
    Normalized,
    /// `r = h s + w` with complex Gaussian `h`, `w`, then `y = |r|²/σ_w²`.
    Physical(ChannelParams),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub seed: u64,
    pub n_samples: usize,
    pub input: OnOffInput,
    pub path: SamplePath,
}

impl SimConfig {
    pub fn new(seed: u64, n_samples: usize, input: OnOffInput) -> Result<Self> {
        if n_samples < MIN_SAMPLES {
            return domain("SimConfig: n_samples below 1000", n_samples as f64);
        }
        Ok(SimConfig {
            seed,
            n_samples,
            input,
            path: SamplePath::Normalized,
        })
    }

    pub fn with_path(mut self, path: SamplePath) -> Self {
        self.path = path;
        self
    }

    fn blocks(&self) -> usize {
        self.n_samples.div_ceil(BLOCK_LEN)
    }

    fn block_len(&self, k: usize) -> usize {
        (self.n_samples - k * BLOCK_LEN).min(BLOCK_LEN)
    }

    fn block_rng(&self, k: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k as u64);
        rng
    }
}

/// One draw: the input amplitude and the normalized output power.
fn draw(rng: &mut ChaCha8Rng, cfg: &SimConfig) -> (f64, f64, bool) {
    let on = rng.random::<f64>() < cfg.input.p1();
    let x = if on { cfg.input.x1() } else { 0.0 };
    let y = match cfg.path {
        SamplePath::Normalized => {
            let e: f64 = rng.sample(Exp1);
            (1.0 + x * x) * e
        }
        SamplePath::Physical(params) => {
            let s = params.physical_amplitude(x);
            let h_scale = (0.5 * params.sigma_h_sq).sqrt();
            let w_scale = (0.5 * params.sigma_w_sq).sqrt();
            let h_re: f64 = rng.sample::<f64, _>(StandardNormal) * h_scale;
            let h_im: f64 = rng.sample::<f64, _>(StandardNormal) * h_scale;
            let w_re: f64 = rng.sample::<f64, _>(StandardNormal) * w_scale;
            let w_im: f64 = rng.sample::<f64, _>(StandardNormal) * w_scale;
            let r_re = h_re * s + w_re;
            let r_im = h_im * s + w_im;
            (r_re * r_re + r_im * r_im) / params.sigma_w_sq
        }
    };
    (x, y, on)
}

/// Sequential iterator over the `(x, y)` sample stream.
pub struct SampleStream {
    cfg: SimConfig,
    block: usize,
    index: usize,
    rng: ChaCha8Rng,
}

impl Iterator for SampleStream {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        if self.block >= self.cfg.blocks() {
            return None;
        }
        if self.index == self.cfg.block_len(self.block) {
            self.block += 1;
            self.index = 0;
            if self.block >= self.cfg.blocks() {
                return None;
            }
            self.rng = self.cfg.block_rng(self.block);
        }
        self.index += 1;
        let (x, y, _) = draw(&mut self.rng, &self.cfg);
        Some((x, y))
    }
}

/// The reproducible `(x, y)` stream for `cfg`.
pub fn sample_outputs(cfg: &SimConfig) -> SampleStream {
    SampleStream {
        cfg: *cfg,
        block: 0,
        index: 0,
        rng: cfg.block_rng(0),
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1.0;
        let d = v - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return other;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * other.n / n,
            m2: self.m2 + other.m2 + d * d * self.n * other.n / n,
        }
    }
}

/// Plug-in mutual-information estimate and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

/// Averages `ln(f(y|x)/f(y))` over the sample stream.
pub fn estimate_mi(cfg: &SimConfig) -> MiEstimate {
    let blocks: Vec<Moments> = (0..cfg.blocks())
        .into_par_iter()
        .map(|k| {
            let mut rng = cfg.block_rng(k);
            let mut m = Moments::default();
            for _ in 0..cfg.block_len(k) {
                let (_, y, on) = draw(&mut rng, cfg);
                m.push(information_density(y, on, &cfg.input));
            }
            m
        })
        .collect();
    let total = blocks.into_iter().fold(Moments::default(), Moments::merge);
    let variance = if total.n > 1.0 {
        total.m2 / (total.n - 1.0)
    } else {
        0.0
    };
    MiEstimate {
        estimate: total.mean,
        std_error: (variance / total.n).sqrt(),
        n_samples: cfg.n_samples,
    }
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`. Sorts in place.
pub fn ks_statistic(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic two-sample KS critical value at the 1% level.
pub fn ks_critical_1pct(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    1.628 * ((n + m) / (n * m)).sqrt()
}
