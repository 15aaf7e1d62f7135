use std::fmt;

use crate::error::{domain, Result};

/// Linear-scale signal-to-noise ratio `a = P σ_h² / σ_w²` per symbol.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Snr(f64);

impl Snr {
    /// Wraps a strictly positive, finite linear SNR.
    pub fn new(linear: f64) -> Result<Self> {
        if linear.is_finite() && linear > 0.0 {
            Ok(Snr(linear))
        } else {
            domain("Snr::new", linear)
        }
    }

    /// `a = 10^(dB/10)`.
    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(10f64.powf(db / 10.0))
    }

    #[inline]
    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

impl fmt::Display for Snr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
