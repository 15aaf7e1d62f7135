//! Capacity of the discrete-time memoryless non-coherent Rayleigh fading
//! channel at low SNR.
//!
//! The crate computes the optimal on-off input `(x₁, p₁ = a/x₁²)`, the exact
//! low-SNR capacity, the sub-linear term and non-coherence penalty, and
//! closed-form bounds on the mass point and the capacity. Every closed form
//! has an independent numerical route next to it: adaptive quadrature of the
//! mutual-information integral, a direct maximizer, and a Monte Carlo
//! estimator driven by the channel's sample paths.
//!
//! ```
//! use noncoherent_capacity::{analysis, Snr};
//!
//! let point = analysis::capacity_low_snr(Snr::from_db(-30.0)?)?;
//! assert!(point.capacity < point.a.linear());
//! assert!(point.x1 * point.x1 > 4.9);
//! # Ok::<(), noncoherent_capacity::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod csvio;
mod error;
pub mod optimize;
pub mod simulate;
mod snr;
pub mod solver;
pub mod specfun;
pub mod verify;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use snr::Snr;
pub use specfun::{BranchK, QuadResult};
