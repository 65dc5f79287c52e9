//! Achievable rates without fading.
//!
//! Each scheme has a branch evaluator, which maps a [`SchemeParams`] point to
//! the terms of its min-of-branches expression, and a `rate_*` function that
//! maximizes the smallest branch. The rate in a returned [`RateResult`] is
//! recomputed from the argmax through the branch evaluator, so it can always
//! be reproduced exactly.
//!
//! Correlation coefficients that only ever increase every branch are not
//! searched over: they take whatever is left of their unit-norm budget.

mod capacity;
mod compressed;
mod pdf;
mod reference;

pub use capacity::{c_srd_prime, capacity_special, CapacityRegime, RelayDestinationStrategy};
pub use compressed::{cs1_branches, cs2_branches, cs2_rq_bound, cu_branches, rate_cs1, rate_cs2, rate_cu};
pub use pdf::{du_branches, rate_du, rate_ni, rate_nr};
pub use reference::{aid_branches, rate_aid, rate_nldf};

#[cfg(doc)]
use crate::model::{RateResult, SchemeParams};

/// Intermediate powers of the closed-form expressions. Fields a scheme does
/// not define are left at zero.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DerivedQuantities {
    /// Received power of the relay-assisted message part.
    pub p_wprime: f64,
    /// Received power of the direct message part.
    pub p_wdprime: f64,
    /// Received power of the interference codeword, forwarding included.
    pub p_wi: f64,
    /// Received power of the compression-index codeword.
    pub p_u: f64,
    /// Quantization distortion of the interference description.
    pub d: f64,
    /// Residual interference amplitude after source-side cancellation.
    pub xi: f64,
    /// Noise plus residual interference.
    pub n_eq: f64,
    /// Side-information fraction at the destination.
    pub x: f64,
}

/// Names used in [`SchemeParams`] for the no-fading schemes.
pub mod names {
    /// Relay-assisted message part W'.
    pub const W_PRIME: &str = "w_prime";
    /// Direct message part W''.
    pub const W_DPRIME: &str = "w_dprime";
    /// Interference codeword.
    pub const W_I: &str = "w_i";
    /// Compression-index codeword.
    pub const U: &str = "u";
}

/// `sqrt(1 - sum of squares)`, zero if the budget is already spent.
#[inline]
pub(crate) fn remaining(parts: &[f64]) -> f64 {
    (1.0 - parts.iter().map(|p| p * p).sum::<f64>()).max(0.0).sqrt()
}
