//! Ergodic Ricean fading: gains are known at the receivers only, so every
//! rate is an expectation over the fading distribution with decision
//! variables fixed across fading states.
//!
//! Expectations are Monte-Carlo estimates on one [`GainSampleBatch`] shared by
//! all candidate parameter points (common random numbers), which keeps the
//! objective deterministic and smooth for the optimizer.

mod multihop;
mod p2p;
mod sampling;

pub use multihop::{
    aid_branches, cs1_branches, cs2_branches, cs2_rq_bound, cu_branches, ds_branches, du_branches,
    rate_fading_aid, rate_fading_cs1, rate_fading_cs2, rate_fading_cu, rate_fading_ds, rate_fading_du,
    rate_fading_ni_multihop, RQ_MAX,
};
pub use p2p::{p2p_s_branches, p2p_u_branches, rate_fading_ni_p2p, rate_fading_p2p_s, rate_fading_p2p_u};
pub use sampling::{
    los_power, mc_expectation, sample_ricean, scatter_power, Estimate, FadingSpec, GainSample,
    GainSampleBatch, LinkSamples, MonteCarloCfg,
};

use crate::error::Result;
use crate::model::{Branch, RateResult, SchemeParams};
use crate::optimizer::{maximize, maximize_with_surrogate, Maximum, OptimizerConfig, ParamSpace};

/// Upper end of the inflation-factor search.
pub const ALPHA_MAX: f64 = 2.0;

/// Names used in [`SchemeParams`] for the fading schemes.
pub mod names {
    /// Own message.
    pub const MESSAGE: &str = "message";
    /// Interference forwarded coherently with the interferer's codeword.
    pub const INTERFERENCE: &str = "interference";
    /// Interference message sent on an independent codeword.
    pub const INTERFERENCE_INDEP: &str = "interference_indep";
    /// Compression-index codeword.
    pub const INDEX: &str = "index";
}

/// `log2` of the dirty-paper ratio for signal power `p`, known-state power
/// `q`, noise `n` and a real inflation factor. Zero when there is no signal.
#[inline]
pub(crate) fn dpc_rate(p: f64, q: f64, n: f64, alpha: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let miss = 1.0 - alpha;
    (p * (p + q + n) / (p * q * miss * miss + n * (p + alpha * alpha * q))).log2()
}

/// Samples behind the surrogate objective that drives the grid scan.
pub const SURROGATE_SAMPLES: usize = 10_000;

/// Surrogate optima refined on the full batch.
const POLISHED_STARTS: usize = 2;

/// Maximizes `eval` over `space` for the model `build` makes from the batch.
/// Large batches are searched on a model of their first
/// [`SURROGATE_SAMPLES`] samples and only polished on the full one. Returns
/// the full-batch model too, for reporting branches.
pub(crate) fn search<M>(
    batch: &GainSampleBatch,
    build: impl Fn(&GainSampleBatch) -> M,
    eval: impl Fn(&M, &[f64]) -> f64,
    space: &ParamSpace,
    cfg: &OptimizerConfig,
) -> Result<(Maximum, M)> {
    let full = build(batch);
    let best = if batch.len() > 2 * SURROGATE_SAMPLES {
        let coarse = build(&batch.head(SURROGATE_SAMPLES));
        maximize_with_surrogate(|x| eval(&coarse, x), |x| eval(&full, x), space, cfg, POLISHED_STARTS)?
    } else {
        maximize(|x| eval(&full, x), space, cfg)?
    };
    Ok((best, full))
}

/// Builds the result from branch estimates; the reported standard error is
/// that of the binding branch.
pub(crate) fn fading_result(params: SchemeParams, estimates: Vec<(Branch, f64)>) -> RateResult {
    let se = estimates
        .iter()
        .min_by(|a, b| a.0.value.total_cmp(&b.0.value))
        .map(|(_, se)| *se)
        .unwrap_or(0.0);
    let branches = estimates.into_iter().map(|(b, _)| b).collect();
    RateResult::from_branches(params, branches).with_std_error(se)
}
