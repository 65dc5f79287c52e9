//! Point-to-point fading link with a transmitter-known interferer: dirty
//! paper coding with a fixed inflation factor versus forwarding the
//! interference so the receiver can decode it.

use super::names::{INTERFERENCE, INTERFERENCE_INDEP, MESSAGE};
use super::sampling::estimate;
use super::{dpc_rate, fading_result, search, GainSampleBatch, ALPHA_MAX};
use crate::awgn::remaining;
use crate::error::Result;
use crate::model::{cap, pos_part, Branch, PowerBudget, RateResult, SchemeParams};
use crate::optimizer::{OptimizerConfig, ParamSpace};

/// Per-batch quantities shared by every candidate point.
struct Link {
    sd: Vec<f64>,
    i: Vec<f64>,
    cross: Vec<f64>,
}

impl Link {
    fn new(batch: &GainSampleBatch) -> Self {
        Link {
            sd: batch.sd.power.clone(),
            i: batch.i.power.clone(),
            cross: GainSampleBatch::cross(&batch.sd, &batch.i),
        }
    }

    fn len(&self) -> usize {
        self.sd.len()
    }
}

fn p2p_u_estimate(link: &Link, b: &PowerBudget, alpha: f64) -> (f64, f64) {
    let e = estimate(link.len(), |k| dpc_rate(link.sd[k] * b.p_s, link.i[k] * b.p_i, 1.0, alpha));
    (e.mean, e.std_error)
}

pub fn p2p_u_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let (v, _) = p2p_u_estimate(&Link::new(batch), b, params.alpha.unwrap_or(0.0));
    vec![Branch::new("destination", v)]
}

/// Unstructured approach: dirty paper coding with one real inflation factor
/// for all fading states.
pub fn rate_fading_p2p_u(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new().dim("alpha", 0.0, ALPHA_MAX);
    let (best, link) = search(batch, Link::new, |l, x| p2p_u_estimate(l, b, x[0]).0, &space, cfg)?;
    let alpha = best.argmax[0];
    let (v, se) = p2p_u_estimate(&link, b, alpha);
    let params = SchemeParams { alpha: Some(alpha), ..Default::default() };
    Ok(fading_result(params, vec![(Branch::new("destination", v), se)]))
}

/// Message-only and joint-decoding expectations at `(rho, rho_i, rho_i')`.
fn structured_estimates(link: &Link, b: &PowerBudget, rho: [f64; 3]) -> [(f64, f64); 2] {
    let [own, coherent, indep] = rho;
    let own_power = own * own * b.p_s;
    let other = (coherent * coherent + indep * indep) * b.p_s;
    let coherent_amp = 2.0 * coherent * (b.p_s * b.p_i).sqrt();
    let message = estimate(link.len(), |k| cap(link.sd[k] * own_power));
    let joint = estimate(link.len(), |k| {
        cap(link.sd[k] * (own_power + other) + link.i[k] * b.p_i + coherent_amp * link.cross[k])
    });
    [
        (message.mean, message.std_error),
        (pos_part(joint.mean - b.r_i), joint.std_error),
    ]
}

fn structured_rho(params: &SchemeParams) -> [f64; 3] {
    [
        params.rho(MESSAGE),
        params.rho(INTERFERENCE),
        params.rho(INTERFERENCE_INDEP),
    ]
}

pub fn p2p_s_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let [m, j] = structured_estimates(&Link::new(batch), b, structured_rho(params));
    vec![Branch::new("message", m.0), Branch::new("joint", j.0)]
}

/// Structured approach: the source spends part of its power forwarding the
/// interference, coherently and on an independent codeword, so that the
/// receiver decodes it.
pub fn rate_fading_p2p_s(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // The independent-codeword share only ever helps the joint branch, so it
    // takes the leftover budget.
    let space = ParamSpace::new()
        .dim("rho_message", 0.0, 1.0)
        .dim("rho_interference", 0.0, 1.0)
        .quadratic_group(&[0, 1]);
    let rho = |x: &[f64]| [x[0], x[1], remaining(&[x[0], x[1]])];
    let eval = |l: &Link, x: &[f64]| {
        let [m, j] = structured_estimates(l, b, rho(x));
        m.0.min(j.0)
    };
    let (best, link) = search(batch, Link::new, eval, &space, cfg)?;
    let [own, coherent, indep] = rho(&best.argmax);
    let params = SchemeParams {
        rho: vec![(MESSAGE, own), (INTERFERENCE, coherent), (INTERFERENCE_INDEP, indep)],
        ..Default::default()
    };
    let [m, j] = structured_estimates(&link, b, structured_rho(&params));
    Ok(fading_result(
        params,
        vec![(Branch::new("message", m.0), m.1), (Branch::new("joint", j.0), j.1)],
    ))
}

/// Interference-free point-to-point rate `E[C(|h_SD|^2 P_S)]`.
pub fn rate_fading_ni_p2p(batch: &GainSampleBatch, b: &PowerBudget) -> RateResult {
    let sd = &batch.sd.power;
    let e = estimate(batch.len(), |k| cap(sd[k] * b.p_s));
    fading_result(SchemeParams::default(), vec![(Branch::new("direct", e.mean), e.std_error)])
}
