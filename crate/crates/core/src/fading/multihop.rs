//! Multihop relay channel under fading: the direct link is absent and every
//! scheme is limited by one source-relay expectation and one or two
//! relay-destination expectations.

use super::names::{INDEX, INTERFERENCE, INTERFERENCE_INDEP, MESSAGE};
use super::sampling::{estimate, Estimate};
use super::{dpc_rate, fading_result, search, GainSampleBatch, ALPHA_MAX};
use crate::awgn::remaining;
use crate::error::Result;
use crate::model::{cap, pos_part, Branch, PowerBudget, RateResult, SchemeParams};
use crate::optimizer::{OptimizerConfig, ParamSpace};

/// Upper end of the quantization-rate search, in bits.
pub const RQ_MAX: f64 = 20.0;

/// Per-batch quantities shared by every candidate point.
struct Link {
    rd: Vec<f64>,
    i: Vec<f64>,
    cross: Vec<f64>,
    source_relay: Estimate,
}

impl Link {
    fn new(batch: &GainSampleBatch, b: &PowerBudget) -> Self {
        let sr = &batch.sr.power;
        Link {
            rd: batch.rd.power.clone(),
            i: batch.i.power.clone(),
            cross: GainSampleBatch::cross(&batch.rd, &batch.i),
            source_relay: estimate(batch.len(), |k| cap(sr[k] * b.p_s)),
        }
    }

    fn len(&self) -> usize {
        self.rd.len()
    }

    /// `(E[C(|h_SR|^2 P_S)] - rate)^+`.
    fn relay_link(&self, rate: f64) -> (f64, f64) {
        (pos_part(self.source_relay.mean - rate), self.source_relay.std_error)
    }
}

fn pair(e: Estimate) -> (f64, f64) {
    (e.mean, e.std_error)
}

fn labelled(labels: &[&'static str], values: &[(f64, f64)]) -> Vec<(Branch, f64)> {
    labels.iter().zip(values).map(|(l, (v, se))| (Branch::new(l, *v), *se)).collect()
}

fn values_only(labels: &[&'static str], values: &[(f64, f64)]) -> Vec<Branch> {
    labelled(labels, values).into_iter().map(|(b, _)| b).collect()
}

fn smallest(values: &[(f64, f64)]) -> f64 {
    values.iter().map(|v| v.0).fold(f64::INFINITY, f64::min)
}

// (D,U)

const DU_LABELS: [&str; 2] = ["relay-link", "destination"];

fn du_values(link: &Link, b: &PowerBudget, alpha: f64) -> [(f64, f64); 2] {
    let dest = estimate(link.len(), |k| dpc_rate(link.rd[k] * b.p_r, link.i[k] * b.p_i, 1.0, alpha));
    [link.relay_link(b.r_i), pair(dest)]
}

pub fn du_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    values_only(&DU_LABELS, &du_values(&link, b, params.alpha.unwrap_or(0.0)))
}

/// Digital interference sharing with dirty paper coding at the relay.
pub fn rate_fading_du(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new().dim("alpha", 0.0, ALPHA_MAX);
    let build = |bt: &GainSampleBatch| Link::new(bt, b);
    let (best, link) = search(batch, build, |l, x| smallest(&du_values(l, b, x[0])), &space, cfg)?;
    let alpha = best.argmax[0];
    let params = SchemeParams { alpha: Some(alpha), ..Default::default() };
    Ok(fading_result(params, labelled(&DU_LABELS, &du_values(&link, b, alpha))))
}

// (D,S)

const DS_LABELS: [&str; 3] = ["relay-link", "message-dest", "joint-dest"];

fn ds_values(link: &Link, b: &PowerBudget, rho: [f64; 3]) -> [(f64, f64); 3] {
    let [own, coherent, indep] = rho;
    let own_power = own * own * b.p_r;
    let relay_power = (own * own + coherent * coherent + indep * indep) * b.p_r;
    let coherent_amp = 2.0 * coherent * (b.p_r * b.p_i).sqrt();
    let message = estimate(link.len(), |k| cap(link.rd[k] * own_power));
    let joint = estimate(link.len(), |k| {
        cap(link.rd[k] * relay_power + link.i[k] * b.p_i + coherent_amp * link.cross[k])
    });
    [
        link.relay_link(b.r_i),
        pair(message),
        (pos_part(joint.mean - b.r_i), joint.std_error),
    ]
}

fn relay_rho(params: &SchemeParams) -> [f64; 3] {
    [
        params.rho_bar(MESSAGE),
        params.rho_bar(INTERFERENCE),
        params.rho_bar(INTERFERENCE_INDEP),
    ]
}

fn relay_params(rho: [f64; 3]) -> SchemeParams {
    SchemeParams {
        rho_bar: vec![(MESSAGE, rho[0]), (INTERFERENCE, rho[1]), (INTERFERENCE_INDEP, rho[2])],
        ..Default::default()
    }
}

pub fn ds_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    values_only(&DS_LABELS, &ds_values(&link, b, relay_rho(params)))
}

/// Digital interference sharing where the relay forwards the interference
/// so that the destination decodes it.
pub fn rate_fading_ds(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // The independent-codeword share only raises the joint branch.
    let space = ParamSpace::new()
        .dim("rho_bar_message", 0.0, 1.0)
        .dim("rho_bar_interference", 0.0, 1.0)
        .quadratic_group(&[0, 1]);
    let rho = |x: &[f64]| [x[0], x[1], remaining(&[x[0], x[1]])];
    let build = |bt: &GainSampleBatch| Link::new(bt, b);
    let (best, link) = search(batch, build, |l, x| smallest(&ds_values(l, b, rho(x))), &space, cfg)?;
    let r = rho(&best.argmax);
    Ok(fading_result(relay_params(r), labelled(&DS_LABELS, &ds_values(&link, b, r))))
}

// (C,U)

fn cu_values(link: &Link, b: &PowerBudget, r_q: f64, alpha: f64) -> [(f64, f64); 2] {
    let d = b.p_i * (-r_q).exp2();
    let residual = b.p_i - d;
    let dest = estimate(link.len(), |k| {
        dpc_rate(link.rd[k] * b.p_r, link.i[k] * residual, link.i[k] * d + 1.0, alpha)
    });
    [link.relay_link(r_q), pair(dest)]
}

pub fn cu_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    let v = cu_values(&link, b, params.r_q.unwrap_or(0.0), params.alpha.unwrap_or(0.0));
    values_only(&DU_LABELS, &v)
}

/// Compressed interference sharing with dirty paper coding at the relay
/// against the described part of the interference.
pub fn rate_fading_cu(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new().dim("r_q", 0.0, RQ_MAX).dim("alpha", 0.0, ALPHA_MAX);
    let build = |bt: &GainSampleBatch| Link::new(bt, b);
    let (best, link) = search(batch, build, |l, x| smallest(&cu_values(l, b, x[0], x[1])), &space, cfg)?;
    let (r_q, alpha) = (best.argmax[0], best.argmax[1]);
    let params = SchemeParams { r_q: Some(r_q), alpha: Some(alpha), ..Default::default() };
    Ok(fading_result(params, labelled(&DU_LABELS, &cu_values(&link, b, r_q, alpha))))
}

// (C,S,1)

fn cs1_values(link: &Link, b: &PowerBudget, r_q: f64, rho: [f64; 3]) -> [(f64, f64); 3] {
    let [own, coherent, indep] = rho;
    let residual = (-r_q).exp2();
    let described = 1.0 - residual;
    let own_power = own * own * b.p_r;
    let noise_power = (coherent * coherent + indep * indep) * b.p_r * residual;
    let signal_power = own_power + (coherent * coherent + indep * indep) * b.p_r * described;
    let coherent_amp = 2.0 * coherent * (b.p_r * described * b.p_i).sqrt();
    let message = estimate(link.len(), |k| cap(link.rd[k] * own_power / (link.rd[k] * noise_power + 1.0)));
    let joint = estimate(link.len(), |k| {
        let n_eq = link.rd[k] * noise_power + 1.0;
        cap((link.rd[k] * signal_power + link.i[k] * b.p_i + coherent_amp * link.cross[k]) / n_eq)
    });
    [
        link.relay_link(r_q),
        pair(message),
        (pos_part(joint.mean - b.r_i), joint.std_error),
    ]
}

pub fn cs1_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    values_only(&DS_LABELS, &cs1_values(&link, b, params.r_q.unwrap_or(0.0), relay_rho(params)))
}

/// Compressed interference sharing with analog forwarding of the
/// description by the relay.
pub fn rate_fading_cs1(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // The message share raises both destination branches and takes the slack.
    let space = ParamSpace::new()
        .dim("r_q", 0.0, RQ_MAX)
        .dim("rho_bar_interference", 0.0, 1.0)
        .dim("rho_bar_interference_indep", 0.0, 1.0)
        .quadratic_group(&[1, 2]);
    let rho = |x: &[f64]| [remaining(&x[1..3]), x[1], x[2]];
    let build = |bt: &GainSampleBatch| Link::new(bt, b);
    let (best, link) = search(batch, build, |l, x| smallest(&cs1_values(l, b, x[0], rho(x))), &space, cfg)?;
    let (r_q, r) = (best.argmax[0], rho(&best.argmax));
    let params = SchemeParams { r_q: Some(r_q), ..relay_params(r) };
    Ok(fading_result(params, labelled(&DS_LABELS, &cs1_values(&link, b, r_q, r))))
}

// (C,S,2)

fn cs2_bound(link: &Link, b: &PowerBudget, own: f64, index: f64) -> f64 {
    let own_power = own * own * b.p_r;
    let index_power = index * index * b.p_r;
    estimate(link.len(), |k| {
        cap(link.rd[k] * index_power / (link.rd[k] * own_power + link.i[k] * b.p_i + 1.0))
    })
    .mean
}

/// Largest admissible quantization rate at relay coefficients
/// `(rho_bar, rho_bar_U)`, capped at [`RQ_MAX`].
pub fn cs2_rq_bound(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> f64 {
    let link = Link::new(batch, b);
    cs2_bound(&link, b, params.rho_bar(MESSAGE), params.rho_bar(INDEX)).min(RQ_MAX)
}

fn cs2_values(link: &Link, b: &PowerBudget, r_q: f64, own: f64) -> [(f64, f64); 3] {
    let own_power = own * own * b.p_r;
    let scale = r_q.exp2();
    let message = estimate(link.len(), |k| cap(link.rd[k] * own_power));
    let joint = estimate(link.len(), |k| {
        ((link.rd[k] * own_power + 1.0) * scale + link.i[k] * b.p_i).log2()
    });
    [
        link.relay_link(r_q),
        pair(message),
        (pos_part(joint.mean - b.r_i), joint.std_error),
    ]
}

pub fn cs2_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    let v = cs2_values(&link, b, params.r_q.unwrap_or(0.0), params.rho_bar(MESSAGE));
    values_only(&DS_LABELS, &v)
}

/// Compressed interference sharing with a separate index codeword at the
/// relay, without binning.
pub fn rate_fading_cs2(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // The index codeword only enters the rate bound, so it takes the slack,
    // and r_q is searched as a fraction of that bound.
    let space = ParamSpace::new().dim("r_q_fraction", 0.0, 1.0).dim("rho_bar_message", 0.0, 1.0);
    let decode = |link: &Link, x: &[f64]| {
        let index = remaining(&x[1..2]);
        let r_q = x[0] * cs2_bound(link, b, x[1], index).min(RQ_MAX);
        (r_q, x[1], index)
    };
    let eval = |link: &Link, x: &[f64]| {
        let (r_q, own, _) = decode(link, x);
        smallest(&cs2_values(link, b, r_q, own))
    };
    let (best, link) = search(batch, |bt| Link::new(bt, b), eval, &space, cfg)?;
    let (r_q, own, index) = decode(&link, &best.argmax);
    let params = SchemeParams {
        rho_bar: vec![(MESSAGE, own), (INDEX, index)],
        r_q: Some(r_q),
        ..Default::default()
    };
    Ok(fading_result(params, labelled(&DS_LABELS, &cs2_values(&link, b, r_q, own))))
}

// AID

fn aid_values(link: &Link, b: &PowerBudget, alpha: f64) -> (f64, f64) {
    let d = b.p_r * (-link.source_relay.mean).exp2();
    let relay_power = pos_part(b.p_r - d);
    pair(estimate(link.len(), |k| {
        dpc_rate(link.rd[k] * relay_power, link.i[k] * b.p_i, link.rd[k] * d + 1.0, alpha)
    }))
}

pub fn aid_branches(batch: &GainSampleBatch, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let link = Link::new(batch, b);
    vec![Branch::new("destination", aid_values(&link, b, params.alpha.unwrap_or(0.0)).0)]
}

/// Analog input description: the source quantizes the relay's dirty paper
/// codeword at the ergodic source-relay rate and the relay forwards it.
pub fn rate_fading_aid(batch: &GainSampleBatch, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new().dim("alpha", 0.0, ALPHA_MAX);
    let build = |bt: &GainSampleBatch| Link::new(bt, b);
    let (best, link) = search(batch, build, |l, x| aid_values(l, b, x[0]).0, &space, cfg)?;
    let alpha = best.argmax[0];
    let params = SchemeParams {
        r_q: Some(link.source_relay.mean),
        alpha: Some(alpha),
        ..Default::default()
    };
    Ok(fading_result(params, labelled(&["destination"], &[aid_values(&link, b, alpha)])))
}

/// Interference-free multihop bound.
pub fn rate_fading_ni_multihop(batch: &GainSampleBatch, b: &PowerBudget) -> RateResult {
    let link = Link::new(batch, b);
    let second = estimate(link.len(), |k| cap(link.rd[k] * b.p_r));
    fading_result(
        SchemeParams::default(),
        labelled(&DU_LABELS, &[link.relay_link(0.0), pair(second)]),
    )
}
