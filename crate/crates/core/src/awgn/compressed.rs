//! Compressed interference sharing: the source quantizes the interference
//! waveform at rate `r_q` and sends the description to the relay alongside
//! the relay-assisted message part.
//!
//! The quantization rate is searched as a fraction of its upper bound, which
//! itself depends on the other decision variables.

use super::names::{U, W_DPRIME, W_I, W_PRIME};
use super::{remaining, DerivedQuantities};
use crate::error::Result;
use crate::model::{cap, pos_part, Branch, ChannelGains, PowerBudget, RateResult, SchemeParams};
use crate::optimizer::{maximize, OptimizerConfig, ParamSpace};

fn source_relay_capacity(g: &ChannelGains, b: &PowerBudget, gamma: f64) -> f64 {
    cap(g.sr2() * (1.0 - gamma) * b.p_s)
}

fn labelled<const N: usize>(labels: [&'static str; N], values: [f64; N]) -> Vec<Branch> {
    labels.iter().zip(values).map(|(l, v)| Branch::new(l, v)).collect()
}

// ---------------------------------------------------------------------------
// (C,U)

#[derive(Debug, Clone, Copy)]
struct CuVars {
    gamma: f64,
    r_q: f64,
    rho_w1: f64,
    rho_w2: f64,
    rho_wi: f64,
}

impl CuVars {
    fn from_params(p: &SchemeParams) -> Self {
        CuVars {
            gamma: p.gamma.unwrap_or(0.0),
            r_q: p.r_q.unwrap_or(0.0),
            rho_w1: p.rho(W_PRIME),
            rho_w2: p.rho(W_DPRIME),
            rho_wi: p.rho(W_I),
        }
    }

    fn params(self) -> SchemeParams {
        SchemeParams {
            gamma: Some(self.gamma),
            rho: vec![(W_PRIME, self.rho_w1), (W_DPRIME, self.rho_w2), (W_I, self.rho_wi)],
            r_q: Some(self.r_q),
            ..Default::default()
        }
    }
}

fn cu_core(g: &ChannelGains, b: &PowerBudget, v: CuVars) -> (DerivedQuantities, [f64; 2]) {
    let direct = v.gamma * b.p_s;
    let d = b.p_i * (-v.r_q).exp2();
    // With no interferer there is nothing left to cancel: the residual term
    // vanishes in the limit.
    let (xi, residual) = if b.p_i > 0.0 {
        let xi = g.i() - g.sd() * v.rho_wi * (direct / b.p_i).sqrt();
        (xi, xi * xi * d)
    } else {
        (g.i(), 0.0)
    };
    let p_wdprime = g.sd2() * v.rho_w2 * v.rho_w2 * direct;
    let p_wprime = (g.rd() * b.p_r.sqrt() + g.sd() * v.rho_w1 * direct.sqrt()).powi(2)
        / (1.0 + residual + p_wdprime);
    let direct_part = cap(p_wdprime);
    let relay_link = pos_part(source_relay_capacity(g, b, v.gamma) - v.r_q);
    let dq = DerivedQuantities {
        p_wprime,
        p_wdprime,
        d,
        xi,
        n_eq: 1.0 + residual,
        ..Default::default()
    };
    (dq, [relay_link + direct_part, cap(p_wprime) + direct_part])
}

/// Branches of scheme (C,U). The rate is `min{a, b} + c`, reported as the two
/// sums `a + c` and `b + c`.
pub fn cu_branches(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let (_, v) = cu_core(g, b, CuVars::from_params(params));
    labelled(["relay-link", "destination"], v)
}

/// Compressed interference sharing with an unstructured destination, scheme
/// (C,U). With `r_q = 0` the relay only helps with the message and the
/// source cancels interference on its own.
pub fn rate_cu(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let wi_max = if b.p_i > 0.0 { 1.0 } else { 0.0 };
    let space = ParamSpace::new()
        .dim("r_q_fraction", 0.0, 1.0)
        .dim("gamma", 0.0, 1.0)
        .dim("rho_w_dprime", 0.0, 1.0)
        .dim("rho_w_i", 0.0, wi_max)
        .quadratic_group(&[2, 3]);
    let to_vars = |x: &[f64]| CuVars {
        gamma: x[1],
        r_q: x[0] * source_relay_capacity(g, b, x[1]),
        rho_w1: remaining(&[x[2], x[3]]),
        rho_w2: x[2],
        rho_wi: x[3],
    };
    let best = maximize(
        |x| {
            let (_, v) = cu_core(g, b, to_vars(x));
            v[0].min(v[1])
        },
        &space,
        cfg,
    )?;
    let params = to_vars(&best.argmax).params();
    let branches = cu_branches(g, b, &params);
    Ok(RateResult::from_branches(params, branches))
}

// ---------------------------------------------------------------------------
// (C,S,1) and (C,S,2) share their variable set up to the extra index codeword.

#[derive(Debug, Clone, Copy)]
struct CsVars {
    gamma: f64,
    r_q: f64,
    rho_w1: f64,
    rho_w2: f64,
    rho_wi: f64,
    rho_u: f64,
    bar_w1: f64,
    /// Relay coefficient on the interference (C,S,1) or the index codeword (C,S,2).
    bar_aux: f64,
}

impl CsVars {
    fn from_params(p: &SchemeParams, aux: &str) -> Self {
        CsVars {
            gamma: p.gamma.unwrap_or(0.0),
            r_q: p.r_q.unwrap_or(0.0),
            rho_w1: p.rho(W_PRIME),
            rho_w2: p.rho(W_DPRIME),
            rho_wi: p.rho(W_I),
            rho_u: p.rho(U),
            bar_w1: p.rho_bar(W_PRIME),
            bar_aux: p.rho_bar(aux),
        }
    }
}

const CS_LABELS: [&str; 4] = ["message-relay", "interference-relay", "message-dest", "joint-dest"];

fn cs1_core(g: &ChannelGains, b: &PowerBudget, v: CsVars) -> (DerivedQuantities, [f64; 4]) {
    let direct = v.gamma * b.p_s;
    let residual_fraction = (-v.r_q).exp2();
    let n_eq = g.rd2() * v.bar_aux * v.bar_aux * b.p_r * residual_fraction + 1.0;
    let p_wprime = (g.rd() * v.bar_w1 * b.p_r.sqrt() + g.sd() * v.rho_w1 * direct.sqrt()).powi(2) / n_eq;
    let p_wdprime = g.sd2() * v.rho_w2 * v.rho_w2 * direct / n_eq;
    let p_wi = (g.sd() * v.rho_wi * direct.sqrt()
        + g.rd() * v.bar_aux * (b.p_r * (1.0 - residual_fraction)).sqrt()
        + g.i() * b.p_i.sqrt())
    .powi(2)
        / n_eq;
    let relay_link = pos_part(source_relay_capacity(g, b, v.gamma) - v.r_q);
    let branches = [
        cap(p_wdprime) + relay_link,
        pos_part(cap(p_wdprime + p_wi) - b.r_i) + relay_link,
        cap(p_wdprime + p_wprime),
        pos_part(cap(p_wdprime + p_wprime + p_wi) - b.r_i),
    ];
    let dq = DerivedQuantities {
        p_wprime,
        p_wdprime,
        p_wi,
        d: b.p_i * residual_fraction,
        n_eq,
        ..Default::default()
    };
    (dq, branches)
}

fn cs1_params(v: CsVars) -> SchemeParams {
    SchemeParams {
        gamma: Some(v.gamma),
        rho: vec![(W_PRIME, v.rho_w1), (W_DPRIME, v.rho_w2), (W_I, v.rho_wi)],
        rho_bar: vec![(W_PRIME, v.bar_w1), (W_I, v.bar_aux)],
        r_q: Some(v.r_q),
        ..Default::default()
    }
}

/// Branches of scheme (C,S,1) at `params`.
pub fn cs1_branches(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let (_, v) = cs1_core(g, b, CsVars::from_params(params, W_I));
    labelled(CS_LABELS, v)
}

/// Compressed sharing with the description forwarded in analog form by the
/// relay, scheme (C,S,1). The destination decodes the interference jointly
/// with the message.
pub fn rate_cs1(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // Every source coefficient only increases the branches it appears in, so
    // the W' coefficient takes the remaining source budget. Likewise for the
    // relay's W' coefficient.
    let space = ParamSpace::new()
        .dim("r_q_fraction", 0.0, 1.0)
        .dim("gamma", 0.0, 1.0)
        .dim("rho_w_dprime", 0.0, 1.0)
        .dim("rho_w_i", 0.0, 1.0)
        .dim("rho_bar_w_i", 0.0, 1.0)
        .quadratic_group(&[2, 3]);
    let to_vars = |x: &[f64]| CsVars {
        gamma: x[1],
        r_q: x[0] * source_relay_capacity(g, b, x[1]),
        rho_w1: remaining(&[x[2], x[3]]),
        rho_w2: x[2],
        rho_wi: x[3],
        rho_u: 0.0,
        bar_w1: remaining(&[x[4]]),
        bar_aux: x[4],
    };
    let best = maximize(
        |x| {
            let (_, v) = cs1_core(g, b, to_vars(x));
            v.iter().copied().fold(f64::INFINITY, f64::min)
        },
        &space,
        cfg,
    )?;
    let params = cs1_params(to_vars(&best.argmax));
    let branches = cs1_branches(g, b, &params);
    Ok(RateResult::from_branches(params, branches))
}

struct Cs2Powers {
    dq: DerivedQuantities,
    /// Upper bound on the quantization rate imposed by decoding the index
    /// codeword at the destination.
    index_rate: f64,
}

fn cs2_powers(g: &ChannelGains, b: &PowerBudget, v: &CsVars) -> Cs2Powers {
    let direct_amp = (v.gamma * b.p_s).sqrt();
    let p_wprime = (g.rd() * v.bar_w1 * b.p_r.sqrt() + g.sd() * v.rho_w1 * direct_amp).powi(2);
    let p_wdprime = (g.sd() * v.rho_w2 * direct_amp).powi(2);
    let p_wi = (g.sd() * v.rho_wi * direct_amp + g.i() * b.p_i.sqrt()).powi(2);
    let p_u = (g.sd() * v.rho_u * direct_amp + g.rd() * v.bar_aux * b.p_r.sqrt()).powi(2);
    let total = p_wprime + p_wdprime + p_wi + 1.0;
    Cs2Powers {
        dq: DerivedQuantities {
            p_wprime,
            p_wdprime,
            p_wi,
            p_u,
            x: p_wi / total,
            n_eq: 1.0,
            ..Default::default()
        },
        index_rate: cap(p_u / total),
    }
}

fn cs2_core(g: &ChannelGains, b: &PowerBudget, v: CsVars) -> (DerivedQuantities, [f64; 4]) {
    let Cs2Powers { mut dq, .. } = cs2_powers(g, b, &v);
    let x = dq.x;
    let shrink = (-v.r_q).exp2();
    // P_I / D written without P_I, so it stays defined when the interferer is off.
    let inverse_distortion = (1.0 - x * shrink) / (shrink * (1.0 - x));
    dq.d = b.p_i / inverse_distortion;
    let relay_link = pos_part(source_relay_capacity(g, b, v.gamma) - v.r_q);
    let branches = [
        cap(dq.p_wdprime) + relay_link,
        pos_part(((1.0 + dq.p_wdprime) * inverse_distortion + dq.p_wi).log2() - b.r_i) + relay_link,
        cap(dq.p_wdprime + dq.p_wprime),
        pos_part(((1.0 + dq.p_wdprime + dq.p_wprime) * inverse_distortion + dq.p_wi).log2() - b.r_i),
    ];
    (dq, branches)
}

fn cs2_params(v: CsVars) -> SchemeParams {
    SchemeParams {
        gamma: Some(v.gamma),
        rho: vec![(W_PRIME, v.rho_w1), (W_DPRIME, v.rho_w2), (W_I, v.rho_wi), (U, v.rho_u)],
        rho_bar: vec![(W_PRIME, v.bar_w1), (U, v.bar_aux)],
        r_q: Some(v.r_q),
        ..Default::default()
    }
}

/// Branches of scheme (C,S,2) at `params`.
pub fn cs2_branches(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let (_, v) = cs2_core(g, b, CsVars::from_params(params, U));
    labelled(CS_LABELS, v)
}

/// Upper bound on `r_q` for scheme (C,S,2) at `params`: the source-relay
/// capacity and the rate at which the destination can decode the index.
pub fn cs2_rq_bound(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> f64 {
    let v = CsVars::from_params(params, U);
    let gamma = v.gamma;
    source_relay_capacity(g, b, gamma).min(cs2_powers(g, b, &v).index_rate)
}

/// Compressed sharing with Wyner-Ziv binning and re-encoding of the
/// description, scheme (C,S,2).
pub fn rate_cs2(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    // The index codeword coefficients only relax the bound on r_q, so they
    // take whatever budget is left at source and relay.
    let space = ParamSpace::new()
        .dim("r_q_fraction", 0.0, 1.0)
        .dim("gamma", 0.0, 1.0)
        .dim("rho_w_prime", 0.0, 1.0)
        .dim("rho_w_dprime", 0.0, 1.0)
        .dim("rho_w_i", 0.0, 1.0)
        .dim("rho_bar_w_prime", 0.0, 1.0)
        .quadratic_group(&[2, 3, 4]);
    let to_vars = |x: &[f64]| {
        let mut v = CsVars {
            gamma: x[1],
            r_q: 0.0,
            rho_w1: x[2],
            rho_w2: x[3],
            rho_wi: x[4],
            rho_u: remaining(&[x[2], x[3], x[4]]),
            bar_w1: x[5],
            bar_aux: remaining(&[x[5]]),
        };
        let bound = source_relay_capacity(g, b, v.gamma).min(cs2_powers(g, b, &v).index_rate);
        v.r_q = x[0] * bound;
        v
    };
    let best = maximize(
        |x| {
            let (_, v) = cs2_core(g, b, to_vars(x));
            v.iter().copied().fold(f64::INFINITY, f64::min)
        },
        &space,
        cfg,
    )?;
    let params = cs2_params(to_vars(&best.argmax));
    let branches = cs2_branches(g, b, &params);
    Ok(RateResult::from_branches(params, branches))
}
