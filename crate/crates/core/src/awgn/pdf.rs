//! Partial decode-and-forward with digital interference sharing, and the two
//! reference points without a relay or without interference.

use super::names::{W_DPRIME, W_PRIME};
use super::DerivedQuantities;
use crate::error::Result;
use crate::model::{cap, pos_part, Branch, ChannelGains, PowerBudget, RateResult, SchemeParams};
use crate::optimizer::{maximize, OptimizerConfig, ParamSpace};

/// No relay: dirty paper coding removes the interference entirely.
pub fn rate_nr(g: &ChannelGains, b: &PowerBudget) -> RateResult {
    RateResult::closed_form("direct", cap(g.sd2() * b.p_s))
}

/// No interference: scheme (D,U) with `r_i = 0`. Upper bound for every
/// scheme at the same gains and powers.
pub fn rate_ni(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    rate_du(g, &b.interference_free(), cfg)
}

#[derive(Debug, Clone, Copy)]
struct Vars {
    gamma: f64,
    rho_w1: f64,
    rho_w2: f64,
}

impl Vars {
    fn from_params(p: &SchemeParams) -> Self {
        Vars {
            gamma: p.gamma.unwrap_or(0.0),
            rho_w1: p.rho(W_PRIME),
            rho_w2: p.rho(W_DPRIME),
        }
    }

    fn params(self) -> SchemeParams {
        SchemeParams {
            gamma: Some(self.gamma),
            rho: vec![(W_PRIME, self.rho_w1), (W_DPRIME, self.rho_w2)],
            ..Default::default()
        }
    }
}

fn core(g: &ChannelGains, b: &PowerBudget, v: Vars) -> (DerivedQuantities, [f64; 2]) {
    let direct = v.gamma * b.p_s;
    let p_wprime = (g.rd() * b.p_r.sqrt() + g.sd() * v.rho_w1 * direct.sqrt()).powi(2);
    let p_wdprime = g.sd2() * v.rho_w2 * v.rho_w2 * direct;
    let source_relay = cap(g.sr2() * (1.0 - v.gamma) * b.p_s);
    let branches = [
        cap(p_wdprime) + pos_part(source_relay - b.r_i),
        cap(p_wdprime + p_wprime),
    ];
    let dq = DerivedQuantities { p_wprime, p_wdprime, ..Default::default() };
    (dq, branches)
}

const LABELS: [&str; 2] = ["relay-link", "destination"];

/// Branches of scheme (D,U) at `params`.
pub fn du_branches(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    let (_, values) = core(g, b, Vars::from_params(params));
    LABELS.iter().zip(values).map(|(l, v)| Branch::new(l, v)).collect()
}

/// Digital interference sharing with multi-user dirty paper coding, scheme
/// (D,U). Maximized over the power split and both message correlations.
pub fn rate_du(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new()
        .dim("gamma", 0.0, 1.0)
        .dim("rho_w_prime", 0.0, 1.0)
        .dim("rho_w_dprime", 0.0, 1.0)
        .quadratic_group(&[1, 2]);
    let to_vars = |x: &[f64]| Vars { gamma: x[0], rho_w1: x[1], rho_w2: x[2] };
    let best = maximize(
        |x| {
            let (_, v) = core(g, b, to_vars(x));
            v[0].min(v[1])
        },
        &space,
        cfg,
    )?;
    let params = to_vars(&best.argmax).params();
    let branches = du_branches(g, b, &params);
    Ok(RateResult::from_branches(params, branches))
}
