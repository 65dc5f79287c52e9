//! Reference schemes that treat the interference as an unstructured state:
//! analog input description (AID) and nested-lattice decode-and-forward.

use crate::error::Result;
use crate::model::{cap, pos_part, Branch, ChannelGains, PowerBudget, RateResult, SchemeParams};
use crate::optimizer::{maximize, OptimizerConfig, ParamSpace};

fn aid_value(g: &ChannelGains, b: &PowerBudget, gamma: f64) -> f64 {
    let d = b.p_r / (g.sr2() * (1.0 - gamma) * b.p_s + 1.0);
    // The relay cannot spend negative power on the description.
    let relay_power = pos_part(b.p_r - d);
    let amplitude = g.sd() * (gamma * b.p_s).sqrt() + g.rd() * relay_power.sqrt();
    cap(amplitude * amplitude / (1.0 + g.rd2() * d))
}

pub fn aid_branches(g: &ChannelGains, b: &PowerBudget, params: &SchemeParams) -> Vec<Branch> {
    vec![Branch::new("destination", aid_value(g, b, params.gamma.unwrap_or(0.0)))]
}

/// Analog input description: the source quantizes the dirty-paper-coded
/// relay codeword and the relay forwards it. Independent of `p_i`.
pub fn rate_aid(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateResult> {
    let space = ParamSpace::new().dim("gamma", 0.0, 1.0);
    let best = maximize(|x| aid_value(g, b, x[0]), &space, cfg)?;
    let params = SchemeParams { gamma: Some(best.argmax[0]), ..Default::default() };
    let branches = aid_branches(g, b, &params);
    Ok(RateResult::from_branches(params, branches))
}

/// Nested-lattice decode-and-forward for the multihop channel. The direct
/// link is ignored and the result does not depend on `r_i`.
pub fn rate_nldf(g: &ChannelGains, b: &PowerBudget) -> RateResult {
    let s = g.sr2() * b.p_s;
    let r = g.rd2() * b.p_r;
    let value = pos_part(((s * r + s + r + 1.0) / (s + r + 2.0)).log2());
    RateResult::closed_form("lattice", value)
}
