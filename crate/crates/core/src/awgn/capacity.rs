//! Capacity of the factorized model where the direct link is interference
//! free and orthogonal to the relay-destination link.

use crate::model::{cap, pos_part, ChannelGains, SplitPowerBudget};

/// How the destination handles interference on the relay-destination link
/// when the relay knows nothing about it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelayDestinationStrategy {
    /// Interference treated as noise.
    TreatAsNoise,
    /// Interference decoded jointly with the relay's message.
    JointDecoding,
}

/// Best relay-destination rate without interference information at the
/// relay, and the strategy attaining it. Ties go to treating as noise.
pub fn c_srd_prime(g: &ChannelGains, b: &SplitPowerBudget) -> (f64, RelayDestinationStrategy) {
    let signal = g.rd2() * b.p_r;
    let interference = g.i2() * b.p_i;
    let as_noise = cap(signal / (1.0 + interference));
    let joint = cap(signal).min(pos_part(cap(signal + interference) - b.r_i));
    if joint > as_noise {
        (joint, RelayDestinationStrategy::JointDecoding)
    } else {
        (as_noise, RelayDestinationStrategy::TreatAsNoise)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacityRegime {
    /// The source-relay link can carry the interference index and the
    /// relay message: digital sharing with dirty paper coding is optimal.
    DigitalSharing,
    /// The source-relay link is the bottleneck: the relay ignores the
    /// interference and the destination uses the better of the two
    /// strategies in `RelayDestinationStrategy`.
    SourceRelayLimited(RelayDestinationStrategy),
}

/// Capacity when one of the two sufficient conditions holds, `None`
/// otherwise. The caller asserts the factorized channel structure.
pub fn capacity_special(g: &ChannelGains, b: &SplitPowerBudget) -> Option<(f64, CapacityRegime)> {
    let direct = cap(g.sd2() * b.p_sd);
    let source_relay = cap(g.sr2() * b.p_sr);
    let relay_dest = cap(g.rd2() * b.p_r);
    if source_relay >= b.r_i + relay_dest {
        return Some((direct + relay_dest, CapacityRegime::DigitalSharing));
    }
    let (bound, strategy) = c_srd_prime(g, b);
    if source_relay <= bound {
        return Some((direct + source_relay, CapacityRegime::SourceRelayLimited(strategy)));
    }
    None
}
