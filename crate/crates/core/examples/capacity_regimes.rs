//! The two regimes in which the capacity of the factorized channel is
//! known, swept over the source-relay gain.

use orthorelay::awgn::{c_srd_prime, capacity_special, CapacityRegime};
use orthorelay::{ChannelGains, SplitPowerBudget};

fn main() -> orthorelay::Result<()> {
    let budget = SplitPowerBudget::new(10.0, 10.0, 10.0, 10.0, 2.0)?;
    let (bound, strategy) = c_srd_prime(&ChannelGains::unit(), &budget);
    println!("relay-destination rate without interference knowledge: {bound:.4} ({strategy:?})\n");
    println!("{:>8}  {:>10}  regime", "|h_SR|", "capacity");
    for h_sr in [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let gains = ChannelGains::from_magnitudes(h_sr, 1.0, 1.0, 1.0)?;
        match capacity_special(&gains, &budget) {
            Some((c, CapacityRegime::DigitalSharing)) => println!("{h_sr:>8}  {c:>10.4}  digital sharing"),
            Some((c, CapacityRegime::SourceRelayLimited(s))) => {
                println!("{h_sr:>8}  {c:>10.4}  source-relay limited, {s:?}")
            }
            None => println!("{h_sr:>8}  {:>10}  unknown", "-"),
        }
    }
    Ok(())
}
