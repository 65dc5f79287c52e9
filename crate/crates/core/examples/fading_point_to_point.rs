//! Point-to-point channel under Ricean fading: dirty paper coding against
//! the interference versus decoding it, as the line-of-sight component
//! grows. Every scheme at one K uses the same sample batch.

use orthorelay::fading::{
    rate_fading_ni_p2p, rate_fading_p2p_s, rate_fading_p2p_u, FadingSpec, GainSampleBatch, MonteCarloCfg,
};
use orthorelay::{db_to_linear, ChannelGains, OptimizerConfig, PowerBudget};

fn main() -> orthorelay::Result<()> {
    let gains = ChannelGains::from_magnitudes(0.0, 1.0, 0.0, 1.0)?;
    let budget = PowerBudget::new(db_to_linear(5.0), 0.0, db_to_linear(5.0), 0.5)?;
    let mc = MonteCarloCfg { samples: 50_000, seed: 42 };
    let cfg = OptimizerConfig::default();

    println!("{:>6}  {:>16}  {:>16}  {:>16}", "K", "bound", "unstructured", "structured");
    for k in [0.0, 0.1, 1.0, 10.0, 100.0, f64::INFINITY] {
        let batch = GainSampleBatch::generate(&FadingSpec::uniform(k)?, &gains, &mc)?;
        let ni = rate_fading_ni_p2p(&batch, &budget);
        let u = rate_fading_p2p_u(&batch, &budget, &cfg)?;
        let s = rate_fading_p2p_s(&batch, &budget, &cfg)?;
        let show = |r: &orthorelay::RateResult| format!("{:.4} ± {:.4}", r.rate, r.std_error.unwrap_or(0.0));
        println!("{k:>6}  {:>16}  {:>16}  {:>16}", show(&ni), show(&u), show(&s));
    }
    Ok(())
}
