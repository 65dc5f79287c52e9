//! Multihop channel (no direct link) under Ricean fading: all relaying
//! schemes on one shared batch at a single interference power.
//!
//! ```text
//! cargo run --release --example fading_multihop -- [p_i_db] [k]
//! ```

use orthorelay::fading::{
    rate_fading_aid, rate_fading_cs1, rate_fading_cs2, rate_fading_cu, rate_fading_ds, rate_fading_du,
    rate_fading_ni_multihop, FadingSpec, GainSampleBatch, MonteCarloCfg,
};
use orthorelay::{db_to_linear, ChannelGains, OptimizerConfig, PowerBudget};

fn main() -> orthorelay::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let p_i_db = args.next().unwrap_or(20.0);
    let k = args.next().unwrap_or(1.0);

    let gains = ChannelGains::from_magnitudes(1.0, 0.0, 1.0, 1.0)?;
    let budget = PowerBudget::new(db_to_linear(10.0), db_to_linear(7.0), db_to_linear(p_i_db), 0.4)?;
    let batch = GainSampleBatch::generate(&FadingSpec::uniform(k)?, &gains, &MonteCarloCfg::default())?;
    let cfg = OptimizerConfig::default();

    println!("no interference");
    println!("{}\n", rate_fading_ni_multihop(&batch, &budget));
    let schemes = [
        ("(D,U)", rate_fading_du(&batch, &budget, &cfg)?),
        ("(D,S)", rate_fading_ds(&batch, &budget, &cfg)?),
        ("(C,U)", rate_fading_cu(&batch, &budget, &cfg)?),
        ("(C,S,1)", rate_fading_cs1(&batch, &budget, &cfg)?),
        ("(C,S,2)", rate_fading_cs2(&batch, &budget, &cfg)?),
        ("AID", rate_fading_aid(&batch, &budget, &cfg)?),
    ];
    for (name, r) in schemes {
        println!("{name}\n{r}\n");
    }
    Ok(())
}
