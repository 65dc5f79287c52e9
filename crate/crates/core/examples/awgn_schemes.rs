//! Every no-fading scheme at one operating point, with the maximizing
//! parameters and the value of each rate branch there.
//!
//! ```text
//! cargo run --release --example awgn_schemes -- [p_i_db] [h_sr]
//! ```

use orthorelay::awgn::{rate_aid, rate_cs1, rate_cs2, rate_cu, rate_du, rate_ni, rate_nr};
use orthorelay::{db_to_linear, ChannelGains, OptimizerConfig, PowerBudget};

fn main() -> orthorelay::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let p_i_db = args.next().unwrap_or(10.0);
    let h_sr = args.next().unwrap_or(1.0);

    let gains = ChannelGains::from_magnitudes(h_sr, 1.0, 1.0, 1.0)?;
    let budget = PowerBudget::new(10.0, 10.0, db_to_linear(p_i_db), 1.0)?;
    let cfg = OptimizerConfig::default();
    println!("P_S = P_R = 10, P_I = {:.3} ({p_i_db} dB), R_I = 1, |h_SR| = {h_sr}\n", budget.p_i);

    let results = [
        ("no relay", rate_nr(&gains, &budget)),
        ("no interference", rate_ni(&gains, &budget, &cfg)?),
        ("(D,U)", rate_du(&gains, &budget, &cfg)?),
        ("(C,U)", rate_cu(&gains, &budget, &cfg)?),
        ("(C,S,1)", rate_cs1(&gains, &budget, &cfg)?),
        ("(C,S,2)", rate_cs2(&gains, &budget, &cfg)?),
        ("AID", rate_aid(&gains, &budget, &cfg)?),
    ];
    for (name, r) in results {
        println!("{name}\n{r}\n");
    }
    Ok(())
}
