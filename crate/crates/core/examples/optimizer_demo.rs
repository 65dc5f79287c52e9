//! The constrained maximizer on its own: a min of two branches over a box
//! with a quadratic group and a coupled constraint.

use orthorelay::optimizer::feasible;
use orthorelay::{maximize, OptimizerConfig, ParamSpace};

fn main() -> orthorelay::Result<()> {
    // x0^2 + x1^2 <= 1, and x2 may not exceed x0.
    let space = ParamSpace::new()
        .dim("x0", 0.0, 1.0)
        .dim("x1", 0.0, 1.0)
        .dim("x2", 0.0, 1.0)
        .quadratic_group(&[0, 1])
        .coupled("x2 <= x0", |x| x[2] <= x[0]);

    let objective = |x: &[f64]| {
        if !(x[2] <= x[0]) {
            return f64::NEG_INFINITY;
        }
        let a = (1.0 + 4.0 * x[0] * x[0] + x[2]).log2();
        let b = (1.0 + 9.0 * x[1] * x[1]).log2() + 0.5 * (1.0 - x[2]);
        a.min(b)
    };

    for resolution in [0.2, 0.05, 0.01] {
        let cfg = OptimizerConfig { grid_resolution: resolution, ..OptimizerConfig::default() };
        let best = maximize(objective, &space, &cfg)?;
        println!(
            "grid {resolution:<5} value {:.8} at {:?} (feasible: {})",
            best.value,
            best.argmax.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>(),
            feasible(&best.argmax, &space)?
        );
    }
    Ok(())
}
