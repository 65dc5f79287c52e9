//! A sweep described in the plain-text config format, rendered in the
//! gnuplot-friendly layout. Try `plot 'out.dat' using 1:2 with lines, ...`.

use std::io;

use orthorelay::experiments::{emit_plot, parse_config, run_sweep};

const CONFIG: &str = "\
# multihop channel, rate against the interferer's rate
schemes = ni, cs1, cs2, nldf
sweep = r_i
from = 0
to = 4
step = 0.5
h_sd = 0
p_i_db = 10
";

fn main() -> orthorelay::Result<()> {
    let spec = parse_config(CONFIG)?;
    let table = run_sweep(&spec)?;
    emit_plot(&table, &mut io::stdout().lock())
}
