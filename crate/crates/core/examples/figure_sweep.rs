//! Runs a named figure preset and writes its table as CSV to stdout.
//!
//! ```text
//! cargo run --release --example figure_sweep -- fig2 > fig2.csv
//! ```

use std::io;

use orthorelay::experiments::{emit_csv, run_sweep, FigurePreset};

fn main() -> orthorelay::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig1".into());
    let preset: FigurePreset = name.parse().unwrap_or_else(|e| {
        eprintln!("{e}; presets:");
        for p in FigurePreset::ALL {
            eprintln!("  {:<12} {}", p.name(), p.description());
        }
        std::process::exit(1);
    });
    eprintln!("{}: {}", preset.name(), preset.description());
    let table = run_sweep(&preset.spec())?;
    emit_csv(&table, &mut io::stdout().lock())
}
