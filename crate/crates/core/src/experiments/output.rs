//! CSV and gnuplot-friendly renderings of a [`SweepTable`].

use std::io::Write;
use std::str::FromStr;

use super::SweepTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    /// Whitespace-separated columns under a `#` header line.
    Plot,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "plot" => Ok(OutputFormat::Plot),
            _ => Err(format!("unknown format `{s}`, expected csv or plot")),
        }
    }
}

/// Column names: the sweep variable, then each scheme, with a `<name>_se`
/// column right after every fading scheme.
pub fn header(table: &SweepTable) -> Vec<String> {
    let mut names = vec![table.sweep_var.name().to_string()];
    for s in &table.schemes {
        names.push(s.name().to_string());
        if s.is_fading() {
            names.push(format!("{}_se", s.name()));
        }
    }
    names
}

fn fields(table: &SweepTable) -> Vec<Vec<String>> {
    table
        .rows
        .iter()
        .map(|row| {
            let mut out = vec![format!("{:.6}", row.x)];
            for (s, cell) in table.schemes.iter().zip(&row.cells) {
                out.push(format!("{:.6}", cell.rate));
                if s.is_fading() {
                    out.push(format!("{:.6}", cell.std_error.unwrap_or(0.0)));
                }
            }
            out
        })
        .collect()
}

pub fn emit_csv(table: &SweepTable, out: &mut impl Write) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    writeln!(out, "{}", header(table).join(","))?;
    for row in fields(table) {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn emit_plot(table: &SweepTable, out: &mut impl Write) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    writeln!(out, "# {}", header(table).join(" "))?;
    for row in fields(table) {
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}
