//! Command-line front end: single-point rates, config sweeps and figure
//! presets. Exit status 0 on success, 1 on configuration errors, 2 on
//! numeric failures.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthorelay::experiments::{emit_csv, emit_plot, parse_config, run_sweep, FigurePreset, OutputFormat, Scheme};
use orthorelay::Error;

#[derive(Parser)]
#[command(name = "orthorelay", version, about = "Achievable rates for the relay channel with an informed source")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate of one scheme at one operating point, with its maximizer.
    Rate {
        #[arg(long)]
        scheme: Scheme,
        #[command(flatten)]
        params: Params,
    },
    /// Sweep from a config file and/or flags.
    Sweep {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Run a figure preset (fig1, fig2, fig3, fig5, fading_fig1..3, or fig5..fig11 by position).
    Figure {
        name: Option<FigurePreset>,
        /// List the presets and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Destination file; standard output by default.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

/// Flags mirroring the config keys. They are applied after the config file
/// and the preset, so they win.
#[derive(Args)]
struct Params {
    /// Config file of key=value lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    schemes: Option<String>,
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<String>,
    #[arg(long)]
    step: Option<String>,
    #[arg(long = "p_s_db", allow_hyphen_values = true)]
    p_s_db: Option<String>,
    #[arg(long = "p_r_db", allow_hyphen_values = true)]
    p_r_db: Option<String>,
    #[arg(long = "p_i_db", allow_hyphen_values = true)]
    p_i_db: Option<String>,
    #[arg(long = "r_i")]
    r_i: Option<String>,
    #[arg(long = "h_sr")]
    h_sr: Option<String>,
    #[arg(long = "h_sd")]
    h_sd: Option<String>,
    #[arg(long = "h_rd")]
    h_rd: Option<String>,
    #[arg(long = "h_i")]
    h_i: Option<String>,
    #[arg(long = "k_sr")]
    k_sr: Option<String>,
    #[arg(long = "k_sd")]
    k_sd: Option<String>,
    #[arg(long = "k_rd")]
    k_rd: Option<String>,
    #[arg(long = "k_i")]
    k_i: Option<String>,
    #[arg(long = "mc_samples")]
    mc_samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "grid_resolution")]
    grid_resolution: Option<String>,
}

impl Params {
    /// Config text: the preset, then the file, then one line per flag.
    fn config_text(&self, preset: Option<FigurePreset>) -> Result<String, Error> {
        let mut text = String::new();
        if let Some(p) = preset {
            text.push_str(p.name());
            text.push('\n');
        }
        if let Some(path) = &self.config {
            let body = fs::read_to_string(path)
                .map_err(|e| Error::Config { line: 0, message: format!("{}: {e}", path.display()) })?;
            text.push_str(&body);
            text.push('\n');
        }
        let flags = [
            ("schemes", &self.schemes),
            ("sweep", &self.sweep),
            ("from", &self.from),
            ("to", &self.to),
            ("step", &self.step),
            ("p_s_db", &self.p_s_db),
            ("p_r_db", &self.p_r_db),
            ("p_i_db", &self.p_i_db),
            ("r_i", &self.r_i),
            ("h_sr", &self.h_sr),
            ("h_sd", &self.h_sd),
            ("h_rd", &self.h_rd),
            ("h_i", &self.h_i),
            ("k_sr", &self.k_sr),
            ("k_sd", &self.k_sd),
            ("k_rd", &self.k_rd),
            ("k_i", &self.k_i),
            ("mc_samples", &self.mc_samples),
            ("seed", &self.seed),
            ("grid_resolution", &self.grid_resolution),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                text.push_str(&format!("{key}={v}\n"));
            }
        }
        Ok(text)
    }
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn print(bytes: &[u8]) -> Result<(), Error> {
    match io::stdout().lock().write_all(bytes) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn write_table(text: &str, output: &Output) -> Result<(), Error> {
    let spec = parse_config(text)?;
    let table = run_sweep(&spec)?;
    let mut buf = Vec::new();
    match output.format {
        OutputFormat::Csv => emit_csv(&table, &mut buf)?,
        OutputFormat::Plot => emit_plot(&table, &mut buf)?,
    }
    match &output.out {
        Some(path) => fs::write(path, buf)?,
        None => print(&buf)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Rate { scheme, params } => {
            let mut text = params.config_text(None)?;
            text.push_str(&format!("schemes={scheme}\n"));
            let spec = parse_config(&text)?;
            let point = spec.fixed_point();
            let batch = if scheme.is_fading() { point.batch(&spec.mc)? } else { None };
            let result = point.evaluate(scheme, batch.as_ref(), &spec.optimizer)?;
            print(format!("{scheme}: {result}\n").as_bytes())
        }
        Command::Sweep { params, output } => write_table(&params.config_text(None)?, &output),
        Command::Figure { list: true, .. } => {
            let list: String = FigurePreset::ALL
                .iter()
                .map(|p| format!("{:<12} {}\n", p.name(), p.description()))
                .collect();
            print(list.as_bytes())
        }
        Command::Figure { name, params, output, .. } => {
            let preset = name.ok_or_else(|| Error::Config { line: 0, message: "missing preset name".into() })?;
            write_table(&params.config_text(Some(preset))?, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_configuration() { 1 } else { 2 })
        }
    }
}
