//! Plain-text sweep configuration: `key=value` lines, `#` comments, and bare
//! preset names that expand in place. Later lines override earlier ones.

use super::{FigurePreset, Scheme, SweepRange, SweepSpec, SweepVar};
use crate::error::{Error, Result};
use crate::fading::{FadingSpec, MonteCarloCfg};
use crate::model::{db_to_linear, ChannelGains, PowerBudget};
use crate::optimizer::OptimizerConfig;

/// Keys accepted by [`parse_config`], in documentation order.
pub const KEYS: [&str; 20] = [
    "schemes",
    "sweep",
    "from",
    "to",
    "step",
    "p_s_db",
    "p_r_db",
    "p_i_db",
    "r_i",
    "h_sr",
    "h_sd",
    "h_rd",
    "h_i",
    "k_sr",
    "k_sd",
    "k_rd",
    "k_i",
    "mc_samples",
    "seed",
    "grid_resolution",
];

#[derive(Debug, Clone)]
struct Builder {
    schemes: Option<(Vec<Scheme>, usize)>,
    sweep: SweepVar,
    from: (f64, usize),
    to: (f64, usize),
    step: (f64, usize),
    p_db: [f64; 3],
    r_i: f64,
    h: [f64; 4],
    /// `None` until some K-factor is given; unset links are then
    /// deterministic.
    k: Option<[f64; 4]>,
    k_line: usize,
    mc: MonteCarloCfg,
    grid_resolution: (f64, usize),
}

impl Default for Builder {
    fn default() -> Self {
        Builder {
            schemes: None,
            sweep: SweepVar::PiDb,
            from: (-10.0, 0),
            to: (30.0, 0),
            step: (1.0, 0),
            p_db: [10.0; 3],
            r_i: 1.0,
            h: [1.0; 4],
            k: None,
            k_line: 0,
            mc: MonteCarloCfg::default(),
            grid_resolution: (OptimizerConfig::default().grid_resolution, 0),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Config { line, message: message.into() }
}

fn number(line: usize, key: &str, value: &str) -> Result<f64> {
    let v = match value {
        "inf" | "infinity" => f64::INFINITY,
        _ => value
            .parse::<f64>()
            .map_err(|_| err(line, format!("cannot parse `{value}` as a number for `{key}`")))?,
    };
    if v.is_nan() {
        return Err(err(line, format!("`{key}` must be a number")));
    }
    Ok(v)
}

fn finite(line: usize, key: &str, value: &str) -> Result<f64> {
    let v = number(line, key, value)?;
    if !v.is_finite() {
        return Err(err(line, format!("`{key}` must be finite")));
    }
    Ok(v)
}

fn nonnegative(line: usize, key: &str, value: &str) -> Result<f64> {
    let v = finite(line, key, value)?;
    if v < 0.0 {
        return Err(err(line, format!("`{key}` must be nonnegative, got {v}")));
    }
    Ok(v)
}

impl Builder {
    fn apply_line(&mut self, line: usize, raw: &str) -> Result<()> {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            return Ok(());
        }
        let Some((key, value)) = text.split_once('=') else {
            let preset: FigurePreset = text.parse().map_err(|e: String| err(line, e))?;
            for preset_line in preset.config_text().lines() {
                self.apply_line(line, preset_line)?;
            }
            return Ok(());
        };
        self.apply(line, key.trim(), value.trim())
    }

    fn apply(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        match key {
            "schemes" => {
                let schemes = value
                    .split(',')
                    .map(|s| s.trim().parse::<Scheme>().map_err(|e| err(line, e)))
                    .collect::<Result<Vec<_>>>()?;
                self.schemes = Some((schemes, line));
            }
            "sweep" => self.sweep = value.parse().map_err(|e: String| err(line, e))?,
            "from" => self.from = (finite(line, key, value)?, line),
            "to" => self.to = (finite(line, key, value)?, line),
            "step" => {
                let step = finite(line, key, value)?;
                if step <= 0.0 {
                    return Err(err(line, format!("step must be positive, got {step}")));
                }
                self.step = (step, line);
            }
            "p_s_db" => self.p_db[0] = finite(line, key, value)?,
            "p_r_db" => self.p_db[1] = finite(line, key, value)?,
            "p_i_db" => self.p_db[2] = finite(line, key, value)?,
            "r_i" => self.r_i = nonnegative(line, key, value)?,
            "h_sr" => self.h[0] = nonnegative(line, key, value)?,
            "h_sd" => self.h[1] = nonnegative(line, key, value)?,
            "h_rd" => self.h[2] = nonnegative(line, key, value)?,
            "h_i" => self.h[3] = nonnegative(line, key, value)?,
            "k_sr" | "k_sd" | "k_rd" | "k_i" => {
                let k = number(line, key, value)?;
                if k < 0.0 {
                    return Err(err(line, format!("`{key}` must be nonnegative, got {k}")));
                }
                let slot = ["k_sr", "k_sd", "k_rd", "k_i"].iter().position(|n| *n == key).unwrap_or(0);
                self.k.get_or_insert([f64::INFINITY; 4])[slot] = k;
                self.k_line = line;
            }
            "mc_samples" => {
                self.mc.samples = value
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| err(line, format!("mc_samples must be a positive integer, got `{value}`")))?;
            }
            "seed" => {
                self.mc.seed = value
                    .parse::<u64>()
                    .map_err(|_| err(line, format!("seed must be an unsigned 64-bit integer, got `{value}`")))?;
            }
            "grid_resolution" => {
                let r = finite(line, key, value)?;
                if !(r > 0.0 && r <= 1.0) {
                    return Err(err(line, format!("grid_resolution must lie in (0, 1], got {r}")));
                }
                self.grid_resolution = (r, line);
            }
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    fn build(self) -> Result<SweepSpec> {
        let (schemes, schemes_line) = self.schemes.ok_or_else(|| err(0, "missing key `schemes`"))?;
        if self.from.0 > self.to.0 {
            let line = self.from.1.max(self.to.1);
            return Err(err(line, format!("from ({}) exceeds to ({})", self.from.0, self.to.0)));
        }
        let [sr, sd, rd, i] = self.h;
        let gains = ChannelGains::from_magnitudes(sr, sd, rd, i)?;
        let [p_s, p_r, p_i] = self.p_db.map(db_to_linear);
        let budget = PowerBudget::new(p_s, p_r, p_i, self.r_i)?;
        let fading = match self.k {
            Some([k_sr, k_sd, k_rd, k_i]) => {
                Some(FadingSpec::new(k_sr, k_sd, k_rd, k_i).map_err(|e| err(self.k_line, e.to_string()))?)
            }
            None => None,
        };
        let spec = SweepSpec {
            schemes,
            sweep_var: self.sweep,
            range: SweepRange { from: self.from.0, to: self.to.0, step: self.step.0 },
            gains,
            budget,
            fading,
            mc: self.mc,
            optimizer: OptimizerConfig { grid_resolution: self.grid_resolution.0, ..Default::default() },
        };
        spec.validate().map_err(|e| match e {
            Error::Incompatible { .. } => err(schemes_line, e.to_string()),
            Error::Config { line: 0, message } => err(schemes_line, message),
            other => other,
        })?;
        Ok(spec)
    }
}

/// Parses a sweep configuration. Omitted keys take their defaults:
/// `sweep=p_i_db`, `from=-10`, `to=30`, `step=1`, all powers 10 dB,
/// `r_i=1`, unit gains, no fading, `mc_samples=100000`, `seed=42`,
/// `grid_resolution=0.05`. Only `schemes` is mandatory.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut builder = Builder::default();
    for (index, raw) in text.lines().enumerate() {
        builder.apply_line(index + 1, raw)?;
    }
    builder.build()
}
