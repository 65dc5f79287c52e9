//! Parameter sweeps over any set of schemes, the figure presets, CSV and
//! gnuplot output, and the plain-text config format.

mod config;
mod output;
mod presets;

pub use config::{parse_config, KEYS as CONFIG_KEYS};
pub use output::{emit_csv, emit_plot, header, OutputFormat};
pub use presets::FigurePreset;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::awgn;
use crate::error::{Error, Result};
use crate::fading::{self, FadingSpec, GainSampleBatch, MonteCarloCfg};
use crate::model::{db_to_linear, ChannelGains, PowerBudget, RateResult};
use crate::optimizer::OptimizerConfig;

/// Every evaluator reachable from a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Nr,
    Ni,
    Du,
    Cu,
    Cs1,
    Cs2,
    Aid,
    Nldf,
    FadingP2pU,
    FadingP2pS,
    FadingDu,
    FadingDs,
    FadingCu,
    FadingCs1,
    FadingCs2,
    FadingAid,
    FadingNi,
}

impl Scheme {
    pub const ALL: [Scheme; 17] = [
        Scheme::Nr,
        Scheme::Ni,
        Scheme::Du,
        Scheme::Cu,
        Scheme::Cs1,
        Scheme::Cs2,
        Scheme::Aid,
        Scheme::Nldf,
        Scheme::FadingP2pU,
        Scheme::FadingP2pS,
        Scheme::FadingDu,
        Scheme::FadingDs,
        Scheme::FadingCu,
        Scheme::FadingCs1,
        Scheme::FadingCs2,
        Scheme::FadingAid,
        Scheme::FadingNi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Nr => "nr",
            Scheme::Ni => "ni",
            Scheme::Du => "du",
            Scheme::Cu => "cu",
            Scheme::Cs1 => "cs1",
            Scheme::Cs2 => "cs2",
            Scheme::Aid => "aid",
            Scheme::Nldf => "nldf",
            Scheme::FadingP2pU => "f_p2p_u",
            Scheme::FadingP2pS => "f_p2p_s",
            Scheme::FadingDu => "f_du",
            Scheme::FadingDs => "f_ds",
            Scheme::FadingCu => "f_cu",
            Scheme::FadingCs1 => "f_cs1",
            Scheme::FadingCs2 => "f_cs2",
            Scheme::FadingAid => "f_aid",
            Scheme::FadingNi => "f_ni",
        }
    }

    pub fn is_fading(self) -> bool {
        self.name().starts_with("f_")
    }

    /// Schemes whose formulas assume there is no direct link.
    fn needs_multihop(self) -> bool {
        matches!(
            self,
            Scheme::Nldf
                | Scheme::FadingDu
                | Scheme::FadingDs
                | Scheme::FadingCu
                | Scheme::FadingCs1
                | Scheme::FadingCs2
                | Scheme::FadingAid
        )
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}

/// The swept quantity. `p_i_db` is in dB, `k_factor` is linear and applied
/// to every link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    PiDb,
    Ri,
    KFactor,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::PiDb => "p_i_db",
            SweepVar::Ri => "r_i",
            SweepVar::KFactor => "k_factor",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVar {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [SweepVar::PiDb, SweepVar::Ri, SweepVar::KFactor]
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown sweep variable `{s}`"))
    }
}

/// Inclusive range `from, from + step, ..., to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        // The tolerance keeps `to` when the step does not divide exactly in
        // floating point.
        let count = ((self.to - self.from) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.from + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub schemes: Vec<Scheme>,
    pub sweep_var: SweepVar,
    pub range: SweepRange,
    pub gains: ChannelGains,
    /// Linear powers; the swept field is overwritten per row.
    pub budget: PowerBudget,
    pub fading: Option<FadingSpec>,
    pub mc: MonteCarloCfg,
    pub optimizer: OptimizerConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad_range = |message: &str| Error::Config { line: 0, message: message.into() };
        if !(self.range.step > 0.0) {
            return Err(bad_range("step must be positive"));
        }
        if !(self.range.from <= self.range.to) {
            return Err(bad_range("from must not exceed to"));
        }
        if self.schemes.is_empty() {
            return Err(bad_range("no schemes selected"));
        }
        self.optimizer.validate()?;
        if self.mc.samples == 0 {
            return Err(bad_range("mc_samples must be at least 1"));
        }
        for &s in &self.schemes {
            self.check_scheme(s)?;
        }
        if self.sweep_var == SweepVar::KFactor {
            if let Some(s) = self.schemes.iter().find(|s| !s.is_fading()) {
                return Err(incompatible(*s, "a k_factor sweep"));
            }
        }
        Ok(())
    }

    fn check_scheme(&self, s: Scheme) -> Result<()> {
        if s.is_fading() && self.fading.is_none() && self.sweep_var != SweepVar::KFactor {
            return Err(incompatible(s, "a channel without K-factors"));
        }
        if s.needs_multihop() && !self.gains.is_multihop() {
            return Err(incompatible(s, "a nonzero direct link h_sd"));
        }
        if s == Scheme::FadingNi && !self.gains.is_multihop() && !self.gains.is_point_to_point() {
            return Err(incompatible(s, "a channel that is neither multihop nor point-to-point"));
        }
        Ok(())
    }

    /// The configured operating point, ignoring the sweep.
    pub fn fixed_point(&self) -> Point {
        Point { gains: self.gains, budget: self.budget, fading: self.fading }
    }

    /// The channel, budget and fading model at one sweep value.
    pub fn point(&self, x: f64) -> Point {
        let mut p = self.fixed_point();
        match self.sweep_var {
            SweepVar::PiDb => p.budget.p_i = db_to_linear(x),
            SweepVar::Ri => p.budget.r_i = x,
            SweepVar::KFactor => p.fading = Some(FadingSpec { k_sr: x, k_sd: x, k_rd: x, k_i: x }),
        }
        p
    }
}

fn incompatible(s: Scheme, reason: &str) -> Error {
    Error::Incompatible { scheme: s.name().into(), reason: reason.into() }
}

/// One fully specified operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub gains: ChannelGains,
    pub budget: PowerBudget,
    pub fading: Option<FadingSpec>,
}

impl Point {
    /// The common-random-number batch for the fading schemes.
    pub fn batch(&self, mc: &MonteCarloCfg) -> Result<Option<GainSampleBatch>> {
        match &self.fading {
            Some(spec) => Ok(Some(GainSampleBatch::generate(spec, &self.gains, mc)?)),
            None => Ok(None),
        }
    }

    /// Evaluates one scheme. `batch` must come from [`Point::batch`] when
    /// `scheme` is a fading scheme.
    pub fn evaluate(
        &self,
        scheme: Scheme,
        batch: Option<&GainSampleBatch>,
        cfg: &OptimizerConfig,
    ) -> Result<RateResult> {
        let (g, b) = (&self.gains, &self.budget);
        let batch = || batch.ok_or_else(|| incompatible(scheme, "a channel without K-factors"));
        match scheme {
            Scheme::Nr => Ok(awgn::rate_nr(g, b)),
            Scheme::Ni => awgn::rate_ni(g, b, cfg),
            Scheme::Du => awgn::rate_du(g, b, cfg),
            Scheme::Cu => awgn::rate_cu(g, b, cfg),
            Scheme::Cs1 => awgn::rate_cs1(g, b, cfg),
            Scheme::Cs2 => awgn::rate_cs2(g, b, cfg),
            Scheme::Aid => awgn::rate_aid(g, b, cfg),
            Scheme::Nldf => Ok(awgn::rate_nldf(g, b)),
            Scheme::FadingP2pU => fading::rate_fading_p2p_u(batch()?, b, cfg),
            Scheme::FadingP2pS => fading::rate_fading_p2p_s(batch()?, b, cfg),
            Scheme::FadingDu => fading::rate_fading_du(batch()?, b, cfg),
            Scheme::FadingDs => fading::rate_fading_ds(batch()?, b, cfg),
            Scheme::FadingCu => fading::rate_fading_cu(batch()?, b, cfg),
            Scheme::FadingCs1 => fading::rate_fading_cs1(batch()?, b, cfg),
            Scheme::FadingCs2 => fading::rate_fading_cs2(batch()?, b, cfg),
            Scheme::FadingAid => fading::rate_fading_aid(batch()?, b, cfg),
            Scheme::FadingNi if g.is_point_to_point() => Ok(fading::rate_fading_ni_p2p(batch()?, b)),
            Scheme::FadingNi => Ok(fading::rate_fading_ni_multihop(batch()?, b)),
        }
    }
}

/// One value of one scheme in a row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub rate: f64,
    /// Present for fading schemes.
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub x: f64,
    /// In the order of [`SweepTable::schemes`].
    pub cells: Vec<Cell>,
}

/// Result of a sweep: enough to write the CSV header and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub sweep_var: SweepVar,
    pub schemes: Vec<Scheme>,
    pub rows: Vec<CsvRow>,
}

impl SweepTable {
    /// Rates of one scheme down the sweep.
    pub fn column(&self, scheme: Scheme) -> Option<Vec<f64>> {
        let k = self.schemes.iter().position(|s| *s == scheme)?;
        Some(self.rows.iter().map(|r| r.cells[k].rate).collect())
    }

    /// Standard errors of one fading scheme down the sweep.
    pub fn std_errors(&self, scheme: Scheme) -> Option<Vec<f64>> {
        let k = self.schemes.iter().position(|s| *s == scheme)?;
        self.rows.iter().map(|r| r.cells[k].std_error).collect()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.x).collect()
    }
}

/// Evaluates every scheme at every sweep value. Rows run in parallel; all
/// fading schemes of a row share one sample batch.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let rows = spec
        .range
        .values()
        .into_par_iter()
        .map(|x| {
            let point = spec.point(x);
            let batch = if spec.schemes.iter().any(|s| s.is_fading()) {
                point.batch(&spec.mc)?
            } else {
                None
            };
            let cells = spec
                .schemes
                .iter()
                .map(|&s| {
                    let r = point.evaluate(s, batch.as_ref(), &spec.optimizer)?;
                    Ok(Cell { rate: r.rate, std_error: r.std_error })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CsvRow { x, cells })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { sweep_var: spec.sweep_var, schemes: spec.schemes.clone(), rows })
}
