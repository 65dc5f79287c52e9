//! Channel, power and result types shared by every rate evaluator, plus the
//! elementary rate functions.
//!
//! Noise variance is 1 at both receivers, so every power below is an SNR on a
//! linear scale. Rates are in bits per channel use.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance below zero that [`cap_fn`] still accepts (and clamps).
pub const CAP_DOMAIN_SLACK: f64 = 1e-12;

/// `log2(1 + x)`, rejecting arguments that are meaningfully negative.
pub fn cap_fn(x: f64) -> Result<f64> {
    if x < -CAP_DOMAIN_SLACK || x.is_nan() {
        return Err(Error::Domain { function: "cap_fn", value: x });
    }
    Ok(cap(x))
}

/// Unchecked `log2(1 + x)` for the inner loops; negative input is clamped.
#[inline]
pub(crate) fn cap(x: f64) -> f64 {
    x.max(0.0).ln_1p() / std::f64::consts::LN_2
}

#[inline]
pub fn pos_part(x: f64) -> f64 {
    x.max(0.0)
}

#[inline]
pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

#[inline]
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Complex gains of the four links. Only magnitudes enter the no-fading
/// formulas; combining is assumed coherent wherever amplitudes add.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub h_sr: Complex64,
    pub h_sd: Complex64,
    pub h_rd: Complex64,
    pub h_i: Complex64,
}

impl ChannelGains {
    pub fn new(h_sr: Complex64, h_sd: Complex64, h_rd: Complex64, h_i: Complex64) -> Result<Self> {
        for (name, h) in [("h_sr", h_sr), ("h_sd", h_sd), ("h_rd", h_rd), ("h_i", h_i)] {
            if !h.re.is_finite() || !h.im.is_finite() {
                return Err(Error::Config {
                    line: 0,
                    message: format!("{name} must be finite"),
                });
            }
        }
        Ok(ChannelGains { h_sr, h_sd, h_rd, h_i })
    }

    /// Real, nonnegative gains given by their magnitudes.
    pub fn from_magnitudes(sr: f64, sd: f64, rd: f64, i: f64) -> Result<Self> {
        for (name, m) in [("h_sr", sr), ("h_sd", sd), ("h_rd", rd), ("h_i", i)] {
            if !(m.is_finite() && m >= 0.0) {
                return Err(Error::Config {
                    line: 0,
                    message: format!("|{name}| must be finite and nonnegative, got {m}"),
                });
            }
        }
        Ok(ChannelGains {
            h_sr: Complex64::new(sr, 0.0),
            h_sd: Complex64::new(sd, 0.0),
            h_rd: Complex64::new(rd, 0.0),
            h_i: Complex64::new(i, 0.0),
        })
    }

    /// All four links with unit gain.
    pub fn unit() -> Self {
        Self::from_magnitudes(1.0, 1.0, 1.0, 1.0).expect("unit gains are valid")
    }

    pub fn sr(&self) -> f64 {
        self.h_sr.norm()
    }
    pub fn sd(&self) -> f64 {
        self.h_sd.norm()
    }
    pub fn rd(&self) -> f64 {
        self.h_rd.norm()
    }
    pub fn i(&self) -> f64 {
        self.h_i.norm()
    }

    pub fn sr2(&self) -> f64 {
        self.h_sr.norm_sqr()
    }
    pub fn sd2(&self) -> f64 {
        self.h_sd.norm_sqr()
    }
    pub fn rd2(&self) -> f64 {
        self.h_rd.norm_sqr()
    }
    pub fn i2(&self) -> f64 {
        self.h_i.norm_sqr()
    }

    /// Multihop means no direct source-destination link.
    pub fn is_multihop(&self) -> bool {
        self.h_sd == Complex64::new(0.0, 0.0)
    }

    /// Point-to-point means neither relay link is present.
    pub fn is_point_to_point(&self) -> bool {
        let zero = Complex64::new(0.0, 0.0);
        self.h_sr == zero && self.h_rd == zero
    }

    pub fn with_sd(mut self, h_sd: f64) -> Self {
        self.h_sd = Complex64::new(h_sd, 0.0);
        self
    }

    pub fn with_sr(mut self, h_sr: f64) -> Self {
        self.h_sr = Complex64::new(h_sr, 0.0);
        self
    }
}

/// Total-power budget: source power `p_s` shared between its two outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub p_s: f64,
    pub p_r: f64,
    pub p_i: f64,
    /// Interferer rate in bits per channel use.
    pub r_i: f64,
}

impl PowerBudget {
    pub fn new(p_s: f64, p_r: f64, p_i: f64, r_i: f64) -> Result<Self> {
        for (name, v) in [("p_s", p_s), ("p_r", p_r), ("p_i", p_i), ("r_i", r_i)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config {
                    line: 0,
                    message: format!("{name} must be finite and nonnegative, got {v}"),
                });
            }
        }
        Ok(PowerBudget { p_s, p_r, p_i, r_i })
    }

    pub fn with_p_i(mut self, p_i: f64) -> Self {
        self.p_i = p_i;
        self
    }

    pub fn with_r_i(mut self, r_i: f64) -> Self {
        self.r_i = r_i;
        self
    }

    /// The same budget with the interferer switched off.
    pub fn interference_free(self) -> Self {
        PowerBudget { p_i: 0.0, r_i: 0.0, ..self }
    }
}

/// Separate source constraints on the relay and direct outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPowerBudget {
    pub p_sr: f64,
    pub p_sd: f64,
    pub p_r: f64,
    pub p_i: f64,
    pub r_i: f64,
}

impl SplitPowerBudget {
    pub fn new(p_sr: f64, p_sd: f64, p_r: f64, p_i: f64, r_i: f64) -> Result<Self> {
        for (name, v) in [("p_sr", p_sr), ("p_sd", p_sd), ("p_r", p_r), ("p_i", p_i), ("r_i", r_i)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config {
                    line: 0,
                    message: format!("{name} must be finite and nonnegative, got {v}"),
                });
            }
        }
        Ok(SplitPowerBudget { p_sr, p_sd, p_r, p_i, r_i })
    }
}

/// Decision variables of a scheme. Fields a scheme does not use stay `None`
/// or empty.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SchemeParams {
    /// Fraction of the source power on the direct output.
    pub gamma: Option<f64>,
    /// Source correlation magnitudes, named after what they carry.
    pub rho: Vec<(&'static str, f64)>,
    /// Relay correlation magnitudes.
    pub rho_bar: Vec<(&'static str, f64)>,
    /// Interference quantization rate, bits per channel use.
    pub r_q: Option<f64>,
    /// Inflation factor.
    pub alpha: Option<f64>,
}

impl SchemeParams {
    pub fn rho(&self, name: &str) -> f64 {
        lookup(&self.rho, name)
    }

    pub fn rho_bar(&self, name: &str) -> f64 {
        lookup(&self.rho_bar, name)
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_none()
            && self.rho.is_empty()
            && self.rho_bar.is_empty()
            && self.r_q.is_none()
            && self.alpha.is_none()
    }
}

fn lookup(values: &[(&'static str, f64)], name: &str) -> f64 {
    values
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .unwrap_or(0.0)
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(g) = self.gamma {
            parts.push(format!("gamma={g:.6}"));
        }
        for (n, v) in &self.rho {
            parts.push(format!("rho_{n}={v:.6}"));
        }
        for (n, v) in &self.rho_bar {
            parts.push(format!("rho_bar_{n}={v:.6}"));
        }
        if let Some(r) = self.r_q {
            parts.push(format!("r_q={r:.6}"));
        }
        if let Some(a) = self.alpha {
            parts.push(format!("alpha={a:.6}"));
        }
        if parts.is_empty() {
            f.write_str("(none)")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// One term of a scheme's min-of-branches expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub label: &'static str,
    pub value: f64,
}

impl Branch {
    pub fn new(label: &'static str, value: f64) -> Self {
        Branch { label, value }
    }
}

/// Smallest branch value, clamped at zero.
pub fn min_branch(branches: &[Branch]) -> f64 {
    pos_part(branches.iter().map(|b| b.value).fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    pub rate: f64,
    pub argmax: SchemeParams,
    pub branches: Vec<Branch>,
    /// Monte-Carlo standard error of the binding expectation (fading only).
    pub std_error: Option<f64>,
}

impl RateResult {
    pub fn from_branches(argmax: SchemeParams, branches: Vec<Branch>) -> Self {
        RateResult {
            rate: min_branch(&branches),
            argmax,
            branches,
            std_error: None,
        }
    }

    pub fn closed_form(label: &'static str, value: f64) -> Self {
        Self::from_branches(SchemeParams::default(), vec![Branch::new(label, value)])
    }

    pub fn with_std_error(mut self, se: f64) -> Self {
        self.std_error = Some(se);
        self
    }

    /// Label of the branch that attains the minimum.
    pub fn binding_branch(&self) -> Option<&Branch> {
        self.branches
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
    }
}

impl fmt::Display for RateResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rate = {:.6} bits/channel use", self.rate)?;
        if let Some(se) = self.std_error {
            write!(f, " (std. error {se:.6})")?;
        }
        write!(f, "\nargmax: {}", self.argmax)?;
        for b in &self.branches {
            write!(f, "\n  {:<16} {:.6}", b.label, b.value)?;
        }
        Ok(())
    }
}
