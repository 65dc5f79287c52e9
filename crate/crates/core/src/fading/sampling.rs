//! Ricean gain sampling and Monte-Carlo expectations.
//!
//! Samples come from ChaCha8 keyed by the seed, one stream per link. Sample
//! `i` of a link always occupies the same four words of its stream, so any
//! sample can be produced independently of the others and the batch does not
//! depend on how generation is split across threads.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ChannelGains;

/// Words of the ChaCha stream consumed by one complex Gaussian draw.
const WORDS_PER_SAMPLE: u128 = 4;
const CHUNK: usize = 8192;

/// Ricean K-factor of each link. `f64::INFINITY` marks a deterministic
/// (pure line-of-sight) link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingSpec {
    pub k_sr: f64,
    pub k_sd: f64,
    pub k_rd: f64,
    pub k_i: f64,
}

impl FadingSpec {
    pub fn new(k_sr: f64, k_sd: f64, k_rd: f64, k_i: f64) -> Result<Self> {
        for k in [k_sr, k_sd, k_rd, k_i] {
            check_k(k)?;
        }
        Ok(FadingSpec { k_sr, k_sd, k_rd, k_i })
    }

    /// Same K on every link.
    pub fn uniform(k: f64) -> Result<Self> {
        Self::new(k, k, k, k)
    }

    pub fn deterministic() -> Self {
        FadingSpec {
            k_sr: f64::INFINITY,
            k_sd: f64::INFINITY,
            k_rd: f64::INFINITY,
            k_i: f64::INFINITY,
        }
    }

    fn links(&self) -> [f64; 4] {
        [self.k_sr, self.k_sd, self.k_rd, self.k_i]
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_nan() || k < 0.0 {
        Err(Error::NegativeKFactor(k))
    } else {
        Ok(())
    }
}

/// Line-of-sight power `|mu|^2 = K / (1 + K)`.
pub fn los_power(k: f64) -> f64 {
    if k.is_infinite() {
        1.0
    } else {
        k / (1.0 + k)
    }
}

/// Scattered power `sigma^2 = 1 / (1 + K)`.
pub fn scatter_power(k: f64) -> f64 {
    if k.is_infinite() {
        0.0
    } else {
        1.0 / (1.0 + k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloCfg {
    pub samples: usize,
    pub seed: u64,
}

impl Default for MonteCarloCfg {
    fn default() -> Self {
        MonteCarloCfg { samples: 100_000, seed: 42 }
    }
}

#[inline]
fn unit_uniform(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Unit-variance circularly-symmetric complex Gaussian via Box-Muller.
fn standard_complex_normal(stream: &mut impl RngCore) -> Complex64 {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    let radius = (-(1.0 - unit_uniform(stream.next_u64())).ln()).sqrt();
    let angle = std::f64::consts::TAU * unit_uniform(stream.next_u64());
    Complex64::from_polar(radius, angle)
}

/// One Ricean gain `mu + z` with unit mean power; `mu` is real.
pub fn sample_ricean(k: f64, stream: &mut impl RngCore) -> Result<Complex64> {
    check_k(k)?;
    let mu = Complex64::new(los_power(k).sqrt(), 0.0);
    if k.is_infinite() {
        return Ok(mu);
    }
    Ok(mu + standard_complex_normal(stream) * scatter_power(k).sqrt())
}

/// Samples of one link together with their squared magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSamples {
    pub gains: Vec<Complex64>,
    pub power: Vec<f64>,
}

impl LinkSamples {
    fn generate(k: f64, scale: Complex64, seed: u64, link: u64, samples: usize) -> Result<Self> {
        check_k(k)?;
        let chunks: Vec<Vec<Complex64>> = (0..samples.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let end = (start + CHUNK).min(samples);
                let mut stream = ChaCha8Rng::seed_from_u64(seed);
                stream.set_stream(link);
                stream.set_word_pos(start as u128 * WORDS_PER_SAMPLE);
                (start..end)
                    .map(|_| scale * sample_ricean(k, &mut stream).expect("K validated above"))
                    .collect()
            })
            .collect();
        let gains: Vec<Complex64> = chunks.into_iter().flatten().collect();
        let power = gains.iter().map(|h| h.norm_sqr()).collect();
        Ok(LinkSamples { gains, power })
    }
}

/// Common random numbers for every expectation of one evaluation: per-link
/// gains `h = h_fixed * (mu + z)`, where `h_fixed` is the configured gain.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSampleBatch {
    pub sr: LinkSamples,
    pub sd: LinkSamples,
    pub rd: LinkSamples,
    pub i: LinkSamples,
}

impl GainSampleBatch {
    pub fn generate(spec: &FadingSpec, gains: &ChannelGains, mc: &MonteCarloCfg) -> Result<Self> {
        if mc.samples == 0 {
            return Err(Error::Config { line: 0, message: "mc_samples must be at least 1".into() });
        }
        let scales = [gains.h_sr, gains.h_sd, gains.h_rd, gains.h_i];
        let mut links = spec
            .links()
            .into_iter()
            .zip(scales)
            .enumerate()
            .map(|(l, (k, s))| LinkSamples::generate(k, s, mc.seed, l as u64, mc.samples));
        Ok(GainSampleBatch {
            sr: links.next().expect("four links")?,
            sd: links.next().expect("four links")?,
            rd: links.next().expect("four links")?,
            i: links.next().expect("four links")?,
        })
    }

    pub fn len(&self) -> usize {
        self.sr.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first `n` samples of every link.
    pub fn head(&self, n: usize) -> Self {
        let cut = |l: &LinkSamples| LinkSamples {
            gains: l.gains[..n.min(l.gains.len())].to_vec(),
            power: l.power[..n.min(l.power.len())].to_vec(),
        };
        GainSampleBatch { sr: cut(&self.sr), sd: cut(&self.sd), rd: cut(&self.rd), i: cut(&self.i) }
    }

    /// `Re(h_a * conj(h_b))` per sample, the cross term of a coherent sum.
    pub fn cross(a: &LinkSamples, b: &LinkSamples) -> Vec<f64> {
        a.gains.iter().zip(&b.gains).map(|(x, y)| (x * y.conj()).re).collect()
    }
}

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn constant(value: f64) -> Self {
        Estimate { mean: value, std_error: 0.0 }
    }

    /// Shifts the mean; the standard error is unchanged.
    pub fn offset(self, by: f64) -> Self {
        Estimate { mean: self.mean + by, ..self }
    }
}

/// Mean and standard error of `f(0), ..., f(n - 1)`, summed in index order.
#[inline]
pub(crate) fn estimate(n: usize, mut f: impl FnMut(usize) -> f64) -> Estimate {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..n {
        let v = f(i);
        sum += v;
        sum_sq += v * v;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let variance = if n > 1 {
        ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    Estimate { mean, std_error: (variance / nf).sqrt() }
}

/// View of the four gains of one sample.
#[derive(Debug, Clone, Copy)]
pub struct GainSample {
    pub h_sr: Complex64,
    pub h_sd: Complex64,
    pub h_rd: Complex64,
    pub h_i: Complex64,
}

/// Sample mean of `f` over the batch. Fails on the first non-finite value.
pub fn mc_expectation(f: impl Fn(&GainSample) -> f64, batch: &GainSampleBatch) -> Result<Estimate> {
    let mut bad = None;
    let est = estimate(batch.len(), |i| {
        let s = GainSample {
            h_sr: batch.sr.gains[i],
            h_sd: batch.sd.gains[i],
            h_rd: batch.rd.gains[i],
            h_i: batch.i.gains[i],
        };
        let v = f(&s);
        if !v.is_finite() && bad.is_none() {
            bad = Some(i);
        }
        v
    });
    match bad {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(est),
    }
}
