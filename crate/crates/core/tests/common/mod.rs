//! Test-only reference implementations of the no-fading rate expressions and
//! a brute-force maximizer, written without any code from the library.
//!
//! Every decision variable of a scheme is searched. Correlation coefficients
//! of one power constraint are enumerated in hyperspherical coordinates
//! (radius and angles), which covers the constraint ball exactly, and the
//! quantization rate as a fraction of its own upper bound.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Gains (magnitudes) and powers (linear) of one operating point.
#[derive(Debug, Clone, Copy)]
pub struct Setup {
    pub sr: f64,
    pub sd: f64,
    pub rd: f64,
    pub i: f64,
    pub p_s: f64,
    pub p_r: f64,
    pub p_i: f64,
    pub r_i: f64,
}

impl Setup {
    #[allow(clippy::too_many_arguments)]
    pub fn db(sr: f64, sd: f64, rd: f64, i: f64, p_s_db: f64, p_r_db: f64, p_i_db: f64, r_i: f64) -> Self {
        let lin = |x: f64| 10f64.powf(x / 10.0);
        Setup { sr, sd, rd, i, p_s: lin(p_s_db), p_r: lin(p_r_db), p_i: lin(p_i_db), r_i }
    }
}

pub fn c(x: f64) -> f64 {
    (1.0 + x).log2()
}

pub fn plus(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

/// Point in the nonnegative part of the unit ball of dimension `u.len()`
/// from unit-box coordinates: `u[0]` is the radius, the rest are angles.
pub fn ball(u: &[f64]) -> Vec<f64> {
    let r = u[0];
    let k = u.len();
    let mut out = Vec::with_capacity(k);
    let mut sines = r;
    for a in &u[1..] {
        let theta = a * FRAC_PI_2;
        out.push(sines * theta.cos());
        sines *= theta.sin();
    }
    out.push(sines);
    out
}

// ---------------------------------------------------------------------------
// Rate expressions, one per scheme, as functions of all decision variables.

pub fn nr(s: &Setup) -> f64 {
    c(s.sd * s.sd * s.p_s)
}

pub fn nldf(s: &Setup) -> f64 {
    let a = s.sr * s.sr * s.p_s;
    let b = s.rd * s.rd * s.p_r;
    plus(((a * b + a + b + 1.0) / (a + b + 2.0)).log2())
}

fn c_sr(s: &Setup, gamma: f64) -> f64 {
    c(s.sr * s.sr * (1.0 - gamma) * s.p_s)
}

/// Digital sharing, unstructured destination.
pub fn du_value(s: &Setup, gamma: f64, w1: f64, w2: f64) -> [f64; 2] {
    let g = gamma * s.p_s;
    let p2 = s.sd * s.sd * w2 * w2 * g;
    let p1 = (s.rd * s.p_r.sqrt() + s.sd * w1 * g.sqrt()).powi(2);
    [c(p2) + plus(c_sr(s, gamma) - s.r_i), c(p2 + p1)]
}

/// Compressed sharing, unstructured destination, at quantization rate `r_q`.
pub fn cu_value(s: &Setup, gamma: f64, r_q: f64, w1: f64, w2: f64, wi: f64) -> [f64; 2] {
    let g = gamma * s.p_s;
    let shrink = 2f64.powf(-r_q);
    // xi^2 D with xi = |h_I| - |h_SD| rho_WI sqrt(gamma P_S / P_I), D = P_I 2^-r_q.
    let residual = shrink * (s.i * s.p_i.sqrt() - s.sd * wi * g.sqrt()).powi(2);
    let p2 = s.sd * s.sd * w2 * w2 * g;
    let p1 = (s.rd * s.p_r.sqrt() + s.sd * w1 * g.sqrt()).powi(2) / (1.0 + residual + p2);
    [plus(c_sr(s, gamma) - r_q) + c(p2), c(p1) + c(p2)]
}

/// Compressed sharing with analog forwarding of the description.
#[allow(clippy::too_many_arguments)]
pub fn cs1_value(s: &Setup, gamma: f64, r_q: f64, w1: f64, w2: f64, wi: f64, bw1: f64, bwi: f64) -> [f64; 4] {
    let g = gamma * s.p_s;
    let shrink = 2f64.powf(-r_q);
    let n = s.rd * s.rd * bwi * bwi * s.p_r * shrink + 1.0;
    let p1 = (s.rd * bw1 * s.p_r.sqrt() + s.sd * w1 * g.sqrt()).powi(2) / n;
    let p2 = s.sd * s.sd * w2 * w2 * g / n;
    let pi = (s.sd * wi * g.sqrt() + s.rd * bwi * (s.p_r * (1.0 - shrink)).sqrt() + s.i * s.p_i.sqrt()).powi(2) / n;
    let link = plus(c_sr(s, gamma) - r_q);
    [
        c(p2) + link,
        plus(c(p2 + pi) - s.r_i) + link,
        c(p2 + p1),
        plus(c(p2 + p1 + pi) - s.r_i),
    ]
}

/// Powers and r_q bound of the binned scheme.
struct Cs2 {
    p1: f64,
    p2: f64,
    pi: f64,
    bound: f64,
}

fn cs2_powers(s: &Setup, gamma: f64, w: [f64; 4], bw1: f64, bu: f64) -> Cs2 {
    let [w1, w2, wi, wu] = w;
    let a = (gamma * s.p_s).sqrt();
    let p1 = (s.rd * bw1 * s.p_r.sqrt() + s.sd * w1 * a).powi(2);
    let p2 = (s.sd * w2 * a).powi(2);
    let pi = (s.sd * wi * a + s.i * s.p_i.sqrt()).powi(2);
    let pu = (s.sd * wu * a + s.rd * bu * s.p_r.sqrt()).powi(2);
    let bound = c_sr(s, gamma).min(c(pu / (p1 + p2 + pi + 1.0)));
    Cs2 { p1, p2, pi, bound }
}

/// Compressed sharing with Wyner-Ziv binning. `binning = false` drops the
/// destination side information (x = 0).
pub fn cs2_value(s: &Setup, gamma: f64, t: f64, w: [f64; 4], bw1: f64, bu: f64, binning: bool) -> [f64; 4] {
    let q = cs2_powers(s, gamma, w, bw1, bu);
    let r_q = t * q.bound;
    let x = if binning { q.pi / (q.p1 + q.p2 + q.pi + 1.0) } else { 0.0 };
    let shrink = 2f64.powf(-r_q);
    // P_I / D with D = P_I 2^-r_q (1 - x) / (1 - x 2^-r_q).
    let ratio = (1.0 - x * shrink) / (shrink * (1.0 - x));
    let link = plus(c_sr(s, gamma) - r_q);
    [
        c(q.p2) + link,
        plus(((1.0 + q.p2) * ratio + q.pi).log2() - s.r_i) + link,
        c(q.p2 + q.p1),
        plus(((1.0 + q.p2 + q.p1) * ratio + q.pi).log2() - s.r_i),
    ]
}

pub fn aid_value(s: &Setup, gamma: f64) -> [f64; 1] {
    let d = s.p_r / (s.sr * s.sr * (1.0 - gamma) * s.p_s + 1.0);
    [c((s.sd * (gamma * s.p_s).sqrt() + s.rd * (s.p_r - d).sqrt()).powi(2) / (1.0 + s.rd * s.rd * d))]
}

/// Digital sharing with a structured destination on the multihop channel
/// without fading: the relay forwards its message and the interference,
/// both coherently with the interferer and on an independent codeword.
pub fn ds_multihop_value(s: &Setup, m: f64, ic: f64, ii: f64) -> [f64; 3] {
    let sig = s.rd * s.rd * m * m * s.p_r;
    let joint = sig + s.rd * s.rd * ii * ii * s.p_r + (s.rd * ic * s.p_r.sqrt() + s.i * s.p_i.sqrt()).powi(2);
    [plus(c(s.sr * s.sr * s.p_s) - s.r_i), c(sig), plus(c(joint) - s.r_i)]
}

// ---------------------------------------------------------------------------
// Maximization.

/// Soft minimum `-tau ln sum exp(-b / tau)`: smooth, at most the minimum and
/// within `tau ln K` of it.
fn soft_min(branches: &[f64], tau: f64) -> f64 {
    let m = min_of(branches);
    m - tau * branches.iter().map(|b| (-(b - m) / tau).exp()).sum::<f64>().ln()
}

/// Maximum of the smallest branch of `f` over `[0, 1]^n`.
///
/// Every point of a grid with `points` per coordinate is evaluated. From the
/// best few distinct grid points an exhaustive `3^n` stencil search follows,
/// moving to the best stencil point while one improves and halving the step
/// otherwise, down to `1e-9`. The stencil compares soft minima whose
/// smoothing shrinks with the step, so the search can follow the ridges
/// where branches cross. The result is the best plain minimum seen anywhere.
pub fn grid_max<const K: usize>(n: usize, points: usize, f: impl Fn(&[f64]) -> [f64; K]) -> f64 {
    const KEEP: usize = 256;
    const SEEDS: usize = 12;
    let h = 1.0 / (points - 1) as f64;
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    let mut top: Vec<(f64, Vec<usize>)> = Vec::with_capacity(KEEP + 1);
    loop {
        for d in 0..n {
            x[d] = idx[d] as f64 * h;
        }
        let v = min_of(&f(&x));
        if top.len() < KEEP || v > top[top.len() - 1].0 {
            let pos = top.partition_point(|(w, _)| *w >= v);
            top.insert(pos, (v, idx.clone()));
            top.truncate(KEEP);
        }
        let mut d = 0;
        loop {
            if d == n {
                return polish(n, h, &top, SEEDS, &f);
            }
            idx[d] += 1;
            if idx[d] < points {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Smoothing per unit of step, in bits. Heavy smoothing follows ridges
/// where branches cross; light smoothing keeps narrow peaks.
const SMOOTHING: [f64; 2] = [8.0, 1.0];

fn polish<const K: usize>(
    n: usize,
    h: f64,
    top: &[(f64, Vec<usize>)],
    seeds: usize,
    f: &impl Fn(&[f64]) -> [f64; K],
) -> f64 {
    let mut chosen: Vec<&Vec<usize>> = Vec::new();
    for (_, idx) in top {
        if chosen.iter().all(|c| c.iter().zip(idx).any(|(a, b)| a.abs_diff(*b) > 1)) {
            chosen.push(idx);
        }
        if chosen.len() == seeds {
            break;
        }
    }
    let mut best = top[0].0;
    let mut probe = vec![0.0; n];
    for (idx, smoothing) in chosen.iter().flat_map(|idx| SMOOTHING.iter().map(move |s| (*idx, *s))) {
        let mut centre: Vec<f64> = idx.iter().map(|&i| i as f64 * h).collect();
        let mut step = h;
        let mut rounds = 0;
        while step > 1e-9 && rounds < 4000 {
            rounds += 1;
            let tau = smoothing * step;
            let mut value = soft_min(&f(&centre), tau);
            let mut moved = None;
            for code in 0..3usize.pow(n as u32) {
                let mut k = code;
                for d in 0..n {
                    let offset = (k % 3) as f64 - 1.0;
                    k /= 3;
                    probe[d] = (centre[d] + offset * step).clamp(0.0, 1.0);
                }
                let branches = f(&probe);
                best = best.max(min_of(&branches));
                let v = soft_min(&branches, tau);
                if v > value {
                    value = v;
                    moved = Some(probe.clone());
                }
            }
            match moved {
                Some(p) => centre = p,
                None => step *= 0.5,
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Oracle rates.

pub fn du(s: &Setup) -> f64 {
    grid_max(3, 101, |u| {
        let w = ball(&u[1..3]);
        du_value(s, u[0], w[0], w[1])
    })
}

pub fn ni(s: &Setup) -> f64 {
    du(&Setup { p_i: 0.0, r_i: 0.0, ..*s })
}

pub fn aid(s: &Setup) -> f64 {
    grid_max(1, 101, |u| aid_value(s, u[0]))
}

pub fn cu(s: &Setup) -> f64 {
    grid_max(5, 21, |u| {
        let w = ball(&u[2..5]);
        cu_value(s, u[0], u[1] * c_sr(s, u[0]), w[0], w[1], w[2])
    })
}

pub fn cs1(s: &Setup) -> f64 {
    grid_max(7, 9, |u| {
        let w = ball(&u[2..5]);
        let bw = ball(&u[5..7]);
        cs1_value(s, u[0], u[1] * c_sr(s, u[0]), w[0], w[1], w[2], bw[0], bw[1])
    })
}

fn cs2_with(s: &Setup, binning: bool) -> f64 {
    grid_max(8, 8, |u| {
        let w = ball(&u[2..6]);
        let bw = ball(&u[6..8]);
        cs2_value(s, u[0], u[1], [w[0], w[1], w[2], w[3]], bw[0], bw[1], binning)
    })
}

pub fn cs2(s: &Setup) -> f64 {
    cs2_with(s, true)
}

/// The binned scheme without destination side information.
pub fn cs2_unbinned(s: &Setup) -> f64 {
    cs2_with(s, false)
}

pub fn ds_multihop(s: &Setup) -> f64 {
    grid_max(3, 101, |u| {
        let w = ball(u);
        ds_multihop_value(s, w[0], w[1], w[2])
    })
}
