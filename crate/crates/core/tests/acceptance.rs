//! Acceptance suite: one PASS/FAIL line per criterion, at the pinned
//! tolerances. Runs without the libtest harness so every line is printed;
//! the process fails if any criterion fails.

mod common;

use std::time::Instant;

use common::Setup;
use orthorelay::awgn::{capacity_special, CapacityRegime};
use orthorelay::experiments::{emit_csv, parse_config, run_sweep, FigurePreset, Point, Scheme, SweepTable};
use orthorelay::fading::{self, FadingSpec, GainSampleBatch, MonteCarloCfg};
use orthorelay::{ChannelGains, OptimizerConfig, PowerBudget, SplitPowerBudget};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn setup_of(p: &Point) -> Setup {
    let (g, b) = (&p.gains, &p.budget);
    Setup { sr: g.sr(), sd: g.sd(), rd: g.rd(), i: g.i(), p_s: b.p_s, p_r: b.p_r, p_i: b.p_i, r_i: b.r_i }
}

fn sweep(text: &str) -> SweepTable {
    run_sweep(&parse_config(text).expect("valid config")).expect("sweep runs")
}

fn csv(table: &SweepTable) -> Vec<u8> {
    let mut out = Vec::new();
    emit_csv(table, &mut out).expect("nonempty table");
    out
}

fn col(t: &SweepTable, s: Scheme) -> Vec<f64> {
    t.column(s).unwrap_or_else(|| panic!("column {s}"))
}

fn se(t: &SweepTable, s: Scheme) -> Vec<f64> {
    t.std_errors(s).unwrap_or_else(|| panic!("std errors {s}"))
}

/// `a - b` resolved beyond two standard errors of the difference.
fn beyond_two_se(a: f64, se_a: f64, b: f64, se_b: f64) -> bool {
    a - b > 2.0 * se_a.hypot(se_b)
}

/// Largest rate among the achievable schemes (the no-interference bound is
/// not one of them) at row `k`, excluding `skip`.
fn best_other(t: &SweepTable, k: usize, skip: Scheme) -> f64 {
    t.schemes
        .iter()
        .zip(&t.rows[k].cells)
        .filter(|(s, _)| **s != skip && **s != Scheme::Ni)
        .map(|(_, c)| c.rate)
        .fold(f64::NEG_INFINITY, f64::max)
}

struct Tables {
    fig1: SweepTable,
    fig2: SweepTable,
    fig3: SweepTable,
    fig5: SweepTable,
    strong_first_hop: SweepTable,
    fading_fig1: SweepTable,
    fading_fig2: SweepTable,
    fading_fig3: SweepTable,
}

fn oracle_equivalence() -> Outcome {
    let presets = [
        (FigurePreset::Fig1, -10.0),
        (FigurePreset::Fig1, 10.0),
        (FigurePreset::Fig1, 30.0),
        (FigurePreset::Fig2, 0.0),
        (FigurePreset::Fig2, 20.0),
        (FigurePreset::Fig3, 10.0),
        (FigurePreset::Fig3, 25.0),
        (FigurePreset::Fig5, 0.0),
        (FigurePreset::Fig5, 1.0),
        (FigurePreset::Fig5, 3.0),
    ];
    let mut worst = (0.0f64, String::new());
    let mut count = 0;
    for (preset, x) in presets {
        let spec = preset.spec();
        let point = spec.point(x);
        let s = setup_of(&point);
        let mut cases: Vec<(Scheme, f64)> = vec![
            (Scheme::Ni, common::ni(&s)),
            (Scheme::Du, common::du(&s)),
            (Scheme::Cu, common::cu(&s)),
            (Scheme::Cs1, common::cs1(&s)),
            (Scheme::Cs2, common::cs2(&s)),
            (Scheme::Aid, common::aid(&s)),
            (Scheme::Nr, common::nr(&s)),
        ];
        if point.gains.is_multihop() {
            cases.push((Scheme::Nldf, common::nldf(&s)));
        }
        for (scheme, oracle) in cases {
            let rate = point.evaluate(scheme, None, &spec.optimizer).expect("evaluates").rate;
            count += 1;
            let gap = (rate - oracle).abs();
            if gap >= worst.0 {
                worst = (gap, format!("{scheme} at {} x={x}: library {rate:.6}, oracle {oracle:.6}", preset.name()));
            }
        }
    }
    outcome(
        worst.0 < 1e-3,
        format!("max |library - oracle| = {:.2e} over {count} evaluations ({})", worst.0, worst.1),
    )
}

/// Two rates closer than this are equal to numerical precision.
const TIE: f64 = 1e-9;

fn fig1_shape(t: &Tables) -> Outcome {
    let t1 = &t.fig1;
    let last = t1.rows.len() - 1;
    let cu = col(t1, Scheme::Cu)[0];
    let cu_best = cu >= best_other(t1, 0, Scheme::Cu) - TIE;
    let cs2 = col(t1, Scheme::Cs2)[last];
    let ni = col(t1, Scheme::Ni)[last];
    let cs2_best = cs2 >= best_other(t1, last, Scheme::Cs2) - TIE;
    outcome(
        cu_best && cs2_best && (cs2 - ni).abs() < 0.02,
        format!(
            "lowest p_i: cu {cu:.6} vs others {:.6}; highest p_i: cs2 - best other = {:.1e}, |cs2 - ni| = {:.2e}",
            best_other(t1, 0, Scheme::Cu),
            cs2 - best_other(t1, last, Scheme::Cs2),
            (cs2 - ni).abs()
        ),
    )
}

fn spread(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn flatness(t: &Tables) -> Outcome {
    let du = spread(&col(&t.fig1, Scheme::Du));
    let aid = spread(&col(&t.fig1, Scheme::Aid));
    let nldf = spread(&col(&t.fig5, Scheme::Nldf));
    outcome(
        du < 1e-9 && aid < 1e-9 && nldf < 1e-9,
        format!("spread du {du:.1e}, aid {aid:.1e} over p_i; nldf {nldf:.1e} over r_i"),
    )
}

fn fig2_claim(t: &Tables) -> Outcome {
    let t2 = &t.fig2;
    let du = col(t2, Scheme::Du);
    let winners: Vec<f64> =
        (0..t2.rows.len()).filter(|&k| du[k] > best_other(t2, k, Scheme::Du)).map(|k| t2.rows[k].x).collect();
    let gap = col(&t.strong_first_hop, Scheme::Du)
        .iter()
        .zip(col(&t.strong_first_hop, Scheme::Ni))
        .map(|(d, n)| (d - n).abs())
        .fold(0.0, f64::max);
    let range = match (winners.first(), winners.last()) {
        (Some(a), Some(b)) => format!("du strictly best for p_i in [{a}, {b}] dB ({} points)", winners.len()),
        _ => "du never strictly best".into(),
    };
    outcome(!winners.is_empty() && gap < 1e-3, format!("{range}; |h_sr|=100: max |du - ni| = {gap:.2e}"))
}

fn fig3_claim(t: &Tables) -> Outcome {
    let t3 = &t.fig3;
    let (aid, du) = (col(t3, Scheme::Aid), col(t3, Scheme::Du));
    let above: Vec<f64> = (0..t3.rows.len()).filter(|&k| aid[k] > du[k]).map(|k| t3.rows[k].x).collect();
    let best: Vec<f64> =
        (0..t3.rows.len()).filter(|&k| aid[k] > best_other(t3, k, Scheme::Aid)).map(|k| t3.rows[k].x).collect();
    outcome(
        !above.is_empty(),
        format!(
            "aid > du at {} p_i points (from {} dB), aid strictly best at {} points",
            above.len(),
            above.first().map_or("-".into(), |x| format!("{x}")),
            best.len()
        ),
    )
}

fn multihop_anchor(t: &Tables) -> Outcome {
    let t5 = &t.fig5;
    let k = t5.xs().iter().position(|&x| x == 0.0).expect("r_i = 0 row");
    let target = 11f64.log2();
    let lib = [Scheme::Cs1, Scheme::Cs2, Scheme::Ni].map(|s| col(t5, s)[k]);
    let s = setup_of(&FigurePreset::Fig5.spec().point(0.0));
    let oracle = [common::cs1(&s), common::cs2(&s), common::ni(&s)];
    let worst = lib.iter().chain(&oracle).map(|v| (v - target).abs()).fold(0.0, f64::max);
    outcome(
        worst < 1e-3,
        format!(
            "cs1 {:.6}, cs2 {:.6}, ni {:.6}; oracle {:.6}, {:.6}, {:.6}; log2(11) = {target:.6}",
            lib[0], lib[1], lib[2], oracle[0], oracle[1], oracle[2]
        ),
    )
}

fn capacity_regimes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let c = common::c;
    let (mut first, mut second, mut draws) = (0, 0, 0);
    let mut failures = Vec::new();
    while (first < 100 || second < 100) && draws < 1_000_000 {
        draws += 1;
        let mut gain = || 0.05 + 3.0 * unit();
        let (sr, sd, rd, i) = (gain(), gain(), gain(), gain());
        let mut power = || 10f64.powf((-10.0 + 40.0 * unit()) / 10.0);
        let (p_sr, p_sd, p_r, p_i) = (power(), power(), power(), power());
        let r_i = 4.0 * unit();
        let g = ChannelGains::from_magnitudes(sr, sd, rd, i).unwrap();
        let b = SplitPowerBudget::new(p_sr, p_sd, p_r, p_i, r_i).unwrap();
        let source_relay = c(sr * sr * p_sr);
        let relay_dest = c(rd * rd * p_r);
        let direct = c(sd * sd * p_sd);
        let prime = c(rd * rd * p_r / (1.0 + i * i * p_i))
            .max(relay_dest.min(common::plus(c(rd * rd * p_r + i * i * p_i) - r_i)));
        let got = capacity_special(&g, &b);
        if source_relay >= r_i + relay_dest && first < 100 {
            first += 1;
            match got {
                Some((v, CapacityRegime::DigitalSharing)) if (v - direct - relay_dest).abs() < 1e-12 => {}
                other => failures.push(format!("regime 1 draw {draws}: {other:?}")),
            }
        } else if source_relay <= prime && second < 100 {
            second += 1;
            match got {
                Some((v, CapacityRegime::SourceRelayLimited(_))) if (v - direct - source_relay).abs() < 1e-12 => {}
                other => failures.push(format!("regime 2 draw {draws}: {other:?}")),
            }
        }
    }
    outcome(
        first == 100 && second == 100 && failures.is_empty(),
        format!(
            "{first} regime-1 and {second} regime-2 configurations from {draws} draws, {} mismatches{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn deterministic_limit() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mc = MonteCarloCfg { samples: 1000, seed: 42 };
    let mut notes = Vec::new();
    let mut pass = true;

    let p2p = ChannelGains::from_magnitudes(0.0, 1.0, 0.0, 1.0).unwrap();
    let b = PowerBudget::new(10.0, 10.0, 10.0, 1.0).unwrap();
    let batch = GainSampleBatch::generate(&FadingSpec::deterministic(), &p2p, &mc).unwrap();
    let u = fading::rate_fading_p2p_u(&batch, &b, &cfg).unwrap().rate;
    let gap = (u - 11f64.log2()).abs();
    pass &= gap < 1e-6;
    notes.push(format!("p2p_u - C(P_S) = {gap:.1e}"));

    let g = ChannelGains::from_magnitudes(1.0, 0.0, 1.0, 1.0).unwrap();
    let budgets = [
        PowerBudget::new(10.0, 10.0, 10.0, 1.0).unwrap(),
        PowerBudget::new(10.0, 10f64.powf(0.7), 100.0, 0.4).unwrap(),
    ];
    let mut worst = (0.0f64, String::new());
    for b in budgets {
        let batch = GainSampleBatch::generate(&FadingSpec::deterministic(), &g, &mc).unwrap();
        let s = Setup { sr: 1.0, sd: 0.0, rd: 1.0, i: 1.0, p_s: b.p_s, p_r: b.p_r, p_i: b.p_i, r_i: b.r_i };
        let awgn = |f: fn(&ChannelGains, &PowerBudget, &OptimizerConfig) -> orthorelay::Result<orthorelay::RateResult>| {
            f(&g, &b, &cfg).unwrap().rate
        };
        let pairs = [
            ("du", fading::rate_fading_du(&batch, &b, &cfg).unwrap().rate, awgn(orthorelay::awgn::rate_du)),
            ("ds", fading::rate_fading_ds(&batch, &b, &cfg).unwrap().rate, common::ds_multihop(&s)),
            ("cu", fading::rate_fading_cu(&batch, &b, &cfg).unwrap().rate, awgn(orthorelay::awgn::rate_cu)),
            ("cs1", fading::rate_fading_cs1(&batch, &b, &cfg).unwrap().rate, awgn(orthorelay::awgn::rate_cs1)),
            ("cs2", fading::rate_fading_cs2(&batch, &b, &cfg).unwrap().rate, common::cs2_unbinned(&s)),
            ("aid", fading::rate_fading_aid(&batch, &b, &cfg).unwrap().rate, awgn(orthorelay::awgn::rate_aid)),
            ("ni", fading::rate_fading_ni_multihop(&batch, &b).rate, awgn(orthorelay::awgn::rate_ni)),
        ];
        for (name, f, a) in pairs {
            let gap = (f - a).abs();
            if gap >= worst.0 {
                worst = (gap, format!("{name} at p_i={}, r_i={}: {f:.6} vs {a:.6}", b.p_i, b.r_i));
            }
        }
    }
    pass &= worst.0 < 1e-3;
    notes.push(format!("multihop max gap {:.1e} ({})", worst.0, worst.1));
    outcome(pass, notes.join("; "))
}

fn structured_p2p(t: &Tables) -> Outcome {
    let f2 = &t.fading_fig2;
    let (s, u) = (col(f2, Scheme::FadingP2pS), col(f2, Scheme::FadingP2pU));
    let (ss, su) = (se(f2, Scheme::FadingP2pS), se(f2, Scheme::FadingP2pU));
    let n = f2.rows.len();
    let resolved: Vec<bool> = (0..n).map(|k| beyond_two_se(s[k], ss[k], u[k], su[k])).collect();
    // First index from which every later point is resolved.
    let onset = (0..n).rev().take_while(|&k| resolved[k]).last();
    let part1 = onset.is_some();

    let spec = FigurePreset::FadingFig1.spec();
    let mut gaps = Vec::new();
    for k in [0.1, 1.0, 10.0, 100.0] {
        let point = spec.point(k);
        let batch = point.batch(&spec.mc).unwrap();
        let ni = point.evaluate(Scheme::FadingNi, batch.as_ref(), &spec.optimizer).unwrap();
        let u = point.evaluate(Scheme::FadingP2pU, batch.as_ref(), &spec.optimizer).unwrap();
        let gap_se = ni.std_error.unwrap().hypot(u.std_error.unwrap());
        gaps.push((k, ni.rate - u.rate, gap_se));
    }
    let part2 = gaps.windows(2).all(|w| beyond_two_se(w[0].1, w[0].2, w[1].1, w[1].2));
    let listed: Vec<String> = gaps.iter().map(|(k, g, s)| format!("K={k}: {g:.4}±{s:.4}")).collect();
    outcome(
        part1 && part2,
        format!(
            "p2p_s > p2p_u beyond 2 SE for every p_i >= {} dB; gap ni - p2p_u: {}",
            onset.map(|k| format!("{}", f2.rows[k].x)).unwrap_or_else(|| "none".into()),
            listed.join(", ")
        ),
    )
}

fn multihop_structured(t: &Tables) -> Outcome {
    let f3 = &t.fading_fig3;
    let (ds, du) = (col(f3, Scheme::FadingDs), col(f3, Scheme::FadingDu));
    let (sds, sdu) = (se(f3, Scheme::FadingDs), se(f3, Scheme::FadingDu));
    let hits: Vec<f64> = (0..f3.rows.len())
        .filter(|&k| beyond_two_se(ds[k], sds[k], du[k], sdu[k]))
        .map(|k| f3.rows[k].x)
        .collect();
    outcome(
        !hits.is_empty(),
        format!(
            "ds > du beyond 2 SE at {} p_i points (from {} dB)",
            hits.len(),
            hits.first().map_or("-".into(), |x| format!("{x}"))
        ),
    )
}

fn global_invariants(t: &Tables) -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    let all = [
        ("fig1", &t.fig1),
        ("fig2", &t.fig2),
        ("fig3", &t.fig3),
        ("fig5", &t.fig5),
        ("fig2 |h_sr|=100", &t.strong_first_hop),
        ("fading_fig1", &t.fading_fig1),
        ("fading_fig2", &t.fading_fig2),
        ("fading_fig3", &t.fading_fig3),
    ];
    for (name, table) in all {
        let bound = if table.schemes.contains(&Scheme::Ni) { Scheme::Ni } else { Scheme::FadingNi };
        let b = table.schemes.iter().position(|s| *s == bound).expect("bound column");
        for row in &table.rows {
            let limit = row.cells[b];
            for (s, cell) in table.schemes.iter().zip(&row.cells) {
                checked += 1;
                let slack = if s.is_fading() {
                    2.0 * cell.std_error.unwrap_or(0.0).hypot(limit.std_error.unwrap_or(0.0))
                } else {
                    1e-9
                };
                if cell.rate > limit.rate + slack {
                    violations.push(format!("{name} {s} at x={}: {} > {}", row.x, cell.rate, limit.rate));
                }
            }
        }
    }
    let repeat = [
        FigurePreset::Fig1.config_text().to_string(),
        format!("{}\nfrom=0\nto=20\nstep=10", FigurePreset::FadingFig3.config_text()),
    ];
    let identical = repeat.iter().all(|text| csv(&sweep(text)) == csv(&sweep(text)));
    outcome(
        violations.is_empty() && identical,
        format!(
            "{checked} cells checked, {} above the bound{}; repeated CSV byte-identical: {identical}",
            violations.len(),
            violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut failures = 0;
    let mut report = |id: u32, title: &str, o: Outcome, since: Instant| {
        if !o.pass {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {} {title}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            since.elapsed().as_secs_f64()
        );
    };

    let t = Instant::now();
    report(1, "oracle equivalence", oracle_equivalence(), t);

    let t = Instant::now();
    let preset = |p: FigurePreset| sweep(p.config_text());
    let tables = Tables {
        fig1: preset(FigurePreset::Fig1),
        fig2: preset(FigurePreset::Fig2),
        fig3: preset(FigurePreset::Fig3),
        fig5: preset(FigurePreset::Fig5),
        strong_first_hop: sweep(&format!("{}\nschemes=du,ni\nh_sr=100", FigurePreset::Fig2.config_text())),
        fading_fig1: preset(FigurePreset::FadingFig1),
        fading_fig2: preset(FigurePreset::FadingFig2),
        fading_fig3: preset(FigurePreset::FadingFig3),
    };
    println!("(preset sweeps computed in {:.1}s)", t.elapsed().as_secs_f64());

    let t = Instant::now();
    report(2, "low/high interference ordering", fig1_shape(&tables), t);
    let t = Instant::now();
    report(3, "flat rates", flatness(&tables), t);
    let t = Instant::now();
    report(4, "digital sharing at moderate interference", fig2_claim(&tables), t);
    let t = Instant::now();
    report(5, "analog input description beats digital sharing", fig3_claim(&tables), t);
    let t = Instant::now();
    report(6, "multihop r_i = 0 anchor", multihop_anchor(&tables), t);
    let t = Instant::now();
    report(7, "capacity regimes", capacity_regimes(), t);
    let t = Instant::now();
    report(8, "deterministic fading limit", deterministic_limit(), t);
    let t = Instant::now();
    report(9, "point-to-point fading properties", structured_p2p(&tables), t);
    let t = Instant::now();
    report(10, "multihop structured forwarding", multihop_structured(&tables), t);
    let t = Instant::now();
    report(11, "global bounds and reproducibility", global_invariants(&tables), t);

    println!("acceptance: {failures} failing criteria, {:.1}s total", start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
