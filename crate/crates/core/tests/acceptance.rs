//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line before asserting.
//!
//! Tests share a lock so timing-sensitive criteria run undisturbed.

mod common;

use std::sync::Mutex;
use std::time::{Duration, Instant};

use clp_core::codec::practical::PracticalEncoder;
use clp_core::codec::{decode_bytes, encode};
use clp_core::harness::{build_dictionary, run_check, trial_rng, ExperimentConfig};
use clp_core::matching::{ball_probability, hamming_distance, match_probability};
use clp_core::rd_math::{lower_mutual_info, rate_distortion};
use clp_core::{BitSequence, DistortionBudget, EncoderOptions, MatchRelation, SourceModel, Variant};
use rand::Rng;

static SERIAL: Mutex<()> = Mutex::new(());

fn verdict(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn lock() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn seq(bits: &[bool]) -> BitSequence {
    bits.iter().copied().collect()
}

/// Log-uniform length in `[1, max]`.
fn length(rng: &mut impl Rng, max: usize) -> usize {
    let l = rng.gen_range(0.0..(max as f64).ln());
    (l.exp() as usize).clamp(1, max)
}

fn options(variant: Variant, p: f64) -> EncoderOptions {
    EncoderOptions {
        variant,
        source: Some(SourceModel::new(p).unwrap()),
        ..EncoderOptions::default()
    }
}

#[test]
fn criterion_1_math_kernel_oracle() {
    let _g = lock();
    let start = Instant::now();
    let mut worst_rd = 0f64;
    let mut worst_im = 0f64;
    let mut worst_arg = 0f64;
    let mut feasibility_mismatch = 0;
    let mut skipped_boundary = 0;
    for i in 0..50 {
        let p = (i + 1) as f64 / 51.0;
        let src = SourceModel::new(p).unwrap();
        for j in 0..20u32 {
            let dist = DistortionBudget::new(j, 40).unwrap();
            let d = dist.value();
            let (q_star, r_oracle) = common::oracle_rd(p, d, 64);
            worst_rd = worst_rd.max((rate_distortion(src, dist) - r_oracle).abs());
            if d < p.min(1.0 - p) {
                worst_arg = worst_arg.max((q_star - (p - d) / (1.0 - 2.0 * d)).abs());
            }
            for k in 0..100 {
                let q = k as f64 / 99.0;
                if ((q - p).abs() - d).abs() < 1e-9 {
                    skipped_boundary += 1;
                    continue;
                }
                match (lower_mutual_info(q, src, dist), common::oracle_lower_mi(q, p, d, 1000)) {
                    (Ok(got), Some(want)) => worst_im = worst_im.max((got - want).abs()),
                    (Err(_), None) => {}
                    _ => feasibility_mismatch += 1,
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_rd <= 1e-9
        && worst_im <= 1e-9
        && worst_arg <= 2e-3
        && feasibility_mismatch == 0
        && elapsed < Duration::from_secs(10);
    verdict(
        1,
        ok,
        format!(
            "max |R - oracle| = {worst_rd:.2e}, max |I_m - oracle| = {worst_im:.2e}, max argmin error = {worst_arg:.2e}, \
             feasibility mismatches = {feasibility_mismatch}, boundary points skipped = {skipped_boundary}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_worked_example() {
    let _g = lock();
    let x: BitSequence = "0110101101000".parse().unwrap();
    let mut enc = PracticalEncoder::new(&x, DistortionBudget::new(1, 2).unwrap(), MatchRelation::FullCodelet);
    let s1 = enc.step().unwrap();
    let c1 = enc.codebook();
    let s2 = enc.step().unwrap();
    let c2 = enc.codebook();
    let matches2: Vec<String> = s2.matches.iter().map(|m| m.to_string()).collect();
    let rest = enc.unparsed().to_string();
    let ok = s1.event.bits.to_string() == "0"
        && c1 == ["00", "01", "1"]
        && matches2 == ["01", "1"]
        && c2 == ["00", "010", "011", "1"]
        && rest == "0101101000";
    verdict(
        2,
        ok,
        format!("step 1 parse {}, C_1 {c1:?}, step 2 matches {matches2:?}, C_2 {c2:?}, unparsed {rest}", s1.event.bits),
    );
}

#[test]
fn criterion_3_lossless_reduction() {
    let _g = lock();
    let mut rng = common::rng(3);
    let mut failures = Vec::new();
    for case in 0..1000 {
        let n = if case < 2 { 100_000 } else { length(&mut rng, 100_000) };
        let p = rng.gen_range(0.05..0.95);
        let x = common::random_bools(&mut rng, n, p);
        let xs = seq(&x);
        for variant in [Variant::Practical, Variant::Idealized] {
            let enc = encode(&xs, DistortionBudget::lossless(), &options(variant, p)).unwrap();
            if enc.y != xs {
                failures.push(format!("case {case} {variant}: y != x"));
            }
            if variant == Variant::Practical {
                let lens: Vec<usize> = enc.events.iter().map(|e| e.len()).collect();
                if lens != common::reference_lz78(&x) {
                    failures.push(format!("case {case}: phrase boundaries differ from LZ78"));
                }
            }
        }
    }
    verdict(3, failures.is_empty(), format!("1000 inputs up to n = 100000, failures: {failures:?}"));
}

#[test]
fn criterion_4_distortion_guarantee() {
    let _g = lock();
    let mut rng = common::rng(4);
    let mut violations = 0;
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let n = length(&mut rng, 4096);
        let p = rng.gen_range(0.05..0.95);
        let den = rng.gen_range(1..=100u32);
        let num = rng.gen_range(0..=den / 2);
        let dist = DistortionBudget::new(num, den).unwrap();
        let x = seq(&common::random_bools(&mut rng, n, p));
        for variant in [Variant::Practical, Variant::Idealized] {
            let enc = encode(&x, dist, &options(variant, p)).unwrap();
            let d = hamming_distance(&x, &enc.y).unwrap();
            if d * den as u64 > num as u64 * n as u64 {
                violations += 1;
            }
            if num > 0 {
                worst = worst.max(d as f64 / n as f64 / dist.value());
            }
        }
    }
    verdict(
        4,
        violations == 0,
        format!("20000 encodes, {violations} violations, largest d(x,y)/(Dn) = {worst:.4}"),
    );
}

#[test]
fn criterion_5_round_trip() {
    let _g = lock();
    let mut rng = common::rng(5);
    let mut failures = 0;
    for variant in [Variant::Practical, Variant::Idealized] {
        for _ in 0..1000 {
            let n = length(&mut rng, 20_000);
            let p = rng.gen_range(0.05..0.95);
            let den = rng.gen_range(1..=100u32);
            let dist = DistortionBudget::new(rng.gen_range(0..=den / 2), den).unwrap();
            let x = seq(&common::random_bools(&mut rng, n, p));
            let mut opts = options(variant, p);
            if rng.gen_bool(0.25) {
                opts.source = None;
            }
            let enc = encode(&x, dist, &opts).unwrap();
            match decode_bytes(&enc.stream.to_bytes()) {
                Ok(y) if y.to_bytes_msb() == enc.y.to_bytes_msb() && y.len() == enc.y.len() => {}
                _ => failures += 1,
            }
        }
    }
    verdict(5, failures == 0, format!("2000 cases, {failures} mismatches"));
}

#[test]
fn criterion_6_exhaustive_oracles() {
    let _g = lock();
    let start = Instant::now();
    let mut rng = common::rng(6);
    let mut worst_ball = 0f64;
    let mut worst_match = 0f64;
    for len in 1..=16usize {
        for _ in 0..100 {
            let y = common::random_bools(&mut rng, len, 0.5);
            let p = rng.gen_range(0.05..0.95);
            let num = rng.gen_range(0..=10u64);
            let dist = DistortionBudget::new(num as u32, 20).unwrap();
            let src = SourceModel::new(p).unwrap();
            worst_ball = worst_ball.max((ball_probability(&seq(&y), dist, src) - common::enum_ball(&y, num, 20, p)).abs());
            worst_match =
                worst_match.max((match_probability(&seq(&y), dist, src) - common::enum_match(&y, num, 20, p)).abs());
        }
    }
    let mut depth_mismatch = 0;
    let mut giveups = 0;
    for trial in 0..500u64 {
        let ell = rng.gen_range(1..=4u32);
        let num = rng.gen_range(0..=6u32);
        let p = rng.gen_range(0.2..0.8);
        let bits = rng.gen_range(64..4000u64);
        let dist = DistortionBudget::new(num, 20).unwrap();
        let dict = build_dictionary(ell, bits, 0.01, SourceModel::new(p).unwrap(), dist, 6, trial).unwrap();
        let codelets: Vec<Vec<bool>> = dict.live().iter().map(|&n| dict.tree().codelet(n).iter().collect()).collect();
        let x = common::random_bools(&mut rng, 160, p);
        let start_at = rng.gen_range(0..120);
        let out = dict.partial_match_search(&seq(&x), start_at, dist);
        giveups += out.give_up as u32;
        let got = out.best.map_or(0, |n| dict.tree().depth(n) as usize);
        if got != common::brute_longest_match(&codelets, &x, start_at, num as u64, 20) {
            depth_mismatch += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_ball < 1e-12 && worst_match < 1e-12 && depth_mismatch == 0 && giveups == 0 && elapsed < Duration::from_secs(60);
    verdict(
        6,
        ok,
        format!(
            "max ball error {worst_ball:.1e}, max match error {worst_match:.1e}, search depth mismatches {depth_mismatch}/500, \
             give-ups {giveups}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_7_cycle_lemma() {
    let _g = lock();
    let reports = run_check("cycle_lemma", &ExperimentConfig::default()).unwrap();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.cell.clone()).collect();
    let min = reports.iter().map(|r| r.estimate).fold(f64::INFINITY, f64::min);
    verdict(
        7,
        failed.is_empty() && reports.len() == 6,
        format!("{} cells, smallest margin {min:.3e}, failing cells {failed:?}", reports.len()),
    );
}

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::parse(text).unwrap()
}

#[test]
fn criterion_8_lemma_suite() {
    let _g = lock();
    let start = Instant::now();
    let two_level = "p = 1/2\ndistortion = 1/4\nell = 2\nlevel = 4\ntrials = 10000\nbuild_bits = 256\n";
    let runs = [
        ("match_count_mean", config(two_level)),
        ("coverage", config(two_level)),
        (
            "symmetry",
            config("p = 1/2\ndistortion = 1/4\nell = 1\nlevel = 2\ntrials = 10000\nbuild_bits = 16\n"),
        ),
        (
            "frontier_growth",
            config("p = 1/2\ndistortion = 11/100\nn = 2^16\ndelta = 0.01\nfrontier_trials = 1000\n"),
        ),
        ("ball_intersection", config("p = 1/2\ndistortion = 1/4\nell = 2\nlevel = 8\npairs = 100\n")),
        (
            "random_codebook_baseline",
            config("p = 1/2\ndistortion = 1/4\nlevel = 4\nbaseline_m = 3\ntrials = 10000\n"),
        ),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, cfg) in &runs {
        for r in run_check(name, cfg).unwrap() {
            let enough = if *name == "frontier_growth" { r.samples >= 1000 } else { r.samples >= 10_000 || *name == "ball_intersection" };
            ok &= r.passed && r.is_consistent() && enough;
            println!("  {r}");
            lines.push(format!("{}={}", r.check, if r.passed { "pass" } else { "FAIL" }));
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    verdict(8, ok, format!("{} ({:.1}s)", lines.join(", "), elapsed.as_secs_f64()));
}

/// Mean idealized coding rate over `seeds` inputs of length `n`.
fn mean_rate(p: f64, dist: DistortionBudget, n: usize, seeds: u64, ell: Option<u32>) -> f64 {
    let src = SourceModel::new(p).unwrap();
    let mut opts = options(Variant::Idealized, p);
    opts.ell = ell;
    let total: f64 = (0..seeds)
        .map(|s| {
            let x = clp_core::harness::random_bits(&mut trial_rng(900 + s, 0), n, src);
            encode(&x, dist, &opts).unwrap().stream.coding_rate()
        })
        .sum();
    total / seeds as f64
}

#[test]
fn criterion_9_rate_convergence() {
    let _g = lock();
    let start = Instant::now();
    let dist = DistortionBudget::new(11, 100).unwrap();
    let rd = rate_distortion(SourceModel::new(0.5).unwrap(), dist);
    let ns = [1usize << 14, 1 << 16, 1 << 18];
    let rates: Vec<f64> = ns.iter().map(|&n| mean_rate(0.5, dist, n, 20, None)).collect();
    let decreasing = rates.windows(2).all(|w| w[1] < w[0]);
    let (g14, g18) = (rates[0] - rd, rates[2] - rd);
    let reduction = 1.0 - g18 / g14;
    let mut lossless = Vec::new();
    for p in [0.3, 0.5] {
        let h = rate_distortion(SourceModel::new(p).unwrap(), DistortionBudget::lossless());
        let r = mean_rate(p, DistortionBudget::lossless(), 1 << 18, 20, None);
        lossless.push((p, r, h, (r - h).abs() <= 0.1));
    }
    let elapsed = start.elapsed();
    let ok = decreasing && reduction >= 0.20 && lossless.iter().all(|l| l.3) && elapsed < Duration::from_secs(900);
    let lossless_text: Vec<String> = lossless
        .iter()
        .map(|(p, r, h, _)| format!("p={p}: rate {r:.4} vs h(p) {h:.4}"))
        .collect();
    verdict(
        9,
        ok,
        format!(
            "R(D) = {rd:.5}; mean rates {:.4} / {:.4} / {:.4} (decreasing: {decreasing}); gap reduction {:.1}% (need 20%); \
             D=0 at n=2^18: {}; {:.1}s",
            rates[0],
            rates[1],
            rates[2],
            reduction * 100.0,
            lossless_text.join(", "),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_10_quasi_linear_time() {
    let _g = lock();
    let dist = DistortionBudget::new(11, 100).unwrap();
    let src = SourceModel::new(0.5).unwrap();
    let opts = options(Variant::Idealized, 0.5);
    let mut times = Vec::new();
    for n in [1usize << 16, 1 << 17, 1 << 18] {
        let inputs: Vec<BitSequence> =
            (0..5).map(|s| clp_core::harness::random_bits(&mut trial_rng(1000 + s, 0), n, src)).collect();
        // warm-up pass so allocation and cache effects hit every size alike
        let _ = encode(&inputs[0], dist, &opts).unwrap();
        let start = Instant::now();
        for x in &inputs {
            std::hint::black_box(encode(x, dist, &opts).unwrap());
        }
        times.push(start.elapsed().as_secs_f64() / 5.0);
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    verdict(
        10,
        ratios.iter().all(|&r| r <= 2.5),
        format!(
            "mean encode time {:.1} / {:.1} / {:.1} ms at n = 2^16 / 2^17 / 2^18, doubling ratios {:.2} / {:.2}",
            times[0] * 1e3,
            times[1] * 1e3,
            times[2] * 1e3,
            ratios[0],
            ratios[1]
        ),
    );
}
