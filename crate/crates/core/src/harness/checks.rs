//! Lemma checks.
//!
//! The two-level checks (`match_count_mean`, `second_moment`, `coverage`)
//! compare level `L` against level `L + ℓ` of dictionaries grown by the
//! idealized encoder. The level sizes entering the bounds are the realized
//! mean live counts, since a short build need not fill every level to its
//! cap; the cap is reported alongside.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bits::{BitSequence, BitWriter};
use crate::codec::idealized::encode_idealized_into;
use crate::dictionary::{default_ell, LevelConfig};
use crate::matching::{
    ball_probability, cycle_lemma_lower_bound, match_probability, matches_prefixwise,
    optimal_type_sequence,
};
use crate::rd_math::{rate_distortion, DistortionBudget, SourceModel};
use crate::{Error, Result};

use super::builder::{build_dictionary, live_at_depth};
use super::report::{Comparison, LemmaReport};
use super::{mean_se, random_bits, trial_rng, ExperimentConfig};

/// Names accepted by [`run_check`], in the order `all` runs them.
pub const CHECKS: [&str; 9] = [
    "match_count_mean",
    "second_moment",
    "coverage",
    "symmetry",
    "cycle_lemma",
    "frontier_growth",
    "short_phrases",
    "ball_intersection",
    "random_codebook_baseline",
];

/// Runs one named check.
pub fn run_check(name: &str, cfg: &ExperimentConfig) -> Result<Vec<LemmaReport>> {
    Ok(match name {
        "match_count_mean" => vec![check_match_count_mean(cfg)?],
        "second_moment" => vec![check_match_count_second_moment(cfg)?],
        "coverage" => vec![check_coverage_probability(cfg)?],
        "symmetry" => vec![check_symmetry(cfg)?],
        "cycle_lemma" => check_cycle_lemma(cfg),
        "frontier_growth" => vec![check_frontier_growth(cfg)?],
        "short_phrases" => vec![check_short_phrases(cfg)?],
        "ball_intersection" => vec![check_ball_intersection(cfg)?],
        "random_codebook_baseline" => vec![random_codebook_baseline(cfg)?],
        other => return Err(Error::Config(format!("unknown check {other:?}"))),
    })
}

/// Runs `cfg.checks`, or every check when that list is empty. A zero
/// rate-distortion function turns `short_phrases` into a note.
pub fn run_all(cfg: &ExperimentConfig) -> Result<Vec<LemmaReport>> {
    let names: Vec<&str> = if cfg.checks.is_empty() {
        CHECKS.to_vec()
    } else {
        cfg.checks.iter().map(String::as_str).collect()
    };
    let mut out = Vec::new();
    for name in names {
        match run_check(name, cfg) {
            Err(Error::ZeroRate) => out.push(
                LemmaReport::new(name, cell(cfg.p, cfg.distortion, ""), 0.0, 0.0, Comparison::Equal, 1, 0.0)
                    .diagnostic()
                    .with_note("skipped: R(D) = 0"),
            ),
            other => out.extend(other?),
        }
    }
    Ok(out)
}

fn cell(src: SourceModel, dist: DistortionBudget, extra: &str) -> String {
    let (pn, pd) = src.to_ratio();
    let mut s = format!("p={pn}/{pd} D={}/{}", dist.num(), dist.den());
    if !extra.is_empty() {
        s.push(' ');
        s.push_str(extra);
    }
    s
}

/// `p_L`: match probability of the canonical optimal-type string.
fn p_level(len: u32, src: SourceModel, dist: DistortionBudget) -> f64 {
    match_probability(&optimal_type_sequence(len as usize, src, dist), dist, src)
}

fn count_matches(x: &BitSequence, codelets: &[BitSequence], dist: DistortionBudget) -> u64 {
    codelets
        .iter()
        .filter(|y| matches_prefixwise(&x.prefix(y.len()), y, dist).expect("equal lengths"))
        .count() as u64
}

/// Per-trial observation for the two-level checks.
#[derive(Clone, Copy, Debug)]
struct LevelSample {
    size_l: u64,
    size_next: u64,
    n_l: u64,
    n_next: u64,
}

struct TwoLevel {
    ell: u32,
    level: u32,
    p_l: f64,
    p_next: f64,
    cap_l: u64,
    cap_next: u64,
    samples: Vec<LevelSample>,
}

impl TwoLevel {
    fn mean_sizes(&self) -> (f64, f64) {
        let t = self.samples.len() as f64;
        let a = self.samples.iter().map(|s| s.size_l as f64).sum::<f64>() / t;
        let b = self.samples.iter().map(|s| s.size_next as f64).sum::<f64>() / t;
        (a, b)
    }

    fn cell(&self, cfg: &ExperimentConfig) -> String {
        cell(
            cfg.p,
            cfg.distortion,
            &format!("ell={} L={}->{}", self.ell, self.level, self.level + self.ell),
        )
    }

    fn size_note(&self) -> String {
        let (a, b) = self.mean_sizes();
        format!(
            "mean |D_L|={a:.3} (cap {}), mean |D_L+ell|={b:.3} (cap {}), p_L={:.6e}, p_L+ell={:.6e}",
            self.cap_l, self.cap_next, self.p_l, self.p_next
        )
    }
}

fn two_level_samples(cfg: &ExperimentConfig) -> Result<TwoLevel> {
    let ell = cfg.ell.unwrap_or(2);
    let level = cfg.level;
    if ell == 0 || !level.is_multiple_of(ell) {
        return Err(Error::Config(format!("level {level} is not a multiple of ell {ell}")));
    }
    if level + ell > 24 {
        return Err(Error::Config(format!("level {} exceeds 24", level + ell)));
    }
    let next = level + ell;
    let (src, dist) = (cfg.p, cfg.distortion);
    let caps = LevelConfig::new(ell, cfg.build_bits, cfg.delta, src, dist)?;
    let samples = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<LevelSample> {
            let dict = build_dictionary(ell, cfg.build_bits, cfg.delta, src, dist, cfg.seed, trial)?;
            let at_l = live_at_depth(&dict, level);
            let at_next = live_at_depth(&dict, next);
            // the probe draws from a stream disjoint from the builder's
            let x = random_bits(&mut trial_rng(cfg.seed ^ 0x5eed_5eed_5eed_5eed, trial), next as usize, src);
            Ok(LevelSample {
                size_l: at_l.len() as u64,
                size_next: at_next.len() as u64,
                n_l: count_matches(&x, &at_l, dist),
                n_next: count_matches(&x, &at_next, dist),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwoLevel {
        ell,
        level,
        p_l: p_level(level, src, dist),
        p_next: p_level(next, src, dist),
        cap_l: caps.size_at(level / ell),
        cap_next: caps.size_at(next / ell),
        samples,
    })
}

/// `E N_L = M_L p_L`.
pub fn check_match_count_mean(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let tl = two_level_samples(cfg)?;
    let n: Vec<f64> = tl.samples.iter().map(|s| s.n_l as f64).collect();
    let diff: Vec<f64> = tl.samples.iter().map(|s| s.n_l as f64 - s.size_l as f64 * tl.p_l).collect();
    let (estimate, _) = mean_se(&n);
    let (_, se) = mean_se(&diff);
    let (m_l, _) = tl.mean_sizes();
    Ok(LemmaReport::new(
        "match_count_mean",
        tl.cell(cfg),
        estimate,
        m_l * tl.p_l,
        Comparison::Equal,
        tl.samples.len() as u64,
        se,
    )
    .with_note(tl.size_note()))
}

/// `E N²_{L+ℓ} <= (E N²_L + E N_L) (M_{L+ℓ} p_{L+ℓ} / (M_L p_L))²`.
pub fn check_match_count_second_moment(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let tl = two_level_samples(cfg)?;
    let (m_l, m_next) = tl.mean_sizes();
    let denom = m_l * tl.p_l;
    let factor = if denom > 0.0 { (m_next * tl.p_next / denom).powi(2) } else { f64::INFINITY };
    let lhs: Vec<f64> = tl.samples.iter().map(|s| (s.n_next as f64).powi(2)).collect();
    let base: Vec<f64> = tl.samples.iter().map(|s| (s.n_l as f64).powi(2) + s.n_l as f64).collect();
    let (estimate, _) = mean_se(&lhs);
    let (base_mean, _) = mean_se(&base);
    let bound = base_mean * factor;
    let se = if factor.is_finite() {
        let diff: Vec<f64> = lhs.iter().zip(&base).map(|(a, b)| a - factor * b).collect();
        mean_se(&diff).1
    } else {
        0.0
    };
    let mean_next = tl.samples.iter().map(|s| s.n_next as f64).sum::<f64>() / tl.samples.len() as f64;
    Ok(LemmaReport::new(
        "second_moment",
        tl.cell(cfg),
        estimate,
        bound,
        Comparison::AtMost,
        tl.samples.len() as u64,
        se,
    )
    .with_note(format!("E N_L+ell={mean_next:.4}; {}", tl.size_note())))
}

/// `P(N_{L+ℓ} > 0) >= P(N_L > 0) / (P(N_L > 0) + 1 / (M_L p_L))`.
pub fn check_coverage_probability(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let tl = two_level_samples(cfg)?;
    let (m_l, _) = tl.mean_sizes();
    let hit_l: Vec<f64> = tl.samples.iter().map(|s| (s.n_l > 0) as u8 as f64).collect();
    let hit_next: Vec<f64> = tl.samples.iter().map(|s| (s.n_next > 0) as u8 as f64).collect();
    let (a, _) = mean_se(&hit_l);
    let (b, _) = mean_se(&hit_next);
    let mp = m_l * tl.p_l;
    let (bound, slope) = if mp > 0.0 {
        let c = 1.0 / mp;
        if a + c > 0.0 {
            (a / (a + c), c / (a + c).powi(2))
        } else {
            (0.0, 0.0)
        }
    } else {
        (0.0, 0.0)
    };
    // delta method on b - g(a)
    let diff: Vec<f64> = hit_next.iter().zip(&hit_l).map(|(y, x)| y - slope * x).collect();
    let (_, se) = mean_se(&diff);
    Ok(LemmaReport::new(
        "coverage",
        tl.cell(cfg),
        b,
        bound,
        Comparison::AtLeast,
        tl.samples.len() as u64,
        se,
    )
    .with_note(format!("P(N_L>0)={a:.4}; {}", tl.size_note())))
}

/// All length-`len` strings with `ones` ones, as integers in increasing
/// (hence lexicographic) order.
fn type_class(len: u32, ones: u32) -> Vec<u64> {
    (0u64..1 << len).filter(|v| v.count_ones() == ones).collect()
}

/// `P(y ∈ D_L)` is the same for every `y` in the optimal type class.
pub fn check_symmetry(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let ell = cfg.ell.unwrap_or(1);
    let level = cfg.level;
    if level > 8 || ell == 0 || !level.is_multiple_of(ell) {
        return Err(Error::Config(format!("symmetry needs L <= 8 and a multiple of ell, got L={level} ell={ell}")));
    }
    let (src, dist) = (cfg.p, cfg.distortion);
    let ones = optimal_type_sequence(level as usize, src, dist).count_ones() as u32;
    let class = type_class(level, ones);
    let per_trial: Vec<Vec<bool>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<bool>> {
            let dict = build_dictionary(ell, cfg.build_bits, cfg.delta, src, dist, cfg.seed, trial)?;
            Ok(class
                .iter()
                .map(|&v| {
                    let node = dict.tree().lookup(&BitSequence::from_value(v, level as usize));
                    node.is_some_and(|n| dict.is_live(n))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let t = cfg.trials as f64;
    let counts: Vec<f64> = (0..class.len())
        .map(|i| per_trial.iter().filter(|row| row[i]).count() as f64)
        .collect();
    let k = class.len();
    let mean_count = counts.iter().sum::<f64>() / k as f64;
    let f = mean_count / t;
    let p_value = if k < 2 || f <= 0.0 || f >= 1.0 {
        1.0
    } else {
        let stat: f64 = counts.iter().map(|c| (c - mean_count).powi(2)).sum::<f64>() / (t * f * (1.0 - f));
        let chi = ChiSquared::new((k - 1) as f64).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        1.0 - chi.cdf(stat)
    };
    let freqs: Vec<String> = counts.iter().map(|c| format!("{:.4}", c / t)).collect();
    Ok(LemmaReport::new(
        "symmetry",
        cell(src, dist, &format!("ell={ell} L={level} ones={ones}")),
        p_value,
        0.01,
        Comparison::AtLeast,
        cfg.trials,
        0.0,
    )
    .with_note(format!(
        "chi-square p-value over {k} strings; frequencies [{}]; sum {:.4}",
        freqs.join(" "),
        counts.iter().sum::<f64>() / t
    )))
}

/// `P(X ~ y) >= (1 - D/2)² / L · P(B(y, D))` for the canonical optimal-type
/// `y`, `L = 2..=16`, one report per `(p, D)` cell. Exact DP, no sampling.
pub fn check_cycle_lemma(_cfg: &ExperimentConfig) -> Vec<LemmaReport> {
    let mut out = Vec::new();
    for p in [(3u32, 10u32), (1, 2)] {
        for d in [(1u32, 10u32), (1, 4), (1, 2)] {
            let src = SourceModel::from_ratio(p.0, p.1).expect("valid");
            let dist = DistortionBudget::new(d.0, d.1).expect("valid");
            let mut worst = f64::INFINITY;
            let mut worst_len = 0;
            for len in 2..=16usize {
                let y = optimal_type_sequence(len, src, dist);
                let slack = match_probability(&y, dist, src) - cycle_lemma_lower_bound(&y, dist, src);
                if slack < worst {
                    worst = slack;
                    worst_len = len;
                }
            }
            out.push(
                LemmaReport::new("cycle_lemma", cell(src, dist, "L=2..16"), worst, 0.0, Comparison::AtLeast, 15, 0.0)
                    .with_slack(0.0, 1e-15)
                    .with_note(format!("smallest margin at L={worst_len}")),
            );
        }
    }
    out
}

/// Fraction of encodes in which some `|Z_kℓ|` exceeds `(kℓ)^4/δ` is at most `δ`.
pub fn check_frontier_growth(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let n = cfg.n_values[0];
    let ell = cfg.ell.unwrap_or_else(|| default_ell(n));
    let (src, dist) = (cfg.p, cfg.distortion);
    let level_cfg = LevelConfig::new(ell, n, cfg.delta, src, dist)?;
    let runs: Vec<(bool, Vec<usize>)> = (0..cfg.frontier_trials)
        .into_par_iter()
        .map(|trial| {
            let x = random_bits(&mut trial_rng(cfg.seed, trial), n as usize, src);
            let mut sink = BitWriter::new();
            let out = encode_idealized_into(&x, dist, Some(src), level_cfg.clone(), None, &mut sink);
            (out.stats.frontier_violation, out.stats.max_frontier)
        })
        .collect();
    let t = runs.len() as f64;
    let violations = runs.iter().filter(|r| r.0).count();
    let mut max_frontier: Vec<usize> = Vec::new();
    for (_, sizes) in &runs {
        if max_frontier.len() < sizes.len() {
            max_frontier.resize(sizes.len(), 0);
        }
        for (m, &s) in max_frontier.iter_mut().zip(sizes) {
            *m = (*m).max(s);
        }
    }
    let d = cfg.delta;
    Ok(LemmaReport::new(
        "frontier_growth",
        cell(src, dist, &format!("ell={ell} n={n} delta={d}")),
        violations as f64 / t,
        d,
        Comparison::AtMost,
        runs.len() as u64,
        (d * (1.0 - d) / t).sqrt(),
    )
    .with_note(format!("{violations} violating runs; largest frontier per level {max_frontier:?}")))
}

/// Live codelets shorter than `(log2 n - 7ℓ) / R(D)` versus `n / (log2 n)²`.
/// The statement is asymptotic, so the report never gates.
pub fn check_short_phrases(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let (src, dist) = (cfg.p, cfg.distortion);
    let rate = rate_distortion(src, dist);
    if rate <= 0.0 {
        return Err(Error::ZeroRate);
    }
    let n = *cfg.n_values.iter().max().expect("validated nonempty");
    let ell = cfg.ell.unwrap_or_else(|| default_ell(n));
    let log_n = (n as f64).log2();
    let threshold = (log_n - 7.0 * ell as f64) / rate;
    let level_cfg = LevelConfig::new(ell, n, cfg.delta, src, dist)?;
    let x = random_bits(&mut trial_rng(cfg.seed, 0), n as usize, src);
    let mut sink = BitWriter::new();
    let out = encode_idealized_into(&x, dist, Some(src), level_cfg, None, &mut sink);
    let dict = out.dictionary;
    let short = dict
        .live()
        .iter()
        .filter(|&&node| (dict.tree().depth(node) as f64) < threshold)
        .count();
    Ok(LemmaReport::new(
        "short_phrases",
        cell(src, dist, &format!("ell={ell} n={n}")),
        short as f64,
        n as f64 / (log_n * log_n),
        Comparison::AtMost,
        1,
        0.0,
    )
    .diagnostic()
    .with_note(format!(
        "asymptotic statement; threshold depth {threshold:.3}, {} live codelets",
        dict.live_count()
    )))
}

/// Probability mass of `z` under Bernoulli(p) for a `len`-bit integer.
fn mass(z: u64, len: u32, p: f64) -> f64 {
    let ones = z.count_ones() as i32;
    p.powi(ones) * (1.0 - p).powi(len as i32 - ones)
}

/// Prefix-wise match of two `len`-bit integers (MSB first).
fn prefix_ok(diff: u64, len: u32, dist: DistortionBudget) -> bool {
    (1..=len).all(|l| {
        let top = (diff >> (len - l)).count_ones() as u64;
        dist.allows(top, l as u64)
    })
}

fn to_int(y: &BitSequence) -> u64 {
    y.iter().fold(0, |acc, b| (acc << 1) | b as u64)
}

/// Exhaustive `P(A(y) ∩ A(ỹ))` over `len`-bit strings, where `A` is the
/// Hamming ball (`prefixwise = false`) or the prefix-wise match set.
fn intersection(y: u64, z: u64, len: u32, dist: DistortionBudget, p: f64, prefixwise: bool) -> f64 {
    let radius = dist.max_mismatches(len as u64) as u32;
    (0u64..1 << len)
        .filter(|&x| {
            if prefixwise {
                prefix_ok(x ^ y, len, dist) && prefix_ok(x ^ z, len, dist)
            } else {
                (x ^ y).count_ones() <= radius && (x ^ z).count_ones() <= radius
            }
        })
        .map(|x| mass(x, len, p))
        .sum()
}

/// `P(B(y_L y_ℓ) ∩ B(ỹ_L ỹ_ℓ)) <= P(B(y_L) ∩ B(ỹ_L)) (p_{L+ℓ} / p_L)²` on
/// random distinct same-type pairs, by exhaustive enumeration. The estimate
/// is the largest left/right ratio seen.
pub fn check_ball_intersection(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let ell = cfg.ell.unwrap_or(2);
    let level = cfg.level;
    let total = level + ell;
    if total > 16 {
        return Err(Error::Config(format!("L + ell = {total} exceeds 16")));
    }
    let (src, dist) = (cfg.p, cfg.distortion);
    let canon_l = optimal_type_sequence(level as usize, src, dist);
    let canon_t = optimal_type_sequence(total as usize, src, dist);
    let ball_ratio = (ball_probability(&canon_t, dist, src) / ball_probability(&canon_l, dist, src)).powi(2);
    let match_ratio = (match_probability(&canon_t, dist, src) / match_probability(&canon_l, dist, src)).powi(2);
    let ones = canon_t.count_ones() as usize;
    if ones == 0 || ones == total as usize {
        return Err(Error::Config("type class has a single member; no distinct pairs".into()));
    }
    let mut rng = trial_rng(cfg.seed, 0);
    let mut pattern: Vec<bool> = (0..total as usize).map(|i| i < ones).collect();
    let mut pairs = Vec::with_capacity(cfg.pairs as usize);
    while (pairs.len() as u64) < cfg.pairs {
        pattern.shuffle(&mut rng);
        let a = pattern.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        pattern.shuffle(&mut rng);
        let b = pattern.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        if a != b {
            pairs.push((a, b));
        }
    }
    let p = src.p();
    let results: Vec<(f64, bool)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let ratio = |prefixwise: bool, factor: f64| {
                let lhs = intersection(a, b, total, dist, p, prefixwise);
                let rhs = intersection(a >> ell, b >> ell, level, dist, p, prefixwise) * factor;
                if lhs <= 0.0 {
                    0.0
                } else if rhs <= 0.0 {
                    f64::INFINITY
                } else {
                    lhs / rhs
                }
            };
            (ratio(false, ball_ratio), ratio(true, match_ratio) > 1.0 + 1e-12)
        })
        .collect();
    let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let violations = results.iter().filter(|r| r.0 > 1.0 + 1e-12).count();
    let prefix_violations = results.iter().filter(|r| r.1).count();
    Ok(LemmaReport::new(
        "ball_intersection",
        cell(src, dist, &format!("ell={ell} L={level} ones={ones}")),
        worst,
        1.0,
        Comparison::AtMost,
        results.len() as u64,
        0.0,
    )
    .with_slack(0.0, 1e-12)
    .with_note(format!(
        "{violations}/{} pairs violate with Hamming balls; {prefix_violations} with prefix-wise match sets",
        results.len()
    )))
}

/// Random codebook: draw `X ~ Bernoulli(1/2)^L`, add a uniformly chosen
/// type-`q` string within distance `D L` of `X` not already present, until
/// `M` strings are chosen. Checks the inclusion frequency of the first two
/// strings of the type class against `M(M-1) / (N(N-1))`.
pub fn random_codebook_baseline(cfg: &ExperimentConfig) -> Result<LemmaReport> {
    let level = cfg.level;
    if level > 16 {
        return Err(Error::Config(format!("baseline needs L <= 16, got {level}")));
    }
    let (src, dist) = (cfg.p, cfg.distortion);
    let ones = optimal_type_sequence(level as usize, src, dist).count_ones() as u32;
    let class = type_class(level, ones);
    let big_n = class.len() as u64;
    let m = cfg.baseline_m;
    if m > big_n {
        return Err(Error::Config(format!("baseline_m {m} exceeds type class size {big_n}")));
    }
    let radius = dist.max_mismatches(level as u64) as u32;
    let fair = SourceModel::new(0.5).expect("valid");
    let designated = (class[0], class.get(1).copied());
    let per_trial: Vec<(f64, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let mut book: Vec<u64> = Vec::with_capacity(m as usize);
            while (book.len() as u64) < m {
                let x = to_int(&random_bits(&mut rng, level as usize, fair));
                let near: Vec<u64> = class
                    .iter()
                    .copied()
                    .filter(|&y| (x ^ y).count_ones() <= radius && !book.contains(&y))
                    .collect();
                if !near.is_empty() {
                    book.push(near[rng.gen_range(0..near.len())]);
                }
            }
            let pair = match designated {
                (a, Some(b)) => (book.contains(&a) && book.contains(&b)) as u8 as f64,
                _ => 0.0,
            };
            let probe = random_bits(&mut rng, level as usize, src);
            let codelets: Vec<BitSequence> = book.iter().map(|&y| BitSequence::from_value(y, level as usize)).collect();
            let n = count_matches(&probe, &codelets, dist) as f64;
            (pair, n * n)
        })
        .collect();
    let pair: Vec<f64> = per_trial.iter().map(|r| r.0).collect();
    let sq: Vec<f64> = per_trial.iter().map(|r| r.1).collect();
    let (estimate, se) = mean_se(&pair);
    let (second, _) = mean_se(&sq);
    let bound = if big_n < 2 {
        0.0
    } else {
        (m * m.saturating_sub(1)) as f64 / (big_n * (big_n - 1)) as f64
    };
    // a degenerate (constant) indicator has se 0; fall back to the binomial se
    let se = if se == 0.0 { (bound * (1.0 - bound) / cfg.trials as f64).sqrt() } else { se };
    Ok(LemmaReport::new(
        "random_codebook_baseline",
        cell(src, dist, &format!("L={level} ones={ones} M={m} N={big_n}")),
        estimate,
        bound,
        Comparison::Equal,
        cfg.trials,
        se,
    )
    .with_note(format!("E N^2 (prefix-wise) = {second:.4}")))
}
