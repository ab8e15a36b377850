//! Monte Carlo checks and rate sweeps.
//!
//! Every trial draws from its own ChaCha8 stream, selected by `(seed, trial)`,
//! so results are identical whether trials run in parallel or not. Trials
//! are collected in index order before any reduction.

pub mod builder;
pub mod checks;
pub mod config;
pub mod report;
pub mod sweep;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSequence;
use crate::rd_math::SourceModel;

pub use builder::{build_dictionary, live_at_depth};
pub use checks::{run_all, run_check, CHECKS};
pub use config::ExperimentConfig;
pub use report::{write_reports, Comparison, LemmaReport};
pub use sweep::{rate_sweep, write_sweep, SweepRow};

/// Generator for trial `trial` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `n` i.i.d. Bernoulli(p) bits.
pub fn random_bits<R: Rng>(rng: &mut R, n: usize, src: SourceModel) -> BitSequence {
    let p = src.p();
    if p == 0.5 {
        let mut out = BitSequence::with_capacity(n);
        let mut left = n;
        while left > 0 {
            let take = left.min(64);
            out.append(&BitSequence::from_value(rng.gen::<u64>() >> (64 - take), take));
            left -= take;
        }
        return out;
    }
    (0..n).map(|_| rng.gen_bool(p)).collect()
}

/// Sample mean and standard error of the mean.
pub(crate) fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let fair = SourceModel::new(0.5).unwrap();
        let a = random_bits(&mut trial_rng(9, 3), 200, fair);
        let b = random_bits(&mut trial_rng(9, 3), 200, fair);
        let c = random_bits(&mut trial_rng(9, 4), 200, fair);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 200);
        let biased = random_bits(&mut trial_rng(1, 0), 20_000, SourceModel::new(0.3).unwrap());
        let frac = biased.count_ones() as f64 / 20_000.0;
        assert!((frac - 0.3).abs() < 0.02, "{frac}");
    }

    #[test]
    fn mean_se_basics() {
        assert_eq!(mean_se(&[]), (0.0, 0.0));
        assert_eq!(mean_se(&[2.0]), (2.0, 0.0));
        let (m, se) = mean_se(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - 1.0).abs() < 1e-12);
    }
}
