//! Coding-rate sweeps over `(n, seed)`.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::codec::{encode, EncoderOptions};
use crate::rd_math::rate_distortion;
use crate::{Error, Result};

use super::{random_bits, trial_rng, ExperimentConfig};

/// One CSV row. Aggregate rows have `seed = None` and carry the means.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub distortion: f64,
    pub p: f64,
    pub seed: Option<u64>,
    pub rate: f64,
    pub rd: f64,
    pub gap: f64,
    pub escapes: f64,
    pub giveups: f64,
    pub runtime_s: f64,
}

/// Encodes `cfg.trials` random inputs at each `n` (trial `i` uses stream
/// `i` of `cfg.seed`) and returns the per-trial rows followed, for each `n`,
/// by its mean row. Trials run in parallel, so runtimes include contention.
pub fn rate_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let rd = rate_distortion(cfg.p, cfg.distortion);
    let opts = EncoderOptions {
        variant: cfg.variant,
        source: Some(cfg.p),
        ell: cfg.ell,
        delta: cfg.delta,
        ..EncoderOptions::default()
    };
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        let trials: Vec<SweepRow> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| -> Result<SweepRow> {
                let x = random_bits(&mut trial_rng(cfg.seed, trial), n as usize, cfg.p);
                let start = Instant::now();
                let enc = encode(&x, cfg.distortion, &opts)?;
                let runtime_s = start.elapsed().as_secs_f64();
                let rate = enc.stream.coding_rate();
                let (escapes, giveups) = enc.stats.map_or((0, 0), |s| (s.escapes, s.giveups));
                Ok(SweepRow {
                    n,
                    distortion: cfg.distortion.value(),
                    p: cfg.p.p(),
                    seed: Some(trial),
                    rate,
                    rd,
                    gap: rate - rd,
                    escapes: escapes as f64,
                    giveups: giveups as f64,
                    runtime_s,
                })
            })
            .collect::<Result<_>>()?;
        let t = trials.len() as f64;
        let mean = |f: fn(&SweepRow) -> f64| trials.iter().map(f).sum::<f64>() / t;
        let summary = SweepRow {
            n,
            distortion: cfg.distortion.value(),
            p: cfg.p.p(),
            seed: None,
            rate: mean(|r| r.rate),
            rd,
            gap: mean(|r| r.gap),
            escapes: mean(|r| r.escapes),
            giveups: mean(|r| r.giveups),
            runtime_s: mean(|r| r.runtime_s),
        };
        rows.extend(trials);
        rows.push(summary);
    }
    Ok(rows)
}

pub const SWEEP_COLUMNS: [&str; 10] = ["n", "D", "p", "seed", "rate", "R(D)", "gap", "escapes", "giveups", "runtime"];

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let err = |e: csv::Error| Error::Config(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS).map_err(err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.distortion.to_string(),
            r.p.to_string(),
            r.seed.map_or_else(|| "mean".to_string(), |s| s.to_string()),
            r.rate.to_string(),
            r.rd.to_string(),
            r.gap.to_string(),
            r.escapes.to_string(),
            r.giveups.to_string(),
            r.runtime_s.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv output: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::Variant;
    use crate::rd_math::DistortionBudget;

    #[test]
    fn sweep_rows_and_means() {
        let cfg = ExperimentConfig {
            n_values: vec![512, 2048],
            trials: 3,
            distortion: DistortionBudget::new(11, 100).unwrap(),
            variant: Variant::Idealized,
            ..ExperimentConfig::default()
        };
        let rows = rate_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.rate >= 0.0));
        let mean = &rows[3];
        assert_eq!(mean.seed, None);
        let avg = rows[..3].iter().map(|r| r.rate).sum::<f64>() / 3.0;
        assert!((mean.rate - avg).abs() < 1e-12);
        assert_eq!(rate_sweep(&cfg).unwrap()[0].rate, rows[0].rate);
        let mut buf = Vec::new();
        write_sweep(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().nth(4).unwrap().contains(",mean,"));
    }
}
