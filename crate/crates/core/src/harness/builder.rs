//! Random dictionaries for the lemma checks.

use crate::bits::{BitSequence, BitWriter};
use crate::codec::idealized::encode_idealized_into;
use crate::dictionary::{LevelConfig, LevelDictionary};
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::Result;

use super::{random_bits, trial_rng};

/// Dictionary left behind by an idealized encode of `bits` random source
/// bits drawn for `(seed, trial)`.
pub fn build_dictionary(
    ell: u32,
    bits: u64,
    delta: f64,
    src: SourceModel,
    dist: DistortionBudget,
    seed: u64,
    trial: u64,
) -> Result<LevelDictionary> {
    let cfg = LevelConfig::new(ell, bits, delta, src, dist)?;
    let x = random_bits(&mut trial_rng(seed, trial), bits as usize, src);
    let mut sink = BitWriter::new();
    Ok(encode_idealized_into(&x, dist, Some(src), cfg, None, &mut sink).dictionary)
}

/// Live codelets of length `depth`, creation order.
pub fn live_at_depth(dict: &LevelDictionary, depth: u32) -> Vec<BitSequence> {
    dict.live()
        .iter()
        .filter(|&&node| dict.tree().depth(node) == depth)
        .map(|&node| dict.tree().codelet(node))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_are_reproducible_and_respect_caps() {
        let src = SourceModel::new(0.5).unwrap();
        let dist = DistortionBudget::new(1, 4).unwrap();
        let a = build_dictionary(2, 256, 0.01, src, dist, 5, 0).unwrap();
        let b = build_dictionary(2, 256, 0.01, src, dist, 5, 0).unwrap();
        assert_eq!(a.live(), b.live());
        for (k, &count) in a.live_per_level().iter().enumerate() {
            assert!(count <= a.config().size_at(k as u32 + 1));
            assert_eq!(live_at_depth(&a, 2 * (k as u32 + 1)).len() as u64, count);
        }
    }
}
