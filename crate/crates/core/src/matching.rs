//! Match relations between equal-length bit strings and their probabilities
//! under an i.i.d. Bernoulli source.
//!
//! Two relations are supported:
//!
//! * [`MatchRelation::FullCodelet`]: total Hamming distance at most `D * L`.
//! * [`MatchRelation::PrefixWise`] (`x ~ y`): every length-`l` prefix pair is
//!   within `D * l`. This is the relation the level-structured search relies
//!   on, because it is closed under taking prefixes.

use crate::bits::BitSequence;
use crate::rd_math::{optimal_reproduction_type, DistortionBudget, SourceModel, TypeFraction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchRelation {
    FullCodelet,
    PrefixWise,
}

impl MatchRelation {
    pub fn code(self) -> u8 {
        match self {
            MatchRelation::FullCodelet => 0,
            MatchRelation::PrefixWise => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(MatchRelation::FullCodelet),
            1 => Some(MatchRelation::PrefixWise),
            _ => None,
        }
    }
}

fn check_lengths(x: &BitSequence, y: &BitSequence) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(())
}

pub fn hamming_distance(x: &BitSequence, y: &BitSequence) -> Result<u64> {
    check_lengths(x, y)?;
    Ok(x.words()
        .iter()
        .zip(y.words())
        .map(|(a, b)| (a ^ b).count_ones() as u64)
        .sum())
}

pub fn matches_full(x: &BitSequence, y: &BitSequence, dist: DistortionBudget) -> Result<bool> {
    let d = hamming_distance(x, y)?;
    Ok(dist.allows(d, x.len() as u64))
}

pub fn matches_prefixwise(x: &BitSequence, y: &BitSequence, dist: DistortionBudget) -> Result<bool> {
    check_lengths(x, y)?;
    let mut mismatches = 0u64;
    for (w, (a, b)) in x.words().iter().zip(y.words()).enumerate() {
        let mut diff = a ^ b;
        while diff != 0 {
            let bit = diff.trailing_zeros() as u64;
            mismatches += 1;
            // a prefix can only become infeasible where a new mismatch lands
            if !dist.allows(mismatches, w as u64 * 64 + bit + 1) {
                return Ok(false);
            }
            diff &= diff - 1;
        }
    }
    Ok(true)
}

pub fn matches(rel: MatchRelation, x: &BitSequence, y: &BitSequence, dist: DistortionBudget) -> Result<bool> {
    match rel {
        MatchRelation::FullCodelet => matches_full(x, y, dist),
        MatchRelation::PrefixWise => matches_prefixwise(x, y, dist),
    }
}

pub fn type_of(v: &BitSequence) -> Result<TypeFraction> {
    if v.is_empty() {
        return Err(Error::EmptySequence);
    }
    TypeFraction::new(v.count_ones(), v.len() as u64)
}

/// `pmf[i] = P(Binomial(n, t) = i)`, built by repeated convolution so that
/// `t = 0` and `t = 1` need no special casing.
fn binomial_pmf(n: usize, t: f64) -> Vec<f64> {
    let mut pmf = vec![0.0; n + 1];
    pmf[0] = 1.0;
    for k in 1..=n {
        for i in (1..=k).rev() {
            pmf[i] = pmf[i] * (1.0 - t) + pmf[i - 1] * t;
        }
        pmf[0] *= 1.0 - t;
    }
    pmf
}

/// Source probability of the Hamming ball `{x : d(x, y) <= D * L}`.
///
/// Flips on the one-positions of `y` are Binomial(k, 1 - p), flips on the
/// zero-positions Binomial(L - k, p); the ball is the region `i + j <= r`.
pub fn ball_probability(y: &BitSequence, dist: DistortionBudget, src: SourceModel) -> f64 {
    let len = y.len();
    let ones = y.count_ones() as usize;
    let radius = dist.max_mismatches(len as u64) as usize;
    let p = src.p();
    let flips_on_ones = binomial_pmf(ones, 1.0 - p);
    let flips_on_zeros = binomial_pmf(len - ones, p);
    let mut zero_cdf = Vec::with_capacity(flips_on_zeros.len());
    let mut acc = 0.0;
    for v in &flips_on_zeros {
        acc += v;
        zero_cdf.push(acc);
    }
    let mut total = 0.0;
    for (i, w) in flips_on_ones.iter().enumerate() {
        if i > radius {
            break;
        }
        let j = (radius - i).min(len - ones);
        total += w * zero_cdf[j];
    }
    total.min(1.0)
}

/// `P(X ~ y)` under the prefix-wise relation, by dynamic programming over
/// (position, mismatches so far) with states pruned at `floor(D * l)`.
pub fn match_probability(y: &BitSequence, dist: DistortionBudget, src: SourceModel) -> f64 {
    let len = y.len();
    let p = src.p();
    let mut probs = vec![0.0f64; len + 2];
    probs[0] = 1.0;
    let mut reach = 0usize; // highest mismatch count with nonzero mass
    for l in 1..=len {
        let same = if y.get(l - 1) { p } else { 1.0 - p };
        let differ = 1.0 - same;
        let cap = dist.max_mismatches(l as u64) as usize;
        let top = (reach + 1).min(cap);
        for m in (0..=top).rev() {
            let stay = if m <= reach { probs[m] * same } else { 0.0 };
            let step = if m >= 1 { probs[m - 1] * differ } else { 0.0 };
            probs[m] = stay + step;
        }
        for v in probs.iter_mut().take(reach + 1).skip(top + 1) {
            *v = 0.0;
        }
        reach = top;
    }
    probs[..=reach].iter().sum::<f64>().min(1.0)
}

/// Lower bound `(1 - D/2)^2 / L * P(B(y, D))` on [`match_probability`] for
/// `y` of the optimal reproduction type.
pub fn cycle_lemma_lower_bound(y: &BitSequence, dist: DistortionBudget, src: SourceModel) -> f64 {
    let factor = 1.0 - dist.value() / 2.0;
    factor * factor / y.len() as f64 * ball_probability(y, dist, src)
}

/// Length-`len` string with `ones` ones spread as evenly as possible; bit
/// `i` is set when `floor((i+1) k / L)` steps past `floor(i k / L)`.
pub fn canonical_sequence(len: usize, ones: usize) -> BitSequence {
    assert!(ones <= len);
    (0..len)
        .map(|i| ((i + 1) * ones) / len > (i * ones) / len)
        .collect()
}

/// Length-`len` prefix of the sequence whose bit `i` is set when
/// `floor((i+1) q + 1/2)` steps past `floor(i q + 1/2)`, with `q` the optimal
/// reproduction type (`p` itself at `D = 1/2`). Every prefix has
/// `round(q L)` ones, and the strings for different lengths are nested, so
/// the match probability of the canonical string is nonincreasing in `L`.
pub fn optimal_type_sequence(len: usize, src: SourceModel, dist: DistortionBudget) -> BitSequence {
    let q = optimal_reproduction_type(src, dist).unwrap_or(src.p());
    let count = |i: usize| (i as f64 * q + 0.5).floor() as u64;
    (0..len).map(|i| count(i + 1) > count(i)).collect()
}
