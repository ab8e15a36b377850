//! Rate-distortion quantities for a Bernoulli source under Hamming distortion.
//!
//! Everything here reduces to a 2x2 joint distribution of a reproduction bit
//! `Y ~ q` and a source bit `X ~ p`. With `a = P(X=1, Y=1)` the joint has a
//! single free parameter, the distortion is `P(X != Y) = p + q - 2a`, and the
//! mutual information is convex in `a` with its unconstrained minimum at
//! independence (`a = pq`). That makes the constrained minimum a clamp:
//!
//! ```text
//! I_m(q, p, D) = I(a*),  a* = clamp(max(pq, (p + q - D) / 2), [max(0, p+q-1), min(p, q)])
//! R(p, D)      = h(p) - h(D)   for D < min(p, 1-p), else 0
//! q*(p, D)     = (p - D) / (1 - 2D)
//! ```

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::{Error, Result};

/// Slack for floating feasibility tests on quantities that are exact
/// rationals in disguise (types, budgets).
const FEAS_EPS: f64 = 1e-12;

/// Bernoulli parameter `p = P(X_i = 1)` of an i.i.d. binary source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourceModel {
    p: f64,
}

impl SourceModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("source probability {p} not in [0, 1]")));
        }
        Ok(Self { p })
    }

    pub fn from_ratio(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParameter(format!("source probability {num}/{den}")));
        }
        Ok(Self { p: num as f64 / den as f64 })
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Rational approximation used when the model is written into a stream
    /// header. Exact for decimal inputs such as 0.3 or 1/3.
    pub fn to_ratio(&self) -> (u32, u32) {
        if self.p == 0.0 {
            return (0, 1);
        }
        if self.p == 1.0 {
            return (1, 1);
        }
        match Ratio::<i32>::approximate_float(self.p) {
            Some(r) if *r.denom() > 0 && *r.numer() >= 0 => (*r.numer() as u32, *r.denom() as u32),
            _ => {
                let den = 1u32 << 30;
                ((self.p * den as f64).round() as u32, den)
            }
        }
    }

    /// The model a decoder reconstructs from [`Self::to_ratio`].
    pub fn quantized(&self) -> Self {
        let (n, d) = self.to_ratio();
        Self { p: n as f64 / d as f64 }
    }
}

impl fmt::Display for SourceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

impl FromStr for SourceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad numerator in {s:?}")))?;
            let d = d.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad denominator in {s:?}")))?;
            Self::from_ratio(n, d)
        } else {
            let p = s.parse().map_err(|_| Error::InvalidParameter(format!("bad probability {s:?}")))?;
            Self::new(p)
        }
    }
}

/// Target fraction of flipped bits, held as an exact rational `num / den`
/// with `0 <= num/den <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DistortionBudget {
    num: u32,
    den: u32,
}

impl DistortionBudget {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("distortion denominator is zero".into()));
        }
        if 2 * num as u64 > den as u64 {
            return Err(Error::InvalidParameter(format!("distortion {num}/{den} exceeds 1/2")));
        }
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn lossless() -> Self {
        Self { num: 0, den: 1 }
    }

    #[inline]
    pub fn num(&self) -> u32 {
        self.num
    }

    #[inline]
    pub fn den(&self) -> u32 {
        self.den
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `mismatches <= D * len`, exactly.
    #[inline]
    pub fn allows(&self, mismatches: u64, len: u64) -> bool {
        mismatches * self.den as u64 <= self.num as u64 * len
    }

    /// `floor(D * len)`.
    #[inline]
    pub fn max_mismatches(&self, len: u64) -> u64 {
        self.num as u64 * len / self.den as u64
    }
}

impl fmt::Display for DistortionBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for DistortionBudget {
    type Err = Error;

    /// Accepts `num/den` or a plain decimal such as `0.11`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("bad distortion {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            return Self::new(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 9 || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int * den + frac_v;
        let g = gcd64(num, den);
        let (num, den) = (num / g, den / g);
        if den > u32::MAX as u64 || num > u32::MAX as u64 {
            return Err(bad());
        }
        Self::new(num as u32, den as u32)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    gcd64(a as u64, b as u64) as u32
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Joint law of a bit pair `(Y, X)` with `P(X=1) = p`, `P(Y=1) = q` and
/// `P(X=1, Y=1) = a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinaryJoint {
    a: f64,
    p: f64,
    q: f64,
}

impl BinaryJoint {
    pub fn new(a: f64, p: f64, q: f64) -> Result<Self> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !unit(p) || !unit(q) {
            return Err(Error::InvalidParameter(format!("marginals p = {p}, q = {q}")));
        }
        let (lo, hi) = frechet_bounds(p, q);
        if a < lo - FEAS_EPS || a > hi + FEAS_EPS {
            return Err(Error::InvalidParameter(format!(
                "a = {a} outside Frechet bounds [{lo}, {hi}]"
            )));
        }
        Ok(Self { a: a.clamp(lo, hi), p, q })
    }

    /// Independent coupling.
    pub fn independent(p: f64, q: f64) -> Result<Self> {
        Self::new(p * q, p, q)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Cell probabilities indexed `[x][y]`.
    pub fn cells(&self) -> [[f64; 2]; 2] {
        let (a, p, q) = (self.a, self.p, self.q);
        [
            [(1.0 - p - q + a).max(0.0), (q - a).max(0.0)],
            [(p - a).max(0.0), a],
        ]
    }

    /// `P(X != Y)`, the expected Hamming distortion of a single letter.
    pub fn distortion(&self) -> f64 {
        self.p + self.q - 2.0 * self.a
    }
}

fn frechet_bounds(p: f64, q: f64) -> (f64, f64) {
    ((p + q - 1.0).max(0.0), p.min(q))
}

/// Empirical type of a string: `ones / length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeFraction {
    pub ones: u64,
    pub length: u64,
}

impl TypeFraction {
    pub fn new(ones: u64, length: u64) -> Result<Self> {
        if length == 0 || ones > length {
            return Err(Error::InvalidParameter(format!("type {ones}/{length}")));
        }
        Ok(Self { ones, length })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.ones as f64 / self.length as f64
    }
}

impl fmt::Display for TypeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.ones, self.length)
    }
}

/// `h(t) = -t log2 t - (1-t) log2 (1-t)`, with `0 log 0 = 0`.
pub fn binary_entropy(t: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&t));
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    -t * t.log2() - (1.0 - t) * (1.0 - t).log2()
}

/// Minimum of `I(X;Y)` over channels with `E d(X,Y) <= D`.
pub fn rate_distortion(src: SourceModel, dist: DistortionBudget) -> f64 {
    let (p, d) = (src.p(), dist.value());
    if d < p.min(1.0 - p) {
        binary_entropy(p) - binary_entropy(d)
    } else {
        0.0
    }
}

/// `I(X;Y)` in bits.
pub fn mutual_information(j: &BinaryJoint) -> f64 {
    let cells = j.cells();
    let px = [1.0 - j.p, j.p];
    let py = [1.0 - j.q, j.q];
    let mut total = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let c = cells[x][y];
            if c > 0.0 {
                total += c * (c / (px[x] * py[y])).log2();
            }
        }
    }
    total.max(0.0)
}

/// Lower mutual information `I_m(q, p, D)`: the least mutual information of
/// any joint with marginals `Y ~ q`, `X ~ p` and expected distortion at most
/// `D`. Returns [`Error::Infeasible`] when `|p - q| > D`.
pub fn lower_mutual_info(q: f64, src: SourceModel, dist: DistortionBudget) -> Result<f64> {
    lower_mutual_info_f64(q, src.p(), dist.value())
}

/// [`lower_mutual_info`] on raw probabilities.
pub fn lower_mutual_info_f64(q: f64, p: f64, d: f64) -> Result<f64> {
    if (p - q).abs() > d + FEAS_EPS {
        return Err(Error::Infeasible { q, p, d });
    }
    Ok(mutual_information(&minimizing_joint(q, p, d)))
}

/// The joint attaining [`lower_mutual_info`]; assumes feasibility.
pub fn minimizing_joint(q: f64, p: f64, d: f64) -> BinaryJoint {
    let (lo, hi) = frechet_bounds(p, q);
    let lo = lo.max((p + q - d) / 2.0);
    // at |p - q| = D the interval collapses to a point; rounding may invert it
    let a = if lo >= hi { hi } else { (p * q).clamp(lo, hi) };
    BinaryJoint { a, p, q }
}

/// Optimal reproduction type `q* = (p - D) / (1 - 2D)`, clamped to `[0, 1]`.
pub fn optimal_reproduction_type(src: SourceModel, dist: DistortionBudget) -> Result<f64> {
    let d = dist.value();
    if 2 * dist.num() as u64 == dist.den() as u64 {
        return Err(Error::InvalidParameter("optimal reproduction type undefined at D = 1/2".into()));
    }
    Ok(((src.p() - d) / (1.0 - 2.0 * d)).clamp(0.0, 1.0))
}
