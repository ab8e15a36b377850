//! Practical Codelet Parsing.
//!
//! The codebook starts as `{0, 1}`. At each step every leaf matching the
//! unparsed input is scored by `I_m(τ(m), τ(r), D)`, where `r` is the parsed
//! prefix of `x` if `m` were chosen; the lowest score wins and the chosen leaf
//! is replaced by its two one-bit extensions. The reconstruction `y` is then
//! coded losslessly with LZ78.

use crate::bits::BitSequence;
use crate::dictionary::{CodebookTree, LeafMatch, NodeRef};
use crate::matching::MatchRelation;
use crate::rd_math::{minimizing_joint, mutual_information, DistortionBudget, TypeFraction};
use crate::{Error, Result};

use super::{EventKind, ParseEvent};

/// Scores within this distance are treated as ties.
const TIE_EPS: f64 = 1e-12;

/// A match offered to [`select_codelet`]: the codelet and the type of the
/// parsed prefix `r` it would produce.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub leaf: NodeRef,
    pub codelet: BitSequence,
    pub parsed: TypeFraction,
}

/// `I_m(τ(m), τ(r), D)`, or `None` when `|τ(m) - τ(r)| > D` (tested exactly).
pub fn codelet_metric(codelet: TypeFraction, parsed: TypeFraction, dist: DistortionBudget) -> Option<f64> {
    let (mo, ml) = (codelet.ones as u128, codelet.length as u128);
    let (ro, rl) = (parsed.ones as u128, parsed.length as u128);
    let diff = (mo * rl).abs_diff(ro * ml);
    if diff * dist.den() as u128 > dist.num() as u128 * ml * rl {
        return None;
    }
    let joint = minimizing_joint(codelet.value(), parsed.value(), dist.value());
    Some(mutual_information(&joint))
}

/// Index into `candidates` of the lowest-metric codelet; infeasible
/// candidates score `+inf`. Ties go to the longer codelet, then the
/// lexicographically smaller one.
pub fn select_codelet(candidates: &[Candidate], dist: DistortionBudget) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::EmptyMatchSet);
    }
    let score = |c: &Candidate| {
        let t = TypeFraction {
            ones: c.codelet.count_ones(),
            length: c.codelet.len() as u64,
        };
        codelet_metric(t, c.parsed, dist).unwrap_or(f64::INFINITY)
    };
    let mut best = 0;
    let mut best_score = score(&candidates[0]);
    for (i, c) in candidates.iter().enumerate().skip(1) {
        let s = score(c);
        let cur = &candidates[best];
        let better = if s < best_score - TIE_EPS {
            true
        } else if s <= best_score + TIE_EPS || (s.is_infinite() && best_score.is_infinite()) {
            c.codelet.len() > cur.codelet.len()
                || (c.codelet.len() == cur.codelet.len() && lex_less(&c.codelet, &cur.codelet))
        } else {
            false
        };
        if better {
            best = i;
            best_score = s;
        }
    }
    Ok(best)
}

fn lex_less(a: &BitSequence, b: &BitSequence) -> bool {
    a.iter().lt(b.iter())
}

/// One parsing step, as reported by [`PracticalEncoder::step`].
#[derive(Clone, Debug)]
pub struct Step {
    /// Codelets that matched, lexicographic order.
    pub matches: Vec<BitSequence>,
    pub event: ParseEvent,
    /// Position in `x` where the step started.
    pub start: usize,
}

/// Step-by-step practical encoder over a fixed input.
#[derive(Clone, Debug)]
pub struct PracticalEncoder<'a> {
    x: &'a BitSequence,
    dist: DistortionBudget,
    rel: MatchRelation,
    tree: CodebookTree,
    y: BitSequence,
    pos: usize,
    parsed_ones: u64,
}

impl<'a> PracticalEncoder<'a> {
    pub fn new(x: &'a BitSequence, dist: DistortionBudget, rel: MatchRelation) -> Self {
        Self {
            x,
            dist,
            rel,
            tree: CodebookTree::init_practical(),
            y: BitSequence::with_capacity(x.len()),
            pos: 0,
            parsed_ones: 0,
        }
    }

    pub fn tree(&self) -> &CodebookTree {
        &self.tree
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn reconstruction(&self) -> &BitSequence {
        &self.y
    }

    /// Unparsed suffix of the input.
    pub fn unparsed(&self) -> BitSequence {
        self.x.slice(self.pos, self.x.len())
    }

    /// Current codelets as strings, lexicographic order.
    pub fn codebook(&self) -> Vec<String> {
        self.tree
            .leaves()
            .into_iter()
            .map(|l| self.tree.codelet(l).to_string())
            .collect()
    }

    /// Parses one phrase; `None` once the input is consumed.
    pub fn step(&mut self) -> Option<Step> {
        if self.pos >= self.x.len() {
            return None;
        }
        let start = self.pos;
        let found: Vec<LeafMatch> = self.tree.find_matches(self.x, start, self.dist, self.rel);
        let matches: Vec<BitSequence> = found.iter().map(|m| self.tree.codelet(m.leaf)).collect();
        if found.is_empty() {
            // only leaves longer than the tail remain: copy the tail
            let tail = self.x.slice(start, self.x.len());
            self.y.append(&tail);
            self.parsed_ones += tail.count_ones();
            self.pos = self.x.len();
            return Some(Step {
                matches,
                event: ParseEvent {
                    kind: EventKind::Escape,
                    bits: tail,
                },
                start,
            });
        }
        let candidates: Vec<Candidate> = found
            .iter()
            .zip(&matches)
            .map(|(m, codelet)| {
                let len = m.depth as usize;
                let phrase_ones = self.x.slice(start, start + len).count_ones();
                Candidate {
                    leaf: m.leaf,
                    codelet: codelet.clone(),
                    parsed: TypeFraction {
                        ones: self.parsed_ones + phrase_ones,
                        length: (start + len) as u64,
                    },
                }
            })
            .collect();
        let chosen = &candidates[select_codelet(&candidates, self.dist).expect("nonempty")];
        let len = chosen.codelet.len();
        self.parsed_ones = chosen.parsed.ones;
        self.y.append(&chosen.codelet);
        self.pos += len;
        self.tree.extend_codelet(chosen.leaf).expect("matches are leaves");
        Some(Step {
            matches,
            event: ParseEvent {
                kind: EventKind::Codelet,
                bits: chosen.codelet.clone(),
            },
            start,
        })
    }
}

/// Runs the practical parser to completion, returning `y` and the events.
pub fn parse_practical(x: &BitSequence, dist: DistortionBudget, rel: MatchRelation) -> (BitSequence, Vec<ParseEvent>) {
    let mut enc = PracticalEncoder::new(x, dist, rel);
    let mut events = Vec::new();
    while let Some(step) = enc.step() {
        events.push(step.event);
    }
    (enc.y, events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn half() -> DistortionBudget {
        DistortionBudget::new(1, 2).unwrap()
    }

    #[test]
    fn metric_ties_in_worked_example() {
        let a = codelet_metric(TypeFraction { ones: 1, length: 2 }, TypeFraction { ones: 2, length: 3 }, half());
        let b = codelet_metric(TypeFraction { ones: 1, length: 1 }, TypeFraction { ones: 1, length: 2 }, half());
        assert!(a.unwrap().abs() < 1e-12);
        assert!(b.unwrap().abs() < 1e-12);
    }

    #[test]
    fn metric_infeasible_is_none() {
        let lossless = DistortionBudget::lossless();
        assert_eq!(
            codelet_metric(TypeFraction { ones: 1, length: 2 }, TypeFraction { ones: 2, length: 3 }, lossless),
            None
        );
    }

    #[test]
    fn select_prefers_longer_then_lexicographic() {
        let cand = |s: &str, ones, length| Candidate {
            leaf: 0,
            codelet: bs(s),
            parsed: TypeFraction { ones, length },
        };
        let set = [cand("1", 1, 2), cand("01", 2, 3)];
        assert_eq!(select_codelet(&set, half()).unwrap(), 1);
        let set = [cand("11", 1, 2), cand("01", 1, 2)];
        assert_eq!(select_codelet(&set, half()).unwrap(), 1);
        assert_eq!(select_codelet(&[], half()), Err(Error::EmptyMatchSet));
        let set = [cand("0", 0, 1)];
        assert_eq!(select_codelet(&set, DistortionBudget::lossless()).unwrap(), 0);
    }

    #[test]
    fn worked_example_trace() {
        let x = bs("0110101101000");
        let mut enc = PracticalEncoder::new(&x, half(), MatchRelation::FullCodelet);
        let s1 = enc.step().unwrap();
        assert_eq!(s1.event.bits.to_string(), "0");
        assert_eq!(enc.codebook(), ["00", "01", "1"]);
        let s2 = enc.step().unwrap();
        let m: Vec<_> = s2.matches.iter().map(|m| m.to_string()).collect();
        assert_eq!(m, ["01", "1"]);
        assert_eq!(s2.event.bits.to_string(), "01");
        assert_eq!(enc.codebook(), ["00", "010", "011", "1"]);
        assert_eq!(enc.reconstruction().to_string(), "001");
        assert_eq!(enc.unparsed().to_string(), "0101101000");
    }
}
