//! Idealized Codelet Parsing.
//!
//! Codelets live at depths `kℓ` of a [`LevelDictionary`]. Each phrase is the
//! deepest live codelet `y ~ x` found by partial-match search, or an escape
//! carrying `ℓ` raw input bits when nothing matches (or the search gives up).
//!
//! Payload, per phrase, with `T` live codelets at that moment:
//!
//! * `ceil(log2(T + 1))` bits: `0` for an escape, otherwise `1 +` the
//!   codelet's position in creation order;
//! * for an escape, the `ℓ` raw bits.
//!
//! A final tail shorter than `ℓ` is written raw with no index. After each
//! phrase, the previous phrase's codelet is promoted by the first `ℓ` bits of
//! the current phrase's reconstruction (known to both sides), and an escaped
//! block joins the base level. Both updates respect the level caps `M_kℓ`.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{width_for, BitReader, BitSequence, BitWriter};
use crate::dictionary::{LevelConfig, LevelDictionary, NodeRef};
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::{Error, Result};

use super::{EventKind, ParseEvent};

/// Resolution of the on-the-fly estimate of `p`.
const P_QUANTUM: u32 = 64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdealizedStats {
    pub phrases: u64,
    pub escapes: u64,
    pub giveups: u64,
    /// Largest `|Z_kℓ|` seen at each level `k = 1, 2, ...`.
    pub max_frontier: Vec<usize>,
    /// True if any frontier ever exceeded `(kℓ)^4 / δ`.
    pub frontier_violation: bool,
    /// Final live-set size at each level.
    pub live_per_level: Vec<u64>,
    pub live_total: u64,
    /// Trie nodes touched by all searches.
    pub visits: u64,
}

/// Level-size tables keyed by quantized `p`, for streams with unknown `p`.
#[derive(Debug)]
struct SizeTables {
    ell: u32,
    n: u64,
    dist: DistortionBudget,
    tables: HashMap<u32, Vec<u64>>,
}

impl SizeTables {
    fn new(ell: u32, n: u64, dist: DistortionBudget) -> Self {
        Self {
            ell,
            n,
            dist,
            tables: HashMap::new(),
        }
    }

    /// Table for the source estimate implied by `y`: a reconstruction of
    /// type `q` suggests `p = q (1 - 2D) + D`.
    fn for_prefix(&mut self, y: &BitSequence) -> Vec<u64> {
        let p = if y.is_empty() {
            0.5
        } else {
            let q = y.count_ones() as f64 / y.len() as f64;
            let d = self.dist.value();
            (q * (1.0 - 2.0 * d) + d).clamp(0.0, 1.0)
        };
        let key = (p * P_QUANTUM as f64).round() as u32;
        let (ell, n, dist) = (self.ell, self.n, self.dist);
        self.tables
            .entry(key)
            .or_insert_with(|| {
                let src = SourceModel::from_ratio(key, P_QUANTUM).expect("quantized p is valid");
                LevelConfig::tabulate(ell, n, src, dist)
            })
            .clone()
    }
}

/// Dictionary updates shared by encoder and decoder.
struct Updater {
    prev: Option<NodeRef>,
    tables: Option<SizeTables>,
}

impl Updater {
    /// `codelet` is the phrase's live codelet, or `None` for an escape.
    fn apply(&mut self, dict: &mut LevelDictionary, y: &BitSequence, phrase: &BitSequence, codelet: Option<NodeRef>) {
        if let Some(tables) = self.tables.as_mut() {
            dict.set_level_sizes(tables.for_prefix(y));
        }
        let ell = dict.ell() as usize;
        if let Some(prev) = self.prev {
            // a full level just leaves `prev` terminal
            let _ = dict.promote_to_next_level(prev, &phrase.prefix(ell));
        }
        self.prev = match codelet {
            Some(node) => Some(node),
            None => {
                let _ = dict.add_base_codelet(phrase);
                let node = dict.tree().lookup(phrase).expect("base level is complete");
                dict.is_live(node).then_some(node)
            }
        };
    }
}

pub struct IdealizedOutcome {
    pub y: BitSequence,
    pub events: Vec<ParseEvent>,
    pub stats: IdealizedStats,
    /// Dictionary state after the last phrase.
    pub dictionary: LevelDictionary,
}

/// Encodes `x` into `w`. With `src = None`, level sizes follow a running
/// estimate of `p`. With `tie_seed`, ties among equally deep matches are
/// broken at random instead of by creation order.
pub fn encode_idealized_into(
    x: &BitSequence,
    dist: DistortionBudget,
    src: Option<SourceModel>,
    cfg: LevelConfig,
    tie_seed: Option<u64>,
    w: &mut BitWriter,
) -> IdealizedOutcome {
    let ell = cfg.ell as usize;
    let n = x.len();
    let tables = src.is_none().then(|| SizeTables::new(cfg.ell, n as u64, dist));
    let mut dict = LevelDictionary::idealized_build_init(cfg);
    let mut updater = Updater { prev: None, tables };
    let mut rng = tie_seed.map(ChaCha8Rng::seed_from_u64);
    let mut y = BitSequence::with_capacity(n);
    let mut events = Vec::new();
    let mut stats = IdealizedStats::default();
    let mut pos = 0;
    while pos < n {
        if n - pos < ell {
            let tail = x.slice(pos, n);
            w.write_sequence(&tail);
            y.append(&tail);
            events.push(ParseEvent {
                kind: EventKind::Escape,
                bits: tail,
            });
            stats.escapes += 1;
            stats.phrases += 1;
            break;
        }
        let width = width_for(dict.live_count() as u64 + 1);
        let out = dict.partial_match_search(x, pos, dist);
        stats.visits += out.visits;
        let sizes = out.frontier.sizes();
        if stats.max_frontier.len() < sizes.len() {
            stats.max_frontier.resize(sizes.len(), 0);
        }
        for (k, &s) in sizes.iter().enumerate() {
            stats.max_frontier[k] = stats.max_frontier[k].max(s);
            if s as f64 > dict.config().frontier_limit(k as u32 + 1) {
                stats.frontier_violation = true;
            }
        }
        if out.give_up {
            stats.giveups += 1;
        }
        let chosen = match (out.best, out.give_up) {
            (Some(best), false) => Some(match rng.as_mut() {
                Some(rng) => {
                    let top = out.frontier.levels.last().expect("a match implies a frontier");
                    top[rng.gen_range(0..top.len())]
                }
                None => best,
            }),
            _ => None,
        };
        let (phrase, kind) = match chosen {
            Some(node) => {
                let index = dict.live_index(node).expect("search returns live codelets") as u64 + 1;
                w.write_bits(index, width);
                (dict.tree().codelet(node), EventKind::Codelet)
            }
            None => {
                let raw = x.slice(pos, pos + ell);
                w.write_bits(0, width);
                w.write_sequence(&raw);
                stats.escapes += 1;
                (raw, EventKind::Escape)
            }
        };
        y.append(&phrase);
        pos += phrase.len();
        stats.phrases += 1;
        updater.apply(&mut dict, &y, &phrase, chosen);
        events.push(ParseEvent { kind, bits: phrase });
    }
    stats.live_per_level = dict.live_per_level().to_vec();
    stats.live_total = dict.live_count() as u64;
    IdealizedOutcome {
        y,
        events,
        stats,
        dictionary: dict,
    }
}

/// Inverse of [`encode_idealized_into`]; reads exactly `n` output bits.
pub fn decode_idealized_from(
    r: &mut BitReader<'_>,
    n: u64,
    dist: DistortionBudget,
    src: Option<SourceModel>,
    cfg: LevelConfig,
) -> Result<BitSequence> {
    let ell = cfg.ell as u64;
    let tables = src.is_none().then(|| SizeTables::new(cfg.ell, n, dist));
    let mut dict = LevelDictionary::idealized_build_init(cfg);
    let mut updater = Updater { prev: None, tables };
    let mut y = BitSequence::new();
    let truncated = || Error::CorruptStream("truncated idealized payload".into());
    let read_raw = |r: &mut BitReader<'_>, len: u64| -> Result<BitSequence> {
        (0..len).map(|_| r.read_bit().ok_or_else(truncated)).collect()
    };
    while (y.len() as u64) < n {
        let left = n - y.len() as u64;
        if left < ell {
            let tail = read_raw(r, left)?;
            y.append(&tail);
            break;
        }
        let count = dict.live_count() as u64;
        let index = r.read_bits(width_for(count + 1)).ok_or_else(truncated)?;
        if index == 0 {
            let raw = read_raw(r, ell)?;
            y.append(&raw);
            updater.apply(&mut dict, &y, &raw, None);
        } else {
            if index > count {
                return Err(Error::CorruptStream(format!("codelet index {index} out of range for {count} codelets")));
            }
            let node = dict.live()[index as usize - 1];
            let phrase = dict.tree().codelet(node);
            if phrase.len() as u64 > left {
                return Err(Error::CorruptStream("codelet overruns declared length".into()));
            }
            y.append(&phrase);
            updater.apply(&mut dict, &y, &phrase, Some(node));
        }
    }
    Ok(y)
}
