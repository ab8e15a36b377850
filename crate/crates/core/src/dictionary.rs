//! Codebook tries.
//!
//! [`CodebookTree`] is an arena-allocated binary trie shared by both codec
//! variants. The practical variant keeps it a complete binary tree whose
//! leaves are the codelets and grows it one bit at a time with
//! [`CodebookTree::extend_codelet`]. The idealized variant wraps it in a
//! [`LevelDictionary`], where codelets live only at depths that are multiples
//! of the base width `ℓ` and are found by [`LevelDictionary::partial_match_search`].

use crate::bits::BitSequence;
use crate::matching::{match_probability, optimal_type_sequence, MatchRelation};
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::{Error, Result};

/// Index of a node in a [`CodebookTree`] arena.
pub type NodeRef = u32;

const NONE: u32 = u32::MAX;

/// Largest accepted base width; the idealized trie materializes all
/// `2^ℓ` base blocks up front.
pub const MAX_ELL: u32 = 16;

#[derive(Clone, Debug)]
struct Node {
    children: [u32; 2],
    parent: u32,
    depth: u32,
    /// Deepest leaf in this subtree, for distortion-bound pruning.
    max_depth: u32,
    /// Creation order among all nodes.
    ordinal: u32,
    /// Position in the live codelet list, or `NONE`.
    live_index: u32,
    promoted: bool,
}

impl Node {
    fn new(parent: u32, depth: u32, ordinal: u32) -> Self {
        Self {
            children: [NONE; 2],
            parent,
            depth,
            max_depth: depth,
            ordinal,
            live_index: NONE,
            promoted: false,
        }
    }
}

/// A leaf accepted by [`CodebookTree::find_matches`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafMatch {
    pub leaf: NodeRef,
    pub depth: u32,
    pub mismatches: u32,
}

#[derive(Clone, Debug)]
pub struct CodebookTree {
    nodes: Vec<Node>,
    leaves: usize,
}

impl CodebookTree {
    fn with_root() -> Self {
        Self {
            nodes: vec![Node::new(NONE, 0, 0)],
            leaves: 1,
        }
    }

    pub const ROOT: NodeRef = 0;

    /// The two-leaf codebook `{0, 1}`.
    pub fn init_practical() -> Self {
        let mut tree = Self::with_root();
        tree.split(Self::ROOT);
        tree
    }

    /// Complete trie of depth `ell`, leaves in lexicographic order.
    pub fn complete(ell: u32) -> Self {
        let mut tree = Self::with_root();
        let mut level = vec![Self::ROOT];
        for _ in 0..ell {
            let mut next = Vec::with_capacity(level.len() * 2);
            for node in level {
                next.extend(tree.split(node));
            }
            level = next;
        }
        tree
    }

    fn push_node(&mut self, parent: NodeRef, bit: usize) -> NodeRef {
        let id = self.nodes.len() as u32;
        let depth = self.nodes[parent as usize].depth + 1;
        self.nodes.push(Node::new(parent, depth, id));
        self.nodes[parent as usize].children[bit] = id;
        self.raise_max_depth(parent, depth);
        id
    }

    fn raise_max_depth(&mut self, mut node: NodeRef, depth: u32) {
        while node != NONE && self.nodes[node as usize].max_depth < depth {
            self.nodes[node as usize].max_depth = depth;
            node = self.nodes[node as usize].parent;
        }
    }

    fn split(&mut self, node: NodeRef) -> [NodeRef; 2] {
        let a = self.push_node(node, 0);
        let b = self.push_node(node, 1);
        self.leaves += 1;
        [a, b]
    }

    /// Replaces a leaf by its two one-bit extensions.
    pub fn extend_codelet(&mut self, leaf: NodeRef) -> Result<[NodeRef; 2]> {
        if !self.contains(leaf) || !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        Ok(self.split(leaf))
    }

    fn contains(&self, node: NodeRef) -> bool {
        (node as usize) < self.nodes.len()
    }

    pub fn is_leaf(&self, node: NodeRef) -> bool {
        self.nodes[node as usize].children == [NONE; 2]
    }

    pub fn child(&self, node: NodeRef, bit: bool) -> Option<NodeRef> {
        let c = self.nodes[node as usize].children[bit as usize];
        (c != NONE).then_some(c)
    }

    pub fn parent(&self, node: NodeRef) -> Option<NodeRef> {
        let p = self.nodes[node as usize].parent;
        (p != NONE).then_some(p)
    }

    pub fn depth(&self, node: NodeRef) -> u32 {
        self.nodes[node as usize].depth
    }

    pub fn ordinal(&self, node: NodeRef) -> u32 {
        self.nodes[node as usize].ordinal
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn max_depth(&self) -> u32 {
        self.nodes[0].max_depth
    }

    /// The bit string spelled by the root-to-`node` path.
    pub fn codelet(&self, node: NodeRef) -> BitSequence {
        let depth = self.depth(node) as usize;
        let mut seq = BitSequence::zeros(depth);
        let mut cur = node;
        for i in (0..depth).rev() {
            let parent = self.nodes[cur as usize].parent;
            if self.nodes[parent as usize].children[1] == cur {
                seq.set(i, true);
            }
            cur = parent;
        }
        seq
    }

    /// Node spelled by `path`, if present.
    pub fn lookup(&self, path: &BitSequence) -> Option<NodeRef> {
        path.iter().try_fold(Self::ROOT, |node, b| self.child(node, b))
    }

    /// Leaves in lexicographic order.
    pub fn leaves(&self) -> Vec<NodeRef> {
        let mut out = Vec::with_capacity(self.leaves);
        let mut stack = vec![Self::ROOT];
        while let Some(node) = stack.pop() {
            if self.is_leaf(node) {
                out.push(node);
                continue;
            }
            for bit in [true, false] {
                if let Some(c) = self.child(node, bit) {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Leaves whose codelet matches the equal-length prefix of
    /// `unparsed[start..]`, in lexicographic order. Leaves longer than the
    /// remaining input are never reported.
    pub fn find_matches(
        &self,
        unparsed: &BitSequence,
        start: usize,
        dist: DistortionBudget,
        rel: MatchRelation,
    ) -> Vec<LeafMatch> {
        let remaining = (unparsed.len() - start.min(unparsed.len())) as u64;
        let mut out = Vec::new();
        let mut stack = vec![(Self::ROOT, 0u64)];
        while let Some((node, mism)) = stack.pop() {
            let n = &self.nodes[node as usize];
            let depth = n.depth as u64;
            if self.is_leaf(node) {
                if depth >= 1 && (rel == MatchRelation::PrefixWise || dist.allows(mism, depth)) {
                    out.push(LeafMatch {
                        leaf: node,
                        depth: n.depth,
                        mismatches: mism as u32,
                    });
                }
                continue;
            }
            if depth >= remaining {
                continue;
            }
            let x = unparsed.get(start + depth as usize);
            for bit in [true, false] {
                let c = n.children[bit as usize];
                if c == NONE {
                    continue;
                }
                let m = mism + (bit != x) as u64;
                let keep = match rel {
                    MatchRelation::PrefixWise => dist.allows(m, depth + 1),
                    MatchRelation::FullCodelet => {
                        let reach = (self.nodes[c as usize].max_depth as u64).min(remaining);
                        m <= dist.max_mismatches(reach)
                    }
                };
                if keep {
                    stack.push((c, m));
                }
            }
        }
        out
    }
}

/// `M_L = ceil(L² / p_L)`, with `p_L` the prefix-wise match probability of
/// a canonical length-`L` string of the optimal reproduction type.
/// Saturates at `u64::MAX`.
pub fn level_size(len: u32, src: SourceModel, dist: DistortionBudget) -> u64 {
    let y = optimal_type_sequence(len as usize, src, dist);
    let p_l = match_probability(&y, dist, src);
    let m = (len as f64 * len as f64 / p_l).ceil();
    if m.is_finite() && m < u64::MAX as f64 {
        m as u64
    } else {
        u64::MAX
    }
}

/// `max(2, ceil(log2 log2 n))`.
pub fn default_ell(n: u64) -> u32 {
    if n < 4 {
        return 2;
    }
    let ll = (n as f64).log2().log2().ceil() as u32;
    ll.clamp(2, MAX_ELL)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelConfig {
    pub ell: u32,
    pub horizon_n: u64,
    pub delta: f64,
    /// `level_sizes[k - 1]` caps the live set at depth `kℓ`; levels past
    /// the end are uncapped.
    pub level_sizes: Vec<u64>,
}

impl LevelConfig {
    pub const DEFAULT_DELTA: f64 = 0.01;

    /// Level sizes `min(M_L, M_{L-ℓ} 2^ℓ)` with `M_0 = 1`, tabulated until the
    /// cap exceeds `n` (no level can ever hold more than `n` codelets).
    pub fn new(ell: u32, horizon_n: u64, delta: f64, src: SourceModel, dist: DistortionBudget) -> Result<Self> {
        if ell == 0 || ell > MAX_ELL {
            return Err(Error::InvalidParameter(format!("ell must be in 1..={MAX_ELL}, got {ell}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must be in (0, 1), got {delta}")));
        }
        Ok(Self {
            ell,
            horizon_n,
            delta,
            level_sizes: Self::tabulate(ell, horizon_n, src, dist),
        })
    }

    pub fn with_defaults(horizon_n: u64, src: SourceModel, dist: DistortionBudget) -> Self {
        Self::new(default_ell(horizon_n), horizon_n, Self::DEFAULT_DELTA, src, dist)
            .expect("default parameters are valid")
    }

    pub fn tabulate(ell: u32, horizon_n: u64, src: SourceModel, dist: DistortionBudget) -> Vec<u64> {
        let mut sizes = Vec::new();
        let mut prev = 1u64;
        let mut k = 1u32;
        loop {
            let raw = level_size(k * ell, src, dist);
            let cap = prev.saturating_mul(1u64 << ell).min(raw);
            sizes.push(cap);
            if cap > horizon_n || k * ell > 4096 {
                break;
            }
            prev = cap;
            k += 1;
        }
        sizes
    }

    /// Cap for the live set at depth `kℓ` (`k >= 1`).
    pub fn size_at(&self, k: u32) -> u64 {
        self.level_sizes
            .get(k as usize - 1)
            .copied()
            .unwrap_or(u64::MAX)
    }

    /// Give-up threshold `(kℓ)^4 / δ` for the frontier at depth `kℓ`.
    pub fn frontier_limit(&self, k: u32) -> f64 {
        let depth = (k * self.ell) as f64;
        depth.powi(4) / self.delta
    }
}

/// Per-level partial-match sets `Z_kℓ`; `levels[k - 1]` holds `Z_kℓ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchFrontier {
    pub levels: Vec<Vec<NodeRef>>,
}

impl SearchFrontier {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Deepest matching live codelet, smallest live index among ties.
    pub best: Option<NodeRef>,
    pub frontier: SearchFrontier,
    pub give_up: bool,
    /// Trie nodes touched.
    pub visits: u64,
}

/// Level-structured dictionary: live codelet sets `D_kℓ` inside a trie.
#[derive(Clone, Debug)]
pub struct LevelDictionary {
    tree: CodebookTree,
    cfg: LevelConfig,
    live: Vec<NodeRef>,
    live_per_level: Vec<u64>,
}

impl LevelDictionary {
    /// Complete depth-`ℓ` trie with every base block a candidate and no
    /// live codelets yet.
    pub fn idealized_build_init(cfg: LevelConfig) -> Self {
        Self {
            tree: CodebookTree::complete(cfg.ell),
            cfg,
            live: Vec::new(),
            live_per_level: Vec::new(),
        }
    }

    pub fn tree(&self) -> &CodebookTree {
        &self.tree
    }

    pub fn config(&self) -> &LevelConfig {
        &self.cfg
    }

    /// Swaps the level-size table; used when `p` is being estimated.
    pub fn set_level_sizes(&mut self, sizes: Vec<u64>) {
        self.cfg.level_sizes = sizes;
    }

    pub fn ell(&self) -> u32 {
        self.cfg.ell
    }

    /// Live codelets in creation order.
    pub fn live(&self) -> &[NodeRef] {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    /// Live-set size at each depth `kℓ`, `k = 1, 2, ...`.
    pub fn live_per_level(&self) -> &[u64] {
        &self.live_per_level
    }

    pub fn is_live(&self, node: NodeRef) -> bool {
        self.tree.nodes[node as usize].live_index != NONE
    }

    pub fn live_index(&self, node: NodeRef) -> Option<u32> {
        let i = self.tree.nodes[node as usize].live_index;
        (i != NONE).then_some(i)
    }

    /// Number of depth-`(k+1)ℓ` candidates below a depth-`kℓ` node: all
    /// `2^ℓ` extensions once it has been promoted, none before.
    pub fn candidate_count(&self, node: NodeRef) -> u64 {
        if self.tree.nodes[node as usize].promoted {
            1u64 << self.cfg.ell
        } else {
            0
        }
    }

    fn level_of(&self, node: NodeRef) -> u32 {
        self.tree.depth(node) / self.cfg.ell
    }

    fn make_live(&mut self, node: NodeRef) {
        let k = self.level_of(node) as usize;
        self.tree.nodes[node as usize].live_index = self.live.len() as u32;
        self.live.push(node);
        if self.live_per_level.len() < k {
            self.live_per_level.resize(k, 0);
        }
        self.live_per_level[k - 1] += 1;
    }

    fn level_population(&self, k: u32) -> u64 {
        self.live_per_level.get(k as usize - 1).copied().unwrap_or(0)
    }

    fn check_room(&self, k: u32) -> Result<()> {
        let size = self.level_population(k);
        if size >= self.cfg.size_at(k) {
            return Err(Error::LevelFull {
                depth: k * self.cfg.ell,
                size,
            });
        }
        Ok(())
    }

    /// Makes the base block `block` (length `ℓ`) live. Returns the node if
    /// it was newly added, `None` if it was already live.
    pub fn add_base_codelet(&mut self, block: &BitSequence) -> Result<Option<NodeRef>> {
        if block.len() != self.cfg.ell as usize {
            return Err(Error::LengthMismatch(block.len(), self.cfg.ell as usize));
        }
        let node = self.tree.lookup(block).expect("complete base level");
        if self.is_live(node) {
            return Ok(None);
        }
        self.check_room(1)?;
        self.make_live(node);
        Ok(Some(node))
    }

    /// Adds `leaf · extension` (one block of `ℓ` bits) to the next level.
    /// Returns the new node, or `None` when that extension was already live.
    pub fn promote_to_next_level(&mut self, leaf: NodeRef, extension: &BitSequence) -> Result<Option<NodeRef>> {
        if !self.tree.contains(leaf) || !self.is_live(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        if extension.len() != self.cfg.ell as usize {
            return Err(Error::LengthMismatch(extension.len(), self.cfg.ell as usize));
        }
        let k = self.level_of(leaf) + 1;
        self.check_room(k)?;
        self.tree.nodes[leaf as usize].promoted = true;
        let mut node = leaf;
        for bit in extension.iter() {
            node = match self.tree.child(node, bit) {
                Some(c) => c,
                None => self.tree.push_node(node, bit as usize),
            };
        }
        if self.is_live(node) {
            return Ok(None);
        }
        self.make_live(node);
        Ok(Some(node))
    }

    /// Longest live codelet `y` with `y ~ x[start..start+|y|]`, found level by
    /// level through the frontiers `Z_kℓ`. Stops descending and reports
    /// `give_up` once some `|Z_kℓ|` exceeds `(kℓ)^4 / δ`.
    pub fn partial_match_search(&self, x: &BitSequence, start: usize, dist: DistortionBudget) -> SearchOutcome {
        let ell = self.cfg.ell as u64;
        let remaining = x.len().saturating_sub(start) as u64;
        let mut outcome = SearchOutcome {
            best: None,
            frontier: SearchFrontier::default(),
            give_up: false,
            visits: 0,
        };
        // (node, mismatches so far) for the current frontier
        let mut current: Vec<(NodeRef, u64)> = vec![(CodebookTree::ROOT, 0)];
        let mut k = 0u32;
        let mut stack = Vec::new();
        while (k as u64 + 1) * ell <= remaining {
            let target = (k as u64 + 1) * ell;
            let mut next = Vec::new();
            for &(base, mism) in &current {
                stack.push((base, mism));
                while let Some((node, m)) = stack.pop() {
                    outcome.visits += 1;
                    let depth = self.tree.depth(node) as u64;
                    if depth == target {
                        if self.is_live(node) {
                            next.push((node, m));
                        }
                        continue;
                    }
                    let xb = x.get(start + depth as usize);
                    for bit in [true, false] {
                        if let Some(c) = self.tree.child(node, bit) {
                            let m2 = m + (bit != xb) as u64;
                            if dist.allows(m2, depth + 1) {
                                stack.push((c, m2));
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            k += 1;
            next.sort_unstable_by_key(|&(n, _)| self.tree.nodes[n as usize].live_index);
            outcome.best = Some(next[0].0);
            outcome.frontier.levels.push(next.iter().map(|&(n, _)| n).collect());
            if next.len() as f64 > self.cfg.frontier_limit(k) {
                outcome.give_up = true;
                break;
            }
            current = next;
        }
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn leaf_strings(tree: &CodebookTree) -> Vec<String> {
        tree.leaves().iter().map(|&l| tree.codelet(l).to_string()).collect()
    }

    fn half() -> DistortionBudget {
        DistortionBudget::new(1, 2).unwrap()
    }

    #[test]
    fn practical_growth_follows_worked_example() {
        let mut tree = CodebookTree::init_practical();
        assert_eq!(leaf_strings(&tree), ["0", "1"]);
        let zero = tree.lookup(&bs("0")).unwrap();
        tree.extend_codelet(zero).unwrap();
        assert_eq!(leaf_strings(&tree), ["00", "01", "1"]);
        let zero_one = tree.lookup(&bs("01")).unwrap();
        tree.extend_codelet(zero_one).unwrap();
        assert_eq!(leaf_strings(&tree), ["00", "010", "011", "1"]);
        assert_eq!(tree.leaf_count(), 4);
        assert_eq!(tree.extend_codelet(zero), Err(Error::NotALeaf(zero)));
    }

    #[test]
    fn matches_in_worked_example() {
        let tree = CodebookTree::init_practical();
        let x = bs("0110101101000");
        let m = tree.find_matches(&x, 0, half(), MatchRelation::FullCodelet);
        let got: Vec<_> = m.iter().map(|m| tree.codelet(m.leaf).to_string()).collect();
        assert_eq!(got, ["0"]);

        let mut tree = tree;
        tree.extend_codelet(tree.lookup(&bs("0")).unwrap()).unwrap();
        let m = tree.find_matches(&x, 1, half(), MatchRelation::FullCodelet);
        let got: Vec<_> = m.iter().map(|m| tree.codelet(m.leaf).to_string()).collect();
        assert_eq!(got, ["01", "1"]);
    }

    #[test]
    fn lossless_search_is_trie_walk() {
        let mut tree = CodebookTree::init_practical();
        for path in ["0", "01", "1", "011"] {
            tree.extend_codelet(tree.lookup(&bs(path)).unwrap()).unwrap();
        }
        let x = bs("0110011");
        for rel in [MatchRelation::FullCodelet, MatchRelation::PrefixWise] {
            let m = tree.find_matches(&x, 0, DistortionBudget::lossless(), rel);
            assert_eq!(m.len(), 1);
            assert_eq!(tree.codelet(m[0].leaf).to_string(), "0110");
        }
    }

    #[test]
    fn long_leaves_are_ineligible() {
        let mut tree = CodebookTree::init_practical();
        tree.extend_codelet(tree.lookup(&bs("0")).unwrap()).unwrap();
        let m = tree.find_matches(&bs("0"), 0, half(), MatchRelation::FullCodelet);
        assert!(m.is_empty());
        let m = tree.find_matches(&bs("1"), 0, DistortionBudget::lossless(), MatchRelation::FullCodelet);
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn level_size_examples() {
        let fair = SourceModel::new(0.5).unwrap();
        assert_eq!(level_size(1, fair, DistortionBudget::lossless()), 2);
        assert_eq!(level_size(2, fair, half()), 8);
    }

    #[test]
    fn level_sizes_nondecreasing() {
        for (p, num, den) in [(0.5, 11, 100), (0.3, 1, 10), (0.5, 1, 4), (0.4, 1, 20)] {
            let src = SourceModel::new(p).unwrap();
            let dist = DistortionBudget::new(num, den).unwrap();
            let sizes: Vec<u64> = (1..=64).map(|l| level_size(l, src, dist)).collect();
            for w in sizes.windows(2) {
                assert!(w[0] <= w[1], "{p} {num}/{den}: {sizes:?}");
            }
        }
    }

    #[test]
    fn default_ell_values() {
        assert_eq!(default_ell(1 << 14), 4);
        assert_eq!(default_ell(1 << 16), 4);
        assert_eq!(default_ell(1 << 17), 5);
        assert_eq!(default_ell(10), 2);
    }

    fn fair_cfg(ell: u32, n: u64, dist: DistortionBudget) -> LevelConfig {
        LevelConfig::new(ell, n, 0.01, SourceModel::new(0.5).unwrap(), dist).unwrap()
    }

    #[test]
    fn idealized_init_is_complete() {
        for ell in 1..=4 {
            let dict = LevelDictionary::idealized_build_init(fair_cfg(ell, 64, DistortionBudget::lossless()));
            assert_eq!(dict.tree().leaf_count(), 1 << ell);
            assert_eq!(dict.live_count(), 0);
        }
        let dict = LevelDictionary::idealized_build_init(fair_cfg(2, 64, DistortionBudget::lossless()));
        assert_eq!(leaf_strings(dict.tree()), ["00", "01", "10", "11"]);
    }

    #[test]
    fn promotion_and_caps() {
        let mut cfg = fair_cfg(1, 64, DistortionBudget::lossless());
        cfg.level_sizes = vec![2, 1];
        let mut dict = LevelDictionary::idealized_build_init(cfg);
        let zero = dict.add_base_codelet(&bs("0")).unwrap().unwrap();
        assert_eq!(dict.add_base_codelet(&bs("0")).unwrap(), None);
        assert_eq!(dict.candidate_count(zero), 0);
        let ext = dict.promote_to_next_level(zero, &bs("1")).unwrap().unwrap();
        assert_eq!(dict.tree().codelet(ext).to_string(), "01");
        assert_eq!(dict.candidate_count(zero), 2);
        let nodes = dict.tree().node_count();
        assert_eq!(
            dict.promote_to_next_level(zero, &bs("0")),
            Err(Error::LevelFull { depth: 2, size: 1 })
        );
        assert_eq!(dict.tree().node_count(), nodes);
        assert_eq!(dict.live_per_level(), &[1, 1]);
        let one = dict.tree().lookup(&bs("1")).unwrap();
        assert_eq!(dict.promote_to_next_level(one, &bs("1")), Err(Error::NotALeaf(one)));
    }

    #[test]
    fn search_finds_deepest_live() {
        let mut dict = LevelDictionary::idealized_build_init(fair_cfg(2, 1 << 10, half()));
        let a = dict.add_base_codelet(&bs("00")).unwrap().unwrap();
        dict.add_base_codelet(&bs("01")).unwrap();
        let deep = dict.promote_to_next_level(a, &bs("11")).unwrap().unwrap();
        // x = 0001: l=1 needs exact, 00 matches, 01 is off by one at l=2 (ok)
        let out = dict.partial_match_search(&bs("001101"), 0, half());
        assert_eq!(out.best, Some(deep));
        assert_eq!(out.frontier.sizes(), vec![2, 1]);
        assert!(!out.give_up);
        let out = dict.partial_match_search(&bs("1111"), 0, half());
        assert_eq!(out.best, None);
        let out = dict.partial_match_search(&bs("0"), 0, half());
        assert_eq!(out.best, None);
    }

    #[test]
    fn search_gives_up_on_large_frontier() {
        let mut cfg = fair_cfg(2, 1 << 10, half());
        let mut dict = LevelDictionary::idealized_build_init(cfg.clone());
        for b in ["00", "01", "10", "11"] {
            dict.add_base_codelet(&bs(b)).unwrap();
        }
        let out = dict.partial_match_search(&bs("0000"), 0, half());
        assert_eq!(out.frontier.sizes(), vec![2]);
        assert!(!out.give_up);
        // force a threshold of 1.5 at depth 2 (bypassing validation)
        cfg.delta = 16.0 / 1.5;
        dict.cfg = cfg;
        let out = dict.partial_match_search(&bs("0000"), 0, half());
        assert!(out.give_up);
        assert_eq!(out.frontier.sizes(), vec![2]);
    }
}
