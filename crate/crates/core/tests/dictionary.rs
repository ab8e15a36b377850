mod common;

use clp_core::dictionary::{CodebookTree, LevelConfig, LevelDictionary};
use clp_core::harness::build_dictionary;
use clp_core::matching::matches_prefixwise;
use clp_core::{BitSequence, DistortionBudget, Error, MatchRelation, SourceModel};
use proptest::prelude::*;

fn to_vec(s: &BitSequence) -> Vec<bool> {
    s.iter().collect()
}

fn live_codelets(dict: &LevelDictionary) -> Vec<Vec<bool>> {
    dict.live().iter().map(|&n| to_vec(&dict.tree().codelet(n))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_finds_longest_live_match(
        ell in 1u32..=4,
        num in 0u32..=5,
        bits in 64u64..1500,
        seed in any::<u64>(),
        p in 0.2f64..0.8,
    ) {
        let src = SourceModel::new(p).unwrap();
        let dist = DistortionBudget::new(num, 20).unwrap();
        let dict = build_dictionary(ell, bits, 0.01, src, dist, seed, 0).unwrap();
        let codelets = live_codelets(&dict);
        let mut rng = common::rng(seed ^ 1);
        let x = common::random_bools(&mut rng, 96, p);
        let xs: BitSequence = x.iter().copied().collect();
        for start in [0usize, 7, 40, 90] {
            let out = dict.partial_match_search(&xs, start, dist);
            prop_assert!(!out.give_up);
            let want = common::brute_longest_match(&codelets, &x, start, num as u64, 20);
            let got = out.best.map_or(0, |n| dict.tree().depth(n) as usize);
            prop_assert_eq!(got, want);
            if let Some(best) = out.best {
                prop_assert!(dict.is_live(best));
                let y = dict.tree().codelet(best);
                prop_assert!(matches_prefixwise(&xs.slice(start, start + y.len()), &y, dist).unwrap());
            }
        }
    }

    #[test]
    fn live_sets_respect_caps_and_nest(
        ell in 1u32..=4,
        num in 0u32..=5,
        bits in 64u64..3000,
        seed in any::<u64>(),
    ) {
        let src = SourceModel::new(0.5).unwrap();
        let dist = DistortionBudget::new(num, 20).unwrap();
        let dict = build_dictionary(ell, bits, 0.01, src, dist, seed, 0).unwrap();
        for (k, &count) in dict.live_per_level().iter().enumerate() {
            prop_assert!(count <= dict.config().size_at(k as u32 + 1));
        }
        for (i, &node) in dict.live().iter().enumerate() {
            prop_assert_eq!(dict.live_index(node), Some(i as u32));
            let depth = dict.tree().depth(node);
            prop_assert_eq!(depth % ell, 0);
            if depth > ell {
                let parent = dict.tree().lookup(&dict.tree().codelet(node).prefix((depth - ell) as usize)).unwrap();
                prop_assert!(dict.is_live(parent));
            }
        }
    }

    #[test]
    fn practical_matches_agree_with_relation(
        extend in prop::collection::vec(0usize..64, 0..20),
        x in prop::collection::vec(any::<bool>(), 1..40),
        num in 0u32..=10,
        full in any::<bool>(),
    ) {
        let mut tree = CodebookTree::init_practical();
        for pick in extend {
            let leaves = tree.leaves();
            tree.extend_codelet(leaves[pick % leaves.len()]).unwrap();
        }
        let dist = DistortionBudget::new(num, 20).unwrap();
        let rel = if full { MatchRelation::FullCodelet } else { MatchRelation::PrefixWise };
        let xs: BitSequence = x.iter().copied().collect();
        let found: Vec<u32> = tree.find_matches(&xs, 0, dist, rel).iter().map(|m| m.leaf).collect();
        let want: Vec<u32> = tree
            .leaves()
            .into_iter()
            .filter(|&l| {
                let y = tree.codelet(l);
                y.len() <= xs.len() && clp_core::matching::matches(rel, &xs.prefix(y.len()), &y, dist).unwrap()
            })
            .collect();
        prop_assert_eq!(found, want);
    }
}

#[test]
fn level_full_is_reported_without_mutation() {
    let src = SourceModel::new(0.5).unwrap();
    let dist = DistortionBudget::lossless();
    let mut cfg = LevelConfig::new(1, 64, 0.01, src, dist).unwrap();
    cfg.level_sizes = vec![1, 1];
    let mut dict = LevelDictionary::idealized_build_init(cfg);
    let zero: BitSequence = "0".parse().unwrap();
    let one: BitSequence = "1".parse().unwrap();
    let node = dict.add_base_codelet(&zero).unwrap().unwrap();
    assert!(matches!(dict.add_base_codelet(&one), Err(Error::LevelFull { depth: 1, size: 1 })));
    dict.promote_to_next_level(node, &one).unwrap();
    let before = dict.live().to_vec();
    assert!(matches!(dict.promote_to_next_level(node, &zero), Err(Error::LevelFull { depth: 2, .. })));
    assert_eq!(dict.live(), &before[..]);
}
