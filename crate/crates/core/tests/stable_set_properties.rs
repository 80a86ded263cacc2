//! Randomized invariants for dominance relations and stable-set
//! enumeration, re-checked against definition-level oracles that know
//! nothing about the enumerator.

use std::collections::BTreeSet;

use proptest::prelude::*;

use contest_core::model::{Alternative, DominanceRelation};
use contest_core::stable_sets::{enumerate_stable_sets, DEFAULT_MAX_ALTERNATIVES};

fn alternatives(n: usize) -> Vec<Alternative> {
    (0..n)
        .map(|i| Alternative::new(format!("C{i}"), format!("candidate {i}")))
        .collect()
}

/// 0 = no edge, 1 = forward, 2 = backward for each unordered pair.
prop_compose! {
    fn arb_relation()(n in 1usize..=7)(
        n in Just(n),
        pair_states in prop::collection::vec(0u8..=2, (n * (n - 1)) / 2),
    ) -> DominanceRelation {
        let mut rel = DominanceRelation::new(alternatives(n));
        let ids: Vec<String> = rel.ids().map(str::to_string).collect();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                match pair_states[k] {
                    1 => rel.add_edge(&ids[i], &ids[j]),
                    2 => rel.add_edge(&ids[j], &ids[i]),
                    _ => {}
                }
                k += 1;
            }
        }
        rel
    }
}

prop_compose! {
    fn arb_transitive_tournament()(n in 1usize..=7)(
        order in Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        n in Just(n),
    ) -> (DominanceRelation, String) {
        let mut rel = DominanceRelation::new(alternatives(n));
        let ids: Vec<String> = rel.ids().map(str::to_string).collect();
        for i in 0..n {
            for j in i + 1..n {
                rel.add_edge(&ids[order[i]], &ids[order[j]]);
            }
        }
        (rel, ids[order[0]].clone())
    }
}

/// Definition-level stability check straight off the edge set.
fn oracle_is_stable(members: &BTreeSet<&str>, rel: &DominanceRelation) -> bool {
    let internally = !rel
        .edges
        .iter()
        .any(|(x, y)| members.contains(x.as_str()) && members.contains(y.as_str()));
    let externally = rel.ids().filter(|id| !members.contains(id)).all(|outside| {
        members
            .iter()
            .any(|inside| rel.dominates(inside, outside))
    });
    internally && externally
}

proptest! {
    #[test]
    fn enumerated_sets_pass_the_definition_oracle(rel in arb_relation()) {
        let result = enumerate_stable_sets(&rel, DEFAULT_MAX_ALTERNATIVES).unwrap();
        for (members, certificate) in result.stable_sets.iter().zip(&result.certificates) {
            let set: BTreeSet<&str> = members.iter().map(String::as_str).collect();
            prop_assert!(oracle_is_stable(&set, &rel));
            // Certificates really witness external stability.
            for outside in rel.ids().filter(|id| !set.contains(id)) {
                let witness = &certificate[outside];
                prop_assert!(set.contains(witness.as_str()));
                prop_assert!(rel.dominates(witness, outside));
            }
        }
        // Completeness: a brute-force subset walk finds nothing extra.
        let ids: Vec<&str> = rel.ids().collect();
        let mut oracle_count = 0;
        for mask in 0u32..(1 << ids.len()) {
            let set: BTreeSet<&str> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, id)| *id)
                .collect();
            if oracle_is_stable(&set, &rel) {
                oracle_count += 1;
            }
        }
        prop_assert_eq!(result.stable_sets.len(), oracle_count);
    }

    #[test]
    fn enumeration_is_permutation_invariant(
        rel in arb_relation(),
        seed in any::<u64>(),
    ) {
        // Re-list the alternatives in a different order; the family of
        // stable sets must not change.
        let mut shuffled = rel.alternatives.clone();
        let n = shuffled.len();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let permuted = DominanceRelation {
            alternatives: shuffled,
            edges: rel.edges.clone(),
        };

        let original = enumerate_stable_sets(&rel, DEFAULT_MAX_ALTERNATIVES).unwrap();
        let reordered = enumerate_stable_sets(&permuted, DEFAULT_MAX_ALTERNATIVES).unwrap();
        let family = |sets: &[Vec<String>]| -> BTreeSet<BTreeSet<String>> {
            sets.iter().map(|s| s.iter().cloned().collect()).collect()
        };
        prop_assert_eq!(family(&original.stable_sets), family(&reordered.stable_sets));
    }

    #[test]
    fn transitive_tournaments_have_the_maximum_as_unique_stable_set(
        (rel, top) in arb_transitive_tournament(),
    ) {
        let result = enumerate_stable_sets(&rel, DEFAULT_MAX_ALTERNATIVES).unwrap();
        prop_assert_eq!(result.stable_sets, vec![vec![top]]);
    }

    #[test]
    fn stable_sets_are_never_nested(rel in arb_relation()) {
        let result = enumerate_stable_sets(&rel, DEFAULT_MAX_ALTERNATIVES).unwrap();
        let sets: Vec<BTreeSet<&str>> = result
            .stable_sets
            .iter()
            .map(|s| s.iter().map(String::as_str).collect())
            .collect();
        for a in &sets {
            for b in &sets {
                if a != b {
                    prop_assert!(!a.is_subset(b), "{a:?} nested inside {b:?}");
                }
            }
        }
    }
}
