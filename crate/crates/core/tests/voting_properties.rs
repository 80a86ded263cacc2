//! Randomized invariants for profile aggregation and the voting
//! procedures.

use proptest::prelude::*;

use contest_core::model::{
    Alternative, PairwiseMatrix, PreferenceGroup, Validate, WeightedPreferenceProfile,
};
use contest_core::rat;
use contest_core::rational::Rational;
use contest_core::voting::{
    agenda_elimination, derive_pairwise, head_to_head, league_scores, plurality, MatchOutcome,
    TieRule,
};

fn alternatives(n: usize) -> Vec<Alternative> {
    (0..n)
        .map(|i| Alternative::new(format!("C{i}"), format!("candidate {i}")))
        .collect()
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("C{i}")).collect()
}

prop_compose! {
    fn arb_profile()(n in 2usize..=6)(
        n in Just(n),
        first in (1i64..=100, Just(ids(n)).prop_shuffle()),
        rest in prop::collection::vec((0i64..=100, Just(ids(n)).prop_shuffle()), 0..5),
    ) -> WeightedPreferenceProfile {
        let groups = std::iter::once(first)
            .chain(rest)
            .map(|(w, ranking)| PreferenceGroup { weight: Rational::integer(w), ranking })
            .collect();
        WeightedPreferenceProfile { alternatives: alternatives(n), groups }
    }
}

/// A matrix whose strict-majority relation is the transitive tournament of
/// a hidden ranking; returns the ranking too.
prop_compose! {
    fn arb_transitive_matrix()(n in 2usize..=5)(
        ranking in Just(ids(n)).prop_shuffle(),
        margins in prop::collection::vec(51i64..=100, n * (n - 1) / 2),
        n in Just(n),
    ) -> (PairwiseMatrix, Vec<String>) {
        let mut matrix = PairwiseMatrix::new(alternatives(n));
        let mut k = 0;
        for i in 0..ranking.len() {
            for j in i + 1..ranking.len() {
                matrix.set_pair(&ranking[i], &ranking[j], Rational::integer(margins[k]));
                k += 1;
            }
        }
        (matrix, ranking)
    }
}

proptest! {
    #[test]
    fn derived_matrices_satisfy_the_complement_identity(profile in arb_profile()) {
        let matrix = derive_pairwise(&profile).unwrap();
        prop_assert_eq!(matrix.validate(), Vec::new());
        let hundred = rat!(100);
        for x in matrix.ids() {
            for y in matrix.ids() {
                if x != y {
                    let s = matrix.support(x, y).unwrap();
                    let t = matrix.support(y, x).unwrap();
                    prop_assert_eq!(s + t, hundred.clone());
                    prop_assert!(!s.is_negative() && s <= &hundred);
                }
            }
        }
    }

    #[test]
    fn plurality_scores_sum_to_one_hundred(profile in arb_profile()) {
        let tally = plurality(&profile).unwrap();
        let total: Rational = tally.scores.values().sum();
        prop_assert_eq!(total, rat!(100));
        prop_assert!(!tally.winners.is_empty());
    }

    #[test]
    fn transitive_tournaments_are_agenda_proof((matrix, ranking) in arb_transitive_matrix()) {
        // Every agenda over a transitive relation elects its maximum.
        let mut agenda: Vec<String> = matrix.ids().map(str::to_string).collect();
        let top = ranking[0].clone();
        // Exhaust all agendas for small fields, rotations otherwise.
        if agenda.len() <= 4 {
            permutations(&mut agenda, 0, &mut |perm| {
                let report = agenda_elimination(&matrix, perm, TieRule::Error).unwrap();
                assert_eq!(report.winner(), Some(top.as_str()));
            });
        } else {
            for r in 0..agenda.len() {
                agenda.rotate_left(r);
                let report = agenda_elimination(&matrix, &agenda, TieRule::Error).unwrap();
                prop_assert_eq!(report.winner(), Some(top.as_str()));
            }
        }
    }

    #[test]
    fn league_points_split_one_hundred_per_match(profile in arb_profile()) {
        let matrix = derive_pairwise(&profile).unwrap();
        let field: Vec<String> = matrix.ids().map(str::to_string).collect();
        let tally = league_scores(&matrix, &field).unwrap();
        let total: Rational = tally.scores.values().sum();
        let n = field.len() as i64;
        prop_assert_eq!(total, rat!(100) * Rational::integer(n * (n - 1) / 2));
    }

    #[test]
    fn head_to_head_is_mirrored(profile in arb_profile()) {
        let matrix = derive_pairwise(&profile).unwrap();
        let field: Vec<&str> = matrix.ids().collect();
        for x in &field {
            for y in &field {
                if x == y {
                    continue;
                }
                let forward = head_to_head(&matrix, x, y).unwrap();
                let backward = head_to_head(&matrix, y, x).unwrap();
                prop_assert_eq!(&forward.left_support, &backward.right_support);
                prop_assert_eq!(&forward.right_support, &backward.left_support);
                let mirrored = match forward.outcome {
                    MatchOutcome::Left => MatchOutcome::Right,
                    MatchOutcome::Right => MatchOutcome::Left,
                    MatchOutcome::Tie => MatchOutcome::Tie,
                };
                prop_assert_eq!(backward.outcome, mirrored);
            }
        }
    }
}

fn permutations(items: &mut Vec<String>, start: usize, visit: &mut impl FnMut(&[String])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}
