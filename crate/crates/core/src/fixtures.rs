//! Bundled demonstration data: a four-option armament procurement vote and
//! the two constant-sum production games built from its pairwise table.
//!
//! `table1_printed` and `table1_reconciled` differ only in the first
//! group's ranking; the reconciled profile derives exactly the canonical
//! pairwise table returned by [`table2`], while the printed one does not.
//! Downstream analyses treat `table2` as the canonical input. The same
//! data ships as JSON files with the command-line crate.

use crate::model::{Alternative, MatrixGame, PairwiseMatrix, PreferenceGroup, WeightedPreferenceProfile};
use crate::rat;

fn procurement_alternatives() -> Vec<Alternative> {
    vec![
        Alternative::new("A1", "combat fighter"),
        Alternative::new("A2", "combat helicopter"),
        Alternative::new("M1", "nuclear submarine"),
        Alternative::new("M2", "missile boat"),
    ]
}

/// The four-group electorate exactly as printed in its source table.
pub fn table1_printed() -> WeightedPreferenceProfile {
    WeightedPreferenceProfile {
        alternatives: procurement_alternatives(),
        groups: vec![
            PreferenceGroup::new(rat!(5), &["A1", "A2", "M1", "M2"]),
            PreferenceGroup::new(rat!(15), &["A2", "M1", "A1", "M2"]),
            PreferenceGroup::new(rat!(35), &["M1", "A1", "M2", "A2"]),
            PreferenceGroup::new(rat!(45), &["A1", "M2", "A2", "M1"]),
        ],
    }
}

/// The electorate with group 1 replaced by `M2 > A2 > M1 > A1`, the unique
/// single-group repair that derives [`table2`] cell for cell.
pub fn table1_reconciled() -> WeightedPreferenceProfile {
    let mut profile = table1_printed();
    profile.groups[0] = PreferenceGroup::new(rat!(5), &["M2", "A2", "M1", "A1"]);
    profile
}

/// Canonical pairwise support table over the four alternatives.
pub fn table2() -> PairwiseMatrix {
    let mut matrix = PairwiseMatrix::new(vec![
        Alternative::new("A1", "combat fighter"),
        Alternative::new("M1", "nuclear submarine"),
        Alternative::new("A2", "combat helicopter"),
        Alternative::new("M2", "missile boat"),
    ]);
    matrix.set_pair("A1", "M1", rat!(45));
    matrix.set_pair("A1", "A2", rat!(80));
    matrix.set_pair("A1", "M2", rat!(95));
    matrix.set_pair("M1", "A2", rat!(35));
    matrix.set_pair("M1", "M2", rat!(50));
    matrix.set_pair("A2", "M2", rat!(15));
    matrix
}

/// The 2x4 constant-sum game where the column player observes the row
/// choice first: columns are response plans, payoffs are the row player's
/// market share. Equals `expand_one_sided_information(matrix2(), Column)`.
pub fn matrix1() -> MatrixGame {
    MatrixGame::new(
        &["A1", "A2"],
        &[
            "A1→M1, A2→M1",
            "A1→M1, A2→M2",
            "A1→M2, A2→M1",
            "A1→M2, A2→M2",
        ],
        vec![
            vec![rat!(45), rat!(45), rat!(95), rat!(95)],
            vec![rat!(65), rat!(15), rat!(65), rat!(15)],
        ],
    )
    .with_constant_sum(rat!(100))
}

/// The 2x2 constant-sum game played without information: aviation rows
/// against naval columns, entries from [`table2`].
pub fn matrix2() -> MatrixGame {
    MatrixGame::new(
        &["A1", "A2"],
        &["M1", "M2"],
        vec![vec![rat!(45), rat!(95)], vec![rat!(65), rat!(15)]],
    )
    .with_constant_sum(rat!(100))
}
