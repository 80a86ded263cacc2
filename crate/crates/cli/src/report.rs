//! Report payloads: every command answers with one `RunReport` carrying a
//! canonical echo of its parsed inputs, the operation result, and any
//! warnings. Serialization is deterministic (sorted maps, declaration
//! order fields, no timestamps), so identical runs are byte-identical.

use serde::Serialize;

use contest_core::fixtures;
use contest_core::games::{EnvelopePoint, InformationExpansion, Player, SolveMode};
use contest_core::model::{GameSolution, MatrixGame, PairwiseMatrix, WeightedPreferenceProfile};
use contest_core::rational::Rational;
use contest_core::voting::{Bracket, TieRule};

#[derive(Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
}

impl Meta {
    pub fn current() -> Self {
        Meta {
            tool: "contest",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
pub struct RunReport<I: Serialize, R: Serialize> {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub inputs: I,
    pub result: R,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct ProfileInputs {
    pub profile: WeightedPreferenceProfile,
}

#[derive(Serialize)]
pub struct MatrixInputs {
    pub matrix: PairwiseMatrix,
}

#[derive(Serialize)]
pub struct AgendaInputs {
    pub matrix: PairwiseMatrix,
    pub agenda: Vec<String>,
    pub tie_rule: TieRule,
}

#[derive(Serialize)]
pub struct BracketInputs {
    pub matrix: PairwiseMatrix,
    pub bracket: Bracket,
    pub tie_rule: TieRule,
}

#[derive(Serialize)]
pub struct LeagueInputs {
    pub matrix: PairwiseMatrix,
    pub field: Vec<String>,
}

#[derive(Serialize)]
pub struct StableSetInputs {
    pub matrix: PairwiseMatrix,
    pub threshold: Rational,
}

#[derive(Serialize)]
pub struct SolveInputs {
    pub game: MatrixGame,
    pub mode: SolveMode,
    pub tolerance: Rational,
    pub max_iterations: u64,
}

#[derive(Serialize)]
pub struct ExpandInputs {
    pub game: MatrixGame,
    pub informed: Player,
}

#[derive(Serialize)]
pub struct EnvelopeInputs {
    pub game: MatrixGame,
    pub player: Player,
    pub samples: u32,
}

#[derive(Serialize)]
pub struct DeriveResult {
    pub matrix: PairwiseMatrix,
}

#[derive(Serialize)]
pub struct SolveResult {
    pub solution: GameSolution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_payoff: Option<Rational>,
}

#[derive(Serialize)]
pub struct EnvelopeResult {
    pub player: Player,
    pub points: Vec<EnvelopePoint>,
    pub breakpoints: Vec<EnvelopePoint>,
}

/// When a derived matrix covers exactly the bundled four-alternative
/// election, compare it against the canonical `table2` fixture and name
/// every differing cell. This is how the two shipped profile fixtures are
/// told apart at a glance.
pub fn reconciliation_warnings(derived: &PairwiseMatrix) -> Vec<String> {
    let canonical = fixtures::table2();
    let mut derived_ids: Vec<&str> = derived.ids().collect();
    let mut canonical_ids: Vec<&str> = canonical.ids().collect();
    derived_ids.sort_unstable();
    canonical_ids.sort_unstable();
    if derived_ids != canonical_ids {
        return Vec::new();
    }

    let order: Vec<String> = canonical.ids().map(str::to_string).collect();
    let mut warnings = Vec::new();
    for (i, x) in order.iter().enumerate() {
        for y in &order[i + 1..] {
            let (Some(actual), Some(expected)) =
                (derived.support(x, y), canonical.support(x, y))
            else {
                continue;
            };
            if actual != expected {
                warnings.push(format!(
                    "support({x}, {y}) = {actual} differs from the canonical table2 fixture value {expected}"
                ));
            }
        }
    }
    warnings
}
