//! Shared domain types: alternatives, weighted preference profiles,
//! pairwise support matrices, dominance relations and matrix games.
//!
//! Types are plain immutable values. Construction does not enforce the
//! documented invariants; [`Validate::validate`] reports every violation so
//! callers (notably the CLI) can surface them all at once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// A named contender: a short unique id plus a display label.
///
/// Identity is the id token; display names never participate in equality
/// of derived results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternative {
    pub id: String,
    pub name: String,
}

impl Alternative {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Alternative {
            id: id.into(),
            name: name.into(),
        }
    }
}

/// One voter group: a non-negative weight (percent of the electorate) and a
/// strict ranking over the full alternative set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceGroup {
    pub weight: Rational,
    pub ranking: Vec<String>,
}

impl PreferenceGroup {
    pub fn new(weight: Rational, ranking: &[&str]) -> Self {
        PreferenceGroup {
            weight,
            ranking: ranking.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// An electorate given as weighted groups of strict rankings.
///
/// Listed weights need not sum to 100; shares are normalized by the total
/// listed weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPreferenceProfile {
    pub alternatives: Vec<Alternative>,
    pub groups: Vec<PreferenceGroup>,
}

impl WeightedPreferenceProfile {
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.alternatives.iter().map(|a| a.id.as_str())
    }

    pub fn total_weight(&self) -> Rational {
        self.groups.iter().map(|g| &g.weight).sum()
    }
}

/// Percent support `s(x, y)` for every ordered pair of distinct
/// alternatives; `s(x, y) + s(y, x) = 100` when valid.
///
/// Deserialization accepts sparse maps: a missing complement entry is
/// filled as `100 - s(x, y)`, while a pair present in both directions must
/// sum to exactly 100 or the document is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairwiseMatrixWire")]
pub struct PairwiseMatrix {
    pub alternatives: Vec<Alternative>,
    pub support: BTreeMap<String, BTreeMap<String, Rational>>,
}

impl PairwiseMatrix {
    pub fn new(alternatives: Vec<Alternative>) -> Self {
        PairwiseMatrix {
            alternatives,
            support: BTreeMap::new(),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.alternatives.iter().map(|a| a.id.as_str())
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a.id == id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    pub fn support(&self, x: &str, y: &str) -> Option<&Rational> {
        self.support.get(x).and_then(|row| row.get(y))
    }

    /// Sets `s(x, y)` and fills nothing else; use [`set_pair`] for the
    /// usual complementary insertion.
    ///
    /// [`set_pair`]: PairwiseMatrix::set_pair
    pub fn set_support(&mut self, x: &str, y: &str, value: Rational) {
        self.support
            .entry(x.to_string())
            .or_default()
            .insert(y.to_string(), value);
    }

    /// Sets `s(x, y) = value` and `s(y, x) = 100 - value`.
    pub fn set_pair(&mut self, x: &str, y: &str, value: Rational) {
        let complement = Rational::integer(100) - &value;
        self.set_support(x, y, value);
        self.set_support(y, x, complement);
    }
}

#[derive(Deserialize)]
struct PairwiseMatrixWire {
    alternatives: Vec<Alternative>,
    support: BTreeMap<String, BTreeMap<String, Rational>>,
}

impl TryFrom<PairwiseMatrixWire> for PairwiseMatrix {
    type Error = String;

    fn try_from(wire: PairwiseMatrixWire) -> Result<Self, Self::Error> {
        let ids: Vec<String> = wire.alternatives.iter().map(|a| a.id.clone()).collect();
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(format!("duplicate alternative id `{id}`"));
            }
        }
        for (x, row) in &wire.support {
            if !seen.contains(x.as_str()) {
                return Err(format!("support entry for unknown alternative `{x}`"));
            }
            for y in row.keys() {
                if !seen.contains(y.as_str()) {
                    return Err(format!("support entry for unknown alternative `{y}`"));
                }
                if x == y {
                    return Err(format!("diagonal support entry ({x}, {x}) is not allowed"));
                }
            }
        }

        let hundred = Rational::integer(100);
        let mut matrix = PairwiseMatrix {
            alternatives: wire.alternatives,
            support: BTreeMap::new(),
        };
        for (i, x) in ids.iter().enumerate() {
            for y in &ids[i + 1..] {
                let forward = wire.support.get(x).and_then(|r| r.get(y));
                let backward = wire.support.get(y).and_then(|r| r.get(x));
                match (forward, backward) {
                    (Some(f), Some(b)) => {
                        if f + b != hundred {
                            return Err(format!(
                                "conflicting support entries for ({x}, {y}): {f} + {b} != 100"
                            ));
                        }
                        matrix.set_support(x, y, f.clone());
                        matrix.set_support(y, x, b.clone());
                    }
                    (Some(f), None) => matrix.set_pair(x, y, f.clone()),
                    (None, Some(b)) => matrix.set_pair(y, x, b.clone()),
                    (None, None) => {}
                }
            }
        }
        Ok(matrix)
    }
}

/// Directed strict-dominance graph: an edge `(x, y)` means `x` prevails
/// over `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceRelation {
    pub alternatives: Vec<Alternative>,
    pub edges: BTreeSet<(String, String)>,
}

impl DominanceRelation {
    pub fn new(alternatives: Vec<Alternative>) -> Self {
        DominanceRelation {
            alternatives,
            edges: BTreeSet::new(),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.alternatives.iter().map(|a| a.id.as_str())
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a.id == id)
    }

    pub fn dominates(&self, x: &str, y: &str) -> bool {
        self.edges.contains(&(x.to_string(), y.to_string()))
    }

    pub fn add_edge(&mut self, x: &str, y: &str) {
        self.edges.insert((x.to_string(), y.to_string()));
    }
}

/// Row-player payoff matrix with labeled strategies.
///
/// When `constant_sum` is set the column player's payoff at any cell is
/// `constant_sum - payoff`, so one matrix carries the whole game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGame {
    #[serde(rename = "rows")]
    pub row_labels: Vec<String>,
    #[serde(rename = "cols")]
    pub col_labels: Vec<String>,
    pub payoffs: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_sum: Option<Rational>,
}

impl MatrixGame {
    pub fn new(rows: &[&str], cols: &[&str], payoffs: Vec<Vec<Rational>>) -> Self {
        MatrixGame {
            row_labels: rows.iter().map(|s| s.to_string()).collect(),
            col_labels: cols.iter().map(|s| s.to_string()).collect(),
            payoffs,
            constant_sum: None,
        }
    }

    pub fn with_constant_sum(mut self, total: Rational) -> Self {
        self.constant_sum = Some(total);
        self
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn payoff(&self, row: usize, col: usize) -> &Rational {
        &self.payoffs[row][col]
    }

    pub fn is_2x2(&self) -> bool {
        self.rows() == 2 && self.cols() == 2
    }

    /// Returns true when `payoffs` is a non-empty rectangle matching the
    /// label counts; the cheap shape check every game operation relies on.
    pub fn is_well_formed(&self) -> bool {
        !self.payoffs.is_empty()
            && !self.col_labels.is_empty()
            && self.payoffs.len() == self.rows()
            && self.payoffs.iter().all(|r| r.len() == self.cols())
    }

    /// Column player's share of a constant-sum game for a given row value.
    pub fn column_payoff(&self, value: &Rational) -> Option<Rational> {
        self.constant_sum.as_ref().map(|total| total - value)
    }
}

/// Probability distribution over a player's pure strategies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedStrategy {
    pub labels: Vec<String>,
    pub probabilities: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(labels: Vec<String>, probabilities: Vec<Rational>) -> Self {
        MixedStrategy {
            labels,
            probabilities,
        }
    }

    /// Degenerate distribution putting all mass on `index`.
    pub fn pure(labels: Vec<String>, index: usize) -> Self {
        let probabilities = (0..labels.len())
            .map(|i| {
                if i == index {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        MixedStrategy {
            labels,
            probabilities,
        }
    }

    pub fn probability_of(&self, label: &str) -> Option<&Rational> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.probabilities[i])
    }
}

/// How a game was solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    PureSaddle,
    MixedExact,
    MixedApproximate,
}

/// Strategies, value and an exploitability certificate for a solved game.
///
/// `epsilon` bounds the gain either player could obtain by unilateral
/// deviation; it is exactly zero for pure-saddle and closed-form
/// solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSolution {
    pub kind: SolutionKind,
    pub row_strategy: MixedStrategy,
    pub col_strategy: MixedStrategy,
    pub value: Rational,
    pub epsilon: Rational,
}

/// A single invariant violation, naming the offending field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub invariant: String,
}

impl Violation {
    fn new(field: impl Into<String>, invariant: impl Into<String>) -> Self {
        Violation {
            field: field.into(),
            invariant: invariant.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.invariant)
    }
}

/// Structural invariant checking. Idempotent and side-effect free; an
/// empty result means the value is valid.
pub trait Validate {
    fn validate(&self) -> Vec<Violation>;
}

fn validate_alternatives(alternatives: &[Alternative], out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    for alt in alternatives {
        if alt.id.is_empty() {
            out.push(Violation::new("alternatives", "empty alternative id"));
        } else if alt.id.chars().any(char::is_whitespace) {
            out.push(Violation::new(
                "alternatives",
                format!("alternative id `{}` contains whitespace", alt.id),
            ));
        }
        if !seen.insert(alt.id.as_str()) {
            out.push(Violation::new(
                "alternatives",
                format!("duplicate alternative id `{}`", alt.id),
            ));
        }
    }
}

impl Validate for WeightedPreferenceProfile {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        validate_alternatives(&self.alternatives, &mut out);

        if self.groups.is_empty() {
            out.push(Violation::new("groups", "no groups listed"));
        }
        let ids: BTreeSet<&str> = self.ids().collect();
        for (g, group) in self.groups.iter().enumerate() {
            let field = format!("groups[{g}]");
            if group.weight.is_negative() {
                out.push(Violation::new(
                    format!("{field}.weight"),
                    format!("weight {} is negative", group.weight),
                ));
            }
            let mut seen = BTreeSet::new();
            for id in &group.ranking {
                if !ids.contains(id.as_str()) {
                    out.push(Violation::new(
                        format!("{field}.ranking"),
                        format!("unknown alternative `{id}`"),
                    ));
                }
                if !seen.insert(id.as_str()) {
                    out.push(Violation::new(
                        format!("{field}.ranking"),
                        format!("alternative `{id}` ranked twice"),
                    ));
                }
            }
            for id in &ids {
                if !seen.contains(id) {
                    out.push(Violation::new(
                        format!("{field}.ranking"),
                        format!("ranking is not a permutation: `{id}` missing"),
                    ));
                }
            }
        }
        if !self.groups.is_empty() && !self.total_weight().is_positive() {
            out.push(Violation::new(
                "groups",
                "at least one group must have positive weight",
            ));
        }
        out
    }
}

impl Validate for PairwiseMatrix {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        validate_alternatives(&self.alternatives, &mut out);

        let ids: Vec<&str> = self.ids().collect();
        let known: BTreeSet<&str> = ids.iter().copied().collect();
        let hundred = Rational::integer(100);

        for (x, row) in &self.support {
            if !known.contains(x.as_str()) {
                out.push(Violation::new(
                    "support",
                    format!("entry for unknown alternative `{x}`"),
                ));
            }
            for (y, value) in row {
                if !known.contains(y.as_str()) {
                    out.push(Violation::new(
                        "support",
                        format!("entry for unknown alternative `{y}`"),
                    ));
                }
                if x == y {
                    out.push(Violation::new(
                        "support",
                        format!("diagonal entry ({x}, {x}) is not allowed"),
                    ));
                }
                if value.is_negative() || value > &hundred {
                    out.push(Violation::new(
                        "support",
                        format!("support({x}, {y}) = {value} outside [0, 100]"),
                    ));
                }
            }
        }
        for (i, x) in ids.iter().enumerate() {
            for y in &ids[i + 1..] {
                match (self.support(x, y), self.support(y, x)) {
                    (Some(f), Some(b)) => {
                        if f + b != hundred {
                            out.push(Violation::new(
                                "support",
                                format!(
                                    "support({x}, {y}) + support({y}, {x}) = {} != 100",
                                    f + b
                                ),
                            ));
                        }
                    }
                    (None, _) => out.push(Violation::new(
                        "support",
                        format!("missing entry for ({x}, {y})"),
                    )),
                    (_, None) => out.push(Violation::new(
                        "support",
                        format!("missing entry for ({y}, {x})"),
                    )),
                }
            }
        }
        out
    }
}

impl Validate for DominanceRelation {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        validate_alternatives(&self.alternatives, &mut out);
        let known: BTreeSet<&str> = self.ids().collect();
        for (x, y) in &self.edges {
            if x == y {
                out.push(Violation::new(
                    "edges",
                    format!("reflexive edge ({x}, {x})"),
                ));
            }
            for id in [x, y] {
                if !known.contains(id.as_str()) {
                    out.push(Violation::new(
                        "edges",
                        format!("edge references unknown alternative `{id}`"),
                    ));
                }
            }
            if x < y && self.edges.contains(&(y.clone(), x.clone())) {
                out.push(Violation::new(
                    "edges",
                    format!("both ({x}, {y}) and ({y}, {x}) present"),
                ));
            }
        }
        out
    }
}

impl Validate for MatrixGame {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, labels) in [("rows", &self.row_labels), ("cols", &self.col_labels)] {
            let mut seen = BTreeSet::new();
            for label in labels {
                if label.is_empty() {
                    out.push(Violation::new(field, "empty strategy label"));
                }
                if !seen.insert(label.as_str()) {
                    out.push(Violation::new(
                        field,
                        format!("duplicate strategy label `{label}`"),
                    ));
                }
            }
        }
        if self.payoffs.is_empty() || self.col_labels.is_empty() {
            out.push(Violation::new("payoffs", "payoff matrix is empty"));
        }
        if self.payoffs.len() != self.rows() {
            out.push(Violation::new(
                "payoffs",
                format!(
                    "{} payoff rows for {} row labels",
                    self.payoffs.len(),
                    self.rows()
                ),
            ));
        }
        for (i, row) in self.payoffs.iter().enumerate() {
            if row.len() != self.cols() {
                out.push(Violation::new(
                    "payoffs",
                    format!(
                        "row {i} has {} entries for {} column labels",
                        row.len(),
                        self.cols()
                    ),
                ));
            }
        }
        out
    }
}

impl Validate for MixedStrategy {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.probabilities.len() != self.labels.len() {
            out.push(Violation::new(
                "probabilities",
                format!(
                    "{} probabilities for {} labels",
                    self.probabilities.len(),
                    self.labels.len()
                ),
            ));
        }
        for (i, p) in self.probabilities.iter().enumerate() {
            if p.is_negative() {
                out.push(Violation::new(
                    "probabilities",
                    format!("probability {p} at index {i} is negative"),
                ));
            }
        }
        let total: Rational = self.probabilities.iter().sum();
        if total != Rational::one() {
            out.push(Violation::new(
                "probabilities",
                format!("probabilities sum to {total}, not 1"),
            ));
        }
        out
    }
}

impl Validate for GameSolution {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, strategy) in [
            ("row_strategy", &self.row_strategy),
            ("col_strategy", &self.col_strategy),
        ] {
            for v in strategy.validate() {
                out.push(Violation::new(
                    format!("{field}.{}", v.field),
                    v.invariant,
                ));
            }
        }
        if self.epsilon.is_negative() {
            out.push(Violation::new(
                "epsilon",
                format!("epsilon {} is negative", self.epsilon),
            ));
        }
        if matches!(
            self.kind,
            SolutionKind::PureSaddle | SolutionKind::MixedExact
        ) && !self.epsilon.is_zero()
        {
            out.push(Violation::new(
                "epsilon",
                "exact solutions must report epsilon = 0",
            ));
        }
        out
    }
}
