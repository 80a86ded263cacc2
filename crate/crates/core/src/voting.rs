//! Aggregation and selection procedures over weighted preference profiles
//! and pairwise support matrices.
//!
//! The procedures deliberately expose their classical failure modes:
//! pairwise majority voting can cycle, knockout winners depend on the
//! agenda, and iterated league elimination can contradict the league
//! table it started from. Nothing here papers over a tie; knockout tie
//! handling is an explicit caller choice.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{PairwiseMatrix, Validate, WeightedPreferenceProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VotingError {
    #[error("total listed weight is zero")]
    ZeroTotalWeight,
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("unknown alternative id `{0}`")]
    UnknownAlternative(String),
    #[error("duplicate entry `{0}`")]
    DuplicateEntry(String),
    #[error("missing support entry for ({0}, {1})")]
    MissingSupport(String, String),
    #[error("need at least two alternatives, got {0}")]
    FieldTooSmall(usize),
    #[error("tie between `{left}` and `{right}` (50:50) halted the knockout")]
    TieHalted { left: String, right: String },
}

/// Scores per alternative plus every score-maximal alternative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyResult {
    pub scores: BTreeMap<String, Rational>,
    pub winners: Vec<String>,
}

impl TallyResult {
    /// Builds the tally from `(id, score)` pairs; winners keep the given
    /// id order.
    fn from_scores(scores: Vec<(String, Rational)>) -> Self {
        let best = scores.iter().map(|(_, s)| s).max().cloned();
        let winners = match &best {
            Some(best) => scores
                .iter()
                .filter(|(_, s)| s == best)
                .map(|(id, _)| id.clone())
                .collect(),
            None => Vec::new(),
        };
        TallyResult {
            scores: scores.into_iter().collect(),
            winners,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchOutcome {
    Left,
    Right,
    Tie,
}

/// One head-to-head comparison with both support percentages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub left: String,
    pub right: String,
    pub left_support: Rational,
    pub right_support: Rational,
    pub outcome: MatchOutcome,
}

impl MatchRecord {
    pub fn winner(&self) -> Option<&str> {
        match self.outcome {
            MatchOutcome::Left => Some(&self.left),
            MatchOutcome::Right => Some(&self.right),
            MatchOutcome::Tie => None,
        }
    }
}

/// Tie handling for knockout procedures. There is no canonical rule, so
/// the caller must choose; `Error` forces the choice to be explicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    Error,
    IncumbentStays,
    ChallengerAdvances,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoundDetail {
    Matches(Vec<MatchRecord>),
    Scores(TallyResult),
}

/// One elimination round: the field it started from, what was played or
/// scored, and who got knocked out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationRound {
    pub field: Vec<String>,
    pub detail: RoundDetail,
    pub eliminated: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContestOutcome {
    Winner(String),
    Tie(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub rounds: Vec<EliminationRound>,
    pub outcome: ContestOutcome,
}

impl EliminationReport {
    pub fn winner(&self) -> Option<&str> {
        match &self.outcome {
            ContestOutcome::Winner(id) => Some(id),
            ContestOutcome::Tie(_) => None,
        }
    }
}

/// Condorcet check result: a strict-majority winner if one exists, and a
/// directed majority cycle witnessing the contradiction if one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondorcetAnalysis {
    pub winner: Option<String>,
    pub cycle: Option<Vec<String>>,
}

/// A single-elimination pairing tree. Leaves are alternative ids; each
/// internal node plays its children's winners against each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Leaf(String),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn leaf(id: &str) -> Self {
        Bracket::Leaf(id.to_string())
    }

    pub fn pair(left: Bracket, right: Bracket) -> Self {
        Bracket::Pair(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> Vec<&str> {
        match self {
            Bracket::Leaf(id) => vec![id.as_str()],
            Bracket::Pair(l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Leaf(id) => write!(f, "{id}"),
            Bracket::Pair(l, r) => write!(f, "({l},{r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bracket at byte {position}: {message}")]
pub struct ParseBracketError {
    pub position: usize,
    pub message: String,
}

/// Parses `((A1,A2),(M1,M2))`-style pairing trees; a bare id is a leaf.
impl FromStr for Bracket {
    type Err = ParseBracketError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        struct Parser<'a> {
            bytes: &'a [u8],
            pos: usize,
        }

        impl<'a> Parser<'a> {
            fn err(&self, message: &str) -> ParseBracketError {
                ParseBracketError {
                    position: self.pos,
                    message: message.to_string(),
                }
            }

            fn skip_ws(&mut self) {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
            }

            fn expect(&mut self, byte: u8) -> Result<(), ParseBracketError> {
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&byte) {
                    self.pos += 1;
                    Ok(())
                } else {
                    Err(self.err(&format!("expected `{}`", byte as char)))
                }
            }

            fn node(&mut self) -> Result<Bracket, ParseBracketError> {
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b'(') {
                    self.pos += 1;
                    let left = self.node()?;
                    self.expect(b',')?;
                    let right = self.node()?;
                    self.expect(b')')?;
                    Ok(Bracket::pair(left, right))
                } else {
                    let start = self.pos;
                    while self
                        .bytes
                        .get(self.pos)
                        .is_some_and(|b| !matches!(b, b'(' | b')' | b',') && !b.is_ascii_whitespace())
                    {
                        self.pos += 1;
                    }
                    if self.pos == start {
                        return Err(self.err("expected an alternative id or `(`"));
                    }
                    let id = std::str::from_utf8(&self.bytes[start..self.pos])
                        .map_err(|_| self.err("id is not valid UTF-8"))?;
                    Ok(Bracket::leaf(id))
                }
            }
        }

        let mut parser = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let bracket = parser.node()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.err("trailing input after bracket"));
        }
        Ok(bracket)
    }
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bracket {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn ensure_valid_profile(profile: &WeightedPreferenceProfile) -> Result<(), VotingError> {
    let violations = profile.validate();
    if let Some(first) = violations.first() {
        return Err(VotingError::InvalidProfile(first.to_string()));
    }
    Ok(())
}

/// Derives the pairwise support matrix of a profile: `s(x, y)` is the
/// percentage of listed weight ranking `x` above `y`, so the complement
/// identity holds by construction.
pub fn derive_pairwise(
    profile: &WeightedPreferenceProfile,
) -> Result<PairwiseMatrix, VotingError> {
    ensure_valid_profile(profile)?;
    let total = profile.total_weight();
    if !total.is_positive() {
        return Err(VotingError::ZeroTotalWeight);
    }

    let positions: Vec<HashMap<&str, usize>> = profile
        .groups
        .iter()
        .map(|g| {
            g.ranking
                .iter()
                .enumerate()
                .map(|(i, id)| (id.as_str(), i))
                .collect()
        })
        .collect();

    let ids: Vec<&str> = profile.ids().collect();
    let hundred = Rational::integer(100);
    let mut matrix = PairwiseMatrix::new(profile.alternatives.clone());
    for (i, x) in ids.iter().enumerate() {
        for y in &ids[i + 1..] {
            let above: Rational = profile
                .groups
                .iter()
                .zip(&positions)
                .filter(|(_, pos)| pos[x] < pos[y])
                .map(|(g, _)| &g.weight)
                .sum();
            matrix.set_pair(x, y, &hundred * above / &total);
        }
    }
    Ok(matrix)
}

/// Relative-majority vote: each group's weight share goes to its
/// top-ranked alternative.
pub fn plurality(profile: &WeightedPreferenceProfile) -> Result<TallyResult, VotingError> {
    ensure_valid_profile(profile)?;
    let total = profile.total_weight();
    if !total.is_positive() {
        return Err(VotingError::ZeroTotalWeight);
    }

    let hundred = Rational::integer(100);
    let mut scores: Vec<(String, Rational)> = profile
        .ids()
        .map(|id| (id.to_string(), Rational::zero()))
        .collect();
    for group in &profile.groups {
        let top = &group.ranking[0];
        let share = &hundred * &group.weight / &total;
        let slot = scores
            .iter_mut()
            .find(|(id, _)| id == top)
            .expect("validated ranking entries are known alternatives");
        slot.1 += share;
    }
    Ok(TallyResult::from_scores(scores))
}

fn support_pair(
    matrix: &PairwiseMatrix,
    x: &str,
    y: &str,
) -> Result<(Rational, Rational), VotingError> {
    for id in [x, y] {
        if !matrix.contains(id) {
            return Err(VotingError::UnknownAlternative(id.to_string()));
        }
    }
    let forward = matrix
        .support(x, y)
        .ok_or_else(|| VotingError::MissingSupport(x.to_string(), y.to_string()))?;
    let backward = matrix
        .support(y, x)
        .ok_or_else(|| VotingError::MissingSupport(y.to_string(), x.to_string()))?;
    Ok((forward.clone(), backward.clone()))
}

/// Single pairwise comparison; `x` wins when its support strictly exceeds
/// 50 percent, and exactly 50:50 is a tie.
pub fn head_to_head(matrix: &PairwiseMatrix, x: &str, y: &str) -> Result<MatchRecord, VotingError> {
    if x == y {
        return Err(VotingError::DuplicateEntry(x.to_string()));
    }
    let (left_support, right_support) = support_pair(matrix, x, y)?;
    let fifty = Rational::integer(50);
    let outcome = if left_support > fifty {
        MatchOutcome::Left
    } else if left_support < fifty {
        MatchOutcome::Right
    } else {
        MatchOutcome::Tie
    };
    Ok(MatchRecord {
        left: x.to_string(),
        right: y.to_string(),
        left_support,
        right_support,
        outcome,
    })
}

/// Strict-majority adjacency truth table used by the cycle search.
fn majority_edges(matrix: &PairwiseMatrix) -> (Vec<&str>, Vec<Vec<bool>>) {
    let ids: Vec<&str> = matrix.ids().collect();
    let fifty = Rational::integer(50);
    let n = ids.len();
    let mut beats = vec![vec![false; n]; n];
    for (i, x) in ids.iter().enumerate() {
        for (j, y) in ids.iter().enumerate() {
            if i != j {
                beats[i][j] = matrix.support(x, y).is_some_and(|s| s > &fifty);
            }
        }
    }
    (ids, beats)
}

/// Reports the Condorcet winner (beats every rival strictly) if one
/// exists, and some strict-majority cycle if one exists. The returned
/// cycle is a shortest one, found deterministically.
pub fn condorcet_analysis(matrix: &PairwiseMatrix) -> CondorcetAnalysis {
    let (ids, beats) = majority_edges(matrix);
    let n = ids.len();

    let winner = (0..n)
        .find(|&i| (0..n).all(|j| i == j || beats[i][j]))
        .map(|i| ids[i].to_string());

    // Shortest cycle through each start node via BFS; earlier starts win
    // ties so the result is deterministic in alternative order.
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if beats[u][v] && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let closing = (0..n)
            .filter(|&u| u != start && beats[u][start] && dist[u] != usize::MAX)
            .min_by_key(|&u| (dist[u], u));
        if let Some(u) = closing {
            let len = dist[u] + 1;
            if best.as_ref().is_none_or(|b| len < b.len()) {
                let mut path = vec![u];
                let mut node = u;
                while node != start {
                    node = parent[node];
                    path.push(node);
                }
                path.reverse();
                best = Some(path);
            }
        }
    }

    CondorcetAnalysis {
        winner,
        cycle: best.map(|path| path.into_iter().map(|i| ids[i].to_string()).collect()),
    }
}

fn check_field(matrix: &PairwiseMatrix, field: &[String]) -> Result<(), VotingError> {
    let mut seen = BTreeSet::new();
    for id in field {
        if !matrix.contains(id) {
            return Err(VotingError::UnknownAlternative(id.clone()));
        }
        if !seen.insert(id.as_str()) {
            return Err(VotingError::DuplicateEntry(id.clone()));
        }
    }
    Ok(())
}

fn resolve_match(record: &MatchRecord, tie_rule: TieRule) -> Result<String, VotingError> {
    match record.outcome {
        MatchOutcome::Left => Ok(record.left.clone()),
        MatchOutcome::Right => Ok(record.right.clone()),
        MatchOutcome::Tie => match tie_rule {
            TieRule::Error => Err(VotingError::TieHalted {
                left: record.left.clone(),
                right: record.right.clone(),
            }),
            TieRule::IncumbentStays => Ok(record.left.clone()),
            TieRule::ChallengerAdvances => Ok(record.right.clone()),
        },
    }
}

/// Sequential knockout along an agenda: the reigning champion meets the
/// next listed alternative, the survivor advances. The winner can depend
/// on the agenda order whenever the majority relation cycles.
pub fn agenda_elimination(
    matrix: &PairwiseMatrix,
    agenda: &[String],
    tie_rule: TieRule,
) -> Result<EliminationReport, VotingError> {
    check_field(matrix, agenda)?;
    if agenda.len() < 2 {
        return Err(VotingError::FieldTooSmall(agenda.len()));
    }

    let mut eliminated: BTreeSet<String> = BTreeSet::new();
    let mut rounds = Vec::new();
    let mut champion = agenda[0].clone();
    for challenger in &agenda[1..] {
        let field: Vec<String> = agenda
            .iter()
            .filter(|id| !eliminated.contains(id.as_str()))
            .cloned()
            .collect();
        let record = head_to_head(matrix, &champion, challenger)?;
        let survivor = resolve_match(&record, tie_rule)?;
        let loser = if survivor == champion {
            challenger.clone()
        } else {
            champion.clone()
        };
        eliminated.insert(loser.clone());
        rounds.push(EliminationRound {
            field,
            detail: RoundDetail::Matches(vec![record]),
            eliminated: vec![loser],
        });
        champion = survivor;
    }
    Ok(EliminationReport {
        rounds,
        outcome: ContestOutcome::Winner(champion),
    })
}

/// Olympic-system knockout over an explicit pairing tree, evaluated in
/// post-order: each internal node plays the winners of its subtrees.
pub fn bracket_elimination(
    matrix: &PairwiseMatrix,
    bracket: &Bracket,
    tie_rule: TieRule,
) -> Result<EliminationReport, VotingError> {
    let leaves: Vec<String> = bracket.leaves().iter().map(|s| s.to_string()).collect();
    check_field(matrix, &leaves)?;

    fn evaluate(
        matrix: &PairwiseMatrix,
        node: &Bracket,
        tie_rule: TieRule,
        leaves: &[String],
        eliminated: &mut BTreeSet<String>,
        rounds: &mut Vec<EliminationRound>,
    ) -> Result<String, VotingError> {
        match node {
            Bracket::Leaf(id) => Ok(id.clone()),
            Bracket::Pair(left, right) => {
                let left_winner = evaluate(matrix, left, tie_rule, leaves, eliminated, rounds)?;
                let right_winner = evaluate(matrix, right, tie_rule, leaves, eliminated, rounds)?;
                let field: Vec<String> = leaves
                    .iter()
                    .filter(|id| !eliminated.contains(*id))
                    .cloned()
                    .collect();
                let record = head_to_head(matrix, &left_winner, &right_winner)?;
                let survivor = resolve_match(&record, tie_rule)?;
                let loser = if survivor == left_winner {
                    right_winner
                } else {
                    left_winner
                };
                eliminated.insert(loser.clone());
                rounds.push(EliminationRound {
                    field,
                    detail: RoundDetail::Matches(vec![record]),
                    eliminated: vec![loser],
                });
                Ok(survivor)
            }
        }
    }

    let mut eliminated = BTreeSet::new();
    let mut rounds = Vec::new();
    let winner = evaluate(matrix, bracket, tie_rule, &leaves, &mut eliminated, &mut rounds)?;
    Ok(EliminationReport {
        rounds,
        outcome: ContestOutcome::Winner(winner),
    })
}

/// League standings: every alternative's score is the sum of its support
/// percentages against the rest of the field, as if each pairwise
/// comparison were a match worth 100 points split between the two sides.
pub fn league_scores(
    matrix: &PairwiseMatrix,
    field: &[String],
) -> Result<TallyResult, VotingError> {
    check_field(matrix, field)?;
    if field.len() < 2 {
        return Err(VotingError::FieldTooSmall(field.len()));
    }

    let mut scores = Vec::new();
    for x in field {
        let mut score = Rational::zero();
        for y in field {
            if x != y {
                let (s, _) = support_pair(matrix, x, y)?;
                score += s;
            }
        }
        scores.push((x.clone(), score));
    }
    Ok(TallyResult::from_scores(scores))
}

/// Repeated league play: score the current field, drop everyone tied for
/// the minimum, and repeat until two remain; those two meet head to head.
/// Ties that cannot be broken are reported as tie outcomes, not errors.
pub fn iterated_league_elimination(
    matrix: &PairwiseMatrix,
) -> Result<EliminationReport, VotingError> {
    let mut field: Vec<String> = matrix.ids().map(str::to_string).collect();
    if field.len() < 2 {
        return Err(VotingError::FieldTooSmall(field.len()));
    }

    let mut rounds = Vec::new();
    while field.len() > 2 {
        let tally = league_scores(matrix, &field)?;
        let min = tally.scores.values().min().cloned().unwrap();
        let max = tally.scores.values().max().cloned().unwrap();
        if min == max {
            // Every remaining alternative scored the same; nothing left
            // to separate them.
            rounds.push(EliminationRound {
                field: field.clone(),
                detail: RoundDetail::Scores(tally),
                eliminated: Vec::new(),
            });
            return Ok(EliminationReport {
                rounds,
                outcome: ContestOutcome::Tie(field),
            });
        }
        let dropped: Vec<String> = field
            .iter()
            .filter(|id| tally.scores[*id] == min)
            .cloned()
            .collect();
        let pre_round = field.clone();
        field.retain(|id| tally.scores[id] != min);
        rounds.push(EliminationRound {
            field: pre_round,
            detail: RoundDetail::Scores(tally),
            eliminated: dropped,
        });
    }

    if field.len() == 1 {
        return Ok(EliminationReport {
            rounds,
            outcome: ContestOutcome::Winner(field.pop().unwrap()),
        });
    }

    let record = head_to_head(matrix, &field[0], &field[1])?;
    let outcome = match record.winner() {
        Some(winner) => ContestOutcome::Winner(winner.to_string()),
        None => ContestOutcome::Tie(field.clone()),
    };
    let eliminated = match &outcome {
        ContestOutcome::Winner(w) => field.iter().filter(|id| *id != w).cloned().collect(),
        ContestOutcome::Tie(_) => Vec::new(),
    };
    rounds.push(EliminationRound {
        field,
        detail: RoundDetail::Matches(vec![record]),
        eliminated,
    });
    Ok(EliminationReport { rounds, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{Alternative, PreferenceGroup};
    use crate::rat;

    fn ids(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// Independent oracle: weighted count of groups ranking `x` above `y`,
    /// straight from the definition.
    fn brute_force_support(
        profile: &WeightedPreferenceProfile,
        x: &str,
        y: &str,
    ) -> Rational {
        let total = profile.total_weight();
        let above: Rational = profile
            .groups
            .iter()
            .filter(|g| {
                let px = g.ranking.iter().position(|id| id == x).unwrap();
                let py = g.ranking.iter().position(|id| id == y).unwrap();
                px < py
            })
            .map(|g| &g.weight)
            .sum();
        Rational::integer(100) * above / total
    }

    #[test]
    fn reconciled_profile_derives_the_canonical_table() {
        let profile = fixtures::table1_reconciled();
        let matrix = derive_pairwise(&profile).unwrap();
        // Oracle first: the brute-force count must agree with the
        // implementation on every ordered pair...
        for x in profile.ids() {
            for y in profile.ids() {
                if x != y {
                    assert_eq!(
                        matrix.support(x, y).unwrap(),
                        &brute_force_support(&profile, x, y),
                        "support({x}, {y})"
                    );
                }
            }
        }
        // ...and the counted values are exactly the canonical table.
        let expected = [
            ("A1", "M1", rat!(45)),
            ("A1", "A2", rat!(80)),
            ("A1", "M2", rat!(95)),
            ("A2", "M1", rat!(65)),
            ("M2", "A2", rat!(85)),
            ("M1", "M2", rat!(50)),
        ];
        for (x, y, s) in expected {
            assert_eq!(matrix.support(x, y), Some(&s), "support({x}, {y})");
            assert_eq!(
                matrix.support(y, x),
                Some(&(rat!(100) - s)),
                "support({y}, {x})"
            );
        }
        for x in fixtures::table2().ids() {
            for y in fixtures::table2().ids() {
                if x != y {
                    assert_eq!(matrix.support(x, y), fixtures::table2().support(x, y));
                }
            }
        }
    }

    #[test]
    fn printed_profile_derives_a_different_table() {
        let profile = fixtures::table1_printed();
        let matrix = derive_pairwise(&profile).unwrap();
        let expected = [
            ("A1", "M1", rat!(50)),
            ("A1", "A2", rat!(85)),
            ("A1", "M2", rat!(100)),
            ("A2", "M1", rat!(65)),
            ("M2", "A2", rat!(80)),
            ("M1", "M2", rat!(55)),
        ];
        for (x, y, s) in expected {
            assert_eq!(matrix.support(x, y).unwrap(), &brute_force_support(&profile, x, y));
            assert_eq!(matrix.support(x, y), Some(&s), "support({x}, {y})");
        }
    }

    #[test]
    fn unanimous_electorate_gives_total_support() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![
                Alternative::new("X", "x"),
                Alternative::new("Y", "y"),
                Alternative::new("Z", "z"),
            ],
            groups: vec![PreferenceGroup::new(rat!(40), &["Y", "X", "Z"])],
        };
        let matrix = derive_pairwise(&profile).unwrap();
        assert_eq!(matrix.support("Y", "X"), Some(&rat!(100)));
        assert_eq!(matrix.support("Y", "Z"), Some(&rat!(100)));
        assert_eq!(matrix.support("X", "Z"), Some(&rat!(100)));
        assert_eq!(matrix.support("Z", "Y"), Some(&rat!(0)));
    }

    #[test]
    fn zero_weight_profile_is_rejected() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![Alternative::new("X", "x"), Alternative::new("Y", "y")],
            groups: vec![PreferenceGroup::new(rat!(0), &["X", "Y"])],
        };
        // validate() already flags it, so the op reports the violation.
        assert!(matches!(
            derive_pairwise(&profile),
            Err(VotingError::InvalidProfile(_))
        ));
    }

    #[test]
    fn plurality_scores_the_reconciled_profile() {
        let tally = plurality(&fixtures::table1_reconciled()).unwrap();
        assert_eq!(tally.scores["A1"], rat!(45));
        assert_eq!(tally.scores["M1"], rat!(35));
        assert_eq!(tally.scores["A2"], rat!(15));
        assert_eq!(tally.scores["M2"], rat!(5));
        assert_eq!(tally.winners, ids(&["A1"]));
    }

    #[test]
    fn plurality_scores_the_printed_profile() {
        let tally = plurality(&fixtures::table1_printed()).unwrap();
        assert_eq!(tally.scores["A1"], rat!(50));
        assert_eq!(tally.scores["M1"], rat!(35));
        assert_eq!(tally.scores["A2"], rat!(15));
        assert_eq!(tally.scores["M2"], rat!(0));
        assert_eq!(tally.winners, ids(&["A1"]));
    }

    #[test]
    fn plurality_single_group() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![Alternative::new("X", "x"), Alternative::new("Y", "y")],
            groups: vec![PreferenceGroup::new(rat!(30), &["X", "Y"])],
        };
        let tally = plurality(&profile).unwrap();
        assert_eq!(tally.scores["X"], rat!(100));
        assert_eq!(tally.scores["Y"], rat!(0));
        assert_eq!(tally.winners, ids(&["X"]));
    }

    #[test]
    fn head_to_head_matches_the_table() {
        let matrix = fixtures::table2();
        let record = head_to_head(&matrix, "A2", "M1").unwrap();
        assert_eq!(record.left_support, rat!(65));
        assert_eq!(record.right_support, rat!(35));
        assert_eq!(record.outcome, MatchOutcome::Left);

        let naval = head_to_head(&matrix, "M1", "M2").unwrap();
        assert_eq!(naval.left_support, rat!(50));
        assert_eq!(naval.outcome, MatchOutcome::Tie);
        assert_eq!(naval.winner(), None);
    }

    #[test]
    fn head_to_head_with_total_support() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![Alternative::new("X", "x"), Alternative::new("Y", "y")],
            groups: vec![PreferenceGroup::new(rat!(10), &["X", "Y"])],
        };
        let matrix = derive_pairwise(&profile).unwrap();
        let record = head_to_head(&matrix, "X", "Y").unwrap();
        assert_eq!(record.outcome, MatchOutcome::Left);
        assert_eq!(record.left_support, rat!(100));
    }

    #[test]
    fn head_to_head_rejects_unknown_ids() {
        let matrix = fixtures::table2();
        assert!(matches!(
            head_to_head(&matrix, "A1", "Z9"),
            Err(VotingError::UnknownAlternative(_))
        ));
    }

    #[test]
    fn canonical_table_has_a_cycle_and_no_winner() {
        let analysis = condorcet_analysis(&fixtures::table2());
        assert_eq!(analysis.winner, None);
        let cycle = analysis.cycle.unwrap();
        assert_eq!(cycle, ids(&["A1", "A2", "M1"]));
        // Verify the witness: every consecutive edge is a strict majority.
        let matrix = fixtures::table2();
        for (i, x) in cycle.iter().enumerate() {
            let y = &cycle[(i + 1) % cycle.len()];
            assert!(matrix.support(x, y).unwrap() > &rat!(50), "{x} over {y}");
        }
    }

    #[test]
    fn dominant_alternative_is_condorcet_winner() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![
                Alternative::new("X", "x"),
                Alternative::new("Y", "y"),
                Alternative::new("Z", "z"),
            ],
            groups: vec![PreferenceGroup::new(rat!(60), &["X", "Y", "Z"])],
        };
        let matrix = derive_pairwise(&profile).unwrap();
        let analysis = condorcet_analysis(&matrix);
        assert_eq!(analysis.winner, Some("X".to_string()));
        assert_eq!(analysis.cycle, None);
    }

    #[test]
    fn even_pair_has_no_winner_and_no_cycle() {
        let mut matrix = PairwiseMatrix::new(vec![
            Alternative::new("X", "x"),
            Alternative::new("Y", "y"),
        ]);
        matrix.set_pair("X", "Y", rat!(50));
        let analysis = condorcet_analysis(&matrix);
        assert_eq!(analysis.winner, None);
        assert_eq!(analysis.cycle, None);
    }

    #[test]
    fn agenda_order_changes_the_winner() {
        let matrix = fixtures::table2();

        let first = agenda_elimination(
            &matrix,
            &ids(&["M1", "A2", "A1", "M2"]),
            TieRule::Error,
        )
        .unwrap();
        assert_eq!(first.winner(), Some("A1"));
        assert_eq!(first.rounds.len(), 3);
        let survivors: Vec<Option<&str>> = first
            .rounds
            .iter()
            .map(|r| match &r.detail {
                RoundDetail::Matches(m) => m[0].winner(),
                _ => None,
            })
            .collect();
        assert_eq!(survivors, vec![Some("A2"), Some("A1"), Some("A1")]);

        let second = agenda_elimination(
            &matrix,
            &ids(&["A2", "A1", "M2", "M1"]),
            TieRule::Error,
        )
        .unwrap();
        assert_eq!(second.winner(), Some("M1"));
    }

    #[test]
    fn agenda_tie_respects_the_tie_rule() {
        let matrix = fixtures::table2();
        let agenda = ids(&["A1", "M1", "M2"]);

        let stays = agenda_elimination(&matrix, &agenda, TieRule::IncumbentStays).unwrap();
        assert_eq!(stays.winner(), Some("M1"));

        let halted = agenda_elimination(&matrix, &agenda, TieRule::Error);
        assert_eq!(
            halted,
            Err(VotingError::TieHalted {
                left: "M1".into(),
                right: "M2".into()
            })
        );

        let advances =
            agenda_elimination(&matrix, &agenda, TieRule::ChallengerAdvances).unwrap();
        assert_eq!(advances.winner(), Some("M2"));
    }

    #[test]
    fn agenda_rejects_duplicates_and_unknowns() {
        let matrix = fixtures::table2();
        assert!(matches!(
            agenda_elimination(&matrix, &ids(&["A1", "A1"]), TieRule::Error),
            Err(VotingError::DuplicateEntry(_))
        ));
        assert!(matches!(
            agenda_elimination(&matrix, &ids(&["A1", "Z9"]), TieRule::Error),
            Err(VotingError::UnknownAlternative(_))
        ));
        assert!(matches!(
            agenda_elimination(&matrix, &ids(&["A1"]), TieRule::Error),
            Err(VotingError::FieldTooSmall(1))
        ));
    }

    #[test]
    fn bracket_by_sphere_halts_on_the_naval_tie() {
        let matrix = fixtures::table2();
        let bracket: Bracket = "((A1,A2),(M1,M2))".parse().unwrap();
        let result = bracket_elimination(&matrix, &bracket, TieRule::Error);
        assert_eq!(
            result,
            Err(VotingError::TieHalted {
                left: "M1".into(),
                right: "M2".into()
            })
        );
    }

    #[test]
    fn bracket_by_power_reaches_a_tied_final() {
        let matrix = fixtures::table2();
        let bracket: Bracket = "((A1,M1),(A2,M2))".parse().unwrap();

        let halted = bracket_elimination(&matrix, &bracket, TieRule::Error);
        assert_eq!(
            halted,
            Err(VotingError::TieHalted {
                left: "M1".into(),
                right: "M2".into()
            })
        );

        let report = bracket_elimination(&matrix, &bracket, TieRule::IncumbentStays).unwrap();
        assert_eq!(report.winner(), Some("M1"));
        assert_eq!(report.rounds.len(), 3);
        match &report.rounds[0].detail {
            RoundDetail::Matches(m) => {
                assert_eq!(m[0].winner(), Some("M1"));
                assert_eq!(m[0].left_support, rat!(45));
            }
            _ => panic!("expected a match round"),
        }
        match &report.rounds[1].detail {
            RoundDetail::Matches(m) => {
                assert_eq!(m[0].winner(), Some("M2"));
                assert_eq!(m[0].left_support, rat!(15));
            }
            _ => panic!("expected a match round"),
        }
    }

    #[test]
    fn single_leaf_bracket_wins_by_default() {
        let matrix = fixtures::table2();
        let bracket = Bracket::leaf("A2");
        let report = bracket_elimination(&matrix, &bracket, TieRule::Error).unwrap();
        assert_eq!(report.winner(), Some("A2"));
        assert!(report.rounds.is_empty());
    }

    #[test]
    fn bracket_parser_round_trips() {
        let bracket: Bracket = " ( (A1, A2) , (M1, M2) ) ".parse().unwrap();
        assert_eq!(bracket.to_string(), "((A1,A2),(M1,M2))");
        assert_eq!(bracket.leaves(), vec!["A1", "A2", "M1", "M2"]);
        assert!("((A1,A2)".parse::<Bracket>().is_err());
        assert!("(A1,)".parse::<Bracket>().is_err());
        assert!("A1 extra".parse::<Bracket>().is_err());
    }

    #[test]
    fn league_scores_match_the_standings() {
        let matrix = fixtures::table2();
        let full = league_scores(&matrix, &ids(&["A1", "M1", "A2", "M2"])).unwrap();
        assert_eq!(full.scores["A1"], rat!(220));
        assert_eq!(full.scores["M1"], rat!(140));
        assert_eq!(full.scores["M2"], rat!(140));
        assert_eq!(full.scores["A2"], rat!(100));
        assert_eq!(full.winners, ids(&["A1"]));

        let trimmed = league_scores(&matrix, &ids(&["A1", "M1", "M2"])).unwrap();
        assert_eq!(trimmed.scores["A1"], rat!(140));
        assert_eq!(trimmed.scores["M1"], rat!(105));
        assert_eq!(trimmed.scores["M2"], rat!(55));

        let pair = league_scores(&matrix, &ids(&["A1", "M1"])).unwrap();
        assert_eq!(pair.scores["A1"], rat!(45));
        assert_eq!(pair.scores["M1"], rat!(55));
        assert_eq!(pair.winners, ids(&["M1"]));
    }

    #[test]
    fn iterated_league_contradicts_the_standings() {
        let report = iterated_league_elimination(&fixtures::table2()).unwrap();
        assert_eq!(report.rounds.len(), 3);
        assert_eq!(report.rounds[0].eliminated, ids(&["A2"]));
        assert_eq!(report.rounds[1].eliminated, ids(&["M2"]));
        match &report.rounds[2].detail {
            RoundDetail::Matches(m) => {
                assert_eq!(m[0].left, "A1");
                assert_eq!(m[0].right, "M1");
                assert_eq!(m[0].winner(), Some("M1"));
            }
            _ => panic!("expected a final match"),
        }
        // The league leader A1 loses the final: the method contradicts
        // its own first-round table.
        assert_eq!(report.outcome, ContestOutcome::Winner("M1".into()));
    }

    #[test]
    fn even_pair_reports_a_tie() {
        let mut matrix = PairwiseMatrix::new(vec![
            Alternative::new("X", "x"),
            Alternative::new("Y", "y"),
        ]);
        matrix.set_pair("X", "Y", rat!(50));
        let report = iterated_league_elimination(&matrix).unwrap();
        assert_eq!(report.outcome, ContestOutcome::Tie(ids(&["X", "Y"])));
    }

    #[test]
    fn unanimous_ranking_is_eliminated_in_reverse() {
        let profile = WeightedPreferenceProfile {
            alternatives: vec![
                Alternative::new("P", "p"),
                Alternative::new("Q", "q"),
                Alternative::new("R", "r"),
                Alternative::new("S", "s"),
            ],
            groups: vec![PreferenceGroup::new(rat!(100), &["P", "Q", "R", "S"])],
        };
        let matrix = derive_pairwise(&profile).unwrap();
        let report = iterated_league_elimination(&matrix).unwrap();
        let order: Vec<String> = report
            .rounds
            .iter()
            .flat_map(|r| r.eliminated.clone())
            .collect();
        assert_eq!(order, ids(&["S", "R", "Q"]));
        assert_eq!(report.outcome, ContestOutcome::Winner("P".into()));
    }
}
