//! Constant-sum matrix game analysis.
//!
//! Covers pure maximin/minimax analysis with saddle detection, one-sided
//! information expansion (the informed player's strategies become response
//! plans), exact 2x2 mixed solving with best-reply payoff envelopes, and a
//! fictitious-play solver for everything bigger. All solvers work on exact
//! rationals; the iterative solver reports certified value bounds instead
//! of a float guess.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{GameSolution, MatrixGame, MixedStrategy, SolutionKind};
use crate::rational::Rational;

/// Hard cap on the strategy count of an information expansion.
pub const EXPANSION_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("game payoff matrix is empty or ragged")]
    MalformedGame,
    #[error("operation requires a 2x2 game, got {rows}x{cols}")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: Rational },
    #[error("expansion needs {required} strategies, exceeding the cap of {cap}")]
    ExpansionTooLarge { required: u128, cap: usize },
    #[error("no saddle point: maximin {maximin} < minimax {minimax}")]
    NoSaddlePoint { maximin: Rational, minimax: Rational },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
    #[error("iteration budget must be at least 1")]
    ZeroIterationBudget,
    #[error("no convergence after {iterations} iterations; value bounds [{lower}, {upper}]")]
    NonConvergence {
        iterations: u64,
        lower: Rational,
        upper: Rational,
    },
    #[error("envelope grid needs at least one subdivision")]
    EmptyGrid,
}

/// Which player a payoff envelope or information expansion refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Player {
    Row,
    Column,
}

/// Row minima, column maxima, maximin/minimax with every achieving index,
/// and every saddle cell. Maximin never exceeds minimax; they coincide
/// exactly when a saddle point exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureAnalysis {
    pub row_minima: Vec<Rational>,
    pub col_maxima: Vec<Rational>,
    pub maximin_value: Rational,
    pub maximin_rows: Vec<usize>,
    pub minimax_value: Rational,
    pub minimax_cols: Vec<usize>,
    pub saddle_points: Vec<(usize, usize)>,
}

impl PureAnalysis {
    pub fn has_saddle(&self) -> bool {
        !self.saddle_points.is_empty()
    }
}

fn ensure_well_formed(game: &MatrixGame) -> Result<(), GameError> {
    if game.is_well_formed() {
        Ok(())
    } else {
        Err(GameError::MalformedGame)
    }
}

fn ensure_2x2(game: &MatrixGame) -> Result<(), GameError> {
    ensure_well_formed(game)?;
    if game.is_2x2() {
        Ok(())
    } else {
        Err(GameError::NotTwoByTwo {
            rows: game.rows(),
            cols: game.cols(),
        })
    }
}

/// Guaranteed-payoff analysis in pure strategies.
pub fn pure_analysis(game: &MatrixGame) -> Result<PureAnalysis, GameError> {
    ensure_well_formed(game)?;

    let row_minima: Vec<Rational> = game
        .payoffs
        .iter()
        .map(|row| row.iter().min().unwrap().clone())
        .collect();
    let col_maxima: Vec<Rational> = (0..game.cols())
        .map(|j| {
            game.payoffs
                .iter()
                .map(|row| &row[j])
                .max()
                .unwrap()
                .clone()
        })
        .collect();

    let maximin_value = row_minima.iter().max().unwrap().clone();
    let maximin_rows = (0..game.rows())
        .filter(|&i| row_minima[i] == maximin_value)
        .collect();
    let minimax_value = col_maxima.iter().min().unwrap().clone();
    let minimax_cols = (0..game.cols())
        .filter(|&j| col_maxima[j] == minimax_value)
        .collect();

    let mut saddle_points = Vec::new();
    for i in 0..game.rows() {
        for j in 0..game.cols() {
            let cell = game.payoff(i, j);
            if *cell == row_minima[i] && *cell == col_maxima[j] {
                saddle_points.push((i, j));
            }
        }
    }

    Ok(PureAnalysis {
        row_minima,
        col_maxima,
        maximin_value,
        maximin_rows,
        minimax_value,
        minimax_cols,
        saddle_points,
    })
}

/// One entry of a response plan: what the informed player does after
/// observing a particular opponent strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservedResponse {
    pub observed: String,
    pub response: String,
}

/// A base game together with its one-sided-information expansion, where
/// the informed player's strategies enumerate every function from
/// observed opponent strategy to response.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InformationExpansion {
    pub base: MatrixGame,
    pub informed: Player,
    pub expanded: MatrixGame,
    pub strategy_maps: Vec<Vec<ObservedResponse>>,
}

/// Expands a game under the assumption that `informed` observes the
/// opponent's pure choice before moving. Response plans are ordered
/// lexicographically by their response to the first observation, then the
/// second, and so on; labels render the plan as `obs→resp` pairs.
pub fn expand_one_sided_information(
    game: &MatrixGame,
    informed: Player,
) -> Result<InformationExpansion, GameError> {
    ensure_well_formed(game)?;
    let (observations, responses) = match informed {
        Player::Column => (&game.row_labels, &game.col_labels),
        Player::Row => (&game.col_labels, &game.row_labels),
    };

    let required = u32::try_from(observations.len())
        .ok()
        .and_then(|exp| (responses.len() as u128).checked_pow(exp))
        .ok_or(GameError::ExpansionTooLarge {
            required: u128::MAX,
            cap: EXPANSION_CAP,
        })?;
    if required > EXPANSION_CAP as u128 {
        return Err(GameError::ExpansionTooLarge {
            required,
            cap: EXPANSION_CAP,
        });
    }
    let count = required as usize;

    // Odometer over response indices, first observation most significant.
    let mut plans: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut digits = vec![0usize; observations.len()];
    for _ in 0..count {
        plans.push(digits.clone());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < responses.len() {
                break;
            }
            *d = 0;
        }
    }

    let labels: Vec<String> = plans
        .iter()
        .map(|plan| {
            plan.iter()
                .enumerate()
                .map(|(o, &r)| format!("{}→{}", observations[o], responses[r]))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    let strategy_maps: Vec<Vec<ObservedResponse>> = plans
        .iter()
        .map(|plan| {
            plan.iter()
                .enumerate()
                .map(|(o, &r)| ObservedResponse {
                    observed: observations[o].clone(),
                    response: responses[r].clone(),
                })
                .collect()
        })
        .collect();

    let expanded = match informed {
        Player::Column => {
            let payoffs = (0..game.rows())
                .map(|i| plans.iter().map(|plan| game.payoff(i, plan[i]).clone()).collect())
                .collect();
            MatrixGame {
                row_labels: game.row_labels.clone(),
                col_labels: labels,
                payoffs,
                constant_sum: game.constant_sum.clone(),
            }
        }
        Player::Row => {
            let payoffs = plans
                .iter()
                .map(|plan| {
                    (0..game.cols())
                        .map(|j| game.payoff(plan[j], j).clone())
                        .collect()
                })
                .collect();
            MatrixGame {
                row_labels: labels,
                col_labels: game.col_labels.clone(),
                payoffs,
                constant_sum: game.constant_sum.clone(),
            }
        }
    };

    Ok(InformationExpansion {
        base: game.clone(),
        informed,
        expanded,
        strategy_maps,
    })
}

fn ensure_unit_interval(name: &'static str, value: &Rational) -> Result<(), GameError> {
    if value.is_negative() || value > &Rational::one() {
        return Err(GameError::ParameterOutOfRange {
            name,
            value: value.clone(),
        });
    }
    Ok(())
}

/// Bilinear expected payoff of a 2x2 game when the row player mixes with
/// probability `p` on its first row and the column player with `q` on its
/// first column.
pub fn expected_payoff(
    game: &MatrixGame,
    p: &Rational,
    q: &Rational,
) -> Result<Rational, GameError> {
    ensure_2x2(game)?;
    ensure_unit_interval("p", p)?;
    ensure_unit_interval("q", q)?;
    let one = Rational::one();
    let np = &one - p;
    let nq = &one - q;
    Ok(p * q * game.payoff(0, 0)
        + p * &nq * game.payoff(0, 1)
        + &np * q * game.payoff(1, 0)
        + np * nq * game.payoff(1, 1))
}

/// One sampled point of a best-reply envelope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopePoint {
    pub parameter: Rational,
    pub value: Rational,
    pub active_response: String,
}

fn envelope_point(game: &MatrixGame, player: Player, parameter: Rational) -> EnvelopePoint {
    let one = Rational::one();
    let rest = &one - &parameter;
    // The opponent's two pure replies trace two lines in the parameter;
    // the envelope keeps the worse one for the mixing player.
    let lines: Vec<(Rational, &str)> = match player {
        Player::Row => (0..2)
            .map(|j| {
                (
                    &parameter * game.payoff(0, j) + &rest * game.payoff(1, j),
                    game.col_labels[j].as_str(),
                )
            })
            .collect(),
        Player::Column => (0..2)
            .map(|i| {
                (
                    &parameter * game.payoff(i, 0) + &rest * game.payoff(i, 1),
                    game.row_labels[i].as_str(),
                )
            })
            .collect(),
    };
    let pick = match player {
        Player::Row => {
            if lines[0].0 <= lines[1].0 {
                0
            } else {
                1
            }
        }
        Player::Column => {
            if lines[0].0 >= lines[1].0 {
                0
            } else {
                1
            }
        }
    };
    EnvelopePoint {
        parameter,
        value: lines[pick].0.clone(),
        active_response: lines[pick].1.to_string(),
    }
}

/// Exact parameter where the opponent's two reply lines cross, if they
/// cross inside [0, 1].
pub fn envelope_breakpoint(game: &MatrixGame, player: Player) -> Result<Option<Rational>, GameError> {
    ensure_2x2(game)?;
    let a = game.payoff(0, 0);
    let b = game.payoff(0, 1);
    let c = game.payoff(1, 0);
    let d = game.payoff(1, 1);
    let denom = a + d - b - c;
    if denom.is_zero() {
        return Ok(None);
    }
    let numer = match player {
        Player::Row => d - c,
        Player::Column => d - b,
    };
    let t = numer / denom;
    if t.is_negative() || t > Rational::one() {
        Ok(None)
    } else {
        Ok(Some(t))
    }
}

/// Samples the envelope of best pure replies against a mixing player on a
/// uniform grid of `subdivisions + 1` parameters, always inserting the
/// exact breakpoint where the opponent switches replies.
pub fn payoff_envelope(
    game: &MatrixGame,
    player: Player,
    subdivisions: u32,
) -> Result<Vec<EnvelopePoint>, GameError> {
    ensure_2x2(game)?;
    if subdivisions == 0 {
        return Err(GameError::EmptyGrid);
    }

    let mut parameters: Vec<Rational> = (0..=subdivisions)
        .map(|k| Rational::new(k as i64, subdivisions as i64))
        .collect();
    if let Some(breakpoint) = envelope_breakpoint(game, player)? {
        if !parameters.contains(&breakpoint) {
            parameters.push(breakpoint);
        }
    }
    parameters.sort();

    Ok(parameters
        .into_iter()
        .map(|t| envelope_point(game, player, t))
        .collect())
}

fn saddle_solution(game: &MatrixGame, analysis: &PureAnalysis) -> Option<GameSolution> {
    let &(row, col) = analysis.saddle_points.first()?;
    Some(GameSolution {
        kind: SolutionKind::PureSaddle,
        row_strategy: MixedStrategy::pure(game.row_labels.clone(), row),
        col_strategy: MixedStrategy::pure(game.col_labels.clone(), col),
        value: game.payoff(row, col).clone(),
        epsilon: Rational::zero(),
    })
}

/// Solves a 2x2 game exactly: a saddle point wins outright, otherwise the
/// closed-form equalizing mixture applies (its denominator cannot vanish
/// once no saddle exists).
pub fn solve_2x2_mixed(game: &MatrixGame) -> Result<GameSolution, GameError> {
    ensure_2x2(game)?;
    let analysis = pure_analysis(game)?;
    if let Some(solution) = saddle_solution(game, &analysis) {
        return Ok(solution);
    }

    let a = game.payoff(0, 0);
    let b = game.payoff(0, 1);
    let c = game.payoff(1, 0);
    let d = game.payoff(1, 1);
    let denom = a + d - b - c;
    assert!(
        !denom.is_zero(),
        "saddle-free 2x2 game must have a nonzero equalizer denominator"
    );
    let p = (d - c) / &denom;
    let q = (d - b) / &denom;
    let value = (a * d - b * c) / denom;

    Ok(GameSolution {
        kind: SolutionKind::MixedExact,
        row_strategy: MixedStrategy::new(
            game.row_labels.clone(),
            vec![p.clone(), Rational::one() - p],
        ),
        col_strategy: MixedStrategy::new(
            game.col_labels.clone(),
            vec![q.clone(), Rational::one() - q],
        ),
        value,
        epsilon: Rational::zero(),
    })
}

/// Index of the largest entry, lowest index on ties.
fn argmax(values: &[BigInt]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v > &values[best] {
            best = i;
        }
    }
    best
}

/// Index of the smallest entry, lowest index on ties.
fn argmin(values: &[BigInt]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v < &values[best] {
            best = i;
        }
    }
    best
}

/// Fictitious play with certified bounds.
///
/// Each round the row player best-replies to the column player's
/// empirical mixture and vice versa, lowest index on ties. The empirical
/// row mixture guarantees at least the running lower bound and the column
/// mixture caps the value at the running upper bound, so the returned
/// `epsilon = (upper - lower) / 2` is a sound exploitability certificate
/// for the reported strategies. The first row move is the lowest-index
/// pure maximin row, which pins the lower bound at maximin immediately
/// and locks saddle points in one round.
pub fn solve_fictitious_play(
    game: &MatrixGame,
    tolerance: &Rational,
    max_iterations: u64,
) -> Result<GameSolution, GameError> {
    ensure_well_formed(game)?;
    if !tolerance.is_positive() {
        return Err(GameError::NonPositiveTolerance(tolerance.clone()));
    }
    if max_iterations == 0 {
        return Err(GameError::ZeroIterationBudget);
    }

    // Scale to integers so the hot loop is pure BigInt arithmetic.
    let scale = game
        .payoffs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let payoffs: Vec<Vec<BigInt>> = game
        .payoffs
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| (p.numer() * &scale) / p.denom())
                .collect()
        })
        .collect();
    let (rows, cols) = (game.rows(), game.cols());

    let maximin_row = {
        let minima: Vec<BigInt> = payoffs
            .iter()
            .map(|row| row.iter().min().unwrap().clone())
            .collect();
        argmax(&minima)
    };

    // row_cum[j]: total payoff of column reply j against all row moves so
    // far; col_cum[i]: total payoff of row i against all column moves.
    let mut row_cum = vec![BigInt::from(0); cols];
    let mut col_cum = vec![BigInt::from(0); rows];
    let mut row_counts = vec![0u64; rows];
    let mut col_counts = vec![0u64; cols];

    let mut best_lower: Option<(Rational, Vec<u64>)> = None;
    let mut best_upper: Option<(Rational, Vec<u64>)> = None;

    for t in 1..=max_iterations {
        let row_move = if t == 1 { maximin_row } else { argmax(&col_cum) };
        row_counts[row_move] += 1;
        for (j, cum) in row_cum.iter_mut().enumerate() {
            *cum += &payoffs[row_move][j];
        }

        let col_move = argmin(&row_cum);
        col_counts[col_move] += 1;
        for (i, cum) in col_cum.iter_mut().enumerate() {
            *cum += &payoffs[i][col_move];
        }

        let denominator = BigInt::from(t) * &scale;
        let lower = Rational::from_big(row_cum.iter().min().unwrap().clone(), denominator.clone());
        let upper = Rational::from_big(col_cum.iter().max().unwrap().clone(), denominator);
        if best_lower.as_ref().is_none_or(|(b, _)| lower > *b) {
            best_lower = Some((lower, row_counts.clone()));
        }
        if best_upper.as_ref().is_none_or(|(b, _)| upper < *b) {
            best_upper = Some((upper, col_counts.clone()));
        }

        let (lower, _) = best_lower.as_ref().unwrap();
        let (upper, _) = best_upper.as_ref().unwrap();
        if upper - lower <= *tolerance {
            let (lower, row_snapshot) = best_lower.unwrap();
            let (upper, col_snapshot) = best_upper.unwrap();
            let two = Rational::integer(2);
            return Ok(GameSolution {
                kind: SolutionKind::MixedApproximate,
                row_strategy: empirical_mixture(&game.row_labels, &row_snapshot),
                col_strategy: empirical_mixture(&game.col_labels, &col_snapshot),
                value: (&lower + &upper) / &two,
                epsilon: (upper - lower) / two,
            });
        }
    }

    let (lower, _) = best_lower.unwrap();
    let (upper, _) = best_upper.unwrap();
    Err(GameError::NonConvergence {
        iterations: max_iterations,
        lower,
        upper,
    })
}

fn empirical_mixture(labels: &[String], counts: &[u64]) -> MixedStrategy {
    let total: u64 = counts.iter().sum();
    MixedStrategy::new(
        labels.to_vec(),
        counts
            .iter()
            .map(|&c| Rational::from_big(BigInt::from(c), BigInt::from(total)))
            .collect(),
    )
}

/// Solver selection for [`solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMode {
    Auto,
    Pure,
    Exact2x2,
    Iterative,
}

/// Tolerance and iteration budget for the iterative solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub tolerance: Rational,
    pub max_iterations: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tolerance: Rational::new(1, 100),
            max_iterations: 100_000,
        }
    }
}

/// Dispatch facade: `Auto` takes a pure saddle when one exists, the exact
/// closed form on 2x2 games, and fictitious play otherwise.
pub fn solve(
    game: &MatrixGame,
    mode: SolveMode,
    config: &SolveConfig,
) -> Result<GameSolution, GameError> {
    match mode {
        SolveMode::Auto => {
            let analysis = pure_analysis(game)?;
            if let Some(solution) = saddle_solution(game, &analysis) {
                Ok(solution)
            } else if game.is_2x2() {
                solve_2x2_mixed(game)
            } else {
                solve_fictitious_play(game, &config.tolerance, config.max_iterations)
            }
        }
        SolveMode::Pure => {
            let analysis = pure_analysis(game)?;
            saddle_solution(game, &analysis).ok_or(GameError::NoSaddlePoint {
                maximin: analysis.maximin_value,
                minimax: analysis.minimax_value,
            })
        }
        SolveMode::Exact2x2 => solve_2x2_mixed(game),
        SolveMode::Iterative => {
            solve_fictitious_play(game, &config.tolerance, config.max_iterations)
        }
    }
}
