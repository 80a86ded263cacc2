//! Exact-arithmetic toolkit for weighted ranked elections, dominance
//! stable sets, and constant-sum matrix games.
//!
//! The crate splits into four analysis layers over shared domain types:
//!
//! - [`voting`]: pairwise derivation from weighted preference profiles,
//!   plurality, head-to-head comparisons, Condorcet analysis with cycle
//!   witnesses, agenda and bracket knockouts, league scoring and iterated
//!   league elimination.
//! - [`stable_sets`]: strict-majority dominance relations and exhaustive
//!   enumeration of internally and externally stable sets.
//! - [`games`]: pure maximin/minimax analysis, one-sided information
//!   expansion, exact 2x2 mixed solving with payoff envelopes, and a
//!   fictitious-play solver with certified value bounds.
//! - [`model`] / [`rational`]: the shared types and the exact rational
//!   scalar they are built on.
//!
//! All computation is exact; floats only appear when rendering.

pub mod fixtures;
pub mod games;
pub mod model;
pub mod rational;
pub mod stable_sets;
pub mod voting;

pub use model::{
    Alternative, DominanceRelation, GameSolution, MatrixGame, MixedStrategy, PairwiseMatrix,
    PreferenceGroup, SolutionKind, Validate, Violation, WeightedPreferenceProfile,
};
pub use rational::Rational;
