//! Dominance relations and their stable sets.
//!
//! A set of alternatives is *internally stable* when no member dominates
//! another member, and *externally stable* when every non-member is
//! dominated by some member. Sets with both properties are enumerated
//! exhaustively over all subsets, so every answer is a certificate rather
//! than a heuristic.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{DominanceRelation, PairwiseMatrix};
use crate::rational::Rational;

/// Default hard cap on the number of alternatives the exhaustive subset
/// enumeration will accept.
pub const DEFAULT_MAX_ALTERNATIVES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StableSetError {
    #[error("threshold {0} outside [0, 100)")]
    ThresholdOutOfRange(Rational),
    #[error("unknown alternative id `{0}`")]
    UnknownAlternative(String),
    #[error("{count} alternatives exceed the enumeration cap of {cap}")]
    TooManyAlternatives { count: usize, cap: usize },
}

/// All stable sets of a relation, each with an external-stability
/// certificate mapping every outside alternative to a dominating member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSetResult {
    pub stable_sets: Vec<Vec<String>>,
    pub relation: DominanceRelation,
    pub certificates: Vec<BTreeMap<String, String>>,
}

/// Outcome of an external-stability check, with one witness per dominated
/// outside alternative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalStability {
    pub stable: bool,
    pub witnesses: BTreeMap<String, String>,
}

/// Thresholded dominance: edge `(x, y)` iff `support(x, y)` strictly
/// exceeds `threshold`. At the default threshold of 50 the relation is
/// antisymmetric and an exact 50:50 split yields no edge either way.
pub fn dominance_from_pairwise(
    matrix: &PairwiseMatrix,
    threshold: &Rational,
) -> Result<DominanceRelation, StableSetError> {
    if threshold.is_negative() || threshold >= &Rational::integer(100) {
        return Err(StableSetError::ThresholdOutOfRange(threshold.clone()));
    }
    let mut relation = DominanceRelation::new(matrix.alternatives.clone());
    let ids: Vec<&str> = matrix.ids().collect();
    for x in &ids {
        for y in &ids {
            if x != y && matrix.support(x, y).is_some_and(|s| s > threshold) {
                relation.add_edge(x, y);
            }
        }
    }
    Ok(relation)
}

fn check_members(set: &BTreeSet<String>, rel: &DominanceRelation) -> Result<(), StableSetError> {
    for id in set {
        if rel.index_of(id).is_none() {
            return Err(StableSetError::UnknownAlternative(id.clone()));
        }
    }
    Ok(())
}

/// True iff no member of `set` dominates another member.
pub fn is_internally_stable(
    set: &BTreeSet<String>,
    rel: &DominanceRelation,
) -> Result<bool, StableSetError> {
    check_members(set, rel)?;
    Ok(!rel
        .edges
        .iter()
        .any(|(x, y)| set.contains(x) && set.contains(y)))
}

/// Checks that every alternative outside `set` is dominated by some member
/// and records one witness per outside alternative (the first dominating
/// member in alternative order).
pub fn is_externally_stable(
    set: &BTreeSet<String>,
    rel: &DominanceRelation,
) -> Result<ExternalStability, StableSetError> {
    check_members(set, rel)?;
    let mut stable = true;
    let mut witnesses = BTreeMap::new();
    for outside in rel.ids().filter(|id| !set.contains(*id)) {
        let witness = rel
            .ids()
            .filter(|id| set.contains(*id))
            .find(|inside| rel.dominates(inside, outside));
        match witness {
            Some(inside) => {
                witnesses.insert(outside.to_string(), inside.to_string());
            }
            None => stable = false,
        }
    }
    Ok(ExternalStability { stable, witnesses })
}

/// Exhaustively enumerates every subset satisfying both stability
/// properties. Results are deterministic: sets are listed in bitmask
/// order over the relation's alternative order, members in alternative
/// order.
pub fn enumerate_stable_sets(
    rel: &DominanceRelation,
    max_alternatives: usize,
) -> Result<StableSetResult, StableSetError> {
    let ids: Vec<&str> = rel.ids().collect();
    let n = ids.len();
    let cap = max_alternatives.min(u64::BITS as usize - 1);
    if n > cap {
        return Err(StableSetError::TooManyAlternatives { count: n, cap });
    }

    // Bitmask adjacency: out[i] = successors of i, dominators[j] = who
    // beats j.
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut out = vec![0u64; n];
    let mut dominators = vec![0u64; n];
    for (x, y) in &rel.edges {
        if let (Some(&i), Some(&j)) = (index.get(x.as_str()), index.get(y.as_str())) {
            out[i] |= 1 << j;
            dominators[j] |= 1 << i;
        }
    }

    let mut stable_sets = Vec::new();
    let mut certificates = Vec::new();
    for mask in 0u64..(1 << n) {
        let internally_stable = (0..n).all(|i| mask & (1 << i) == 0 || out[i] & mask == 0);
        if !internally_stable {
            continue;
        }
        let externally_stable =
            (0..n).all(|j| mask & (1 << j) != 0 || dominators[j] & mask != 0);
        if !externally_stable {
            continue;
        }
        let members: Vec<String> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ids[i].to_string())
            .collect();
        let certificate: BTreeMap<String, String> = (0..n)
            .filter(|j| mask & (1 << j) == 0)
            .map(|j| {
                let witness = (dominators[j] & mask).trailing_zeros() as usize;
                (ids[j].to_string(), ids[witness].to_string())
            })
            .collect();
        stable_sets.push(members);
        certificates.push(certificate);
    }

    Ok(StableSetResult {
        stable_sets,
        relation: rel.clone(),
        certificates,
    })
}
