use rayon::prelude::*;
use serde::Serialize;

use super::{joint_antipodal_direct, AntipodalityCertificate, JointQuery};
use crate::combinatorics::{binomial, sampled_subsets, subsets};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank, PointSet};

/// Above this many `(k+1)`-subsets verification must be sampled.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Mode {
    /// Exhaustive when the subset count is within [`EXHAUSTIVE_LIMIT`], else sampled
    /// with the given seed (which is then mandatory).
    pub fn auto(n: usize, k: usize, samples: usize, seed: Option<u64>) -> Result<Mode> {
        let total = binomial(n, k + 1);
        if total <= EXHAUSTIVE_LIMIT {
            return Ok(Mode::Exhaustive);
        }
        match seed {
            Some(seed) => Ok(Mode::Sampled { samples, seed }),
            None => Err(Error::SeedRequired { subsets: total }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankFailure {
    pub subset: Vec<usize>,
    pub certificate: AntipodalityCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankVerdict {
    pub holds: bool,
    pub k: usize,
    pub points: usize,
    pub subsets_total: u128,
    /// Subsets examined before the verdict was settled (lexicographic order).
    pub subsets_checked: usize,
    pub sampled: bool,
    pub failure: Option<RankFailure>,
}

/// Checks that every `(k+1)`-subset of `x` (or every sampled one) is jointly
/// antipodal with respect to `conv x`. The reported failure is the
/// lexicographically smallest failing subset among those examined, independent of
/// how many threads the current rayon pool has.
pub fn is_rank_k_antipodal(x: &PointSet, k: usize, mode: Mode) -> Result<RankVerdict> {
    if k == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    if x.len() < k + 1 {
        return Err(Error::InvalidInput(format!("need at least {} points, got {}", k + 1, x.len())));
    }
    let rank = affine_rank(x);
    if k > rank {
        return Err(Error::RankTooLarge { k, rank });
    }
    let total = binomial(x.len(), k + 1);
    let (candidates, sampled) = match mode {
        Mode::Exhaustive => (subsets(x.len(), k + 1), false),
        Mode::Sampled { samples, seed } => (sampled_subsets(x.len(), k + 1, samples, seed), true),
    };

    let first_bad = candidates
        .par_iter()
        .enumerate()
        .find_map_first(|(pos, s)| {
            let q = match JointQuery::new(x, s.clone()) {
                Ok(q) => q,
                Err(e) => return Some(Err(e)),
            };
            match super::find_map(&q) {
                Ok(Some(_)) => None,
                Ok(None) => Some(Ok(pos)),
                Err(e) => Some(Err(e)),
            }
        })
        .transpose()?;

    let failure = match first_bad {
        Some(pos) => {
            let subset = candidates[pos].clone();
            let q = JointQuery::new(x, subset.clone())?;
            let certificate = joint_antipodal_direct(&q)?;
            Some(RankFailure { subset, certificate })
        }
        None => None,
    };
    Ok(RankVerdict {
        holds: failure.is_none(),
        k,
        points: x.len(),
        subsets_total: total,
        subsets_checked: first_bad.map_or(candidates.len(), |p| p + 1),
        sampled,
        failure,
    })
}
