//! Stronger forms of rank-k antipodality: Erdős (orthogonal projection) and
//! strict (no other point lands on a vertex).

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{find_map, joint_antipodal_direct, map_program, AntipodalityCertificate, JointQuery};
use crate::combinatorics::{binomial, subsets};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank, affine_rank_of, barycentric_of, project_onto, AffineMap, PointSet};
use crate::lp::{self, LpOutcome};
use crate::rational::{self, Rational};

fn check_size(x: &PointSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    if x.len() < k + 1 {
        return Err(Error::InvalidInput(format!("need at least {} points, got {}", k + 1, x.len())));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ErdosFailure {
    /// The subset does not span a `k`-flat.
    Dependent { subset: Vec<usize> },
    /// `point` projects outside `conv(subset)`; `coordinates` are the barycentric
    /// coordinates of its projection.
    Outside {
        subset: Vec<usize>,
        point: usize,
        #[serde(with = "rational::serde_str::vec")]
        coordinates: Vec<Rational>,
    },
}

impl ErdosFailure {
    pub fn subset(&self) -> &[usize] {
        match self {
            ErdosFailure::Dependent { subset } | ErdosFailure::Outside { subset, .. } => subset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErdosVerdict {
    pub holds: bool,
    pub k: usize,
    pub subsets_total: u128,
    pub failure: Option<ErdosFailure>,
}

fn erdos_subset(x: &PointSet, s: &[usize]) -> Result<Option<ErdosFailure>> {
    let qs: Vec<_> = s.iter().map(|&i| &x.points()[i]).collect();
    if affine_rank_of(&qs) + 1 != qs.len() {
        return Ok(Some(ErdosFailure::Dependent { subset: s.to_vec() }));
    }
    let images = project_onto(x.points(), &qs)?;
    for (i, y) in images.iter().enumerate() {
        let mu = barycentric_of(&qs, y)?;
        if mu.iter().any(Signed::is_negative) {
            return Ok(Some(ErdosFailure::Outside { subset: s.to_vec(), point: i, coordinates: mu }));
        }
    }
    Ok(None)
}

/// Every `(k+1)`-subset must be affinely independent and the orthogonal
/// projection onto its affine hull must send all of `x` into its convex hull.
pub fn erdos_rank_k(x: &PointSet, k: usize) -> Result<ErdosVerdict> {
    check_size(x, k)?;
    let all = subsets(x.len(), k + 1);
    let failure = all
        .par_iter()
        .find_map_first(|s| erdos_subset(x, s).transpose())
        .transpose()?;
    Ok(ErdosVerdict { holds: failure.is_none(), k, subsets_total: binomial(x.len(), k + 1), failure })
}

/// Strictness analysis of a single tuple.
///
/// `forced` lists `[point, vertex]` pairs such that every certificate map sends
/// that point to that vertex. When nothing is forced, `evidence` is a certificate
/// map under which no other point lands on a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictJoint {
    pub holds: bool,
    pub certificate: AntipodalityCertificate,
    pub forced: Vec<[usize; 2]>,
    pub evidence: Option<AffineMap>,
}

/// The set of certificate maps is a polytope and each coincidence `M(x) = e_j`
/// cuts an affine slice of it; finitely many proper slices cannot cover it, so
/// a strict map exists unless some coincidence holds on the whole polytope.
pub fn strict_joint(q: &JointQuery<'_>) -> Result<StrictJoint> {
    if find_map(q)?.is_none() {
        let certificate = joint_antipodal_direct(q)?;
        return Ok(StrictJoint { holds: false, certificate, forced: vec![], evidence: None });
    }
    let (base, vars) = map_program(q);
    let k = q.k();
    let mut forced = Vec::new();
    let mut optima: Vec<Vec<Rational>> = Vec::new();
    for (i, x) in q.points().points().iter().enumerate() {
        if q.chosen().contains(&i) {
            continue;
        }
        for j in 0..=k {
            let mut lp = base.clone();
            lp.minimize(vars.output(j, x));
            let LpOutcome::Feasible { point, value: Some(v) } = lp::solve(&lp)? else {
                return Err(Error::Inconsistent("map program became infeasible or unbounded".into()));
            };
            if v.is_one() {
                forced.push([i, j]);
            } else {
                optima.push(point);
            }
        }
    }
    let certificate = AntipodalityCertificate::Antipodal { map: find_map(q)?.expect("checked above") };
    if !forced.is_empty() {
        return Ok(StrictJoint { holds: false, certificate, forced, evidence: None });
    }
    let evidence = if optima.is_empty() {
        match &certificate {
            AntipodalityCertificate::Antipodal { map } => map.clone(),
            AntipodalityCertificate::NotAntipodal { .. } => unreachable!(),
        }
    } else {
        // Each optimizer keeps one coincidence away from 1; their average keeps all.
        let m = rational::int(optima.len() as i64);
        let mut avg = vec![Rational::zero(); vars.num_vars()];
        for p in &optima {
            for (a, v) in avg.iter_mut().zip(p) {
                *a += v;
            }
        }
        avg.iter_mut().for_each(|a| *a /= &m);
        vars.extract(&avg)
    };
    super::verify_map(&evidence, q)?;
    for (i, x) in q.points().points().iter().enumerate() {
        if !q.chosen().contains(&i) && evidence.apply(x)?.iter().any(One::is_one) {
            return Err(Error::Inconsistent(format!("evidence map sends point {i} to a vertex")));
        }
    }
    Ok(StrictJoint { holds: true, certificate, forced, evidence: Some(evidence) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictFailure {
    pub subset: Vec<usize>,
    pub analysis: StrictJoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictVerdict {
    pub holds: bool,
    pub k: usize,
    pub subsets_total: u128,
    pub failure: Option<StrictFailure>,
}

/// Every `(k+1)`-subset must admit a certificate map that sends no other point
/// of `x` to a vertex of the simplex.
pub fn strict_rank_k(x: &PointSet, k: usize) -> Result<StrictVerdict> {
    check_size(x, k)?;
    let rank = affine_rank(x);
    if k > rank {
        return Err(Error::RankTooLarge { k, rank });
    }
    let all = subsets(x.len(), k + 1);
    let failure = all
        .par_iter()
        .find_map_first(|s| {
            let run = || -> Result<Option<StrictFailure>> {
                let q = JointQuery::new(x, s.clone())?;
                let analysis = strict_joint(&q)?;
                Ok((!analysis.holds).then(|| StrictFailure { subset: s.clone(), analysis }))
            };
            run().transpose()
        })
        .transpose()?;
    Ok(StrictVerdict { holds: failure.is_none(), k, subsets_total: binomial(x.len(), k + 1), failure })
}
