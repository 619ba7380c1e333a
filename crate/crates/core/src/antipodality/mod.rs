//! Joint and rank-k antipodality.
//!
//! A tuple `q_1, ..., q_{k+1}` of points of `X` is jointly antipodal with respect
//! to `S = conv X` when an affine map sends `S` into the standard simplex and each
//! `q_j` to the vertex `e_j`. Two independent routes decide this:
//!
//! * [`joint_antipodal_direct`] searches for the map itself;
//! * [`joint_antipodal_shrunk`] shrinks `S` towards each `q_j` by `lambda_j`
//!   (with `sum lambda_j = k`) and tests whether the relative interiors of the
//!   copies share a point.
//!
//! Either way the verdict comes with a certificate that re-verifies exactly.

mod joint;
mod rank;
mod separation;
mod variants;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Point, PointSet, StandardSimplex};
use crate::rational::{self, Rational};

pub use joint::{default_lambda, joint_antipodal_direct, joint_antipodal_shrunk, validate_lambda};
pub(crate) use joint::{find_map, map_program, MapVars};
pub use rank::{is_rank_k_antipodal, Mode, RankFailure, RankVerdict, EXHAUSTIVE_LIMIT};
pub use separation::{sequential_separation, support_certificate, HalfSpace, SupportCertificate};
pub use variants::{
    erdos_rank_k, strict_joint, strict_rank_k, ErdosFailure, ErdosVerdict, StrictFailure, StrictJoint,
    StrictVerdict,
};

/// `k + 1` distinct points of `X`, identified by index.
#[derive(Debug, Clone)]
pub struct JointQuery<'a> {
    points: &'a PointSet,
    chosen: Vec<usize>,
}

impl<'a> JointQuery<'a> {
    pub fn new(points: &'a PointSet, chosen: Vec<usize>) -> Result<Self> {
        if chosen.len() < 2 {
            return Err(Error::InvalidInput("a joint query needs at least two points".into()));
        }
        for (a, &i) in chosen.iter().enumerate() {
            if i >= points.len() {
                return Err(Error::InvalidInput(format!("index {i} out of range for {} points", points.len())));
            }
            if chosen[..a].contains(&i) {
                return Err(Error::InvalidInput(format!("index {i} chosen twice")));
            }
        }
        Ok(JointQuery { points, chosen })
    }

    pub fn k(&self) -> usize {
        self.chosen.len() - 1
    }

    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn chosen_point(&self, j: usize) -> &'a Point {
        &self.points.points()[self.chosen[j]]
    }

    pub(crate) fn chosen_points(&self) -> Vec<&'a Point> {
        self.chosen.iter().map(|&i| &self.points.points()[i]).collect()
    }
}

/// A point lying in every shrunk copy `D_{q_j, lambda_j}(S)`.
///
/// `relint_*` describe the copies of the relative interior with `sum lambda = k`
/// (all coefficients positive); `lambda` / `coefficients` describe closed copies
/// with `sum lambda < k`. In both, row `j` of the coefficients expresses
/// `point = (1 - lambda_j) q_j + lambda_j sum_i c_ji x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Point,
    #[serde(with = "rational::serde_str::vec")]
    pub relint_lambda: Vec<Rational>,
    #[serde(with = "rational::serde_str::mat")]
    pub relint_coefficients: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_str::vec")]
    pub lambda: Vec<Rational>,
    #[serde(with = "rational::serde_str::mat")]
    pub coefficients: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AntipodalityCertificate {
    Antipodal { map: AffineMap },
    NotAntipodal { witness: Witness },
}

impl AntipodalityCertificate {
    pub fn is_antipodal(&self) -> bool {
        matches!(self, AntipodalityCertificate::Antipodal { .. })
    }

    /// Exact re-verification against the query; independent of how the
    /// certificate was produced.
    pub fn verify(&self, q: &JointQuery<'_>) -> Result<()> {
        match self {
            AntipodalityCertificate::Antipodal { map } => verify_map(map, q),
            AntipodalityCertificate::NotAntipodal { witness } => verify_witness(witness, q),
        }
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

pub(crate) fn verify_map(map: &AffineMap, q: &JointQuery<'_>) -> Result<()> {
    let k = q.k();
    if map.out_rank() != k || map.in_dim() != q.points().dim() {
        return Err(reject("map has the wrong shape"));
    }
    let simplex = StandardSimplex::new(k)?;
    for j in 0..=k {
        if map.apply(q.chosen_point(j))? != simplex.vertex(j) {
            return Err(reject(format!("chosen point {j} is not sent to vertex {j}")));
        }
    }
    if !map.maps_into_simplex(q.points().points())? {
        return Err(reject("some point is mapped outside the simplex"));
    }
    Ok(())
}

fn check_copy(
    q: &JointQuery<'_>,
    j: usize,
    lambda: &Rational,
    coeffs: &[Rational],
    point: &Point,
    strictly_positive: bool,
) -> Result<()> {
    let xs = q.points().points();
    if coeffs.len() != xs.len() {
        return Err(reject("coefficient row has the wrong length"));
    }
    let positive = |c: &Rational| if strictly_positive { c.is_positive() } else { !c.is_negative() };
    if !coeffs.iter().all(positive) {
        return Err(reject(format!("coefficients of copy {j} have the wrong sign")));
    }
    if !coeffs.iter().fold(Rational::zero(), |a, c| a + c).is_one() {
        return Err(reject(format!("coefficients of copy {j} do not sum to one")));
    }
    let inner = crate::geometry::combine(&xs.iter().collect::<Vec<_>>(), coeffs);
    let expected = crate::geometry::Dilation::new(q.chosen_point(j).clone(), lambda.clone()).apply(&inner)?;
    if &expected != point {
        return Err(reject(format!("witness is not in copy {j}")));
    }
    Ok(())
}

pub(crate) fn verify_witness(w: &Witness, q: &JointQuery<'_>) -> Result<()> {
    let k = q.k();
    let kq = rational::int(k as i64);
    if w.point.dim() != q.points().dim() {
        return Err(reject("witness has the wrong dimension"));
    }
    if w.lambda.len() != k + 1 || w.coefficients.len() != k + 1 {
        return Err(reject("closed witness needs k + 1 factors"));
    }
    if w.relint_lambda.len() != k + 1 || w.relint_coefficients.len() != k + 1 {
        return Err(reject("relative interior witness needs k + 1 factors"));
    }
    let in_unit = |l: &Rational| l.is_positive() && *l < Rational::one();
    if !w.lambda.iter().all(in_unit) || !w.relint_lambda.iter().all(in_unit) {
        return Err(reject("dilation factors must lie in (0, 1)"));
    }
    let sum = w.lambda.iter().fold(Rational::zero(), |a, l| a + l);
    if sum >= kq {
        return Err(reject(format!("closed factors sum to {sum}, not below {k}")));
    }
    let relint_sum = w.relint_lambda.iter().fold(Rational::zero(), |a, l| a + l);
    if relint_sum != kq {
        return Err(reject(format!("relative interior factors sum to {relint_sum}, not {k}")));
    }
    for j in 0..=k {
        check_copy(q, j, &w.lambda[j], &w.coefficients[j], &w.point, false)?;
        check_copy(q, j, &w.relint_lambda[j], &w.relint_coefficients[j], &w.point, true)?;
    }
    Ok(())
}

/// `p = sum_i (1 - lambda_i) q_i`, which lies in every closed copy whenever `sum lambda = k`.
pub fn witness_point(q: &JointQuery<'_>, lambda: &[Rational]) -> Point {
    let weights: Vec<Rational> = lambda.iter().map(|l| Rational::one() - l).collect();
    crate::geometry::combine(&q.chosen_points(), &weights)
}
