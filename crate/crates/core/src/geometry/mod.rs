//! Points, polytopes in vertex representation, dilations, affine maps into the
//! standard simplex, barycentric coordinates, membership, orthogonal projection
//! and exact low-dimensional volume.

pub mod linalg;
mod volume;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::rational::{self, dot, Rational};
use linalg::LinearSolution;

pub use volume::{volume, volume_with_cap, Volume, DEFAULT_VOLUME_DIM_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    #[serde(with = "rational::serde_str::vec")]
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }
}

/// Convex combination `sum_i w_i p_i` (weights need not be normalised).
pub fn combine(points: &[&Point], weights: &[Rational]) -> Point {
    let dim = points.first().map_or(0, |p| p.dim());
    let mut out = vec![Rational::zero(); dim];
    for (p, w) in points.iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(p.coords()) {
            *o += w * c;
        }
    }
    Point::new(out)
}

/// An ordered, duplicate-free list of points of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidInput("point set is empty".into()))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::InvalidInput("points must have dimension at least 1".into()));
        }
        for p in &points {
            p.check_dim(dim)?;
        }
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("point set contains duplicate points".into()));
        }
        Ok(PointSet { dim, points })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        PointSet::new(rows.iter().map(|r| Point::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Option<&Point> {
        self.points.get(i)
    }

    pub fn select(&self, idx: &[usize]) -> Result<PointSet> {
        let pts = idx
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(pts)
    }
}

/// `conv(vertices)`; the vertex list may contain redundant points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    vertices: PointSet,
}

impl Polytope {
    pub fn new(vertices: PointSet) -> Self {
        Polytope { vertices }
    }

    pub fn vertices(&self) -> &PointSet {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    /// Image under a dilation; nonzero factors keep the vertex list duplicate-free.
    pub fn dilate(&self, d: &Dilation) -> Result<Polytope> {
        if d.factor.is_zero() {
            return Err(Error::InvalidLambda("cannot dilate a polytope by zero".into()));
        }
        let pts = self
            .vertices
            .points()
            .iter()
            .map(|x| d.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polytope::new(PointSet::new(pts)?))
    }
}

/// The homothety `x -> (1 - factor) center + factor x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dilation {
    pub center: Point,
    pub factor: Rational,
}

impl Dilation {
    pub fn new(center: Point, factor: Rational) -> Self {
        Dilation { center, factor }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        x.check_dim(self.center.dim())?;
        let keep = Rational::one() - &self.factor;
        Ok(Point::new(
            self.center
                .coords()
                .iter()
                .zip(x.coords())
                .map(|(q, x)| &keep * q + &self.factor * x)
                .collect(),
        ))
    }
}

pub fn dilate(d: &Dilation, x: &Point) -> Result<Point> {
    d.apply(x)
}

/// `{p in R^(k+1) : p >= 0, sum p = 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardSimplex {
    pub k: usize,
}

impl StandardSimplex {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("simplex rank must be at least 1".into()));
        }
        Ok(StandardSimplex { k })
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.k + 1
            && p.iter().all(|v| !v.is_negative())
            && p.iter().fold(Rational::zero(), |a, v| a + v).is_one()
    }

    pub fn vertex(&self, j: usize) -> Vec<Rational> {
        (0..=self.k).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()
    }

    pub fn is_vertex(p: &[Rational]) -> Option<usize> {
        let mut hit = None;
        for (i, v) in p.iter().enumerate() {
            if v.is_one() && hit.is_none() {
                hit = Some(i);
            } else if !v.is_zero() {
                return None;
            }
        }
        hit
    }
}

/// `x -> matrix x + offset`, with `k + 1` output coordinates read as barycentric
/// coordinates on the standard simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(with = "rational::serde_str::mat")]
    pub matrix: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_str::vec")]
    pub offset: Vec<Rational>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Rational>>, offset: Vec<Rational>) -> Result<Self> {
        if matrix.len() != offset.len() || matrix.is_empty() {
            return Err(Error::InvalidInput("affine map rows do not match offset".into()));
        }
        let d = matrix[0].len();
        if matrix.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput("ragged affine map matrix".into()));
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn in_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    /// Rank `k` of the target simplex (one less than the number of outputs).
    pub fn out_rank(&self) -> usize {
        self.offset.len().saturating_sub(1)
    }

    pub fn apply(&self, x: &Point) -> Result<Vec<Rational>> {
        x.check_dim(self.in_dim())?;
        Ok(self
            .matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, c)| dot(row, x.coords()) + c)
            .collect())
    }

    pub fn maps_into_simplex(&self, points: &[Point]) -> Result<bool> {
        let simplex = StandardSimplex::new(self.out_rank())?;
        for p in points {
            if !simplex.contains(&self.apply(p)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self` precomposed with the coordinate projection onto block `block` of
    /// `blocks` equal blocks.
    pub fn on_block(&self, block: usize, blocks: usize) -> AffineMap {
        let d0 = self.in_dim();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                let mut wide = vec![Rational::zero(); d0 * blocks];
                wide[block * d0..(block + 1) * d0].clone_from_slice(row);
                wide
            })
            .collect();
        AffineMap { matrix, offset: self.offset.clone() }
    }

    /// Output coordinates reordered: new row `j` is old row `perm[j]`.
    pub fn permute_outputs(&self, perm: &[usize]) -> AffineMap {
        AffineMap {
            matrix: perm.iter().map(|&p| self.matrix[p].clone()).collect(),
            offset: perm.iter().map(|&p| self.offset[p].clone()).collect(),
        }
    }
}

fn lifted_columns(vertices: &[&Point]) -> Vec<Vec<Rational>> {
    // Rows: coordinates then the all-ones row; columns: vertices.
    let dim = vertices[0].dim();
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|t| vertices.iter().map(|v| v.coords()[t].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); vertices.len()]);
    rows
}

/// Barycentric coordinates of `x` with respect to affinely independent vertices.
pub fn barycentric(vertices: &PointSet, x: &Point) -> Result<Vec<Rational>> {
    x.check_dim(vertices.dim())?;
    let vs: Vec<&Point> = vertices.points().iter().collect();
    barycentric_of(&vs, x)
}

pub(crate) fn barycentric_of(vs: &[&Point], x: &Point) -> Result<Vec<Rational>> {
    let a = lifted_columns(vs);
    let mut b = x.coords().to_vec();
    b.push(Rational::one());
    if linalg::rank(&a) < vs.len() {
        return Err(Error::AffinelyDependent);
    }
    match linalg::solve(&a, &b) {
        LinearSolution::Unique(mu) => Ok(mu),
        LinearSolution::Inconsistent => Err(Error::OutsideAffineHull),
        LinearSolution::Underdetermined => Err(Error::AffinelyDependent),
    }
}

/// Dimension of the affine hull.
pub fn affine_rank(x: &PointSet) -> usize {
    affine_rank_of(&x.points().iter().collect::<Vec<_>>())
}

pub(crate) fn affine_rank_of(points: &[&Point]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.sub(base)).collect();
    if diffs.is_empty() {
        0
    } else {
        linalg::rank(&diffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `x = sum_i coefficients_i v_i` with nonnegative (positive, if strict) weights summing to one.
    Inside { coefficients: Vec<Rational> },
    /// Every vertex satisfies `normal . v <= threshold`. If `strictly` then
    /// `normal . x > threshold`; otherwise `normal . x >= threshold` and some
    /// vertex lies strictly inside, so `x` is not in the relative interior.
    Outside { normal: Vec<Rational>, threshold: Rational, strictly: bool },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Decides `x in conv(P)` (or `x in relint conv(P)` when `strict`).
pub fn member(p: &Polytope, x: &Point, strict: bool) -> Result<Membership> {
    x.check_dim(p.dim())?;
    let vs = p.vertices().points();
    let n = vs.len();
    let dim = p.dim();
    let mut lp = LinearProgram::new(n);
    for t in 0..dim {
        lp.add_eq(vs.iter().map(|v| v.coords()[t].clone()).collect(), x.coords()[t].clone());
    }
    lp.add_eq(vec![Rational::one(); n], Rational::one());
    let bounds: Vec<usize> = (0..n).map(|i| lp.add_nonneg(i)).collect();
    let outcome = if strict { lp::solve_strict(&lp, &bounds)? } else { lp::solve(&lp)? };
    match outcome {
        LpOutcome::Feasible { point, .. } => Ok(Membership::Inside { coefficients: point }),
        LpOutcome::Infeasible { farkas } => {
            let mut sep: Vec<Rational> = farkas[..dim].iter().map(|f| -f.clone()).collect();
            sep.push(farkas[dim].clone());
            let sep = rational::primitive(&sep);
            let threshold = sep[dim].clone();
            let normal = sep[..dim].to_vec();
            let strictly = dot(&normal, x.coords()) > threshold;
            Ok(Membership::Outside { normal, threshold, strictly })
        }
        LpOutcome::Unbounded { .. } => unreachable!("membership program has no objective"),
    }
}

/// Orthogonal projection of every point of `x` onto `aff(flat)`.
pub fn orthogonal_project(x: &PointSet, flat: &PointSet) -> Result<Vec<Point>> {
    if x.dim() != flat.dim() {
        return Err(Error::DimensionMismatch { expected: flat.dim(), found: x.dim() });
    }
    let fs: Vec<&Point> = flat.points().iter().collect();
    project_onto(x.points(), &fs)
}

pub(crate) fn project_onto(points: &[Point], flat: &[&Point]) -> Result<Vec<Point>> {
    if affine_rank_of(flat) + 1 != flat.len() {
        return Err(Error::AffinelyDependent);
    }
    let base = flat[0];
    let basis: Vec<Vec<Rational>> = flat[1..].iter().map(|p| p.sub(base)).collect();
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| dot(u, v)).collect())
        .collect();
    points
        .iter()
        .map(|p| {
            if basis.is_empty() {
                return Ok(base.clone());
            }
            let rel = p.sub(base);
            let rhs: Vec<Rational> = basis.iter().map(|u| dot(u, &rel)).collect();
            let LinearSolution::Unique(t) = linalg::solve(&gram, &rhs) else {
                return Err(Error::AffinelyDependent);
            };
            let mut out = base.coords().to_vec();
            for (u, ti) in basis.iter().zip(&t) {
                for (o, c) in out.iter_mut().zip(u) {
                    *o += ti * c;
                }
            }
            Ok(Point::new(out))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn unit_square() -> Polytope {
        Polytope::new(PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap())
    }

    #[test]
    fn dilation_examples() {
        let q = pt(&[3, -1]);
        let x = pt(&[5, 7]);
        assert_eq!(dilate(&Dilation::new(q.clone(), int(1)), &x).unwrap(), x);
        assert_eq!(dilate(&Dilation::new(q.clone(), int(0)), &x).unwrap(), q);
        let d = Dilation::new(pt(&[0, 0]), ratio(1, 2));
        assert_eq!(d.apply(&pt(&[2, 4])).unwrap(), pt(&[1, 2]));
        assert!(d.apply(&pt(&[1])).is_err());
    }

    #[test]
    fn barycentric_examples() {
        let tri = PointSet::from_ints(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        assert_eq!(barycentric(&tri, &pt(&[0, 0])).unwrap(), vec![int(1), int(0), int(0)]);
        assert_eq!(barycentric(&tri, &pt(&[1, 1])).unwrap(), vec![ratio(1, 3); 3]);
        let seg = PointSet::from_ints(&[&[0], &[1]]).unwrap();
        assert_eq!(
            barycentric(&seg, &Point::new(vec![ratio(1, 3)])).unwrap(),
            vec![ratio(2, 3), ratio(1, 3)]
        );
    }

    #[test]
    fn barycentric_errors() {
        let dep = PointSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(barycentric(&dep, &pt(&[1, 1])), Err(Error::AffinelyDependent));
        let seg = PointSet::from_ints(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(barycentric(&seg, &pt(&[0, 1])), Err(Error::OutsideAffineHull));
    }

    #[test]
    fn membership_examples() {
        let sq = unit_square();
        assert!(member(&sq, &pt(&[1, 1]), false).unwrap().is_inside());
        let seg = Polytope::new(PointSet::from_ints(&[&[0, 0], &[2, 2]]).unwrap());
        assert!(member(&seg, &pt(&[1, 1]), true).unwrap().is_inside());
        let at_end = member(&seg, &pt(&[2, 2]), true).unwrap();
        let Membership::Outside { normal, threshold, strictly } = at_end else { panic!() };
        assert!(!strictly);
        assert!(seg.vertices().points().iter().all(|v| dot(&normal, v.coords()) <= threshold));

        let out = member(&sq, &pt(&[2, 0]), false).unwrap();
        assert_eq!(
            out,
            Membership::Outside { normal: vec![int(1), int(0)], threshold: int(1), strictly: true }
        );
    }

    #[test]
    fn affine_ranks() {
        assert_eq!(affine_rank(&PointSet::from_ints(&[&[4, 4]]).unwrap()), 0);
        assert_eq!(affine_rank(&PointSet::from_ints(&[&[0, 0], &[1, 1], &[3, 3]]).unwrap()), 1);
        assert_eq!(
            affine_rank(&PointSet::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()),
            3
        );
    }

    #[test]
    fn projections() {
        let flat = PointSet::from_ints(&[&[0, 0], &[1, 0]]).unwrap();
        let x = PointSet::from_ints(&[&[0, 1], &[5, 0]]).unwrap();
        assert_eq!(orthogonal_project(&x, &flat).unwrap(), vec![pt(&[0, 0]), pt(&[5, 0])]);
        let line = PointSet::from_ints(&[&[0, 0], &[2, 0]]).unwrap();
        let one = PointSet::from_ints(&[&[1, 1]]).unwrap();
        assert_eq!(orthogonal_project(&one, &line).unwrap(), vec![pt(&[1, 0])]);
        let dep = PointSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(orthogonal_project(&one, &dep), Err(Error::AffinelyDependent));
    }

    #[test]
    fn point_set_invariants() {
        assert!(PointSet::from_ints(&[&[0, 0], &[0, 0]]).is_err());
        assert!(PointSet::from_ints(&[&[0, 0], &[0]]).is_err());
        assert!(PointSet::new(vec![]).is_err());
    }

    #[test]
    fn simplex_vertex_detection() {
        assert_eq!(StandardSimplex::is_vertex(&[int(0), int(1), int(0)]), Some(1));
        assert_eq!(StandardSimplex::is_vertex(&[ratio(1, 2), ratio(1, 2)]), None);
    }
}
