#![allow(dead_code)]

use antipodal::geometry::{affine_rank, Point, PointSet};
use antipodal::rational::{int, ratio};
use antipodal::Rational;
use rand::Rng;

pub fn cube(d: usize) -> PointSet {
    let pts = (0..1u32 << d)
        .map(|m| Point::from_ints(&(0..d).map(|b| ((m >> b) & 1) as i64).collect::<Vec<_>>()))
        .collect();
    PointSet::new(pts).unwrap()
}

/// Origin and the unit vectors of `R^d`.
pub fn simplex(d: usize) -> PointSet {
    let mut pts = vec![Point::from_ints(&vec![0; d])];
    for i in 0..d {
        let mut v = vec![0; d];
        v[i] = 1;
        pts.push(Point::from_ints(&v));
    }
    PointSet::new(pts).unwrap()
}

pub fn square() -> PointSet {
    cube(2)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn random_point(rng: &mut impl Rng, d: usize) -> Point {
    Point::new((0..d).map(|_| random_rational(rng)).collect())
}

/// `n` distinct random points in `R^d`.
pub fn random_point_set(rng: &mut impl Rng, d: usize, n: usize) -> PointSet {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(rng, d);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(pts).unwrap()
}

/// `lambda_j = 1 - mu_j` for a random interior point `mu` of the simplex, so
/// every factor is in `(0, 1)` and they sum to `k`.
pub fn random_lambda(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..=k).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    w.iter().map(|&x| int(1) - ratio(x, total)).collect()
}

pub fn random_subset(rng: &mut impl Rng, n: usize, r: usize) -> Vec<usize> {
    let mut s = rand::seq::index::sample(rng, n, r).into_vec();
    s.sort_unstable();
    s
}

/// Every `(d+1)`-subset affinely independent.
pub fn in_general_position(x: &PointSet) -> bool {
    let d = x.dim();
    antipodal::combinatorics::subsets(x.len(), (d + 1).min(x.len()))
        .iter()
        .all(|s| affine_rank(&x.select(s).unwrap()) + 1 == s.len())
}

pub fn sorted_points(x: &PointSet) -> Vec<Point> {
    let mut v = x.points().to_vec();
    v.sort();
    v
}
