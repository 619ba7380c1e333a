//! Sequential half-space separation of convex polytopes with disjoint relative
//! interiors, and the supporting hyperplanes it induces for jointly antipodal
//! points.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{validate_lambda, witness_point, JointQuery};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank_of, member, Dilation, Point, Polytope};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::rational::{self, dot, Rational};

/// `{x : normal . x <= offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(with = "rational::serde_str::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl HalfSpace {
    /// Rescaled so that `(normal, offset)` is a primitive integer vector.
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("half-space normal is zero".into()));
        }
        let mut all = normal;
        all.push(offset);
        let mut all = rational::primitive(&all);
        let offset = all.pop().expect("nonempty");
        Ok(HalfSpace { normal: all, offset })
    }

    pub fn slack(&self, x: &Point) -> Rational {
        &self.offset - dot(&self.normal, x.coords())
    }

    pub fn contains(&self, x: &Point) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn on_boundary(&self, x: &Point) -> bool {
        self.slack(x).is_zero()
    }
}

fn centroid(p: &Polytope) -> Point {
    let vs = p.vertices().points();
    let w = vec![rational::ratio(1, vs.len() as i64); vs.len()];
    crate::geometry::combine(&vs.iter().collect::<Vec<_>>(), &w)
}

/// Whether the relative interiors of the polytopes share a point.
fn relints_meet(ks: &[Polytope]) -> Result<bool> {
    let d = ks[0].dim();
    let sizes: Vec<usize> = ks.iter().map(|k| k.vertices().len()).collect();
    let total: usize = sizes.iter().sum();
    let mut lp = LinearProgram::new(d + total);
    let mut strict = Vec::with_capacity(total);
    let mut base = d;
    for (k, &n) in ks.iter().zip(&sizes) {
        let vs = k.vertices().points();
        for t in 0..d {
            let mut row = vec![Rational::zero(); lp.num_vars];
            row[t] = -Rational::one();
            for (i, v) in vs.iter().enumerate() {
                row[base + i] = v.coords()[t].clone();
            }
            lp.add_eq(row, Rational::zero());
        }
        let mut sum = vec![Rational::zero(); lp.num_vars];
        sum[base..base + n].iter_mut().for_each(|v| *v = Rational::one());
        lp.add_eq(sum, Rational::one());
        for i in 0..n {
            strict.push(lp.add_nonneg(base + i));
        }
        base += n;
    }
    Ok(lp::solve_strict(&lp, &strict)?.is_feasible())
}

/// Half-spaces `D_1, ..., D_r` with `p` on every boundary, `K_i` inside `D_i` and
/// no point interior to all of them.
///
/// Step `i` looks for a normal `a` in the normal cone of `K_i` at `p` whose
/// negative lies in the normal cone at `p` of
/// `(D_1 ∩ ... ∩ D_{i-1}) ∩ (K_{i+1} ∩ ... ∩ K_r)`; for polyhedra that cone is the
/// sum of the individual normal cones, so each step is a single LP.
pub fn sequential_separation(ks: &[Polytope], p: &Point) -> Result<Vec<HalfSpace>> {
    let Some(first) = ks.first() else {
        return Err(Error::InvalidInput("no polytopes to separate".into()));
    };
    let d = first.dim();
    if p.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
    }
    if let Some(k) = ks.iter().find(|k| k.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: k.dim() });
    }
    for (i, k) in ks.iter().enumerate() {
        if !member(k, p, false)?.is_inside() {
            return Err(Error::Precondition(format!("p is outside polytope {i}")));
        }
    }
    if relints_meet(ks)? {
        return Err(Error::Precondition("relative interiors intersect".into()));
    }

    let r = ks.len();
    let mut found: Vec<HalfSpace> = Vec::with_capacity(r);
    for i in 0..r {
        // Variables: a (d), t_j for j < i, b_j (d each) for j > i.
        let t_var = |j: usize| d + j;
        let b_var = |j: usize, c: usize| d + i + (j - i - 1) * d + c;
        let n = d + i + (r - i - 1) * d;
        let mut lp = LinearProgram::new(n);

        for v in ks[i].vertices().points() {
            let mut row = vec![Rational::zero(); n];
            row[..d].clone_from_slice(&v.sub(p));
            lp.add_le(row, Rational::zero());
        }
        for j in 0..i {
            lp.add_nonneg(t_var(j));
        }
        for j in i + 1..r {
            for v in ks[j].vertices().points() {
                let mut row = vec![Rational::zero(); n];
                for (c, x) in v.sub(p).into_iter().enumerate() {
                    row[b_var(j, c)] = x;
                }
                lp.add_le(row, Rational::zero());
            }
        }
        for c in 0..d {
            let mut row = vec![Rational::zero(); n];
            row[c] = Rational::one();
            for (j, h) in found.iter().enumerate() {
                row[t_var(j)] = h.normal[c].clone();
            }
            for j in i + 1..r {
                row[b_var(j, c)] = Rational::one();
            }
            lp.add_eq(row, Rational::zero());
        }
        let inward = centroid(&ks[i]).sub(p);
        let mut norm = vec![Rational::zero(); n];
        norm[..d].clone_from_slice(&inward);
        lp.add_eq(norm, -Rational::one());

        let LpOutcome::Feasible { point, .. } = lp::solve(&lp)? else {
            return Err(Error::Precondition(format!("no hyperplane through p separates polytope {i}")));
        };
        let a = point[..d].to_vec();
        let offset = dot(&a, p.coords());
        found.push(HalfSpace::new(a, offset)?);
    }

    // The open half-spaces must have empty common intersection.
    let mut lp = LinearProgram::new(d);
    for h in &found {
        lp.add_le(h.normal.clone(), h.offset.clone());
    }
    let all: Vec<usize> = (0..r).collect();
    if lp::solve_strict(&lp, &all)?.is_feasible() {
        return Err(Error::Certificate("interiors of the separating half-spaces meet".into()));
    }
    Ok(found)
}

/// For jointly antipodal points: half-space `i` contains `S = conv X`, has every
/// `q_j` with `j != i` on its boundary and `q_i` strictly inside, so the
/// half-spaces cut `conv(q_1, ..., q_{k+1})` out of `aff(q_1, ..., q_{k+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCertificate {
    pub halfspaces: Vec<HalfSpace>,
    #[serde(with = "rational::serde_str::vec")]
    pub lambda: Vec<Rational>,
    /// The half-spaces through `p = sum (1 - lambda_i) q_i` before expansion.
    pub separators: Vec<HalfSpace>,
}

impl SupportCertificate {
    pub fn verify(&self, q: &JointQuery<'_>) -> Result<()> {
        let k = q.k();
        let bad = |m: String| Err(Error::Certificate(m));
        if self.halfspaces.len() != k + 1 {
            return bad(format!("expected {} half-spaces", k + 1));
        }
        let qs = q.chosen_points();
        if affine_rank_of(&qs) != k {
            return bad("chosen points are affinely dependent".into());
        }
        for (i, h) in self.halfspaces.iter().enumerate() {
            if let Some(x) = q.points().points().iter().find(|x| !h.contains(x)) {
                return bad(format!("half-space {i} misses {x:?}"));
            }
            for (j, qj) in qs.iter().enumerate() {
                let ok = if i == j { h.slack(qj).is_positive() } else { h.on_boundary(qj) };
                if !ok {
                    return bad(format!("half-space {i} has the wrong incidence with q_{j}"));
                }
            }
        }
        Ok(())
    }
}

pub fn support_certificate(q: &JointQuery<'_>, lambda: &[Rational]) -> Result<SupportCertificate> {
    let k = q.k();
    validate_lambda(lambda, k)?;
    let p = witness_point(q, lambda);
    let s = Polytope::new(q.points().clone());
    let copies = q
        .chosen_points()
        .into_iter()
        .zip(lambda)
        .map(|(qi, l)| s.dilate(&Dilation::new(qi.clone(), l.clone())))
        .collect::<Result<Vec<_>>>()?;
    let separators = sequential_separation(&copies, &p).map_err(|e| match e {
        Error::Precondition(m) => Error::Precondition(format!("points are not jointly antipodal: {m}")),
        other => other,
    })?;
    // Undo the dilation about q_i: a . (lambda y + (1 - lambda) q_i) <= a . p.
    let halfspaces = separators
        .iter()
        .zip(q.chosen_points())
        .zip(lambda)
        .map(|((h, qi), l)| {
            let keep = Rational::one() - l;
            let offset = (&h.offset - keep * dot(&h.normal, qi.coords())) / l;
            HalfSpace::new(h.normal.clone(), offset)
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = SupportCertificate { halfspaces, lambda: lambda.to_vec(), separators };
    cert.verify(q)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;
    use crate::rational::{int, ratio};

    fn poly(rows: &[&[i64]]) -> Polytope {
        Polytope::new(PointSet::from_ints(rows).unwrap())
    }

    #[test]
    fn two_intervals() {
        let hs = sequential_separation(&[poly(&[&[-1], &[0]]), poly(&[&[0], &[1]])], &Point::from_ints(&[0])).unwrap();
        assert_eq!(hs[0], HalfSpace { normal: vec![int(1)], offset: int(0) });
        assert_eq!(hs[1], HalfSpace { normal: vec![int(-1)], offset: int(0) });
    }

    #[test]
    fn squares_sharing_an_edge() {
        let a = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let b = poly(&[&[1, 0], &[2, 0], &[1, 1], &[2, 1]]);
        let p = Point::new(vec![int(1), ratio(1, 2)]);
        let hs = sequential_separation(&[a, b], &p).unwrap();
        assert_eq!(hs[0], HalfSpace { normal: vec![int(1), int(0)], offset: int(1) });
        assert_eq!(hs[1], HalfSpace { normal: vec![int(-1), int(0)], offset: int(-1) });
    }

    #[test]
    fn triangle_copies_at_centroid() {
        let tri = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        let l = ratio(2, 3);
        let copies: Vec<Polytope> = tri
            .vertices()
            .points()
            .iter()
            .map(|v| tri.dilate(&Dilation::new(v.clone(), l.clone())).unwrap())
            .collect();
        let p = Point::from_ints(&[1, 1]);
        let hs = sequential_separation(&copies, &p).unwrap();
        assert_eq!(hs.len(), 3);
        for (h, k) in hs.iter().zip(&copies) {
            assert!(h.on_boundary(&p));
            assert!(k.vertices().points().iter().all(|v| h.contains(v)));
        }
        let normals: Vec<Vec<Rational>> = hs.iter().map(|h| h.normal.clone()).collect();
        assert!(crate::geometry::linalg::rank(&normals) < 3);
    }

    #[test]
    fn overlapping_interiors_are_rejected() {
        let a = poly(&[&[0], &[2]]);
        let b = poly(&[&[1], &[3]]);
        let r = sequential_separation(&[a, b], &Point::from_ints(&[1]));
        assert!(matches!(r, Err(Error::Precondition(_))));
        let a = poly(&[&[0], &[1]]);
        let b = poly(&[&[1], &[2]]);
        let r = sequential_separation(&[a, b], &Point::from_ints(&[2]));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn segment_support() {
        let seg = PointSet::from_ints(&[&[0], &[1]]).unwrap();
        let q = JointQuery::new(&seg, vec![0, 1]).unwrap();
        let cert = support_certificate(&q, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(cert.halfspaces[0], HalfSpace { normal: vec![int(1)], offset: int(1) });
        assert_eq!(cert.halfspaces[1], HalfSpace { normal: vec![int(-1)], offset: int(0) });
    }

    #[test]
    fn triangle_support_is_edge_halfspaces() {
        let tri = PointSet::from_ints(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        let q = JointQuery::new(&tri, vec![0, 1, 2]).unwrap();
        let cert = support_certificate(&q, &[ratio(2, 3), ratio(2, 3), ratio(2, 3)]).unwrap();
        // Opposite edges: x + y <= 3, x >= 0, y >= 0.
        assert_eq!(cert.halfspaces[0], HalfSpace { normal: vec![int(1), int(1)], offset: int(3) });
        assert_eq!(cert.halfspaces[1], HalfSpace { normal: vec![int(-1), int(0)], offset: int(0) });
        assert_eq!(cert.halfspaces[2], HalfSpace { normal: vec![int(0), int(-1)], offset: int(0) });
    }

    #[test]
    fn square_diagonal_support_lines_are_parallel() {
        let sq = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let q = JointQuery::new(&sq, vec![0, 3]).unwrap();
        let cert = support_certificate(&q, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        let n0 = &cert.halfspaces[0].normal;
        let n1 = &cert.halfspaces[1].normal;
        assert_eq!(n0.iter().map(|v| -v.clone()).collect::<Vec<_>>(), *n1);
        assert!(cert.halfspaces[0].on_boundary(&Point::from_ints(&[1, 1])));
        assert!(cert.halfspaces[1].on_boundary(&Point::from_ints(&[0, 0])));
    }

    #[test]
    fn non_antipodal_support_fails() {
        let x = PointSet::new(vec![Point::from_ints(&[0]), Point::new(vec![ratio(1, 2)]), Point::from_ints(&[1])]).unwrap();
        let q = JointQuery::new(&x, vec![0, 1]).unwrap();
        assert!(matches!(support_certificate(&q, &[ratio(1, 2), ratio(1, 2)]), Err(Error::Precondition(_))));
    }
}
