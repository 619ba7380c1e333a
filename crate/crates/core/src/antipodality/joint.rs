use num_traits::{One, Signed, Zero};

use super::{AntipodalityCertificate, JointQuery, Witness};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank_of, AffineMap, Point};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::rational::{self, Rational};

/// Variable layout for an affine map `R^d -> R^(k+1)`: row `l` of the matrix
/// followed by its offset, for `l = 0..=k`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MapVars {
    pub k: usize,
    pub d: usize,
}

impl MapVars {
    pub fn num_vars(&self) -> usize {
        (self.k + 1) * (self.d + 1)
    }

    /// Coefficients of `M_l(x)` in the map variables.
    pub fn output(&self, l: usize, x: &Point) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.num_vars()];
        let base = l * (self.d + 1);
        row[base..base + self.d].clone_from_slice(x.coords());
        row[base + self.d] = Rational::one();
        row
    }

    pub fn require_vertex(&self, lp: &mut LinearProgram, x: &Point, j: usize) {
        for l in 0..=self.k {
            let rhs = if l == j { Rational::one() } else { Rational::zero() };
            lp.add_eq(self.output(l, x), rhs);
        }
    }

    pub fn require_in_simplex(&self, lp: &mut LinearProgram, x: &Point) {
        let mut sum = vec![Rational::zero(); self.num_vars()];
        for l in 0..=self.k {
            let row = self.output(l, x);
            for (s, v) in sum.iter_mut().zip(&row) {
                *s += v;
            }
            lp.add_ge(row, Rational::zero());
        }
        lp.add_eq(sum, Rational::one());
    }

    pub fn extract(&self, sol: &[Rational]) -> AffineMap {
        let stride = self.d + 1;
        let matrix = (0..=self.k).map(|l| sol[l * stride..l * stride + self.d].to_vec()).collect();
        let offset = (0..=self.k).map(|l| sol[l * stride + self.d].clone()).collect();
        AffineMap { matrix, offset }
    }
}

/// Feasibility program whose solutions are exactly the certificate maps of `q`.
pub(crate) fn map_program(q: &JointQuery<'_>) -> (LinearProgram, MapVars) {
    let vars = MapVars { k: q.k(), d: q.points().dim() };
    let mut lp = LinearProgram::new(vars.num_vars());
    for (j, p) in q.chosen_points().into_iter().enumerate() {
        vars.require_vertex(&mut lp, p, j);
    }
    for (i, x) in q.points().points().iter().enumerate() {
        if !q.chosen().contains(&i) {
            vars.require_in_simplex(&mut lp, x);
        }
    }
    (lp, vars)
}

/// An affine map certifying joint antipodality, if one exists.
pub(crate) fn find_map(q: &JointQuery<'_>) -> Result<Option<AffineMap>> {
    // No affine map sends a dependent tuple onto k + 1 independent vertices.
    if affine_rank_of(&q.chosen_points()) < q.k() {
        return Ok(None);
    }
    let (lp, vars) = map_program(q);
    match lp::solve(&lp)? {
        LpOutcome::Feasible { point, .. } => {
            let map = vars.extract(&point);
            super::verify_map(&map, q)?;
            Ok(Some(map))
        }
        _ => Ok(None),
    }
}

pub fn default_lambda(k: usize) -> Vec<Rational> {
    vec![rational::ratio(k as i64, k as i64 + 1); k + 1]
}

pub fn validate_lambda(lambda: &[Rational], k: usize) -> Result<()> {
    if lambda.len() != k + 1 {
        return Err(Error::InvalidLambda(format!("expected {} factors, got {}", k + 1, lambda.len())));
    }
    if let Some(l) = lambda.iter().find(|l| !l.is_positive() || **l >= Rational::one()) {
        return Err(Error::InvalidLambda(format!("factor {l} is not in (0, 1)")));
    }
    let sum = lambda.iter().fold(Rational::zero(), |a, l| a + l);
    if sum != rational::int(k as i64) {
        return Err(Error::InvalidLambda(format!("factors sum to {sum}, expected {k}")));
    }
    Ok(())
}

/// A common point of the shrunk relative interiors, if there is one.
pub(crate) fn find_witness(q: &JointQuery<'_>, lambda: &[Rational]) -> Result<Option<Witness>> {
    let xs = q.points().points();
    let n = xs.len();
    let d = q.points().dim();
    let k = q.k();
    // Variables: the common point y, then one weight vector over X per copy.
    let alpha = |j: usize, i: usize| d + j * n + i;
    let mut lp = LinearProgram::new(d + (k + 1) * n);
    for j in 0..=k {
        let qj = q.chosen_point(j);
        let keep = Rational::one() - &lambda[j];
        for t in 0..d {
            let mut row = vec![Rational::zero(); lp.num_vars];
            row[t] = Rational::one();
            for (i, x) in xs.iter().enumerate() {
                row[alpha(j, i)] = -(&lambda[j] * &x.coords()[t]);
            }
            lp.add_eq(row, &keep * &qj.coords()[t]);
        }
        let mut sum = vec![Rational::zero(); lp.num_vars];
        for i in 0..n {
            sum[alpha(j, i)] = Rational::one();
        }
        lp.add_eq(sum, Rational::one());
    }
    let strict: Vec<usize> = (0..=k)
        .flat_map(|j| (0..n).map(move |i| (j, i)))
        .map(|(j, i)| lp.add_nonneg(alpha(j, i)))
        .collect();

    let LpOutcome::Feasible { point: sol, .. } = lp::solve_strict(&lp, &strict)? else {
        return Ok(None);
    };
    let y = Point::new(sol[..d].to_vec());
    let relint_coefficients: Vec<Vec<Rational>> =
        (0..=k).map(|j| sol[alpha(j, 0)..alpha(j, 0) + n].to_vec()).collect();

    // Trade a little of each factor for weight on the centre itself: with
    // a = alpha_j[q_j] > 0 the same point lies in D_{q_j, lambda_j (1 - a)}(S).
    let mut closed_lambda = Vec::with_capacity(k + 1);
    let mut closed_coefficients = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let own = q.chosen()[j];
        let a = &relint_coefficients[j][own];
        let rest = Rational::one() - a;
        closed_lambda.push(&lambda[j] * &rest);
        closed_coefficients.push(
            relint_coefficients[j]
                .iter()
                .enumerate()
                .map(|(i, c)| if i == own { Rational::zero() } else { c / &rest })
                .collect(),
        );
    }
    let witness = Witness {
        point: y,
        relint_lambda: lambda.to_vec(),
        relint_coefficients,
        lambda: closed_lambda,
        coefficients: closed_coefficients,
    };
    super::verify_witness(&witness, q)?;
    Ok(Some(witness))
}

/// Decides joint antipodality by searching for the certificate map directly.
/// A negative answer carries a witness for the default factors `k / (k + 1)`.
pub fn joint_antipodal_direct(q: &JointQuery<'_>) -> Result<AntipodalityCertificate> {
    if let Some(map) = find_map(q)? {
        return Ok(AntipodalityCertificate::Antipodal { map });
    }
    match find_witness(q, &default_lambda(q.k()))? {
        Some(witness) => Ok(AntipodalityCertificate::NotAntipodal { witness }),
        None => Err(Error::Inconsistent(
            "no certificate map exists, yet the shrunk copies are disjoint".into(),
        )),
    }
}

/// Decides joint antipodality through the intersection of shrunk copies of the
/// relative interior. `lambda` defaults to `k / (k + 1)` in every coordinate.
pub fn joint_antipodal_shrunk(q: &JointQuery<'_>, lambda: Option<&[Rational]>) -> Result<AntipodalityCertificate> {
    let owned;
    let lambda = match lambda {
        Some(l) => {
            validate_lambda(l, q.k())?;
            l
        }
        None => {
            owned = default_lambda(q.k());
            &owned
        }
    };
    if let Some(witness) = find_witness(q, lambda)? {
        return Ok(AntipodalityCertificate::NotAntipodal { witness });
    }
    match find_map(q)? {
        Some(map) => Ok(AntipodalityCertificate::Antipodal { map }),
        None => Err(Error::Inconsistent(
            "the shrunk copies are disjoint, yet no certificate map exists".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;
    use crate::rational::{int, ratio};

    fn segment_with_midpoint() -> PointSet {
        PointSet::new(vec![
            Point::from_ints(&[0]),
            Point::new(vec![ratio(1, 2)]),
            Point::from_ints(&[1]),
        ])
        .unwrap()
    }

    #[test]
    fn square_pairs_are_antipodal() {
        let sq = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        for pair in crate::combinatorics::subsets(4, 2) {
            let q = JointQuery::new(&sq, pair).unwrap();
            let cert = joint_antipodal_direct(&q).unwrap();
            assert!(cert.is_antipodal());
            cert.verify(&q).unwrap();
        }
    }

    #[test]
    fn midpoint_pair_is_not_antipodal() {
        let x = segment_with_midpoint();
        let q = JointQuery::new(&x, vec![0, 1]).unwrap();
        let cert = joint_antipodal_direct(&q).unwrap();
        assert!(!cert.is_antipodal());
        cert.verify(&q).unwrap();

        let half = [ratio(1, 2), ratio(1, 2)];
        let cert = joint_antipodal_shrunk(&q, Some(&half)).unwrap();
        let AntipodalityCertificate::NotAntipodal { witness } = &cert else { panic!() };
        // D_{0,1/2}([0,1]) = [0,1/2] and D_{1/2,1/2}([0,1]) = [1/4,3/4].
        let y = &witness.point.coords()[0];
        assert!(*y > ratio(1, 4) && *y < ratio(1, 2));
        cert.verify(&q).unwrap();
    }

    #[test]
    fn simplex_vertices_use_barycentric_map() {
        let tri = PointSet::from_ints(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let q = JointQuery::new(&tri, vec![0, 1, 2]).unwrap();
        let cert = joint_antipodal_direct(&q).unwrap();
        let AntipodalityCertificate::Antipodal { map } = &cert else { panic!() };
        // The certificate must coincide with barycentric coordinates.
        let x = Point::new(vec![ratio(1, 2), ratio(1, 3)]);
        let bary = crate::geometry::barycentric(&tri, &x).unwrap();
        assert_eq!(map.apply(&x).unwrap(), bary);
        assert!(joint_antipodal_shrunk(&q, None).unwrap().is_antipodal());
    }

    #[test]
    fn lambda_validation() {
        assert!(validate_lambda(&[ratio(1, 2), ratio(1, 2)], 1).is_ok());
        assert!(validate_lambda(&[ratio(1, 2), ratio(1, 3)], 1).is_err());
        assert!(validate_lambda(&[int(1), int(0)], 1).is_err());
        assert!(validate_lambda(&[ratio(1, 2)], 1).is_err());
        let x = segment_with_midpoint();
        let q = JointQuery::new(&x, vec![0, 2]).unwrap();
        assert!(matches!(
            joint_antipodal_shrunk(&q, Some(&[ratio(1, 4), ratio(1, 4)])),
            Err(Error::InvalidLambda(_))
        ));
    }

    #[test]
    fn invalid_queries() {
        let x = segment_with_midpoint();
        assert!(JointQuery::new(&x, vec![0]).is_err());
        assert!(JointQuery::new(&x, vec![0, 0]).is_err());
        assert!(JointQuery::new(&x, vec![0, 3]).is_err());
    }

    #[test]
    fn dependent_tuple_gets_witness() {
        let x = segment_with_midpoint();
        let q = JointQuery::new(&x, vec![0, 1, 2]).unwrap();
        let cert = joint_antipodal_direct(&q).unwrap();
        assert!(!cert.is_antipodal());
        cert.verify(&q).unwrap();
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let sq = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let q = JointQuery::new(&sq, vec![0, 3]).unwrap();
        let AntipodalityCertificate::Antipodal { mut map } = joint_antipodal_direct(&q).unwrap() else { panic!() };
        map.offset[0] += int(1);
        assert!(AntipodalityCertificate::Antipodal { map }.verify(&q).is_err());

        let x = segment_with_midpoint();
        let q = JointQuery::new(&x, vec![0, 1]).unwrap();
        let AntipodalityCertificate::NotAntipodal { mut witness } = joint_antipodal_direct(&q).unwrap() else { panic!() };
        witness.lambda[0] = ratio(99, 100);
        assert!(AntipodalityCertificate::NotAntipodal { witness }.verify(&q).is_err());
    }
}
