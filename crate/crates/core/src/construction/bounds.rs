use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::antipodality::{is_rank_k_antipodal, Mode};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank, dilate, volume_with_cap, Dilation, PointSet, Polytope};
use crate::hashcodes::rate_bounds;
use crate::rational::{self, Rational};

/// `k ((k+1)/k)^d`, the largest possible size of a rank-`k` antipodal set in `R^d`.
pub fn theorem1_bound(d: usize, k: usize) -> Result<Rational> {
    if k == 0 || k > d {
        return Err(Error::InvalidInput(format!("need 1 <= k <= d, got k = {k}, d = {d}")));
    }
    let ratio = rational::ratio(k as i64 + 1, k as i64);
    Ok(rational::int(k as i64) * rational::pow(&ratio, d as u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub k: usize,
    pub dim: usize,
    #[serde(with = "rational::serde_str")]
    pub volume: Rational,
    /// Volume of the copy shrunk by `k/(k+1)` towards each point.
    #[serde(with = "rational::serde_str::vec")]
    pub copies: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub sum: Rational,
    #[serde(with = "rational::serde_str")]
    pub k_volume: Rational,
    /// Every copy has volume `(k/(k+1))^d` times the whole.
    pub ratios_exact: bool,
    pub holds: bool,
    pub tight: bool,
}

/// Computes the volumes of `S = conv X` and of its shrunk copies `D_{x, k/(k+1)}(S)`
/// and compares their sum with `k vol S`. `X` must be rank-`k` antipodal and
/// full-dimensional.
pub fn volume_inequality_check(x: &PointSet, k: usize, dim_cap: usize) -> Result<VolumeReport> {
    let d = x.dim();
    if d > dim_cap {
        return Err(Error::VolumeDimensionCap { dim: d, cap: dim_cap });
    }
    if affine_rank(x) < d {
        return Err(Error::Precondition("point set is not full-dimensional".into()));
    }
    let verdict = is_rank_k_antipodal(x, k, Mode::auto(x.len(), k, 0, None)?)?;
    if !verdict.holds {
        return Err(Error::Precondition(format!("point set is not rank-{k} antipodal")));
    }
    let s = Polytope::new(x.clone());
    let volume = volume_with_cap(&s, dim_cap)?.value;
    let lambda = rational::ratio(k as i64, k as i64 + 1);
    let copies = x
        .points()
        .iter()
        .map(|q| {
            let dil = Dilation::new(q.clone(), lambda.clone());
            let pts = x.points().iter().map(|p| dilate(&dil, p)).collect::<Result<Vec<_>>>()?;
            Ok(volume_with_cap(&Polytope::new(PointSet::new(pts)?), dim_cap)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    let sum: Rational = copies.iter().sum();
    let k_volume = rational::int(k as i64) * &volume;
    let expected = rational::pow(&lambda, d as u32) * &volume;
    Ok(VolumeReport {
        k,
        dim: d,
        ratios_exact: copies.iter().all(|c| *c == expected),
        holds: sum <= k_volume,
        tight: sum == k_volume,
        volume,
        copies,
        sum,
        k_volume,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub k: usize,
    pub d0: usize,
    pub b: usize,
    /// `(1/d0) log(b/k)`: growth exponent per dimension of products of a
    /// `b`-point base in `R^d0`, under the counting bound for order `k + 1`.
    pub construction_exponent: f64,
    /// `(1/d0)` times the random-code lower rate for order `k + 1`.
    pub construction_lower: f64,
    /// `log((k+1)/k)`, the exponent of the size bound.
    pub bound_exponent: f64,
    pub gap: f64,
    /// Exact comparison of `b k^(d0-1)` with `(k+1)^d0`; `Less` means a strict gap.
    #[serde(serialize_with = "ordering_name")]
    pub comparison: Ordering,
    /// `k ((k+1)/k)^d0`, the largest admissible `b`.
    #[serde(with = "rational::serde_str")]
    pub b_cap: Rational,
    /// Whether `b_cap` is an integer; false exactly when `k > 1` and `d0 > 1`.
    pub cap_integral: bool,
    pub b_admissible: bool,
}

fn ordering_name<S: serde::Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    })
}

impl GapReport {
    pub fn has_gap(&self) -> bool {
        self.comparison == Ordering::Less
    }
}

/// Compares the exponent reachable by products of a `b`-point rank-`k` base in
/// `R^d0` with the exponent of the size bound.
pub fn gap_analysis(k: usize, d0: usize, b: usize) -> Result<GapReport> {
    if k == 0 || d0 < k || b < k + 1 {
        return Err(Error::InvalidInput(format!("need k >= 1, d0 >= k, b >= k + 1; got k = {k}, d0 = {d0}, b = {b}")));
    }
    let lhs = BigInt::from(b) * BigInt::from(k).pow(d0 as u32 - 1);
    let rhs = BigInt::from(k + 1).pow(d0 as u32);
    let b_cap = theorem1_bound(d0, k)?;
    let b_u32 = u32::try_from(b).map_err(|_| Error::InvalidInput("b is too large".into()))?;
    let rates = rate_bounds(b_u32, k + 1)?;
    let construction_exponent = ((b as f64) / (k as f64)).ln() / d0 as f64;
    let bound_exponent = ((k as f64 + 1.0) / k as f64).ln();
    Ok(GapReport {
        k,
        d0,
        b,
        construction_exponent,
        construction_lower: rates.lower / d0 as f64,
        bound_exponent,
        gap: bound_exponent - construction_exponent,
        comparison: lhs.cmp(&rhs),
        cap_integral: b_cap.is_integer(),
        b_admissible: !(rational::int(b as i64) - &b_cap).is_positive(),
        b_cap,
    })
}
