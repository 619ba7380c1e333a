//! Independent re-verification of solver outcomes. Nothing here calls the solver.

use num_traits::{Signed, Zero};

use super::{Direction, LinearProgram, Relation};
use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

fn reject(msg: String) -> Error {
    Error::Certificate(msg)
}

pub fn verify_feasible(lp: &LinearProgram, point: &[Rational]) -> Result<()> {
    if point.len() != lp.num_vars {
        return Err(Error::DimensionMismatch { expected: lp.num_vars, found: point.len() });
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let lhs = dot(&c.coeffs, point);
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        };
        if !ok {
            return Err(reject(format!("constraint {i} violated: lhs {lhs} vs rhs {}", c.rhs)));
        }
    }
    Ok(())
}

/// Combines the rows in `<=` form with multipliers `u`; returns (coefficients, rhs).
fn combine(lp: &LinearProgram, u: &[Rational]) -> Result<(Vec<Rational>, Rational)> {
    if u.len() != lp.constraints.len() {
        return Err(Error::DimensionMismatch { expected: lp.constraints.len(), found: u.len() });
    }
    let mut coeffs = vec![Rational::zero(); lp.num_vars];
    let mut rhs = Rational::zero();
    for (i, (c, m)) in lp.constraints.iter().zip(u).enumerate() {
        if c.relation != Relation::Eq && m.is_negative() {
            return Err(reject(format!("negative multiplier on inequality {i}")));
        }
        if m.is_zero() {
            continue;
        }
        let signed = if c.relation == Relation::Ge { -m.clone() } else { m.clone() };
        for (acc, a) in coeffs.iter_mut().zip(&c.coeffs) {
            if !a.is_zero() {
                *acc += &signed * a;
            }
        }
        rhs += &signed * &c.rhs;
    }
    Ok((coeffs, rhs))
}

/// Checks that `u` yields the contradiction `0 <= c` with `c < 0`.
pub fn verify_farkas(lp: &LinearProgram, u: &[Rational]) -> Result<()> {
    let (coeffs, rhs) = combine(lp, u)?;
    if coeffs.iter().any(|c| !c.is_zero()) {
        return Err(reject("combined coefficients are not zero".into()));
    }
    if !rhs.is_negative() {
        return Err(reject(format!("combined right-hand side {rhs} is not negative")));
    }
    Ok(())
}

/// Checks that no point satisfies the rows in `strict_rows` strictly and the rest weakly.
pub fn verify_strict_infeasibility(lp: &LinearProgram, strict_rows: &[usize], u: &[Rational]) -> Result<()> {
    let (coeffs, rhs) = combine(lp, u)?;
    if coeffs.iter().any(|c| !c.is_zero()) {
        return Err(reject("combined coefficients are not zero".into()));
    }
    if rhs.is_negative() {
        return Ok(());
    }
    if !rhs.is_zero() {
        return Err(reject(format!("combined right-hand side {rhs} is positive")));
    }
    if strict_rows.iter().any(|&i| u.get(i).is_some_and(|m| m.is_positive())) {
        Ok(())
    } else {
        Err(reject("no weight on a strict row".into()))
    }
}

/// Checks that `point` is feasible and that `ray` is a recession direction that
/// improves the objective.
pub fn verify_ray(lp: &LinearProgram, point: &[Rational], ray: &[Rational]) -> Result<()> {
    verify_feasible(lp, point)?;
    for (i, c) in lp.constraints.iter().enumerate() {
        let lhs = dot(&c.coeffs, ray);
        let ok = match c.relation {
            Relation::Le => !lhs.is_positive(),
            Relation::Ge => !lhs.is_negative(),
            Relation::Eq => lhs.is_zero(),
        };
        if !ok {
            return Err(reject(format!("ray leaves constraint {i}")));
        }
    }
    let obj = lp
        .objective
        .as_ref()
        .ok_or_else(|| reject("unbounded outcome without objective".into()))?;
    let gain = dot(&obj.coeffs, ray);
    let improves = match obj.direction {
        Direction::Maximize => gain.is_positive(),
        Direction::Minimize => gain.is_negative(),
    };
    if improves {
        Ok(())
    } else {
        Err(reject("ray does not improve the objective".into()))
    }
}
