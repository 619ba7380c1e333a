//! Certified linear programming over exact rationals.
//!
//! Every geometric decision in this crate is reduced to a [`LinearProgram`] and
//! solved by [`solve`] or [`solve_strict`]. Outcomes always carry a certificate
//! that can be re-checked independently with the functions in [`certificate`].

pub mod certificate;
mod simplex;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use simplex::{Solution, Standard};

pub use certificate::{verify_farkas, verify_feasible, verify_ray, verify_strict_infeasibility};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    /// Sign that turns the row into `<=` form (`Ge` rows are negated).
    pub(crate) fn sign(self) -> i64 {
        match self {
            Relation::Ge => -1,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub coeffs: Vec<Rational>,
    pub direction: Direction,
}

/// Variables are free; sign restrictions are ordinary constraints such as `x_j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Objective>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// A point satisfying every constraint; optimal when an objective was given.
    Feasible { point: Vec<Rational>, value: Option<Rational> },
    /// Multipliers `u` (one per constraint, `u >= 0` on inequalities) such that the
    /// combination of the rows in `<=` form reads `0 <= c` with `c < 0`.
    /// For [`solve_strict`] the certificate may instead have `c <= 0` with positive
    /// weight on a strict row.
    Infeasible { farkas: Vec<Rational> },
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible { point, .. } | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, constraints: Vec::new(), objective: None }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> usize {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self.constraints.len() - 1
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> usize {
        self.add(coeffs, Relation::Le, rhs)
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> usize {
        self.add(coeffs, Relation::Ge, rhs)
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> usize {
        self.add(coeffs, Relation::Eq, rhs)
    }

    /// Adds `x_var >= 0` and returns the row index.
    pub fn add_nonneg(&mut self, var: usize) -> usize {
        let mut row = vec![Rational::zero(); self.num_vars];
        row[var] = rational::one();
        self.add_ge(row, Rational::zero())
    }

    pub fn maximize(&mut self, coeffs: Vec<Rational>) {
        self.objective = Some(Objective { coeffs, direction: Direction::Maximize });
    }

    pub fn minimize(&mut self, coeffs: Vec<Rational>) {
        self.objective = Some(Objective { coeffs, direction: Direction::Minimize });
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(Error::MalformedProgram(format!(
                    "constraint {i} has {} coefficients, expected {}",
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        if let Some(obj) = &self.objective {
            if obj.coeffs.len() != self.num_vars {
                return Err(Error::MalformedProgram(format!(
                    "objective has {} coefficients, expected {}",
                    obj.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// If row `i` reads `c * x_j >= 0` (or `-c * x_j <= 0`) with `c > 0`, returns `j`.
    fn sign_bound(&self, i: usize) -> Option<usize> {
        let c = &self.constraints[i];
        if !c.rhs.is_zero() || c.relation == Relation::Eq {
            return None;
        }
        let mut nz = c.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero());
        let (j, v) = nz.next()?;
        if nz.next().is_some() {
            return None;
        }
        let ok = match c.relation {
            Relation::Ge => v.is_positive(),
            Relation::Le => v.is_negative(),
            Relation::Eq => false,
        };
        ok.then_some(j)
    }
}

/// Result of the internal solve, with dual information for callers in this module.
struct Detailed {
    outcome: LpOutcome,
    /// Optimal multipliers in the same convention as Farkas vectors, when optimal.
    duals: Option<Vec<Rational>>,
}

/// Solves `lp` exactly. Deterministic: identical input gives identical output.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    Ok(solve_detailed(lp).outcome)
}

fn solve_detailed(lp: &LinearProgram) -> Detailed {
    let n = lp.num_vars;

    // Rows of the form `x_j >= 0` become sign restrictions instead of tableau rows.
    let mut bound_row: Vec<Option<usize>> = vec![None; n];
    let mut is_bound_row = vec![false; lp.constraints.len()];
    for (i, flag) in is_bound_row.iter_mut().enumerate() {
        if let Some(j) = lp.sign_bound(i) {
            if bound_row[j].is_none() {
                bound_row[j] = Some(i);
                *flag = true;
            }
        }
    }

    // Column layout: one column per nonnegative variable, two for a free one.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut next = 0;
    for b in &bound_row {
        if b.is_some() {
            var_cols.push((next, None));
            next += 1;
        } else {
            var_cols.push((next, Some(next + 1)));
            next += 2;
        }
    }
    let general: Vec<usize> = (0..lp.constraints.len()).filter(|&i| !is_bound_row[i]).collect();
    let n_slack = general
        .iter()
        .filter(|&&i| lp.constraints[i].relation != Relation::Eq)
        .count();
    let n_cols = next + n_slack;

    let mut a = Vec::with_capacity(general.len());
    let mut b = Vec::with_capacity(general.len());
    let mut sigma = Vec::with_capacity(general.len());
    let mut slack = next;
    for &i in &general {
        let c = &lp.constraints[i];
        let s = if c.rhs.is_negative() { -1 } else { 1 };
        let sr = rational::int(s);
        let mut row = vec![Rational::zero(); n_cols];
        for (j, v) in c.coeffs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (p, m) = var_cols[j];
            row[p] = v * &sr;
            if let Some(m) = m {
                row[m] = -(v * &sr);
            }
        }
        match c.relation {
            Relation::Le => {
                row[slack] = sr.clone();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -sr.clone();
                slack += 1;
            }
            Relation::Eq => {}
        }
        a.push(row);
        b.push(&c.rhs * &sr);
        sigma.push(sr);
    }

    let cost = lp.objective.as_ref().map(|obj| {
        let flip = match obj.direction {
            Direction::Minimize => rational::one(),
            Direction::Maximize => -rational::one(),
        };
        let mut cost = vec![Rational::zero(); n_cols];
        for (j, v) in obj.coeffs.iter().enumerate() {
            let (p, m) = var_cols[j];
            cost[p] = v * &flip;
            if let Some(m) = m {
                cost[m] = -(v * &flip);
            }
        }
        cost
    });

    let to_x = |z: &[Rational]| -> Vec<Rational> {
        var_cols
            .iter()
            .map(|&(p, m)| match m {
                Some(m) => &z[p] - &z[m],
                None => z[p].clone(),
            })
            .collect()
    };

    // Turns tableau duals into per-constraint multipliers u (u >= 0 on inequalities).
    let to_multipliers = |y: &[Rational]| -> Vec<Rational> {
        let mut w = vec![Rational::zero(); lp.constraints.len()];
        for (r, &i) in general.iter().enumerate() {
            w[i] = -(&y[r] * &sigma[r]);
        }
        let mut g = vec![Rational::zero(); n];
        for &i in &general {
            if w[i].is_zero() {
                continue;
            }
            for (j, v) in lp.constraints[i].coeffs.iter().enumerate() {
                if !v.is_zero() {
                    g[j] += &w[i] * v;
                }
            }
        }
        for (j, br) in bound_row.iter().enumerate() {
            if let Some(i) = *br {
                let coef = &lp.constraints[i].coeffs[j];
                w[i] = -(&g[j] / coef);
            }
        }
        w.into_iter()
            .zip(&lp.constraints)
            .map(|(w, c)| if c.relation == Relation::Ge { -w } else { w })
            .collect()
    };

    let value_of = |x: &[Rational]| lp.objective.as_ref().map(|o| rational::dot(&o.coeffs, x));

    match simplex::solve(Standard { n: n_cols, a, b, cost }) {
        Solution::Infeasible { y } => Detailed {
            outcome: LpOutcome::Infeasible { farkas: to_multipliers(&y) },
            duals: None,
        },
        Solution::Unbounded { z, ray } => Detailed {
            outcome: LpOutcome::Unbounded { point: to_x(&z), ray: to_x(&ray) },
            duals: None,
        },
        Solution::Optimal { z, y } => {
            let point = to_x(&z);
            let value = value_of(&point);
            Detailed {
                outcome: LpOutcome::Feasible { point, value },
                duals: Some(to_multipliers(&y)),
            }
        }
    }
}

/// Decides whether some point satisfies the rows in `strict_rows` strictly and the
/// remaining rows weakly.
///
/// The system is homogenised with a slack `eps` added to every strict row, and
/// `eps` is maximised subject to `eps <= 1`; the strict system is solvable iff the
/// optimum is positive. On success the returned point is the maximiser. On failure
/// the multipliers certify emptiness (see [`verify_strict_infeasibility`]).
/// The objective of `lp`, if any, is ignored.
pub fn solve_strict(lp: &LinearProgram, strict_rows: &[usize]) -> Result<LpOutcome> {
    lp.validate()?;
    let mut strict = vec![false; lp.constraints.len()];
    for &i in strict_rows {
        let c = lp.constraints.get(i).ok_or_else(|| {
            Error::MalformedProgram(format!("strict row {i} out of range"))
        })?;
        if c.relation == Relation::Eq {
            return Err(Error::MalformedProgram(format!("strict row {i} is an equality")));
        }
        strict[i] = true;
    }

    let mut weak = lp.clone();
    weak.objective = None;
    let base = solve_detailed(&weak).outcome;
    if !base.is_feasible() {
        return Ok(base);
    }
    if strict_rows.is_empty() {
        return Ok(base);
    }

    // Strict sign bounds x_j > 0 are handled by substituting x_j = x'_j + eps.
    let n = lp.num_vars;
    let eps = n;
    let mut shifted = vec![false; n];
    let mut shift_row = vec![false; lp.constraints.len()];
    for i in 0..lp.constraints.len() {
        if strict[i] {
            if let Some(j) = lp.sign_bound(i) {
                if !shifted[j] {
                    shifted[j] = true;
                    shift_row[i] = true;
                }
            }
        }
    }

    let mut h = LinearProgram::new(n + 1);
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut coeffs = c.coeffs.clone();
        let mut e = Rational::zero();
        if !shift_row[i] {
            for (j, v) in c.coeffs.iter().enumerate() {
                if shifted[j] {
                    e += v;
                }
            }
            if strict[i] {
                e += rational::int(c.relation.sign());
            }
        }
        coeffs.push(e);
        h.add(coeffs, c.relation, c.rhs.clone());
    }
    let mut cap = vec![Rational::zero(); n + 1];
    cap[eps] = rational::one();
    h.add_le(cap.clone(), rational::one());
    h.maximize(cap);

    let solved = solve_detailed(&h);
    match solved.outcome {
        LpOutcome::Feasible { point, .. } if point[eps].is_positive() => {
            let e = &point[eps];
            let x = (0..n)
                .map(|j| if shifted[j] { &point[j] + e } else { point[j].clone() })
                .collect();
            Ok(LpOutcome::Feasible { point: x, value: None })
        }
        LpOutcome::Feasible { .. } => {
            let mut u = solved.duals.expect("optimal solve reports duals");
            u.truncate(lp.constraints.len());
            Ok(LpOutcome::Infeasible { farkas: u })
        }
        other => Err(Error::Inconsistent(format!(
            "homogenised strict system did not reach an optimum: {other:?}"
        ))),
    }
}
