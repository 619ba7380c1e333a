//! Measurements on polytopal state spaces and minimum-error discrimination.
//!
//! A measurement with `k + 1` outcomes is an affine map from the state space into
//! the standard simplex; every such map is admitted.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::antipodality::MapVars;
use crate::error::{Error, Result};
use crate::geometry::{member, AffineMap, Point, PointSet, Polytope};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    polytope: Polytope,
}

impl StateSpace {
    pub fn new(vertices: PointSet) -> Self {
        StateSpace { polytope: Polytope::new(vertices) }
    }

    /// The classical state space: probability vectors on `n + 1` outcomes.
    pub fn classical(n: usize) -> Self {
        let vs = (0..=n)
            .map(|i| Point::new((0..=n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()))
            .collect();
        StateSpace::new(PointSet::new(vs).expect("unit vectors are distinct"))
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn contains(&self, s: &Point) -> Result<bool> {
        Ok(member(&self.polytope, s, false)?.is_inside())
    }

    fn check_states(&self, states: &[Point]) -> Result<()> {
        for (j, s) in states.iter().enumerate() {
            if !self.contains(s)? {
                return Err(Error::InvalidInput(format!("state {j} lies outside the state space")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Measurement {
    map: AffineMap,
}

impl Measurement {
    pub fn new(space: &StateSpace, map: AffineMap) -> Result<Self> {
        if map.in_dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: map.in_dim() });
        }
        if !map.maps_into_simplex(space.polytope.vertices().points())? {
            return Err(Error::InvalidInput("map sends a state outside the simplex".into()));
        }
        Ok(Measurement { map })
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn k(&self) -> usize {
        self.map.out_rank()
    }
}

/// `sum_j (1 - M_j(s_j))`.
pub fn error_prob(space: &StateSpace, m: &Measurement, states: &[Point]) -> Result<Rational> {
    if states.len() != m.k() + 1 {
        return Err(Error::InvalidInput(format!("expected {} states, got {}", m.k() + 1, states.len())));
    }
    space.check_states(states)?;
    let mut total = Rational::zero();
    for (j, s) in states.iter().enumerate() {
        total += Rational::one() - &m.map.apply(s)?[j];
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrimination {
    #[serde(with = "rational::serde_str")]
    pub min_error: Rational,
    pub measurement: Measurement,
}

/// Smallest error probability over all measurements, with an optimal one.
pub fn min_error(space: &StateSpace, states: &[Point]) -> Result<Discrimination> {
    if states.len() < 2 {
        return Err(Error::InvalidInput("need at least two states".into()));
    }
    space.check_states(states)?;
    let vars = MapVars { k: states.len() - 1, d: space.dim() };
    let mut lp = LinearProgram::new(vars.num_vars());
    for v in space.polytope.vertices().points() {
        vars.require_in_simplex(&mut lp, v);
    }
    let mut objective = vec![Rational::zero(); vars.num_vars()];
    for (j, s) in states.iter().enumerate() {
        for (o, c) in objective.iter_mut().zip(vars.output(j, s)) {
            *o += c;
        }
    }
    lp.maximize(objective);
    let LpOutcome::Feasible { point, value: Some(best) } = lp::solve(&lp)? else {
        return Err(Error::Inconsistent("discrimination program has no optimum".into()));
    };
    let measurement = Measurement::new(space, vars.extract(&point))?;
    let min_error = rational::int(states.len() as i64) - best;
    debug_assert_eq!(error_prob(space, &measurement, states)?, min_error);
    Ok(Discrimination { min_error, measurement })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubadditivityReport {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    /// Smallest value of `sum_{j<l} P(s_j, s_l) - P(s_1, ..., s_{k+1})`.
    #[serde(with = "rational::serde_str::option")]
    pub worst_slack: Option<Rational>,
    pub worst_trial: Option<usize>,
}

impl SubadditivityReport {
    pub fn holds(&self) -> bool {
        self.passed == self.trials
    }
}

/// A point of the classical simplex with small random integer weights.
pub fn random_classical_state(n: usize, rng: &mut impl Rng) -> Point {
    loop {
        let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..=6)).collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            return Point::new(w.iter().map(|&x| rational::ratio(x, total)).collect());
        }
    }
}

/// On the classical state space `Delta_n`, checks that the minimum error for
/// `k + 1` random states never exceeds the sum of the pairwise minimum errors.
/// Trial `t` draws its states from a generator seeded with `seed + t`.
pub fn classical_subadditivity_check(n: usize, k: usize, trials: usize, seed: u64) -> Result<SubadditivityReport> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("need n >= 1 and k >= 1".into()));
    }
    let space = StateSpace::classical(n);
    let slacks = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let states: Vec<Point> = (0..=k).map(|_| random_classical_state(n, &mut rng)).collect();
            let joint = min_error(&space, &states)?.min_error;
            let mut pairs = Rational::zero();
            for j in 0..=k {
                for l in j + 1..=k {
                    pairs += min_error(&space, &[states[j].clone(), states[l].clone()])?.min_error;
                }
            }
            Ok(pairs - joint)
        })
        .collect::<Result<Vec<Rational>>>()?;
    let worst = slacks.iter().enumerate().min_by(|a, b| a.1.cmp(b.1));
    Ok(SubadditivityReport {
        n,
        k,
        trials,
        seed,
        passed: slacks.iter().filter(|s| **s >= Rational::zero()).count(),
        worst_slack: worst.map(|(_, s)| s.clone()),
        worst_trial: worst.map(|(t, _)| t),
    })
}
