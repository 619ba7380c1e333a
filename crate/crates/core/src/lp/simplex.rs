//! Dense two-phase primal simplex over exact rationals.
//!
//! The tableau keeps one artificial column per row for its whole lifetime so that
//! the columns of `B^-1` (and with them the dual values) can be read off directly.
//! Pivoting follows Bland's rule, so the method terminates on degenerate input.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub(crate) struct Standard {
    /// Number of structural columns.
    pub n: usize,
    /// Row-major `m x n` matrix over structural (incl. slack) columns.
    pub a: Vec<Vec<Rational>>,
    /// Right-hand side, all entries nonnegative.
    pub b: Vec<Rational>,
    /// Phase-two costs (minimisation) over the structural columns; `None` for pure feasibility.
    pub cost: Option<Vec<Rational>>,
}

pub(crate) enum Solution {
    /// `y` is an optimal dual of the phase-one problem with `b . y > 0`, `A^T y <= 0`.
    Infeasible { y: Vec<Rational> },
    /// A feasible basic solution and an improving direction.
    Unbounded { z: Vec<Rational>, ray: Vec<Rational> },
    /// Optimal primal `z` and dual `y` with `A^T y <= c` and `b . y = c . z`.
    Optimal { z: Vec<Rational>, y: Vec<Rational> },
}

struct CostRow {
    reduced: Vec<Rational>,
    neg_value: Rational,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    n_structural: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, costs: &mut [&mut CostRow]) {
        let p = self.rows[r][c].clone();
        if p != Rational::from_integer(1.into()) {
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v /= &p;
            }
            self.rhs[r] /= &p;
        }
        let support: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        for cost in costs.iter_mut() {
            if cost.reduced[c].is_zero() {
                continue;
            }
            let f = cost.reduced[c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                cost.reduced[j] -= delta;
            }
            cost.neg_value -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Bland: lowest-index improving column.
    fn entering(&self, cost: &CostRow) -> Option<usize> {
        (0..self.n_structural).find(|&j| cost.reduced[j].is_negative())
    }

    /// Minimum ratio, ties broken by the lowest basic variable index.
    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn primal(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.n_structural];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n_structural {
                z[j] = self.rhs[i].clone();
            }
        }
        z
    }
}

pub(crate) fn solve(problem: Standard) -> Solution {
    let m = problem.a.len();
    let n = problem.n;
    let width = n + m;

    let mut rows = Vec::with_capacity(m);
    for (i, mut row) in problem.a.into_iter().enumerate() {
        row.resize(width, Rational::zero());
        row[n + i] = Rational::from_integer(1.into());
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        rhs: problem.b,
        basis: (n..n + m).collect(),
        n_structural: n,
    };

    let mut phase1 = CostRow {
        reduced: vec![Rational::zero(); width],
        neg_value: Rational::zero(),
    };
    for j in 0..n {
        let s: Rational = t.rows.iter().map(|r| &r[j]).fold(Rational::zero(), |acc, v| acc + v);
        phase1.reduced[j] = -s;
    }
    phase1.neg_value = -t.rhs.iter().fold(Rational::zero(), |acc, v| acc + v);

    let mut phase2 = CostRow {
        reduced: vec![Rational::zero(); width],
        neg_value: Rational::zero(),
    };
    if let Some(c) = &problem.cost {
        phase2.reduced[..n].clone_from_slice(c);
    }

    while let Some(c) = t.entering(&phase1) {
        let r = t.leaving(c).expect("phase one is bounded below by zero");
        t.pivot(r, c, &mut [&mut phase1, &mut phase2]);
    }

    if phase1.neg_value.is_negative() {
        let y = (0..m)
            .map(|i| Rational::from_integer(1.into()) - &phase1.reduced[n + i])
            .collect();
        return Solution::Infeasible { y };
    }

    // Drive zero-level artificials out of the basis where a structural pivot exists.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
            t.pivot(r, c, &mut [&mut phase2]);
        }
    }

    if problem.cost.is_some() {
        while let Some(c) = t.entering(&phase2) {
            match t.leaving(c) {
                Some(r) => t.pivot(r, c, &mut [&mut phase2]),
                None => {
                    let mut ray = vec![Rational::zero(); n];
                    ray[c] = Rational::from_integer(1.into());
                    for (i, &j) in t.basis.iter().enumerate() {
                        if j < n {
                            ray[j] = -t.rows[i][c].clone();
                        }
                    }
                    return Solution::Unbounded { z: t.primal(), ray };
                }
            }
        }
    }

    let y = (0..m).map(|i| -phase2.reduced[n + i].clone()).collect();
    Solution::Optimal { z: t.primal(), y }
}
