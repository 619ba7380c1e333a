//! Exact maximum perfect codes by branch and bound.

use serde::Serialize;

use super::{check_params, compatible, counting_cap, find_unseparated, is_perfect, HashCode, Word};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Largest `b^m` the search will enumerate.
pub const MAX_WORD_SPACE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MaxCode {
    /// `code` has the maximum size `N(b, k, m)`.
    Exact { size: usize, code: HashCode, nodes: u64 },
    /// The node budget ran out; `best` is the largest code seen, and the maximum
    /// is unknown.
    BudgetExceeded { best: HashCode, nodes: u64, budget: u64 },
}

impl MaxCode {
    pub fn code(&self) -> &HashCode {
        match self {
            MaxCode::Exact { code, .. } => code,
            MaxCode::BudgetExceeded { best, .. } => best,
        }
    }

    pub fn exact_size(&self) -> Option<usize> {
        match self {
            MaxCode::Exact { size, .. } => Some(*size),
            MaxCode::BudgetExceeded { .. } => None,
        }
    }
}

struct Search {
    k: usize,
    cap: usize,
    budget: u64,
    nodes: u64,
    best: Vec<Word>,
    exhausted: bool,
    /// Every pair in the code agrees in at most this many coordinates.
    max_agreement: usize,
}

impl Search {
    fn run(&mut self, code: &mut Vec<Word>, cands: Vec<Word>) {
        if self.exhausted || self.best.len() >= self.cap {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if code.len() > self.best.len() {
            self.best = code.clone();
        }
        for (i, w) in cands.iter().enumerate() {
            if code.len() + cands.len() - i <= self.best.len() {
                return;
            }
            code.push(w.clone());
            let refs: Vec<&Word> = code.iter().collect();
            let next: Vec<Word> = cands[i + 1..]
                .iter()
                .filter(|c| c.agreement(w) <= self.max_agreement)
                .filter(|c| self.k == 2 || find_unseparated(&refs[..refs.len() - 1], 0, &[w, c], self.k - 2).is_none())
                .cloned()
                .collect();
            self.run(code, next);
            code.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// Finds `N(b, k, m)` together with a code attaining it.
///
/// Up to relabeling letters in each coordinate and permuting coordinates, a
/// code with two or more words contains `1^m` and `1^a 2^(m-a)`, where `a` is
/// the largest agreement between two of its words. Each `a` is searched in
/// turn, from `m - 1` down, with every other pair restricted to agree in at
/// most `a` places. The search stops early once the counting bound is met.
/// `budget` caps the number of search nodes.
pub fn max_code(b: u32, k: usize, m: usize, budget: u64) -> Result<MaxCode> {
    check_params(b, k)?;
    let space = (b as u64).checked_pow(m as u32).filter(|&s| s <= MAX_WORD_SPACE).ok_or_else(|| {
        Error::Precondition(format!("{b}^{m} words exceed the search limit of {MAX_WORD_SPACE}"))
    })?;
    let cap = usize::try_from(counting_cap(b, k, m)?).unwrap_or(usize::MAX);
    let all: Vec<Word> = (0..space).map(|i| Word::from_index(i, b, m)).collect();
    let mut s = Search { k, cap, budget, nodes: 0, best: vec![all[0].clone()], exhausted: false, max_agreement: m };

    let first = all[0].clone();
    for a in (0..m).rev() {
        if s.exhausted || s.best.len() >= s.cap {
            break;
        }
        let second = Word((0..m).map(|j| if j < a { 1 } else { 2 }).collect());
        s.max_agreement = a;
        let base = [&first, &second];
        let cands: Vec<Word> = all
            .iter()
            .filter(|c| **c != first && **c != second)
            .filter(|c| c.agreement(&first) <= a && c.agreement(&second) <= a)
            .filter(|c| compatible(&base, c, k))
            .cloned()
            .collect();
        s.run(&mut vec![first.clone(), second.clone()], cands);
    }

    let mut words = s.best;
    words.sort();
    let code = HashCode::new(b, k, m, words)?;
    if !is_perfect(&code).perfect {
        return Err(Error::Inconsistent("search produced a code that is not perfect".into()));
    }
    Ok(if s.exhausted {
        MaxCode::BudgetExceeded { best: code, nodes: s.nodes, budget }
    } else {
        MaxCode::Exact { size: code.len(), code, nodes: s.nodes }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(b: u32, k: usize, m: usize) -> usize {
        max_code(b, k, m, DEFAULT_BUDGET).unwrap().exact_size().unwrap()
    }

    #[test]
    fn single_coordinate() {
        for b in 2..6 {
            for k in 2..=b as usize {
                assert_eq!(size(b, k, 1), b as usize);
            }
        }
    }

    #[test]
    fn binary_order_two() {
        for m in 1..6 {
            assert_eq!(size(2, 2, m), 1 << m);
        }
    }

    #[test]
    fn small_ternary() {
        assert_eq!(size(3, 3, 2), 4);
    }

    #[test]
    fn budget_is_reported() {
        let r = max_code(3, 3, 4, 5).unwrap();
        assert!(matches!(r, MaxCode::BudgetExceeded { .. }));
        assert!(is_perfect(r.code()).perfect);
    }

    #[test]
    fn search_limit() {
        assert!(matches!(max_code(4, 3, 20, 10), Err(Error::Precondition(_))));
    }
}
