//! Perfect `(b, k)`-hash codes.
//!
//! A code is perfect of order `k` when any `k` of its words have some coordinate
//! where their letters are pairwise distinct. Order 2 (any two distinct words
//! differ somewhere) is admitted alongside the usual `k >= 3`.

mod build;
mod search;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use build::{greedy_code, random_code, random_code_size, ScanOrder};
pub use search::{max_code, MaxCode, DEFAULT_BUDGET, MAX_WORD_SPACE};

/// Letters are `1..=b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// The `index`-th word of length `m` in lexicographic order.
    pub fn from_index(mut index: u64, b: u32, m: usize) -> Word {
        let mut letters = vec![0; m];
        for slot in letters.iter_mut().rev() {
            *slot = (index % b as u64) as u32 + 1;
            index /= b as u64;
        }
        Word(letters)
    }

    pub fn agreement(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCode")]
pub struct HashCode {
    b: u32,
    k: usize,
    m: usize,
    words: Vec<Word>,
}

#[derive(Deserialize)]
struct RawCode {
    b: u32,
    k: usize,
    m: usize,
    words: Vec<Word>,
}

impl TryFrom<RawCode> for HashCode {
    type Error = Error;

    fn try_from(r: RawCode) -> Result<Self> {
        HashCode::new(r.b, r.k, r.m, r.words)
    }
}

pub(crate) fn check_params(b: u32, k: usize) -> Result<()> {
    if k < 2 || k as u64 > b as u64 {
        return Err(Error::InvalidInput(format!("order k = {k} must satisfy 2 <= k <= b = {b}")));
    }
    Ok(())
}

impl HashCode {
    pub fn new(b: u32, k: usize, m: usize, words: Vec<Word>) -> Result<Self> {
        check_params(b, k)?;
        for (i, w) in words.iter().enumerate() {
            if w.len() != m {
                return Err(Error::InvalidInput(format!("word {i} has length {}, expected {m}", w.len())));
            }
            if let Some(l) = w.0.iter().find(|&&l| l == 0 || l > b) {
                return Err(Error::InvalidInput(format!("word {i} has letter {l} outside 1..={b}")));
            }
            if words[..i].contains(w) {
                return Err(Error::InvalidInput(format!("word {i} is repeated")));
            }
        }
        Ok(HashCode { b, k, m, words })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Applies `perm` (a permutation of `1..=b`, given as `perm[l - 1]`) to the
    /// letters of coordinate `coord`.
    pub fn relabel(&self, coord: usize, perm: &[u32]) -> Result<HashCode> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if coord >= self.m || sorted != (1..=self.b).collect::<Vec<_>>() {
            return Err(Error::InvalidInput("not a relabeling of the alphabet".into()));
        }
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.0[coord] = perm[w.0[coord] as usize - 1];
                w
            })
            .collect();
        HashCode::new(self.b, self.k, self.m, words)
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<HashCode> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.m).collect::<Vec<_>>() {
            return Err(Error::InvalidInput("not a permutation of the coordinates".into()));
        }
        let words = self.words.iter().map(|w| Word(perm.iter().map(|&p| w.0[p]).collect())).collect();
        HashCode::new(self.b, self.k, self.m, words)
    }
}

/// Searches for `need` more words from `pool[start..]` which, together with
/// `fixed`, form a set with no coordinate where all letters are distinct.
/// Returns positions in `pool`, lexicographically first.
pub(crate) fn find_unseparated(pool: &[&Word], start: usize, fixed: &[&Word], need: usize) -> Option<Vec<usize>> {
    let m = fixed.first().or(pool.first()).map_or(0, |w| w.len());
    let mut alive = vec![true; m];
    for (i, w) in fixed.iter().enumerate() {
        for (j, a) in alive.iter_mut().enumerate() {
            *a = *a && fixed[..i].iter().all(|v| v.0[j] != w.0[j]);
        }
    }
    let mut chosen: Vec<&Word> = fixed.to_vec();
    let mut picked = Vec::with_capacity(need);
    descend(pool, start, &mut chosen, &mut picked, need, &alive).then_some(picked)
}

fn descend<'a>(
    pool: &[&'a Word],
    start: usize,
    chosen: &mut Vec<&'a Word>,
    picked: &mut Vec<usize>,
    need: usize,
    alive: &[bool],
) -> bool {
    if !alive.iter().any(|&a| a) {
        // Already unseparated: any completion will do.
        if pool.len() - start >= need {
            picked.extend(start..start + need);
            return true;
        }
        return false;
    }
    if need == 0 {
        return false;
    }
    for i in start..pool.len() {
        if pool.len() - i < need {
            break;
        }
        let w = pool[i];
        let next: Vec<bool> = alive
            .iter()
            .enumerate()
            .map(|(j, &a)| a && chosen.iter().all(|v| v.0[j] != w.0[j]))
            .collect();
        chosen.push(w);
        picked.push(i);
        if descend(pool, i + 1, chosen, picked, need - 1, &next) {
            return true;
        }
        chosen.pop();
        picked.pop();
    }
    false
}

/// Whether `word` can join `code` without breaking perfection of order `k`.
pub(crate) fn compatible(code: &[&Word], word: &Word, k: usize) -> bool {
    code.len() < k - 1 || find_unseparated(code, 0, &[word], k - 1).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectVerdict {
    pub perfect: bool,
    /// Indices of `k` words with no separating coordinate (lexicographically first).
    pub violation: Option<Vec<usize>>,
}

pub fn is_perfect(code: &HashCode) -> PerfectVerdict {
    let k = code.k;
    let pool: Vec<&Word> = code.words.iter().collect();
    let n = pool.len();
    let violation = if n < k {
        None
    } else {
        (0..=n - k).into_par_iter().find_map_first(|first| {
            find_unseparated(&pool, first + 1, &[pool[first]], k - 1).map(|rest| {
                let mut v = vec![first];
                v.extend(rest);
                v
            })
        })
    };
    PerfectVerdict { perfect: violation.is_none(), violation }
}

/// Upper bound `(k - 1) (b / (k - 1))^m` on the size of a perfect code of order `k`.
pub fn counting_bound(b: u32, k: usize, m: usize) -> Result<Rational> {
    check_params(b, k)?;
    let km1 = rational::int(k as i64 - 1);
    let ratio = rational::int(b as i64) / &km1;
    Ok(km1 * rational::pow(&ratio, m as u32))
}

/// Largest integer not exceeding the counting bound.
pub fn counting_cap(b: u32, k: usize, m: usize) -> Result<u128> {
    let bound = counting_bound(b, k, m)?;
    rational::floor_to_u128(&bound).ok_or_else(|| Error::InvalidInput("counting bound overflows".into()))
}

/// Estimates for the asymptotic rate `limsup (1/m) log N(b, k, m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateBounds {
    pub b: u32,
    pub k: usize,
    /// Exponent of the deletion construction, `-log(1 - g) / (k - 1)` with
    /// `g = b (b - 1) ... (b - k + 1) / b^k`.
    pub lower: f64,
    /// `log(b / (k - 1))`.
    pub upper: f64,
    /// `b / (k - 1)`, the exact argument of the upper logarithm.
    #[serde(with = "rational::serde_str")]
    pub upper_base: Rational,
    /// `1 - g`, the exact probability that `k` random words are not separated
    /// in a given coordinate.
    #[serde(with = "rational::serde_str")]
    pub collision: Rational,
}

pub fn rate_bounds(b: u32, k: usize) -> Result<RateBounds> {
    check_params(b, k)?;
    let falling = (0..k as i64).fold(Rational::one(), |acc, i| acc * rational::int(b as i64 - i));
    let g = falling / rational::pow(&rational::int(b as i64), k as u32);
    let collision = Rational::one() - g;
    let upper_base = rational::ratio(b as i64, k as i64 - 1);
    Ok(RateBounds {
        b,
        k,
        lower: -rational::to_f64(&collision).ln() / (k as f64 - 1.0),
        upper: rational::to_f64(&upper_base).ln(),
        upper_base,
        collision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn code(b: u32, k: usize, words: &[&[u32]]) -> HashCode {
        let m = words.first().map_or(0, |w| w.len());
        HashCode::new(b, k, m, words.iter().map(|w| Word(w.to_vec())).collect()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(is_perfect(&code(3, 3, &[&[1], &[2], &[3]])).perfect);
        let v = is_perfect(&code(3, 3, &[&[1, 1], &[2, 2], &[1, 2]]));
        assert_eq!(v.violation, Some(vec![0, 1, 2]));
        assert!(is_perfect(&code(3, 3, &[&[1, 1], &[2, 2]])).perfect);
    }

    #[test]
    fn first_violation_is_lexicographic() {
        let c = code(3, 3, &[&[1, 1], &[2, 1], &[3, 2], &[1, 3], &[2, 3]]);
        // (0,1,2) separated by the first coordinate; (0,1,3) is not separated.
        assert_eq!(is_perfect(&c).violation, Some(vec![0, 1, 3]));
    }

    #[test]
    fn validation() {
        assert!(HashCode::new(3, 4, 1, vec![]).is_err());
        assert!(HashCode::new(3, 1, 1, vec![]).is_err());
        assert!(HashCode::new(3, 3, 1, vec![Word(vec![4])]).is_err());
        assert!(HashCode::new(3, 3, 1, vec![Word(vec![0])]).is_err());
        assert!(HashCode::new(3, 3, 2, vec![Word(vec![1])]).is_err());
        assert!(HashCode::new(3, 3, 1, vec![Word(vec![1]), Word(vec![1])]).is_err());
    }

    #[test]
    fn word_indexing() {
        assert_eq!(Word::from_index(0, 3, 2), Word(vec![1, 1]));
        assert_eq!(Word::from_index(5, 3, 2), Word(vec![2, 3]));
        assert_eq!(Word::from_index(8, 3, 2), Word(vec![3, 3]));
    }

    #[test]
    fn counting_bound_values() {
        assert_eq!(counting_bound(3, 3, 2).unwrap(), ratio(9, 2));
        assert_eq!(counting_cap(3, 3, 2).unwrap(), 4);
        assert_eq!(counting_bound(2, 2, 3).unwrap(), ratio(8, 1));
        assert_eq!(counting_bound(5, 3, 0).unwrap(), ratio(2, 1));
    }

    #[test]
    fn rates() {
        let r = rate_bounds(2, 2).unwrap();
        assert!((r.lower - 2f64.ln()).abs() < 1e-12);
        assert!((r.upper - 2f64.ln()).abs() < 1e-12);
        let r = rate_bounds(3, 3).unwrap();
        assert_eq!(r.upper_base, ratio(3, 2));
        assert_eq!(r.collision, ratio(7, 9));
        for b in 2..8 {
            for k in 2..=b as usize {
                let r = rate_bounds(b, k).unwrap();
                assert!(r.lower <= r.upper + 1e-12, "b={b} k={k}");
            }
        }
    }

    #[test]
    fn symmetries_preserve_perfection() {
        let c = code(3, 3, &[&[1, 1], &[2, 2], &[3, 3], &[1, 2]]);
        let p = is_perfect(&c).perfect;
        assert_eq!(is_perfect(&c.relabel(1, &[3, 1, 2]).unwrap()).perfect, p);
        assert_eq!(is_perfect(&c.permute_coordinates(&[1, 0]).unwrap()).perfect, p);
    }
}
