//! Greedy and randomized constructions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_params, compatible, rate_bounds, HashCode, Word};
use crate::error::{Error, Result};
use crate::rational;

/// Most words the random construction will sample.
const MAX_SAMPLES: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanOrder {
    Lexicographic,
    Shuffled { seed: u64 },
}

fn keep_compatible(b: u32, k: usize, m: usize, scan: impl IntoIterator<Item = Word>) -> Result<HashCode> {
    let mut kept: Vec<Word> = Vec::new();
    for w in scan {
        if kept.contains(&w) {
            continue;
        }
        let refs: Vec<&Word> = kept.iter().collect();
        if compatible(&refs, &w, k) {
            kept.push(w);
        }
    }
    HashCode::new(b, k, m, kept)
}

/// Keeps each word of `[b]^m`, in the given order, unless it would break perfection.
pub fn greedy_code(b: u32, k: usize, m: usize, order: ScanOrder) -> Result<HashCode> {
    check_params(b, k)?;
    let space = (b as u64)
        .checked_pow(m as u32)
        .filter(|&s| s <= super::MAX_WORD_SPACE)
        .ok_or_else(|| Error::Precondition(format!("{b}^{m} words exceed the scan limit")))?;
    let mut words: Vec<Word> = (0..space).map(|i| Word::from_index(i, b, m)).collect();
    if let ScanOrder::Shuffled { seed } = order {
        words.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    keep_compatible(b, k, m, words)
}

/// Sample size `M` maximizing `M - C(M, k) p^m`, the expected number of words
/// left after deleting one word from every unseparated `k`-subset of `M`
/// independent uniform words (`p` is the chance that one coordinate fails to
/// separate `k` random words). Capped at `b^m` and at an internal limit.
pub fn random_code_size(b: u32, k: usize, m: usize) -> Result<usize> {
    let p = rational::to_f64(&rate_bounds(b, k)?.collision).powi(m as i32);
    let space = (b as f64).powi(m as i32);
    let expected = |n: usize| {
        let c = (0..k).fold(1.0, |acc, i| acc * (n as f64 - i as f64) / (i as f64 + 1.0));
        n as f64 - c.max(0.0) * p
    };
    let mut n = k;
    while n < MAX_SAMPLES && ((n + 1) as f64) <= space && expected(n + 1) >= expected(n) {
        n += 1;
    }
    Ok(n.min(space as usize).max(1))
}

/// Samples [`random_code_size`] words with a seeded ChaCha generator and drops,
/// in sampling order, every word that would complete an unseparated
/// `k`-subset (repeated samples are dropped too).
pub fn random_code(b: u32, k: usize, m: usize, seed: u64) -> Result<HashCode> {
    let n = random_code_size(b, k, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Word> = (0..n).map(|_| Word((0..m).map(|_| rng.gen_range(1..=b)).collect())).collect();
    keep_compatible(b, k, m, samples)
}

#[cfg(test)]
mod tests {
    use super::super::is_perfect;
    use super::*;

    #[test]
    fn greedy_examples() {
        for m in 1..5 {
            assert_eq!(greedy_code(2, 2, m, ScanOrder::Lexicographic).unwrap().len(), 1 << m);
        }
        let c = greedy_code(3, 3, 1, ScanOrder::Lexicographic).unwrap();
        assert_eq!(c.words(), &[Word(vec![1]), Word(vec![2]), Word(vec![3])]);
        let c = greedy_code(3, 3, 3, ScanOrder::Shuffled { seed: 7 }).unwrap();
        assert!(is_perfect(&c).perfect);
    }

    #[test]
    fn random_is_deterministic_and_perfect() {
        let a = random_code(4, 3, 5, 11).unwrap();
        let b = random_code(4, 3, 5, 11).unwrap();
        assert_eq!(a, b);
        assert!(is_perfect(&a).perfect);
    }

    #[test]
    fn sample_size_for_binary() {
        // M - M(M-1)/2^(m+1) peaks near 2^m.
        for m in 1..8 {
            let n = random_code_size(2, 2, m).unwrap();
            assert!(n <= 1 << m && n + 1 >= 1 << m, "m = {m}, n = {n}");
        }
    }
}
