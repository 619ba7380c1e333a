//! Product constructions of rank-k antipodal sets from perfect hash codes, the
//! size bound `k ((k+1)/k)^d`, and the gap between the two.

mod bounds;

use rayon::prelude::*;

use crate::antipodality::{
    is_rank_k_antipodal, joint_antipodal_direct, AntipodalityCertificate, JointQuery, Mode, RankFailure, RankVerdict,
};
use crate::combinatorics::{binomial, sampled_subsets, subsets};
use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Point, PointSet};
use crate::hashcodes::{is_perfect, HashCode};

pub use bounds::{gap_analysis, theorem1_bound, volume_inequality_check, GapReport, VolumeReport};

/// A rank-`k` antipodal set `X0` of `b` points in dimension `d0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartingConfig {
    points: PointSet,
    k: usize,
    verified: bool,
}

impl StartingConfig {
    /// Verifies rank-`k` antipodality exhaustively.
    pub fn new(points: PointSet, k: usize) -> Result<Self> {
        let verdict = is_rank_k_antipodal(&points, k, Mode::Exhaustive)?;
        if !verdict.holds {
            let subset = verdict.failure.map(|f| f.subset).unwrap_or_default();
            return Err(Error::Precondition(format!("starting set is not rank-{k} antipodal: subset {subset:?} fails")));
        }
        Ok(StartingConfig { points, k, verified: true })
    }

    /// Skips verification.
    pub fn trusted(points: PointSet, k: usize) -> Self {
        StartingConfig { points, k, verified: false }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.points.len()
    }

    pub fn d0(&self) -> usize {
        self.points.dim()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// Point `w` is `(X0[w_1], ..., X0[w_m])` for each code word `w`.
#[derive(Debug, Clone)]
pub struct ProductSet {
    base: StartingConfig,
    code: HashCode,
    result: PointSet,
}

pub fn product_construct(base: StartingConfig, code: HashCode) -> Result<ProductSet> {
    if code.b() as usize != base.b() {
        return Err(Error::InvalidInput(format!("code alphabet {} differs from |X0| = {}", code.b(), base.b())));
    }
    if code.k() != base.k() + 1 {
        return Err(Error::InvalidInput(format!(
            "a rank-{} base needs a code of order {}, got {}",
            base.k(),
            base.k() + 1,
            code.k()
        )));
    }
    if code.is_empty() || code.m() == 0 {
        return Err(Error::InvalidInput("code has no words or zero length".into()));
    }
    let pts = base.points().points();
    let result = code
        .words()
        .iter()
        .map(|w| Point::new(w.letters().iter().flat_map(|&l| pts[l as usize - 1].coords().to_vec()).collect()))
        .collect();
    let result = PointSet::new(result)?;
    Ok(ProductSet { base, code, result })
}

impl ProductSet {
    pub fn base(&self) -> &StartingConfig {
        &self.base
    }

    pub fn code(&self) -> &HashCode {
        &self.code
    }

    pub fn points(&self) -> &PointSet {
        &self.result
    }

    pub fn into_points(self) -> PointSet {
        self.result
    }

    /// First coordinate where the words of `subset` carry pairwise distinct letters.
    pub fn separating_coordinate(&self, subset: &[usize]) -> Option<usize> {
        let words = self.code.words();
        (0..self.code.m()).find(|&j| {
            let mut seen: Vec<u32> = subset.iter().map(|&i| words[i].letters()[j]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|p| p[0] != p[1])
        })
    }

    /// Projection onto the block of a separating coordinate, followed by the
    /// base set's certificate map for the corresponding letters.
    pub fn projection_certificate(&self, subset: &[usize]) -> Result<Option<AffineMap>> {
        let Some(j) = self.separating_coordinate(subset) else {
            return Ok(None);
        };
        let letters: Vec<usize> = subset.iter().map(|&i| self.code.words()[i].letters()[j] as usize - 1).collect();
        let base_q = JointQuery::new(self.base.points(), letters)?;
        let AntipodalityCertificate::Antipodal { map } = joint_antipodal_direct(&base_q)? else {
            return Ok(None);
        };
        let lifted = map.on_block(j, self.code.m());
        let q = JointQuery::new(&self.result, subset.to_vec())?;
        crate::antipodality::AntipodalityCertificate::Antipodal { map: lifted.clone() }.verify(&q)?;
        Ok(Some(lifted))
    }

    /// Rank-`k` verification through projection certificates; a subset without
    /// one is handed to the generic LP, which supplies the failure certificate.
    pub fn verify(&self, mode: Mode) -> Result<RankVerdict> {
        let k = self.base.k();
        let n = self.result.len();
        if n < k + 1 {
            return Err(Error::InvalidInput(format!("need at least {} points, got {n}", k + 1)));
        }
        let (candidates, sampled) = match mode {
            Mode::Exhaustive => (subsets(n, k + 1), false),
            Mode::Sampled { samples, seed } => (sampled_subsets(n, k + 1, samples, seed), true),
        };
        let failure = candidates
            .par_iter()
            .enumerate()
            .find_map_first(|(pos, s)| match self.projection_certificate(s) {
                Ok(Some(_)) => None,
                Ok(None) => {
                    let run = || -> Result<Option<(usize, RankFailure)>> {
                        let q = JointQuery::new(&self.result, s.clone())?;
                        let certificate = joint_antipodal_direct(&q)?;
                        Ok((!certificate.is_antipodal()).then(|| (pos, RankFailure { subset: s.clone(), certificate })))
                    };
                    run().transpose()
                }
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        Ok(RankVerdict {
            holds: failure.is_none(),
            k,
            points: n,
            subsets_total: binomial(n, k + 1),
            subsets_checked: failure.as_ref().map_or(candidates.len(), |(p, _)| p + 1),
            sampled,
            failure: failure.map(|(_, f)| f),
        })
    }

    /// Whether the code is perfect, which the construction relies on.
    pub fn code_is_perfect(&self) -> bool {
        is_perfect(&self.code).perfect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashcodes::{max_code, Word, DEFAULT_BUDGET};

    fn full_code(b: u32, k: usize, m: usize) -> HashCode {
        let n = (b as u64).pow(m as u32);
        HashCode::new(b, k, m, (0..n).map(|i| Word::from_index(i, b, m)).collect()).unwrap()
    }

    #[test]
    fn cube_from_segment() {
        let seg = StartingConfig::new(PointSet::from_ints(&[&[0], &[1]]).unwrap(), 1).unwrap();
        for m in 1..=3 {
            let ps = product_construct(seg.clone(), full_code(2, 2, m)).unwrap();
            assert_eq!(ps.points().len(), 1 << m);
            assert!(ps.verify(Mode::Exhaustive).unwrap().holds);
            assert!(is_rank_k_antipodal(ps.points(), 1, Mode::Exhaustive).unwrap().holds);
        }
    }

    #[test]
    fn single_letter_code_is_identity() {
        let tri = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let base = StartingConfig::new(tri.clone(), 2).unwrap();
        let ps = product_construct(base, full_code(3, 3, 1)).unwrap();
        assert_eq!(ps.points(), &tri);
    }

    #[test]
    fn triangle_product_is_rank_two() {
        let tri = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let base = StartingConfig::new(tri, 2).unwrap();
        let code = max_code(3, 3, 2, DEFAULT_BUDGET).unwrap().code().clone();
        let ps = product_construct(base, code).unwrap();
        assert_eq!(ps.points().len(), 4);
        assert_eq!(ps.points().dim(), 4);
        assert!(ps.verify(Mode::Exhaustive).unwrap().holds);
        assert!(is_rank_k_antipodal(ps.points(), 2, Mode::Exhaustive).unwrap().holds);
    }

    #[test]
    fn imperfect_code_fails() {
        let tri = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let base = StartingConfig::new(tri, 2).unwrap();
        // Only letters 1 and 2 are used, so the product is a square.
        let words = [[1, 1], [2, 2], [1, 2], [2, 1]].map(|w| Word(w.to_vec())).to_vec();
        let code = HashCode::new(3, 3, 2, words).unwrap();
        let ps = product_construct(base, code).unwrap();
        assert!(!ps.code_is_perfect());
        let v = ps.verify(Mode::Exhaustive).unwrap();
        assert!(!v.holds);
        let f = v.failure.unwrap();
        assert_eq!(f.subset, vec![0, 1, 2]);
        assert!(!f.certificate.is_antipodal());
    }

    #[test]
    fn mismatches() {
        let seg = StartingConfig::new(PointSet::from_ints(&[&[0], &[1]]).unwrap(), 1).unwrap();
        assert!(product_construct(seg.clone(), full_code(3, 2, 1)).is_err());
        assert!(product_construct(seg, full_code(3, 3, 1)).is_err());
        let sq = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(StartingConfig::new(sq, 2), Err(Error::Precondition(_))));
    }
}
