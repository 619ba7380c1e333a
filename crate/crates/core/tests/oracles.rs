//! Library results checked against independent, deliberately naive computations.

mod common;

use std::collections::BTreeSet;

use antipodal::antipodality::{
    erdos_rank_k, is_rank_k_antipodal, joint_antipodal_direct, strict_joint, strict_rank_k, support_certificate,
    AntipodalityCertificate, JointQuery, Mode,
};
use antipodal::construction::{product_construct, StartingConfig};
use antipodal::discrimination::{min_error, random_classical_state, StateSpace};
use antipodal::geometry::{volume, Point, PointSet, Polytope};
use antipodal::hashcodes::{is_perfect, max_code, random_code, random_code_size, HashCode, Word, DEFAULT_BUDGET};
use antipodal::rational::{int, ratio, Rational};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_words(b: u32, m: usize) -> Vec<Vec<u32>> {
    (0..m).map(|_| 1..=b).multi_cartesian_product().collect()
}

fn separated(words: &[&Vec<u32>]) -> bool {
    (0..words[0].len()).any(|c| words.iter().map(|w| w[c]).collect::<BTreeSet<_>>().len() == words.len())
}

fn fits(code: &[&Vec<u32>], w: &Vec<u32>, k: usize) -> bool {
    code.iter().copied().combinations(k - 1).all(|mut s| {
        s.push(w);
        separated(&s)
    })
}

fn grow<'a>(words: &'a [Vec<u32>], from: usize, code: &mut Vec<&'a Vec<u32>>, k: usize, best: &mut usize) {
    *best = (*best).max(code.len());
    for i in from..words.len() {
        if code.len() + words.len() - i <= *best {
            return;
        }
        if fits(code, &words[i], k) {
            code.push(&words[i]);
            grow(words, i + 1, code, k, best);
            code.pop();
        }
    }
}

/// Largest perfect code by plain include/exclude search over all of `[b]^m`.
fn naive_max(b: u32, k: usize, m: usize) -> usize {
    let words = all_words(b, m);
    let mut best = 0;
    grow(&words, 0, &mut Vec::new(), k, &mut best);
    best
}

#[test]
fn max_code_matches_naive_search() {
    for (b, k, m) in [(2, 2, 3), (3, 3, 2), (3, 3, 3), (4, 3, 2), (4, 4, 2), (5, 3, 2), (5, 4, 2)] {
        let found = max_code(b, k, m, DEFAULT_BUDGET).unwrap();
        assert_eq!(found.exact_size(), Some(naive_max(b, k, m)), "N({b},{k},{m})");
        let words: Vec<&Vec<u32>> = found.code().words().iter().map(|w| &w.0).collect();
        assert!(words.iter().copied().combinations(k).all(|s| separated(&s)));
    }
}

#[test]
fn max_code_respects_counting_bound_and_grows() {
    for (b, k) in [(3u32, 3usize), (4, 3), (4, 4)] {
        let mut prev = 0;
        for m in 1..=3 {
            let n = max_code(b, k, m, DEFAULT_BUDGET).unwrap();
            let size = n.exact_size().unwrap();
            let cap = (k as u128 - 1) * (b as u128).pow(m as u32) / (k as u128 - 1).pow(m as u32);
            assert!(size as u128 <= cap, "N({b},{k},{m}) = {size} > {cap}");
            assert!(size >= prev);
            prev = size;
            // a constant extra letter keeps perfection
            let longer: Vec<Word> = n.code().words().iter().map(|w| Word([w.0.clone(), vec![1]].concat())).collect();
            assert!(is_perfect(&HashCode::new(b, k, m + 1, longer).unwrap()).perfect);
        }
    }
}

#[test]
fn random_codes_meet_the_alteration_estimate() {
    for (b, k, m) in [(2u32, 2usize, 6usize), (3, 3, 4), (4, 3, 3)] {
        let p = 1.0 - (0..k).map(|i| (b as f64 - i as f64) / b as f64).product::<f64>();
        let n = random_code_size(b, k, m).unwrap();
        let choose = (0..k).fold(1.0, |acc, i| acc * (n as f64 - i as f64) / (i as f64 + 1.0));
        let estimate = n as f64 - choose * p.powi(m as i32);
        let mean = (0..100).map(|s| random_code(b, k, m, s).unwrap().len() as f64).sum::<f64>() / 100.0;
        assert!(mean >= 0.9 * estimate, "b={b} k={k} m={m}: mean {mean} vs {estimate}");
        if (b, k) == (2, 2) {
            assert!(mean >= f64::from(1u32 << m) / 2.0);
        }
    }
}

/// Closed form on the classical simplex: guess the likeliest state per outcome.
fn classical_error(states: &[Point]) -> Rational {
    let n = states[0].dim();
    let hits: Rational = (0..n).map(|i| states.iter().map(|s| s.coords()[i].clone()).max().unwrap()).sum();
    int(states.len() as i64) - hits
}

#[test]
fn classical_discrimination_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        let space = StateSpace::classical(n);
        for k in 1..=3 {
            for _ in 0..8 {
                let states: Vec<Point> = (0..=k).map(|_| random_classical_state(n, &mut rng)).collect();
                assert_eq!(min_error(&space, &states).unwrap().min_error, classical_error(&states));
            }
        }
    }
}

#[test]
fn discrimination_is_symmetric_and_monotone_in_the_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sq = common::square();
    let space = StateSpace::new(sq.clone());
    for _ in 0..10 {
        let states: Vec<Point> = (0..3)
            .map(|_| Point::new(vec![ratio(rng.gen_range(0..=4), 4), ratio(rng.gen_range(0..=4), 4)]))
            .collect();
        let e = min_error(&space, &states).unwrap().min_error;
        for perm in states.iter().cloned().permutations(3) {
            assert_eq!(min_error(&space, &perm).unwrap().min_error, e);
        }
        let mut bigger = sq.points().to_vec();
        bigger.push(Point::from_ints(&[2, 2]));
        let big = StateSpace::new(PointSet::new(bigger).unwrap());
        assert!(min_error(&big, &states).unwrap().min_error >= e);
    }
}

fn on_circle(t: Rational) -> Point {
    let one = int(1);
    let den = &one + &t * &t;
    Point::new(vec![(&one - &t * &t) / &den, int(2) * &t / &den])
}

/// Strictness of a pair by brute force over small integer directions.
fn strict_pair_by_directions(x: &PointSet, i: usize, j: usize) -> bool {
    (-12i64..=12).cartesian_product(-12i64..=12).any(|(a, b)| {
        let f = |p: &Point| int(a) * &p.coords()[0] + int(b) * &p.coords()[1];
        let vals: Vec<Rational> = x.points().iter().map(f).collect();
        let max = vals.iter().max().unwrap();
        let min = vals.iter().min().unwrap();
        vals[i] == *max && vals[j] == *min && vals.iter().filter(|v| *v == max).count() == 1 && vals.iter().filter(|v| *v == min).count() == 1
    })
}

#[test]
fn pentagon_strict_pairs_match_direction_search() {
    let pentagon = PointSet::new(
        [int(0), ratio(8, 11), int(3), int(-3), ratio(-8, 11)].into_iter().map(on_circle).collect(),
    )
    .unwrap();
    let mut strict = 0;
    for (i, j) in (0..5).tuple_combinations() {
        let q = JointQuery::new(&pentagon, vec![i, j]).unwrap();
        let lib = strict_joint(&q).unwrap().holds;
        let oracle = strict_pair_by_directions(&pentagon, i, j) || strict_pair_by_directions(&pentagon, j, i);
        assert_eq!(lib, oracle, "pair {i},{j}");
        strict += lib as usize;
    }
    assert_eq!(strict, 5);
    assert!(!strict_rank_k(&pentagon, 1).unwrap().holds);
}

#[test]
fn support_halfspaces_cut_out_the_simplex() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for _ in 0..40 {
        let d = rng.gen_range(2..=3);
        let x = common::random_point_set(&mut rng, d, d + 3);
        let k = rng.gen_range(1..=d);
        let q = JointQuery::new(&x, common::random_subset(&mut rng, x.len(), k + 1)).unwrap();
        let lambda = common::random_lambda(&mut rng, k);
        let direct = joint_antipodal_direct(&q).unwrap();
        let Ok(cert) = support_certificate(&q, &lambda) else {
            assert!(!direct.is_antipodal() || !common::in_general_position(&x));
            continue;
        };
        assert!(direct.is_antipodal());
        cert.verify(&q).unwrap();
        let qs: Vec<&Point> = q.chosen().iter().map(|&i| &x.points()[i]).collect();
        for _ in 0..20 {
            let mut w: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(-2..=6), 6)).collect();
            w.push(int(1) - w.iter().sum::<Rational>());
            let p = antipodal::geometry::combine(&qs, &w);
            let inside = cert.halfspaces.iter().all(|h| h.contains(&p));
            assert_eq!(inside, w.iter().all(|c| !c.is_negative()));
        }
        checked += 1;
    }
    assert!(checked >= 5);
}

#[test]
fn projection_certificates_agree_with_direct_maps() {
    let seg = StartingConfig::new(PointSet::from_ints(&[&[0], &[1]]).unwrap(), 1).unwrap();
    let tri = StartingConfig::new(common::simplex(2), 2).unwrap();
    let cases = [
        (seg, HashCode::new(2, 2, 2, all_words(2, 2).into_iter().map(Word).collect()).unwrap()),
        (tri, max_code(3, 3, 2, DEFAULT_BUDGET).unwrap().code().clone()),
    ];
    for (base, code) in cases {
        let k = base.k();
        let prod = product_construct(base, code).unwrap();
        let x = prod.points().clone();
        for subset in (0..x.len()).combinations(k + 1) {
            let q = JointQuery::new(&x, subset.clone()).unwrap();
            let direct = joint_antipodal_direct(&q).unwrap();
            if let Some(map) = prod.projection_certificate(&subset).unwrap() {
                AntipodalityCertificate::Antipodal { map }.verify(&q).unwrap();
                assert!(direct.is_antipodal());
            }
        }
    }
}

#[test]
fn variants_nest_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(3..=6);
        let x = common::random_point_set(&mut rng, d, n);
        for k in 1..=2 {
            let plain = is_rank_k_antipodal(&x, k, Mode::Exhaustive).unwrap().holds;
            assert!(!erdos_rank_k(&x, k).unwrap().holds || plain);
            assert!(!strict_rank_k(&x, k).unwrap().holds || plain);
            if k == 2 && plain {
                assert!(is_rank_k_antipodal(&x, 1, Mode::Exhaustive).unwrap().holds);
            }
        }
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (o, a, b) = (o.coords(), a.coords(), b.coords());
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone-chain hull followed by the shoelace formula.
fn hull_area(x: &PointSet) -> Rational {
    let mut pts = x.points().to_vec();
    pts.sort();
    let chain = |iter: &mut dyn Iterator<Item = &Point>| {
        let mut h: Vec<Point> = Vec::new();
        for p in iter {
            while h.len() >= 2 && !cross(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                h.pop();
            }
            h.push(p.clone());
        }
        h.pop();
        h
    };
    let mut hull = chain(&mut pts.iter());
    hull.extend(chain(&mut pts.iter().rev()));
    let twice: Rational = (0..hull.len())
        .map(|i| {
            let (p, q) = (hull[i].coords(), hull[(i + 1) % hull.len()].coords());
            &p[0] * &q[1] - &q[0] * &p[1]
        })
        .sum();
    twice.abs() / int(2)
}

#[test]
fn planar_volume_matches_shoelace() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let n = rng.gen_range(3..=9);
        let x = common::random_point_set(&mut rng, 2, n);
        let v = volume(&Polytope::new(x.clone())).unwrap();
        assert_eq!(v.value, hull_area(&x));
        assert_eq!(v.degenerate, v.value.is_zero());
    }
}
