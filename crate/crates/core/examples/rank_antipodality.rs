//! Rank-k checks over all subsets, the size bound, and sampled mode on a
//! larger set.

use antipodal::antipodality::{is_rank_k_antipodal, Mode};
use antipodal::construction::theorem1_bound;
use antipodal::geometry::{Point, PointSet};
use antipodal::rational::render;

fn cube(d: usize) -> PointSet {
    let pts = (0..1u32 << d).map(|m| Point::from_ints(&(0..d).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()));
    PointSet::new(pts.collect()).expect("distinct vertices")
}

fn main() -> antipodal::Result<()> {
    for d in 2..=4 {
        let x = cube(d);
        for k in 1..=2 {
            let v = is_rank_k_antipodal(&x, k, Mode::Exhaustive)?;
            let bound = render(&theorem1_bound(d, k)?);
            match &v.failure {
                None => println!("cube {d}, k = {k}: holds over {} subsets (bound {bound})", v.subsets_total),
                Some(f) => println!("cube {d}, k = {k}: fails at {:?} after {} subsets (bound {bound})", f.subset, v.subsets_checked),
            }
        }
    }
    let cross = PointSet::from_ints(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]])?;
    for k in 1..=3 {
        println!("octahedron, k = {k}: {}", is_rank_k_antipodal(&cross, k, Mode::Exhaustive)?.holds);
    }
    let big = cube(6);
    let v = is_rank_k_antipodal(&big, 1, Mode::Sampled { samples: 200, seed: 7 })?;
    println!("cube 6, k = 1, sampled {} of {} pairs: {}", v.subsets_checked, v.subsets_total, v.holds);
    Ok(())
}
