//! Hull membership with separating certificates, dilations and exact volumes.

use antipodal::geometry::{barycentric, member, volume, Dilation, Membership, Point, PointSet, Polytope};
use antipodal::rational::{ratio, render};

fn fmt(v: &[antipodal::Rational]) -> String {
    v.iter().map(render).collect::<Vec<_>>().join(", ")
}

fn main() -> antipodal::Result<()> {
    let tri = PointSet::from_ints(&[&[0, 0], &[4, 0], &[0, 4]])?;
    let s = Polytope::new(tri.clone());
    let probes = [
        Point::new(vec![ratio(1, 1), ratio(1, 1)]),
        Point::new(vec![ratio(2, 1), ratio(0, 1)]),
        Point::new(vec![ratio(3, 1), ratio(3, 1)]),
    ];
    for p in &probes {
        for strict in [false, true] {
            let kind = if strict { "relint" } else { "hull" };
            match member(&s, p, strict)? {
                Membership::Inside { coefficients } => println!("({}) in {kind}: weights {}", fmt(p.coords()), fmt(&coefficients)),
                Membership::Outside { normal, threshold, .. } => {
                    println!("({}) not in {kind}: normal ({}) threshold {}", fmt(p.coords()), fmt(&normal), render(&threshold))
                }
            }
        }
    }
    println!("barycentric of (1, 1): {}", fmt(&barycentric(&tri, &probes[0])?));

    println!("area of triangle: {}", render(&volume(&s)?.value));
    let half = s.dilate(&Dilation::new(probes[0].clone(), ratio(1, 2)))?;
    println!("halved about (1, 1): {}", render(&volume(&half)?.value));

    let cube = PointSet::from_ints(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[2, 2, 0], &[2, 0, 2], &[0, 2, 2], &[2, 2, 2]])?;
    println!("cube of side 2: {}", render(&volume(&Polytope::new(cube))?.value));
    let flat = PointSet::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])?;
    let v = volume(&Polytope::new(flat))?;
    println!("flat triangle in R^3: {} (degenerate: {})", render(&v.value), v.degenerate);
    Ok(())
}
