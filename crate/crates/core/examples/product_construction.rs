//! Products of a small rank-k set along a perfect hash code, verified through
//! the per-subset projection certificates.

use antipodal::antipodality::Mode;
use antipodal::construction::{product_construct, StartingConfig};
use antipodal::hashcodes::{max_code, DEFAULT_BUDGET};
use antipodal::io;
use num_traits::Zero;

fn main() -> antipodal::Result<()> {
    let triangle = StartingConfig::new(io::parse_point_set(include_str!("data/triangle.json"))?, 2)?;
    let code = io::parse_code(include_str!("data/code_3_3_2.json"))?;
    let product = product_construct(triangle.clone(), code)?;
    let v = product.verify(Mode::Exhaustive)?;
    println!(
        "triangle x code(3,3,2): {} points in R^{}, rank-2 antipodal: {}",
        product.points().len(),
        product.points().dim(),
        v.holds
    );
    let subset = [0, 1, 2];
    let coord = product.separating_coordinate(&subset);
    println!("subset {subset:?} separated by coordinate {coord:?}");
    if let Some(map) = product.projection_certificate(&subset)? {
        let used: Vec<usize> = (0..map.in_dim()).filter(|&c| map.matrix.iter().any(|r| !r[c].is_zero())).collect();
        println!("  its projection map reads input coordinates {used:?}");
    }

    for m in 2..=3 {
        let code = max_code(3, 3, m, DEFAULT_BUDGET)?;
        let p = product_construct(triangle.clone(), code.code().clone())?;
        let ok = p.verify(Mode::Exhaustive)?.holds;
        println!("m = {m}: {} points in R^{} (verified {ok})", p.points().len(), p.points().dim());
    }

    let segment = StartingConfig::new(io::parse_point_set(include_str!("data/segment.json"))?, 1)?;
    let code = max_code(2, 2, 4, DEFAULT_BUDGET)?;
    let cube = product_construct(segment, code.code().clone())?;
    println!("segment^4: {} points, rank-1: {}", cube.points().len(), cube.verify(Mode::Exhaustive)?.holds);
    Ok(())
}
