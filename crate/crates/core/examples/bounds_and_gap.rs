//! The size bound, the volume inequality behind it, and how far products of
//! small sets fall short of it.

use antipodal::construction::{gap_analysis, theorem1_bound, volume_inequality_check};
use antipodal::hashcodes::rate_bounds;
use antipodal::io;
use antipodal::rational::render;

fn main() -> antipodal::Result<()> {
    println!("{:>2} {:>2}  bound", "d", "k");
    for d in 2..=5 {
        for k in 1..=d.min(3) {
            println!("{d:>2} {k:>2}  {}", render(&theorem1_bound(d, k)?));
        }
    }

    for (name, text, k) in [("cube", include_str!("data/cube3.json"), 1), ("triangle", include_str!("data/triangle.json"), 2)] {
        let x = io::parse_point_set(text)?;
        let r = volume_inequality_check(&x, k, 4)?;
        println!(
            "{name}: vol {}, copies sum {}, k vol {} (tight: {})",
            render(&r.volume),
            render(&r.sum),
            render(&r.k_volume),
            r.tight
        );
    }

    for (k, d0, b) in [(1, 1, 2), (2, 2, 3), (2, 2, 4), (3, 3, 6)] {
        let g = gap_analysis(k, d0, b)?;
        println!(
            "k={k} d0={d0} b={b}: construction {:.4} vs bound {:.4}, comparison {:?}, b cap {}",
            g.construction_exponent,
            g.bound_exponent,
            g.comparison,
            render(&g.b_cap)
        );
    }
    let r = rate_bounds(4, 3)?;
    println!("rate for b=4, k=3: [{:.4}, {:.4}]", r.lower, r.upper);
    Ok(())
}
