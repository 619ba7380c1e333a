//! Plain, Erdős and strict rank-k antipodality side by side.

use antipodal::antipodality::{erdos_rank_k, is_rank_k_antipodal, strict_rank_k, ErdosFailure, Mode};
use antipodal::io;

const SETS: [(&str, &str); 4] = [
    ("square", include_str!("data/square.json")),
    ("triangle", include_str!("data/triangle.json")),
    ("pentagon", include_str!("data/pentagon.json")),
    ("cube", include_str!("data/cube3.json")),
];

fn main() -> antipodal::Result<()> {
    println!("{:<9} {:>2}  {:<6} {:<6} {:<6}", "set", "k", "plain", "erdos", "strict");
    for (name, text) in SETS {
        let x = io::parse_point_set(text)?;
        for k in 1..=2.min(x.dim()) {
            let plain = is_rank_k_antipodal(&x, k, Mode::Exhaustive)?.holds;
            let erdos = erdos_rank_k(&x, k)?;
            let strict = strict_rank_k(&x, k)?;
            println!("{name:<9} {k:>2}  {plain:<6} {:<6} {:<6}", erdos.holds, strict.holds);
            if let Some(ErdosFailure::Outside { subset, point, .. }) = &erdos.failure {
                println!("          point {point} projects outside the hull of {subset:?}");
            }
            if let Some(f) = &strict.failure {
                println!("          {:?} forces coincidences {:?}", f.subset, f.analysis.forced);
            }
        }
    }
    Ok(())
}
