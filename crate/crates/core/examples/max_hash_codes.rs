//! Exact values of N(b, k, m) for small parameters, next to the counting bound
//! and the greedy and random constructions.

use std::time::Instant;

use antipodal::hashcodes::{counting_bound, greedy_code, max_code, random_code, MaxCode, ScanOrder};

fn main() -> antipodal::Result<()> {
    println!("{:>2} {:>2} {:>2}  {:>6} {:>8} {:>6} {:>6}  nodes", "b", "k", "m", "N", "bound", "greedy", "random");
    for (b, k, m) in [(2, 2, 4), (3, 3, 2), (3, 3, 3), (3, 3, 4), (4, 3, 2), (4, 3, 3), (4, 4, 2), (4, 4, 3), (5, 3, 2)] {
        let start = Instant::now();
        let result = max_code(b, k, m, 2_000_000)?;
        let (n, nodes) = match &result {
            MaxCode::Exact { size, nodes, .. } => (size.to_string(), *nodes),
            MaxCode::BudgetExceeded { best, nodes, .. } => (format!(">={}", best.len()), *nodes),
        };
        let greedy = greedy_code(b, k, m, ScanOrder::Lexicographic)?.len();
        let random = random_code(b, k, m, 1)?.len();
        println!(
            "{b:>2} {k:>2} {m:>2}  {n:>6} {:>8} {greedy:>6} {random:>6}  {nodes} ({:.2?})",
            counting_bound(b, k, m)?.to_string(),
            start.elapsed()
        );
    }
    Ok(())
}
