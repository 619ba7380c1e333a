//! Minimum-error discrimination by linear programming, with the classical
//! closed form and the pairwise subadditivity check.

use antipodal::discrimination::{classical_subadditivity_check, min_error, StateSpace};
use antipodal::geometry::Point;
use antipodal::io;
use antipodal::rational::{ratio, render};

fn main() -> antipodal::Result<()> {
    let space = StateSpace::new(io::parse_point_set(include_str!("data/square.json"))?);
    let states = io::parse_point_set(include_str!("data/square_states.json"))?;
    let d = min_error(&space, states.points())?;
    println!("square, three states: minimum error {}", render(&d.min_error));
    for (j, row) in d.measurement.map().matrix.iter().enumerate() {
        let r: Vec<String> = row.iter().map(render).collect();
        println!("  outcome {j}: ({}) . x + {}", r.join(", "), render(&d.measurement.map().offset[j]));
    }

    let classical = StateSpace::classical(2);
    let p = |a, b, c| Point::new(vec![ratio(a, 6), ratio(b, 6), ratio(c, 6)]);
    let states = [p(4, 1, 1), p(1, 4, 1), p(2, 2, 2)];
    let e = min_error(&classical, &states)?.min_error;
    println!("classical, three states on 3 outcomes: {}", render(&e));

    for (n, k) in [(2, 2), (3, 3)] {
        let r = classical_subadditivity_check(n, k, 50, 1)?;
        let worst = r.worst_slack.as_ref().map(render).unwrap_or_default();
        println!("subadditivity n={n} k={k}: {}/{} trials, smallest slack {worst}", r.passed, r.trials);
    }
    Ok(())
}
