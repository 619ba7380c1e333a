//! The certified simplex solver on its own: an optimum, an infeasible system
//! with its Farkas multipliers, an unbounded ray, and a strict system.

use antipodal::lp::{self, verify_farkas, verify_feasible, verify_ray, verify_strict_infeasibility, LinearProgram, LpOutcome};
use antipodal::rational::{int, render};

fn show(name: &str, lp: &LinearProgram, out: &LpOutcome) -> antipodal::Result<()> {
    match out {
        LpOutcome::Feasible { point, value } => {
            verify_feasible(lp, point)?;
            let x: Vec<String> = point.iter().map(render).collect();
            match value {
                Some(v) => println!("{name}: optimum {} at ({})", render(v), x.join(", ")),
                None => println!("{name}: feasible at ({})", x.join(", ")),
            }
        }
        LpOutcome::Infeasible { farkas } => {
            verify_farkas(lp, farkas)?;
            let u: Vec<String> = farkas.iter().map(render).collect();
            println!("{name}: infeasible, multipliers [{}]", u.join(", "));
        }
        LpOutcome::Unbounded { point, ray } => {
            verify_ray(lp, point, ray)?;
            let r: Vec<String> = ray.iter().map(render).collect();
            println!("{name}: unbounded along ({})", r.join(", "));
        }
    }
    Ok(())
}

fn main() -> antipodal::Result<()> {
    // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x, y >= 0
    let mut lp = LinearProgram::new(2);
    lp.add_le(vec![int(1), int(1)], int(4));
    lp.add_le(vec![int(1), int(3)], int(6));
    lp.add_nonneg(0);
    lp.add_nonneg(1);
    lp.maximize(vec![int(3), int(2)]);
    show("bounded", &lp, &lp::solve(&lp)?)?;

    let mut bad = LinearProgram::new(2);
    bad.add_ge(vec![int(1), int(1)], int(3));
    bad.add_le(vec![int(1), int(0)], int(1));
    bad.add_le(vec![int(0), int(1)], int(1));
    show("infeasible", &bad, &lp::solve(&bad)?)?;

    let mut open = LinearProgram::new(2);
    open.add_ge(vec![int(1), int(-1)], int(0));
    open.maximize(vec![int(1), int(0)]);
    show("unbounded", &open, &lp::solve(&open)?)?;

    // x > 0, y > 0, x + y < 1 has a solution; x > 0, y > 0, x + y <= 0 does not
    let mut strict = LinearProgram::new(2);
    let a = strict.add_ge(vec![int(1), int(0)], int(0));
    let b = strict.add_ge(vec![int(0), int(1)], int(0));
    let c = strict.add_le(vec![int(1), int(1)], int(1));
    show("strict", &strict, &lp::solve_strict(&strict, &[a, b, c])?)?;
    strict.constraints[c].rhs = int(0);
    match lp::solve_strict(&strict, &[a, b])? {
        LpOutcome::Infeasible { farkas } => {
            verify_strict_infeasibility(&strict, &[a, b], &farkas)?;
            println!("strict: no point with x, y > 0 and x + y <= 0");
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
