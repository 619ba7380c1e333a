//! Joint antipodality of chosen points, decided by both routes, together with
//! the half-space certificate for an antipodal choice.

use antipodal::antipodality::{
    joint_antipodal_direct, joint_antipodal_shrunk, support_certificate, AntipodalityCertificate, JointQuery,
};
use antipodal::geometry::PointSet;
use antipodal::rational::{ratio, render};

fn describe(c: &AntipodalityCertificate) -> String {
    match c {
        AntipodalityCertificate::Antipodal { map } => format!("antipodal, map with {} outputs", map.out_rank() + 1),
        AntipodalityCertificate::NotAntipodal { witness } => {
            let p: Vec<String> = witness.point.coords().iter().map(render).collect();
            format!("not antipodal, shrunk copies meet at ({})", p.join(", "))
        }
    }
}

fn main() -> antipodal::Result<()> {
    let hexagon = PointSet::from_ints(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]])?;
    for chosen in [vec![0, 3], vec![0, 1], vec![0, 2, 4], vec![0, 1, 3]] {
        let q = JointQuery::new(&hexagon, chosen.clone())?;
        let direct = joint_antipodal_direct(&q)?;
        direct.verify(&q)?;
        let lambda = vec![ratio(q.k() as i64, q.k() as i64 + 1); q.k() + 1];
        let shrunk = joint_antipodal_shrunk(&q, Some(&lambda))?;
        shrunk.verify(&q)?;
        assert_eq!(direct.is_antipodal(), shrunk.is_antipodal());
        println!("{chosen:?}: {}", describe(&direct));
        if direct.is_antipodal() {
            let cert = support_certificate(&q, &lambda)?;
            cert.verify(&q)?;
            for h in &cert.halfspaces {
                let n: Vec<String> = h.normal.iter().map(render).collect();
                println!("    ({}) . x <= {}", n.join(", "), render(&h.offset));
            }
        }
    }
    Ok(())
}
