//! Exact LP separation of a point cloud from the closed negative t-axis.

use symlink::rational::{parse_q, Q};
use symlink::sections::{separating_functional, verify_separation, Separation};

fn pts(raw: &[(&[&str], &str)]) -> Vec<(Vec<Q>, Q)> {
    raw.iter().map(|(x, t)| (x.iter().map(|s| parse_q(s).unwrap()).collect(), parse_q(t).unwrap())).collect()
}

fn main() -> symlink::Result<()> {
    let clouds = [
        pts(&[(&["0"], "1")]),
        pts(&[(&["2"], "1"), (&["-1"], "3")]),
        pts(&[(&["1", "0"], "-1"), (&["-1", "0"], "-1"), (&["0", "5"], "2")]),
    ];
    for p in &clouds {
        let s = separating_functional(p)?;
        let show = |v: &[Q]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        match &s {
            Separation::Functional { f, eta } => print!("f = [{}], eta = {eta}", show(f)),
            Separation::Rejected { weights } => print!("rejected, hull weights [{}]", show(weights)),
        }
        println!("  verified: {}", verify_separation(p, &s));
    }
    Ok(())
}
