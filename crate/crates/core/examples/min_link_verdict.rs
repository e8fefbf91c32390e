//! Minimal normalized linking over null-class combinations, and the verdict built on it.

use symlink::catalog;
use symlink::linking::BaseLinkTable;
use symlink::measures::SignedMeasure;
use symlink::rational::q;
use symlink::sections::{birkhoff_boundary_verdict, min_link};

fn main() -> symlink::Result<()> {
    let m = catalog::three();
    let mut gamma = SignedMeasure::orbit(&m.word("A")?);
    gamma.add_orbit(&m.word("AC")?, &q(1));
    let base = BaseLinkTable::zero();

    let r = min_link(&m, &gamma, &base, 4)?;
    println!("{} orbits, status {}, value {:?}", r.orbits.len(), r.status.as_str(), r.value.map(|v| v.to_string()));
    for (w, c) in &r.weights {
        println!("  {c} * {}", m.format_word(w));
    }
    let v = birkhoff_boundary_verdict(&m, &gamma, &base, 4)?;
    println!("verdict {} at horizon {} (vacuous: {})", v.verdict.as_str(), v.horizon, v.vacuous);
    Ok(())
}
