//! Splitting orbit measures at a cuboid; edge flow and homology survive.

use symlink::catalog;
use symlink::measures::{edge_flow, homology_class, reduce, reduce_all, SignedMeasure};

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    let a = m.letter("A")?;
    let nu = SignedMeasure::orbit(&m.word("ABABB")?);
    let show = |s: &SignedMeasure| {
        s.terms().iter().map(|(w, c)| format!("{c}*{}", m.format_word(w))).collect::<Vec<_>>().join(" + ")
    };
    let once = reduce(&m, a, &nu);
    let all = reduce_all(&m, &nu);
    println!("nu            = {}", show(&nu));
    println!("reduce(A, nu) = {}", show(&once));
    println!("reduce_all    = {}", show(&all));
    println!("flow kept:  {}", edge_flow(&m, &nu) == edge_flow(&m, &once));
    println!("class kept: {:?}", homology_class(&m, &all).to_strings());
    Ok(())
}
