//! Tuning a potential until its Gibbs measure has zero homology class.

use symlink::catalog;
use symlink::gibbs::{is_homologically_full, null_class_potential, GibbsConfig, Potential};

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    let full = is_homologically_full(&m, 1);
    println!("homologically full at length 1: {}", full.full);

    let plus = vec![m.word("A")?];
    let minus = vec![m.word("B")?];
    let cfg = GibbsConfig::default();
    let base = Potential::constant(&m, 0.0);
    let r = null_class_potential(&m, &plus, &minus, &base, 3.0, &cfg)?;
    println!("symmetric: x = {:?}, residual {:e}", r.x, r.residual);

    let mut tilted = base.clone();
    tilted.weight[m.edge_by_key("B->B")?] = 2.0;
    let r = null_class_potential(&m, &plus, &minus, &tilted, 3.0, &cfg)?;
    println!("tilted:    x = {:?}, residual {:e}, via {}", r.x, r.residual, r.method.as_str());
    Ok(())
}
