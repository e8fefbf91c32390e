//! Pressure, equilibrium state and the escape bound.

use std::collections::BTreeSet;

use symlink::catalog;
use symlink::gibbs::{equilibrium_state, escape_bound_check, pressure, GibbsConfig, Potential};

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    let zero = Potential::constant(&m, 0.0);
    let p = pressure(&m, &zero)?;
    println!("P(0) = {:.15}  (log 2 = {:.15})", p.pressure, 2f64.ln());

    let mut pot = zero.clone();
    pot.weight[m.edge_id(m.letter("A")?, m.letter("A")?).unwrap()] = 1.0;
    let st = equilibrium_state(&m, &pot)?;
    println!("P(1_AA) = {:.12}, entropy {:.12}", st.report.pressure, st.entropy);
    for (id, mass) in st.measure.edge_masses(&m).iter().enumerate() {
        println!("  mu({}) = {mass:.12}", m.edge_key(id));
    }

    let aa = m.edge_by_key("A->A")?;
    let mut lifted = zero.clone();
    lifted.weight[aa] = 10.0;
    let u: BTreeSet<usize> = [aa].into();
    let esc = escape_bound_check(&m, &lifted, &m.word("A")?, &u, 0.0, 10.0, &GibbsConfig::default())?;
    println!("escape {:.3e} <= bound {:.6}: {}", esc.escape_mass, esc.bound, esc.passed);
    Ok(())
}
