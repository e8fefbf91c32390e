//! Cross-section test: a potential certificate or a nonpositive cycle.

use std::collections::BTreeMap;

use symlink::catalog;
use symlink::sections::{cross_section, max_mean_cycle, verify_section, EdgeWeighting, SectionCertificate};

fn weights(m: &symlink::MarkovModel, pairs: &[(&str, &str)]) -> symlink::Result<EdgeWeighting> {
    let map: BTreeMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    EdgeWeighting::from_map(m, &map)
}

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    let good = weights(&m, &[("A->A", "1"), ("A->B", "3"), ("B->A", "-1"), ("B->B", "1")])?;
    let bad = weights(&m, &[("A->A", "1"), ("A->B", "0"), ("B->A", "0"), ("B->B", "-1")])?;

    let (mean, cyc) = max_mean_cycle(&m, &bad);
    println!("max mean cycle of bad: {mean} on {}", m.format_word(&cyc));

    for (name, w) in [("good", &good), ("bad", &bad)] {
        let cert = cross_section(&m, w);
        match &cert {
            SectionCertificate::Potential { p } => {
                println!("{name}: potential {:?}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            }
            SectionCertificate::Obstruction { cycle, weight_sum } => {
                println!("{name}: obstruction {} with sum {weight_sum}", m.format_word(cycle))
            }
        }
        println!("  verifies: {:?}", verify_section(&m, w, &cert));
    }
    Ok(())
}
