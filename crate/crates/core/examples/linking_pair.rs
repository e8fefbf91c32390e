//! One-stage linking pairing and the staged full linking number.

use symlink::catalog;
use symlink::linking::{enumerate_prime_orbits, link_full, linking_pairing, BaseLinkTable};
use symlink::measures::SignedMeasure;

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    let a = m.letter("A")?;
    let nu = SignedMeasure::orbit(&m.word("ABABB")?);
    let mu = SignedMeasure::orbit(&m.word("AB")?);
    println!("pairing_A(ABABB, ABABB) = {}", linking_pairing(&m, a, &nu, &nu)?);
    println!("pairing_A(ABABB, AB)    = {}", linking_pairing(&m, a, &nu, &mu)?);

    let primes = enumerate_prime_orbits(&m, a, 4);
    println!("Prime_A up to 4: {:?}", primes.iter().map(|w| m.format_word(w)).collect::<Vec<_>>());

    // labels vanish here, so every measure is null-class
    let z = catalog::full2_unlabelled();
    let v = link_full(
        &z,
        &SignedMeasure::orbit(&z.word("AABAB")?),
        &SignedMeasure::orbit(&z.word("AABB")?),
        &BaseLinkTable::zero(),
    )?;
    println!("link(AABAB, AABB) = {} (combinatorial only: {})", v.value, v.combinatorial_only);
    for s in &v.stage_breakdown {
        println!("  stage {}: {}", z.name(s.cuboid), s.value);
    }
    Ok(())
}
