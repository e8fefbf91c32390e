//! Even-multiplicity boundary cycles whose total class vanishes.

use symlink::catalog;
use symlink::sections::fried_boundary;

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    for (u1, u2, k1, k2) in [("AB", "ABB", 2, 2), ("A", "AB", 2, 4), ("AAB", "ABB", 4, 2)] {
        let fb = fried_boundary(&m, &m.word(u1)?, &m.word(u2)?, k1, k2)?;
        println!("{u1}^{k1} / {u2}^{k2}: sign {:+}, w = {}", fb.sign, m.format_word(&fb.w));
        for (w, k) in &fb.cycle.terms {
            println!("    {k:+} {}", m.format_word(w));
        }
        println!("    class {:?}, w primitive {}", fb.cycle.homology_class(&m).to_strings(), fb.w.is_primitive());
    }
    println!("odd multiplicity: {}", fried_boundary(&m, &m.word("AB")?, &m.word("ABB")?, 1, 2).unwrap_err());
    Ok(())
}
