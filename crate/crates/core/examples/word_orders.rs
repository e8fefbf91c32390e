//! Primitive roots and the two symbolic orders on bi-infinite words.

use symlink::catalog;
use symlink::words::{compare, concat, Axis, BiWord};

fn main() -> symlink::Result<()> {
    let m = catalog::full2();
    for w in ["ABAB", "ABABB", "AAAA", "ABBABB"] {
        let (root, k) = m.word(w)?.primitive_decompose();
        println!("{w:>7} = ({})^{k}", m.format_word(&root));
    }

    let (ab, abb) = (m.word("AB")?, m.word("ABB")?);
    println!("concat(AB, ABB) = {}", m.format_word(&concat(&ab, &abb)?));

    let (x, y) = (BiWord::periodic(&ab), BiWord::periodic(&abb));
    for axis in [Axis::Vertical, Axis::Horizontal] {
        println!("(AB)^inf vs (ABB)^inf, {axis:?}: {}", compare(&m, &x, &y, axis)?);
    }
    let b = BiWord::periodic(&m.word("B")?);
    println!("(AB)^inf vs B^inf: {}", compare(&m, &x, &b, Axis::Vertical)?);
    Ok(())
}
