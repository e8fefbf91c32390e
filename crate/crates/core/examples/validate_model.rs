//! Validate a model document, then break it and watch the check list fail.

use symlink::markov_model::{validate, ModelDocument};

fn main() -> symlink::Result<()> {
    let text = include_str!("../corpus/FULL2.json");
    let mut doc: ModelDocument = serde_json::from_str(text)?;
    let report = validate(&doc);
    println!("FULL2 all passed: {}", report.all_passed());

    doc.edges.retain(|e| !(e.from == "A" && e.to == "B"));
    let report = validate(&doc);
    for c in &report.checks {
        println!("  {:<20} {:<5} {}", c.name, c.passed, c.detail.as_deref().unwrap_or(""));
    }
    Ok(())
}
