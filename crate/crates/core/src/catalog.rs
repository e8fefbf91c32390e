//! Small reference models.

use crate::markov_model::MarkovModel;
use crate::rational::q;

/// The full shift on `{A, B}` with `h(A→A) = 1`, `h(B→B) = −1`.
pub fn full2() -> MarkovModel {
    MarkovModel::with_default_orders(
        &["A", "B"],
        &[(0, 0, vec![q(1)]), (0, 1, vec![q(0)]), (1, 0, vec![q(0)]), (1, 1, vec![q(-1)])],
        1,
    )
    .expect("full2 is valid")
}

/// The full shift on `{A, B}` with every label zero.
pub fn full2_unlabelled() -> MarkovModel {
    MarkovModel::with_default_orders(&["A", "B"], &[(0, 0, vec![]), (0, 1, vec![]), (1, 0, vec![]), (1, 1, vec![])], 0)
        .expect("full2 is valid")
}

/// Three cuboids, no loops at `B` or `C`, non-trivial successor orders, two-dimensional labels.
pub fn three() -> MarkovModel {
    let text = r#"{
      "alphabet": ["A", "B", "C"],
      "edges": [
        {"from": "A", "to": "A", "homology": ["1", "0"]},
        {"from": "A", "to": "B", "homology": ["0", "1"]},
        {"from": "A", "to": "C", "homology": ["-1", "0"]},
        {"from": "B", "to": "A", "homology": ["0", "0"]},
        {"from": "B", "to": "C", "homology": ["1", "-1"]},
        {"from": "C", "to": "A", "homology": ["0", "0"]},
        {"from": "C", "to": "B", "homology": ["-1", "0"]}
      ],
      "out_order": {"A": ["B", "A", "C"], "B": ["C", "A"], "C": ["A", "B"]},
      "in_order": {"A": ["C", "A", "B"], "B": ["A", "C"], "C": ["B", "A"]},
      "homology_dim": 2
    }"#;
    crate::markov_model::load_model(text).expect("three is valid")
}
