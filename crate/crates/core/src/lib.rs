//! Combinatorial linking numbers of periodic orbits on Markov transition models,
//! with exact certificates for cross sections and boundary verdicts.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run -p symlink --example validate_model
//! cargo run -p symlink --example word_orders
//! cargo run -p symlink --example reduce_measure
//! cargo run -p symlink --example linking_pair
//! cargo run -p symlink --example gibbs_pressure
//! cargo run -p symlink --example null_class_gibbs
//! cargo run -p symlink --example cross_section
//! cargo run -p symlink --example min_link_verdict
//! cargo run -p symlink --example fried_boundary
//! cargo run -p symlink --example separating_functional
//! ```

pub mod catalog;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod gibbs;
pub mod linalg;
pub mod linking;
pub mod lp;
pub mod markov_model;
pub mod measures;
pub mod rational;
pub mod sections;
pub mod words;

pub use error::{Error, Result};
pub use markov_model::{load_model, validate, MarkovModel, ModelDocument};
pub use rational::Q;
pub use words::{Axis, BiWord, CyclicWord, Letter, WordOrdering};
