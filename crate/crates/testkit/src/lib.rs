//! Random inputs and brute-force oracles for the property suites.

pub mod documents;
pub mod graphs;
pub mod oracle;

pub use documents::{arb_document, arb_invalid_text, span_is_valid};
pub use graphs::{arb_graph, GeneratedGraph};
pub use oracle::brute_force_state;
