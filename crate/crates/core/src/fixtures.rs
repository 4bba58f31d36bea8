//! Bundled example specifications.

/// TSR explainability use case with every requirement attested.
pub const TSR_EXAMPLE: &str = include_str!("../examples/tsr.csl");

/// The same use case with TR4 still open.
pub const TSR_TR4_OPEN: &str = include_str!("../examples/tsr_tr4_open.csl");

/// Looks up a bundled example by name (`tsr`, `tsr_tr4_open`).
pub fn example(name: &str) -> Option<&'static str> {
    match name {
        "tsr" => Some(TSR_EXAMPLE),
        "tsr_tr4_open" => Some(TSR_TR4_OPEN),
        _ => None,
    }
}

pub const EXAMPLE_NAMES: &[&str] = &["tsr", "tsr_tr4_open"];
