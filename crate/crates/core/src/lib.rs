//! Quality-model driven verification of AI supply-chain design contracts
//! against obligations for high-risk AI systems.
//!
//! The pipeline is [`dsl::parse`] -> [`contracts::resolve`] ->
//! [`verify::verify`], with [`act_mapping`] turning established quality
//! attributes into per-article coverage.

pub mod act_mapping;
pub mod contracts;
pub mod dsl;
pub mod finding;
pub mod fixtures;
pub mod quality_model;
pub mod verify;

pub use act_mapping::{builtin_mapping, Article, CoverageRecord, MappingTable, Ratio};
pub use contracts::{resolve, SupplyChainGraph};
pub use dsl::{parse, serialize, ParseError, SourceSpan, SpecDocument};
pub use finding::{Finding, FindingCode, Severity};
pub use quality_model::{builtin_extended_model, AttributeId, QualityModel};
pub use verify::{trace, verify, verify_with_context, Verification, VerificationReport};
