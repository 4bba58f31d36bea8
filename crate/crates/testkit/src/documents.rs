//! Syntactically valid CSL documents (not necessarily resolvable) and
//! guaranteed-invalid texts derived from them.

use std::collections::BTreeSet;

use aiact_core::dsl::{
    serialize, AssumeDecl, ContractDecl, DischargeDecl, FlowDecl, GuaranteeDecl, RefDecl, RefTarget, RequirementDecl,
    RequirementStatus, SourceSpan, SpecDocument, StakeholderDecl,
};
use proptest::prelude::*;

/// Contextual keywords are legal identifiers.
const TRICKY_IDS: &[&str] = &[
    "spec",
    "version",
    "stakeholder",
    "role",
    "requirement",
    "owner",
    "status",
    "text",
    "contract",
    "attribute",
    "assume",
    "guarantee",
    "accepted",
    "discharged_by",
    "flow",
    "carries",
    "open",
    "attested",
    "not",
    "applicable",
    "_",
    "TR1",
];

pub fn arb_ident() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => "[A-Za-z_][A-Za-z0-9_]{0,8}",
        1 => prop::sample::select(TRICKY_IDS).prop_map(str::to_string),
    ]
}

/// Printable text including quotes, backslashes, `#` and non-ASCII, but no
/// newlines.
pub fn arb_text() -> impl Strategy<Value = String> {
    prop_oneof![
        2 => "[ -~]{0,24}",
        1 => "[a-zé\"\\\\#{}\\[\\] ]{0,12}",
        1 => "\\PC{0,8}",
    ]
    .prop_map(|s: String| s.replace(['\n', '\r'], " "))
}

fn span() -> SourceSpan {
    SourceSpan::default()
}

fn unique_by<T>(items: Vec<T>, key: impl Fn(&T) -> &str) -> Vec<T> {
    let mut seen = BTreeSet::new();
    items
        .into_iter()
        .filter(|item| seen.insert(key(item).to_string()))
        .collect()
}

fn arb_status() -> impl Strategy<Value = RequirementStatus> {
    prop_oneof![
        Just(RequirementStatus::Attested),
        Just(RequirementStatus::Open),
        Just(RequirementStatus::NotApplicable),
    ]
}

fn arb_ref() -> impl Strategy<Value = RefDecl> {
    prop_oneof![
        arb_ident().prop_map(RefTarget::Requirement),
        (arb_ident(), arb_ident()).prop_map(|(contract, guarantee)| RefTarget::Guarantee { contract, guarantee }),
    ]
    .prop_map(|target| RefDecl { target, span: span() })
}

fn arb_discharge() -> impl Strategy<Value = DischargeDecl> {
    prop_oneof![
        1 => Just(DischargeDecl::Pending),
        1 => Just(DischargeDecl::Accepted),
        3 => prop::collection::vec(arb_ref(), 1..4).prop_map(DischargeDecl::By),
    ]
}

fn arb_contract() -> impl Strategy<Value = ContractDecl> {
    (
        arb_ident(),
        arb_ident(),
        arb_ident(),
        prop::collection::vec((arb_ident(), arb_text(), arb_discharge()), 0..4),
        prop::collection::vec((arb_ident(), arb_text()), 0..3),
    )
        .prop_map(|(id, owner, attribute, assumptions, guarantees)| {
            let mut seen = BTreeSet::new();
            let assumptions = assumptions
                .into_iter()
                .filter(|(a, _, _)| seen.insert(a.clone()))
                .map(|(id, text, discharge)| AssumeDecl {
                    id,
                    text,
                    discharge,
                    span: span(),
                })
                .collect();
            // assumption and guarantee ids share a namespace
            let guarantees = guarantees
                .into_iter()
                .filter(|(g, _)| seen.insert(g.clone()))
                .map(|(id, text)| GuaranteeDecl { id, text, span: span() })
                .collect();
            ContractDecl {
                id,
                owner,
                attribute,
                assumptions,
                guarantees,
                span: span(),
            }
        })
}

pub fn arb_document() -> impl Strategy<Value = SpecDocument> {
    (
        arb_text(),
        any::<u64>(),
        prop::collection::vec((arb_ident(), arb_text()), 0..4),
        prop::collection::vec(
            (arb_ident(), arb_ident(), arb_status(), prop::option::of(arb_text())),
            0..5,
        ),
        prop::collection::vec(arb_contract(), 0..3),
        prop::collection::vec(
            (arb_ident(), arb_ident(), prop::collection::vec(arb_ident(), 1..4)),
            0..3,
        ),
    )
        .prop_map(
            |(name, version, stakeholders, requirements, contracts, flows)| SpecDocument {
                name,
                version,
                stakeholders: unique_by(
                    stakeholders
                        .into_iter()
                        .map(|(id, role)| StakeholderDecl { id, role, span: span() })
                        .collect(),
                    |s| &s.id,
                ),
                requirements: unique_by(
                    requirements
                        .into_iter()
                        .map(|(id, owner, status, text)| RequirementDecl {
                            id,
                            owner,
                            status,
                            text,
                            span: span(),
                        })
                        .collect(),
                    |r| &r.id,
                ),
                contracts: unique_by(contracts, |c| &c.id),
                flows: flows
                    .into_iter()
                    .map(|(from, to, carries)| FlowDecl {
                        from,
                        to,
                        carries,
                        span: span(),
                    })
                    .collect(),
                span: span(),
            },
        )
}

/// Lines that are never valid at the start of a line of serialized CSL.
const GARBAGE_LINES: &[&str] = &["}", "@", "]", "1234", "-> x", ",", "[", "\"dangling\""];

/// Serialized valid documents with one garbage line inserted.
pub fn arb_invalid_text() -> impl Strategy<Value = String> {
    (
        arb_document(),
        any::<prop::sample::Index>(),
        prop::sample::select(GARBAGE_LINES),
    )
        .prop_map(|(doc, at, garbage)| {
            let text = serialize(&doc);
            let mut lines: Vec<&str> = text.lines().collect();
            let at = at.index(lines.len() + 1);
            lines.insert(at, garbage);
            let mut out = lines.join("\n");
            out.push('\n');
            out
        })
}

/// Whether `span` points at a real position of `text` (end of file included).
pub fn span_is_valid(text: &str, span: &SourceSpan) -> bool {
    if span.line == 0 || span.column == 0 {
        return false;
    }
    let lines: Vec<&str> = text.split('\n').collect();
    let Some(line) = lines.get(span.line as usize - 1) else {
        return false;
    };
    span.column as usize <= line.chars().count() + 1
}
