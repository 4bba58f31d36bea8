//! Compliance Specification Language (CSL): lexer, parser, canonical
//! serializer and multi-file merge, plus the model/mapping file variants.

mod ast;
mod lexer;
mod model_file;
mod parser;
mod serialize;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use ast::*;
pub use model_file::{parse_mapping, parse_model};
pub use parser::parse;
pub use serialize::{escape_string, serialize};

use crate::finding::{Finding, FindingCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// Token descriptions that would have been accepted here.
    pub expected: Vec<String>,
    /// Other locations involved (e.g. the first of two duplicate declarations).
    pub related: Vec<SourceSpan>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            span,
            message: message.into(),
            expected: Vec::new(),
            related: Vec::new(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error: {}", self.span, self.message)
    }
}

/// Unions several documents. Name and version come from the first one; ids
/// that collide across documents are `duplicate-id` errors carrying both
/// spans. An empty input yields an unnamed header-only document.
pub fn merge(docs: &[SpecDocument]) -> Result<SpecDocument, Vec<Finding>> {
    let Some(first) = docs.first() else {
        return Ok(SpecDocument::new("", 1));
    };
    if docs.len() == 1 {
        return Ok(first.clone());
    }
    let mut merged = SpecDocument {
        name: first.name.clone(),
        version: first.version,
        span: first.span.clone(),
        ..SpecDocument::default()
    };
    for doc in docs {
        merged.stakeholders.extend(doc.stakeholders.iter().cloned());
        merged.requirements.extend(doc.requirements.iter().cloned());
        merged.contracts.extend(doc.contracts.iter().cloned());
        merged.flows.extend(doc.flows.iter().cloned());
    }

    let mut findings = Vec::new();
    let mut check = |kind: &str, items: Vec<(&str, &SourceSpan)>| {
        let mut seen: HashMap<&str, &SourceSpan> = HashMap::new();
        for (id, span) in items {
            match seen.get(id) {
                Some(first) => findings.push(
                    Finding::error(
                        FindingCode::DuplicateId,
                        format!("{kind} `{id}` is declared in more than one file ({first} and {span})"),
                    )
                    .with_spans([*first, span]),
                ),
                None => {
                    seen.insert(id, span);
                }
            }
        }
    };
    check(
        "stakeholder",
        merged.stakeholders.iter().map(|s| (s.id.as_str(), &s.span)).collect(),
    );
    check(
        "requirement",
        merged.requirements.iter().map(|r| (r.id.as_str(), &r.span)).collect(),
    );
    check(
        "contract",
        merged.contracts.iter().map(|c| (c.id.as_str(), &c.span)).collect(),
    );

    if findings.is_empty() {
        Ok(merged)
    } else {
        Err(findings)
    }
}
