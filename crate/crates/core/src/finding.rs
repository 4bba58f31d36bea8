use std::fmt;

use serde::Serialize;

use crate::dsl::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Error => "error",
            Self::Warning => "warning",
            Self::Info => "info",
        }
    }

    /// Warning when lenient, Error when strict.
    pub fn escalated(strict: bool) -> Self {
        if strict {
            Self::Error
        } else {
            Self::Warning
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Catalog of finding codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FindingCode {
    #[serde(rename = "unresolved-ref")]
    UnresolvedRef,
    #[serde(rename = "duplicate-id")]
    DuplicateId,
    #[serde(rename = "flow-ownership")]
    FlowOwnership,
    #[serde(rename = "circular-discharge")]
    CircularDischarge,
    #[serde(rename = "open-assumption")]
    OpenAssumption,
    #[serde(rename = "unknown-attribute")]
    UnknownAttribute,
    #[serde(rename = "empty-discharge")]
    EmptyDischarge,
    /// A contract declares no guarantee.
    #[serde(rename = "missing-guarantee")]
    MissingGuarantee,
}

impl FindingCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::UnresolvedRef => "unresolved-ref",
            Self::DuplicateId => "duplicate-id",
            Self::FlowOwnership => "flow-ownership",
            Self::CircularDischarge => "circular-discharge",
            Self::OpenAssumption => "open-assumption",
            Self::UnknownAttribute => "unknown-attribute",
            Self::EmptyDischarge => "empty-discharge",
            Self::MissingGuarantee => "missing-guarantee",
        }
    }
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: FindingCode,
    pub message: String,
    pub spans: Vec<SourceSpan>,
}

impl Finding {
    pub fn new(severity: Severity, code: FindingCode, message: impl Into<String>) -> Self {
        Self {
            severity,
            code,
            message: message.into(),
            spans: Vec::new(),
        }
    }

    pub fn error(code: FindingCode, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, message)
    }

    pub fn with_span(mut self, span: &SourceSpan) -> Self {
        self.spans.push(span.clone());
        self
    }

    pub fn with_spans<'a>(mut self, spans: impl IntoIterator<Item = &'a SourceSpan>) -> Self {
        self.spans.extend(spans.into_iter().cloned());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.severity, self.code, self.message)?;
        if let Some(span) = self.spans.first() {
            write!(f, " at {span}")?;
        }
        Ok(())
    }
}

/// Sort key used for deterministic output: severity, then first span's
/// file/line/column, then code and message.
pub fn sort_findings(findings: &mut [Finding]) {
    findings.sort_by(|a, b| {
        let loc = |f: &Finding| {
            f.spans
                .first()
                .map(|s| (s.file.clone(), s.line, s.column))
                .unwrap_or_default()
        };
        a.severity
            .cmp(&b.severity)
            .then_with(|| loc(a).cmp(&loc(b)))
            .then_with(|| a.code.cmp(&b.code))
            .then_with(|| a.message.cmp(&b.message))
    });
}
