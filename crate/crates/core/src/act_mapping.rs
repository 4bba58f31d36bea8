//! Mapping from EU AI Act articles 9 to 15 to quality sub-attributes, plus the
//! per-article coverage metric.
//!
//! Coverage is a tool metric (established / mapped sub-attributes), not a
//! legal measure of compliance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::finding::{Finding, FindingCode, Severity};
use crate::quality_model::{builtin_extended_model, AttributeId, QualityModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Article {
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
    A15,
}

impl Article {
    pub const ALL: [Article; 7] = [
        Article::A9,
        Article::A10,
        Article::A11,
        Article::A12,
        Article::A13,
        Article::A14,
        Article::A15,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::A9 => "A9",
            Self::A10 => "A10",
            Self::A11 => "A11",
            Self::A12 => "A12",
            Self::A13 => "A13",
            Self::A14 => "A14",
            Self::A15 => "A15",
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::A9 => 9,
            Self::A10 => 10,
            Self::A11 => 11,
            Self::A12 => 12,
            Self::A13 => 13,
            Self::A14 => 14,
            Self::A15 => 15,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Self::A9 => "Risk Management System",
            Self::A10 => "Data and data governance",
            Self::A11 => "Technical Documentation",
            Self::A12 => "Record-keeping",
            Self::A13 => "Transparency and provision of information to users",
            Self::A14 => "Human Oversight",
            Self::A15 => "Accuracy, robustness, and cybersecurity",
        }
    }

    /// Accepts `A14` (any case).
    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str().eq_ignore_ascii_case(text))
    }
}

impl fmt::Display for Article {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Article {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MappingTable {
    pub entries: BTreeMap<Article, BTreeSet<AttributeId>>,
    /// Title overrides from custom mapping files; defaults to [`Article::title`].
    pub titles: BTreeMap<Article, String>,
}

impl MappingTable {
    pub fn title(&self, article: Article) -> &str {
        self.titles
            .get(&article)
            .map(String::as_str)
            .unwrap_or_else(|| article.title())
    }

    pub fn attributes(&self, article: Article) -> Option<&BTreeSet<AttributeId>> {
        self.entries.get(&article)
    }

    pub fn articles_for_attribute(&self, attr: &AttributeId) -> BTreeSet<Article> {
        self.entries
            .iter()
            .filter(|(_, attrs)| attrs.contains(attr))
            .map(|(article, _)| *article)
            .collect()
    }

    /// One finding per mapped attribute the model cannot resolve, and one per
    /// article with an empty set.
    pub fn validate(&self, model: &QualityModel, strict: bool) -> Vec<Finding> {
        let severity = Severity::escalated(strict);
        let mut findings = Vec::new();
        for (article, attrs) in &self.entries {
            if attrs.is_empty() {
                findings.push(Finding::new(
                    severity,
                    FindingCode::UnknownAttribute,
                    format!("article {article} maps no attribute"),
                ));
            }
            for attr in attrs {
                if !model.contains(attr) {
                    findings.push(Finding::new(
                        severity,
                        FindingCode::UnknownAttribute,
                        format!("{attr} mapped under {article} is not in quality model `{}`", model.name),
                    ));
                }
            }
        }
        findings
    }

    /// One record per mapped article, ordered A9..A15.
    pub fn coverage(&self, established: &BTreeSet<AttributeId>) -> Vec<CoverageRecord> {
        self.entries
            .iter()
            .map(|(article, mapped)| {
                let missing: BTreeSet<AttributeId> = mapped.difference(established).cloned().collect();
                let hit = mapped.len() - missing.len();
                CoverageRecord {
                    article: *article,
                    title: self.title(*article).to_string(),
                    mapped: mapped.len(),
                    established: hit,
                    ratio: Ratio::new(hit, mapped.len()),
                    missing,
                }
            })
            .collect()
    }
}

/// Exact fraction `num / den`, compared by value. A zero denominator reads as 0.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Self {
        Self { num, den }
    }

    pub fn as_f64(self) -> f64 {
        if self.den == 0 {
            0.0
        } else {
            self.num as f64 / self.den as f64
        }
    }

    pub fn is_one(self) -> bool {
        self.den > 0 && self.num == self.den
    }
}

impl Ratio {
    // cross-multiplication keeps the comparison exact
    fn cmp_value(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = if self.den == 0 { 0 } else { self.num * other.den.max(1) };
        let rhs = if other.den == 0 { 0 } else { other.num * self.den.max(1) };
        lhs.cmp(&rhs)
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other).is_eq()
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_value(other)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageRecord {
    pub article: Article,
    pub title: String,
    pub mapped: usize,
    pub established: usize,
    pub ratio: Ratio,
    pub missing: BTreeSet<AttributeId>,
}

/// Article rows as printed, including their duplicate entries. Names are
/// resolved through the built-in model so spelling drift is absorbed there.
const BUILTIN_ROWS: &[(Article, &[&str])] = &[
    (Article::A9, &["Risk identification", "Testability", "Value Alignment"]),
    (
        Article::A10,
        &[
            "Independence",
            "Data Completeness",
            "Currentness",
            "Independence",
            "Data Fairness",
            "Precision",
            "Representativeness",
            "Consistency",
            "Accuracy",
            "Credibility",
            "Temporality",
            "Confidentiality",
            "Compliance",
            "Data Traceability",
        ],
    ),
    (Article::A11, &["Traceability"]),
    (
        Article::A12,
        &[
            "Operability",
            "Non-repudition",
            "Traceability",
            "Self-descriptiveness",
            "Accountability",
            "Self-Monitoring",
            "User Engagement",
            "Monitorability",
        ],
    ),
    (
        Article::A13,
        &[
            "User Engagement",
            "Self-descriptiveness",
            "User Transparency",
            "Interpretability",
            "Documentability",
            "Appropiateness Recognizability",
        ],
    ),
    (
        Article::A14,
        &[
            "Documentability",
            "Learnability",
            "Value Alignment",
            "Accountability",
            "Interpretability",
            "Fairness",
            "Explainability",
            "Intervenability",
            "Monitorability",
            "User Error Protection",
        ],
    ),
    (
        Article::A15,
        &[
            "Functional Correctness",
            "Faultlessness",
            "Robustness",
            "Appropiateness Recognizability",
            "Self-descriptiveness",
            "Functional Adaptability",
            "Fault Tolerance",
            "Robustness",
            "Integrity",
            "Resistance",
        ],
    ),
];

/// Raw article rows, exactly as printed (duplicates included).
pub fn builtin_rows() -> impl Iterator<Item = (Article, &'static [&'static str])> {
    BUILTIN_ROWS.iter().copied()
}

pub fn builtin_mapping() -> MappingTable {
    let model = builtin_extended_model();
    let entries = BUILTIN_ROWS
        .iter()
        .map(|(article, names)| {
            let attrs = names
                .iter()
                .map(|name| {
                    model
                        .find_attribute(name)
                        .unwrap_or_else(|e| panic!("built-in mapping row {article}: {e}"))
                })
                .collect();
            (*article, attrs)
        })
        .collect();
    MappingTable {
        entries,
        titles: BTreeMap::new(),
    }
}

pub fn articles_for_attribute(mapping: &MappingTable, attr: &AttributeId) -> BTreeSet<Article> {
    mapping.articles_for_attribute(attr)
}

pub fn validate_mapping(mapping: &MappingTable, model: &QualityModel, strict: bool) -> Vec<Finding> {
    mapping.validate(model, strict)
}

pub fn coverage(mapping: &MappingTable, established: &BTreeSet<AttributeId>) -> Vec<CoverageRecord> {
    mapping.coverage(established)
}
