//! Extended product quality model for safety-critical AI systems.
//!
//! The model is a two-level forest: characteristics at the top, each owning an
//! ordered list of sub-characteristics. Every node is identified by an
//! [`AttributeId`]. Human-written names (including known misspellings) are
//! resolved to canonical ids through [`QualityModel::find_attribute`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Canonical UpperCamelCase name of a quality (sub-)attribute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AttributeId(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid attribute id `{0}`: expected [A-Z][A-Za-z0-9]*")]
pub struct InvalidAttributeId(pub String);

impl AttributeId {
    pub fn new(name: impl Into<String>) -> Result<Self, InvalidAttributeId> {
        let name = name.into();
        if is_valid_id(&name) {
            Ok(Self(name))
        } else {
            Err(InvalidAttributeId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_valid_id(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_alphanumeric())
}

impl fmt::Display for AttributeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for AttributeId {
    type Err = InvalidAttributeId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s)
    }
}

/// Where an attribute's definition comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DefinitionSource {
    /// New or modified definition introduced by the extended model.
    PaperTableI,
    Iso25059,
    Iso25010,
    Iso25012,
    Iso8800Derived,
    Other,
}

impl DefinitionSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PaperTableI => "Paper-TableI",
            Self::Iso25059 => "ISO25059",
            Self::Iso25010 => "ISO25010",
            Self::Iso25012 => "ISO25012",
            Self::Iso8800Derived => "ISO8800-derived",
            Self::Other => "Other",
        }
    }

    /// Parses the textual form used in custom model files.
    pub fn parse(text: &str) -> Option<Self> {
        let all = [
            Self::PaperTableI,
            Self::Iso25059,
            Self::Iso25010,
            Self::Iso25012,
            Self::Iso8800Derived,
            Self::Other,
        ];
        all.into_iter().find(|s| s.as_str().eq_ignore_ascii_case(text))
    }
}

impl fmt::Display for DefinitionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCharacteristic {
    pub id: AttributeId,
    pub display_name: String,
    pub definition: String,
    pub source: DefinitionSource,
}

/// Top-level characteristic. Characteristics carry a definition of their own
/// because several of them (e.g. `HumanOversight`) are defined by the extended
/// model rather than inherited from an ISO standard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Characteristic {
    pub id: AttributeId,
    pub display_name: String,
    pub definition: String,
    pub source: DefinitionSource,
    pub children: Vec<SubCharacteristic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QualityModel {
    pub name: String,
    pub characteristics: Vec<Characteristic>,
    /// Alias text (as written by humans) to canonical id.
    pub aliases: BTreeMap<String, AttributeId>,
}

/// Name lookup failure. `suggestions` holds the closest canonical names by
/// edit distance; they are advisory and never used for resolution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown quality attribute `{probed}`{}", suggestion_suffix(.suggestions))]
pub struct NotFound {
    pub probed: String,
    pub suggestions: Vec<AttributeId>,
}

fn suggestion_suffix(suggestions: &[AttributeId]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        let names: Vec<&str> = suggestions.iter().map(AttributeId::as_str).collect();
        format!(" (closest: {})", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefectKind {
    DuplicateId,
    DuplicateParent,
    DanglingAlias,
    MissingDefinition,
}

impl DefectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DuplicateId => "duplicate id",
            Self::DuplicateParent => "duplicate parent",
            Self::DanglingAlias => "dangling alias",
            Self::MissingDefinition => "missing definition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub kind: DefectKind,
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.message)
    }
}

/// Lookup key: lowercase with hyphens and whitespace removed.
fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '-' && !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let subst = prev[j] + usize::from(ca != cb);
            cur[j + 1] = subst.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

impl QualityModel {
    /// All ids in model order: each characteristic followed by its children.
    pub fn ids(&self) -> impl Iterator<Item = &AttributeId> {
        self.characteristics
            .iter()
            .flat_map(|c| std::iter::once(&c.id).chain(c.children.iter().map(|s| &s.id)))
    }

    pub fn contains(&self, id: &AttributeId) -> bool {
        self.ids().any(|known| known == id)
    }

    pub fn characteristic(&self, id: &AttributeId) -> Option<&Characteristic> {
        self.characteristics.iter().find(|c| &c.id == id)
    }

    pub fn sub_characteristic(&self, id: &AttributeId) -> Option<&SubCharacteristic> {
        self.characteristics
            .iter()
            .flat_map(|c| c.children.iter())
            .find(|s| &s.id == id)
    }

    pub fn sub_characteristics(&self) -> impl Iterator<Item = &SubCharacteristic> {
        self.characteristics.iter().flat_map(|c| c.children.iter())
    }

    /// Resolves a human-written name: exact canonical match first, then
    /// canonical names and aliases compared case-insensitively with hyphens
    /// and whitespace ignored.
    pub fn find_attribute(&self, name: &str) -> Result<AttributeId, NotFound> {
        if let Some(id) = self.ids().find(|id| id.as_str() == name) {
            return Ok(id.clone());
        }
        let key = normalize(name);
        if !key.is_empty() {
            if let Some(id) = self.ids().find(|id| normalize(id.as_str()) == key) {
                return Ok(id.clone());
            }
            if let Some(id) = self
                .aliases
                .iter()
                .find(|(alias, _)| normalize(alias) == key)
                .map(|(_, id)| id)
            {
                if self.contains(id) {
                    return Ok(id.clone());
                }
            }
        }
        Err(NotFound {
            probed: name.to_string(),
            suggestions: self.closest(name, 3),
        })
    }

    fn closest(&self, name: &str, n: usize) -> Vec<AttributeId> {
        let key = normalize(name);
        let mut scored: Vec<(usize, &AttributeId)> = self
            .ids()
            .map(|id| (edit_distance(&key, &normalize(id.as_str())), id))
            .collect();
        scored.sort();
        scored.dedup_by(|a, b| a.1 == b.1);
        scored.into_iter().take(n).map(|(_, id)| id.clone()).collect()
    }

    /// Unique parent characteristic of a sub-characteristic.
    pub fn parent_of(&self, sub: &AttributeId) -> Result<AttributeId, NotFound> {
        self.characteristics
            .iter()
            .find(|c| c.children.iter().any(|s| &s.id == sub))
            .map(|c| c.id.clone())
            .ok_or_else(|| NotFound {
                probed: sub.to_string(),
                suggestions: Vec::new(),
            })
    }

    /// Checks the forest and alias invariants. Empty iff the model is valid.
    pub fn validate(&self) -> Vec<Defect> {
        let mut defects = Vec::new();
        let mut roots: BTreeSet<&AttributeId> = BTreeSet::new();
        for c in &self.characteristics {
            if !roots.insert(&c.id) {
                defects.push(Defect {
                    kind: DefectKind::DuplicateId,
                    subject: c.id.to_string(),
                    message: format!("characteristic `{}` is declared more than once", c.id),
                });
            }
        }

        // sub id -> parents it appears under (with multiplicity)
        let mut parents: BTreeMap<&AttributeId, Vec<&AttributeId>> = BTreeMap::new();
        for c in &self.characteristics {
            for s in &c.children {
                parents.entry(&s.id).or_default().push(&c.id);
            }
        }
        for (sub, owners) in &parents {
            if roots.contains(sub) {
                defects.push(Defect {
                    kind: DefectKind::DuplicateId,
                    subject: sub.to_string(),
                    message: format!("`{sub}` is both a characteristic and a sub-characteristic"),
                });
            }
            let distinct: BTreeSet<&&AttributeId> = owners.iter().collect();
            if distinct.len() > 1 {
                let names: Vec<&str> = distinct.iter().map(|p| p.as_str()).collect();
                defects.push(Defect {
                    kind: DefectKind::DuplicateParent,
                    subject: sub.to_string(),
                    message: format!("`{sub}` has multiple parents: {}", names.join(", ")),
                });
            } else if owners.len() > 1 {
                defects.push(Defect {
                    kind: DefectKind::DuplicateId,
                    subject: sub.to_string(),
                    message: format!("`{sub}` is listed more than once under `{}`", owners[0]),
                });
            }
        }

        for (alias, target) in &self.aliases {
            if !self.contains(target) {
                defects.push(Defect {
                    kind: DefectKind::DanglingAlias,
                    subject: alias.clone(),
                    message: format!("alias `{alias}` points at missing id `{target}`"),
                });
            }
        }

        let nodes = self
            .characteristics
            .iter()
            .map(|c| (&c.id, &c.definition, c.source))
            .chain(self.sub_characteristics().map(|s| (&s.id, &s.definition, s.source)));
        for (id, definition, source) in nodes {
            if source == DefinitionSource::PaperTableI && definition.trim().is_empty() {
                defects.push(Defect {
                    kind: DefectKind::MissingDefinition,
                    subject: id.to_string(),
                    message: format!("`{id}` has source Paper-TableI but no definition"),
                });
            }
        }
        defects
    }
}

/// Free-function form of [`QualityModel::find_attribute`].
pub fn find_attribute(model: &QualityModel, name: &str) -> Result<AttributeId, NotFound> {
    model.find_attribute(name)
}

pub fn validate_model(model: &QualityModel) -> Vec<Defect> {
    model.validate()
}

pub fn parent_of(model: &QualityModel, sub: &AttributeId) -> Result<AttributeId, NotFound> {
    model.parent_of(sub)
}

// ---------------------------------------------------------------------------
// Built-in extended model
// ---------------------------------------------------------------------------

use DefinitionSource::{Iso25010, Iso25012, Iso25059, PaperTableI};

const SEE_25010: &str = "see ISO/IEC 25010:2023";
const SEE_25059: &str = "see ISO/IEC 25059:2023";
const SEE_25012: &str = "see ISO/IEC 25012:2008";

type Node = (&'static str, &'static str, DefinitionSource, &'static str);

/// (characteristic, children). Each node is (id, display name, source, definition).
const BUILTIN: &[(Node, &[Node])] = &[
    (
        ("FunctionalSuitability", "Functional Suitability", Iso25010, SEE_25010),
        &[
            ("FunctionalCompleteness", "Functional Completeness", Iso25010, SEE_25010),
            ("FunctionalCorrectness", "Functional Correctness", Iso25010, SEE_25010),
            ("FunctionalAppropriateness", "Functional Appropriateness", Iso25010, SEE_25010),
            ("FunctionalAdaptability", "Functional Adaptability", Iso25059, SEE_25059),
        ],
    ),
    (
        ("PerformanceEfficiency", "Performance Efficiency", Iso25010, SEE_25010),
        &[
            ("TimeBehaviour", "Time Behaviour", Iso25010, SEE_25010),
            ("ResourceUtilization", "Resource Utilization", Iso25010, SEE_25010),
            ("Capacity", "Capacity", Iso25010, SEE_25010),
        ],
    ),
    (
        ("Compatibility", "Compatibility", Iso25010, SEE_25010),
        &[
            ("CoExistence", "Co-Existence", Iso25010, SEE_25010),
            ("Interoperability", "Interoperability", Iso25010, SEE_25010),
        ],
    ),
    (
        ("InteractionCapability", "Interaction Capability", Iso25010, SEE_25010),
        &[
            ("AppropriatenessRecognizability", "Appropriateness Recognizability", Iso25010, SEE_25010),
            ("Learnability", "Learnability", Iso25010, SEE_25010),
            ("Operability", "Operability", Iso25010, SEE_25010),
            ("UserErrorProtection", "User Error Protection", Iso25010, SEE_25010),
            ("UserEngagement", "User Engagement", Iso25010, SEE_25010),
            ("Inclusivity", "Inclusivity", Iso25010, SEE_25010),
            ("UserAssistance", "User Assistance", Iso25010, SEE_25010),
            ("SelfDescriptiveness", "Self-Descriptiveness", Iso25010, SEE_25010),
            ("UserControllability", "User Controllability", Iso25059, SEE_25059),
        ],
    ),
    (
        ("Reliability", "Reliability", Iso25010, SEE_25010),
        &[
            ("Faultlessness", "Faultlessness", Iso25010, SEE_25010),
            ("FaultTolerance", "Fault Tolerance", Iso25010, SEE_25010),
            ("Recoverability", "Recoverability", Iso25010, SEE_25010),
            ("Robustness", "Robustness", Iso25059, SEE_25059),
        ],
    ),
    (
        ("Security", "Security", Iso25010, SEE_25010),
        &[
            ("NonRepudiation", "Non-Repudiation", Iso25010, SEE_25010),
            (
                "Accountability",
                "Accountability",
                PaperTableI,
                "Capability of a product to enable actions of a human to be traced uniquely to the human.",
            ),
            ("Authenticity", "Authenticity", Iso25010, SEE_25010),
            ("Resistance", "Resistance", Iso25010, SEE_25010),
        ],
    ),
    (
        ("Maintainability", "Maintainability", Iso25010, SEE_25010),
        &[
            ("Modularity", "Modularity", Iso25010, SEE_25010),
            ("Reusability", "Reusability", Iso25010, SEE_25010),
            ("Analysability", "Analysability", Iso25010, SEE_25010),
            ("Modifiability", "Modifiability", Iso25010, SEE_25010),
            ("Testability", "Testability", Iso25010, SEE_25010),
        ],
    ),
    (
        ("Flexibility", "Flexibility", Iso25010, SEE_25010),
        &[
            ("Adaptability", "Adaptability", Iso25010, SEE_25010),
            ("Scalability", "Scalability", Iso25010, SEE_25010),
            ("Installability", "Installability", Iso25010, SEE_25010),
            ("Replaceability", "Replaceability", Iso25010, SEE_25010),
        ],
    ),
    (
        ("Safety", "Safety", Iso25010, SEE_25010),
        &[
            ("OperationalConstraint", "Operational Constraint", Iso25010, SEE_25010),
            ("RiskIdentification", "Risk Identification", Iso25010, SEE_25010),
            ("FailSafe", "Fail Safe", Iso25010, SEE_25010),
            ("HazardWarning", "Hazard Warning", Iso25010, SEE_25010),
            ("SafeIntegration", "Safe Integration", Iso25010, SEE_25010),
            (
                "SelfMonitoring",
                "Self-Monitoring",
                PaperTableI,
                "The extent to which the system is aware of its state so it can respond appropriately to avoid going to a harmful state.",
            ),
        ],
    ),
    (
        ("Transparency", "Transparency", Iso25059, SEE_25059),
        &[
            (
                "UserTransparency",
                "User Transparency",
                PaperTableI,
                "Degree to which the functionalities of the system are clear to the intended user.",
            ),
            (
                "Interpretability",
                "Interpretability",
                PaperTableI,
                "The extent to which the inner workings of the AI system can be analyzed in order to understand why it behaves the way it does.",
            ),
            ("Explainability", "Explainability", PaperTableI, "see ISO 22989"),
            (
                "Traceability",
                "Traceability",
                PaperTableI,
                "The extent to which there exists data and processes that can record the system\u{2019}s decisions and link artifacts at different stages.",
            ),
            ("Documentability", "Documentability", PaperTableI, "see ISO/IEC/IEEE 24765"),
        ],
    ),
    (
        (
            "HumanOversight",
            "Human Oversight",
            PaperTableI,
            "The ability for humans to understand, supervise, and control the design and operation of AI-based systems.",
        ),
        &[
            (
                "Monitorability",
                "Monitorability",
                PaperTableI,
                "The extent to which relevant indicators of an AI system are effectively observed/monitored and integrated in the operation of the system .",
            ),
            ("Intervenability", "Intervenability", Iso25059, SEE_25059),
        ],
    ),
    (
        (
            "EthicalIntegrity",
            "Ethical Integrity",
            PaperTableI,
            "The extent to which an entity's actions, beliefs, methods, measures, and principles all derive from a single core group of values.",
        ),
        &[
            (
                "Fairness",
                "Fairness",
                PaperTableI,
                "The extent to which a system prevents unjust predictions towards protected attributes (race, gender, income, etc). Ability of the model to output fair decisions.",
            ),
            (
                "PrivacyProtection",
                "Privacy Protection",
                PaperTableI,
                "The extent to which the product or system protects the privacy and handles sensitive information of the stakeholders involved (users, people in training examples).",
            ),
            (
                "ValueAlignment",
                "Value Alignment",
                PaperTableI,
                "The extent to which the AI system behaviour is aligned with human values.",
            ),
        ],
    ),
    (
        ("DataQuality", "Data Quality", Iso25012, SEE_25012),
        &[
            ("Accuracy", "Accuracy", Iso25012, SEE_25012),
            ("DataCompleteness", "Data Completeness", Iso25012, SEE_25012),
            ("Consistency", "Consistency", Iso25012, SEE_25012),
            ("Credibility", "Credibility", Iso25012, SEE_25012),
            ("Currentness", "Currentness", Iso25012, SEE_25012),
            ("Accessibility", "Accessibility", Iso25012, SEE_25012),
            ("Compliance", "Compliance", Iso25012, SEE_25012),
            ("Confidentiality", "Confidentiality", Iso25012, SEE_25012),
            ("Precision", "Precision", Iso25012, SEE_25012),
            ("DataTraceability", "Data Traceability", Iso25012, SEE_25012),
            ("Understandability", "Understandability", Iso25012, SEE_25012),
            (
                "Availability",
                "Availability",
                PaperTableI,
                "The degree to which data has attributes that enable it to be retrieved by authorized users and/or applications in a specific context of use and within the time required. (see ISO/IEC 25012 and ISO PAS 8800)",
            ),
            (
                "Representativeness",
                "Representativeness",
                PaperTableI,
                "The distribution of data (or probability of distribution) truly corresponds to the information in the environment or the phenomenon to be captured.",
            ),
            (
                "Independence",
                "Independence",
                PaperTableI,
                "The data at a specific level of architectural abstraction are not affected by changes to lower levels of abstraction. separate sets of data are used for specific purposes where required (e.g. AI training data, AI validation data).",
            ),
            (
                "DataFairness",
                "Data Fairness",
                PaperTableI,
                "Degree to which the data is free from bias against a given group.",
            ),
            (
                "Integrity",
                "Integrity",
                PaperTableI,
                "The data are unaltered either by natural phenomenon (e.g. noise) or intentional action (e.g. poisoning).",
            ),
            (
                "Temporality",
                "Temporality",
                PaperTableI,
                "A general property referring to temporal characteristics of data e.g. its timeliness, ageing or lifetime.",
            ),
        ],
    ),
];

/// Spelling variants seen in the wild, mapped to canonical ids.
const BUILTIN_ALIASES: &[(&str, &str)] = &[
    ("Appropiateness Recognizability", "AppropriatenessRecognizability"),
    ("Non-repudition", "NonRepudiation"),
    ("Representative-\\newline ness", "Representativeness"),
    ("Privacy \\newline protection", "PrivacyProtection"),
    ("Time behavior", "TimeBehaviour"),
    ("Resource utilisation", "ResourceUtilization"),
    ("Analyzability", "Analysability"),
    ("Maturity", "Faultlessness"),
    ("Usability", "InteractionCapability"),
    ("Portability", "Flexibility"),
    ("Data Accuracy", "Accuracy"),
    ("Data Consistency", "Consistency"),
    ("Data Integrity", "Integrity"),
    ("Data Availability", "Availability"),
    ("Data Confidentiality", "Confidentiality"),
    ("Data Representativeness", "Representativeness"),
    ("Data Independence", "Independence"),
];

fn node_id(name: &str) -> AttributeId {
    AttributeId::new(name).expect("built-in ids are well-formed")
}

/// The extended quality model shipped with the library.
pub fn builtin_extended_model() -> QualityModel {
    let characteristics = BUILTIN
        .iter()
        .map(|&((id, display, source, definition), children)| Characteristic {
            id: node_id(id),
            display_name: display.to_string(),
            definition: definition.to_string(),
            source,
            children: children
                .iter()
                .map(|&(id, display, source, definition)| SubCharacteristic {
                    id: node_id(id),
                    display_name: display.to_string(),
                    definition: definition.to_string(),
                    source,
                })
                .collect(),
        })
        .collect();
    let aliases = BUILTIN_ALIASES
        .iter()
        .map(|&(alias, id)| (alias.to_string(), node_id(id)))
        .collect();
    QualityModel {
        name: "Extended product quality model for safety-critical AI".to_string(),
        characteristics,
        aliases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> AttributeId {
        AttributeId::new(s).unwrap()
    }

    /// Terms of the new-or-modified definitions table, as printed.
    const EXTENDED_TERMS: &[&str] = &[
        "Ethical Integrity",
        "Human Oversight",
        "Fairness",
        "Privacy \\newline protection",
        "Value Alignment",
        "Self-Monitoring",
        "Documentability",
        "User Transparency",
        "Interpretability",
        "Traceability",
        "Explainability",
        "Accountability",
        "Monitorability",
        "Representative-\\newline ness",
        "Independence",
        "Data Fairness",
        "Availability",
        "Integrity",
        "Temporality",
    ];

    #[test]
    fn attribute_id_format() {
        assert!(AttributeId::new("Explainability").is_ok());
        assert!(AttributeId::new("A1b2").is_ok());
        assert!(AttributeId::new("").is_err());
        assert!(AttributeId::new("explainability").is_err());
        assert!(AttributeId::new("Non-Repudiation").is_err());
        assert!(AttributeId::new("Self_Monitoring").is_err());
    }

    #[test]
    fn builtin_is_valid() {
        assert_eq!(builtin_extended_model().validate(), vec![]);
    }

    #[test]
    fn extended_terms_resolve_with_definitions() {
        let model = builtin_extended_model();
        for term in EXTENDED_TERMS {
            let found = model.find_attribute(term).unwrap_or_else(|e| panic!("{e}"));
            let (definition, source) = match model.sub_characteristic(&found) {
                Some(s) => (&s.definition, s.source),
                None => {
                    let c = model.characteristic(&found).unwrap();
                    (&c.definition, c.source)
                }
            };
            assert_eq!(source, DefinitionSource::PaperTableI, "{term}");
            assert!(!definition.is_empty(), "{term}");
        }
    }

    #[test]
    fn explainability_and_ethical_integrity_definitions() {
        let model = builtin_extended_model();
        let ex = model.sub_characteristic(&id("Explainability")).unwrap();
        assert_eq!(ex.definition, "see ISO 22989");
        let ei = model.characteristic(&id("EthicalIntegrity")).unwrap();
        assert!(ei.definition.starts_with("The extent to which an entity's actions"));
    }

    #[test]
    fn find_exact_alias_and_normalized() {
        let model = builtin_extended_model();
        assert_eq!(model.find_attribute("Explainability").unwrap(), id("Explainability"));
        assert_eq!(model.find_attribute("non-repudition").unwrap(), id("NonRepudiation"));
        assert_eq!(
            model.find_attribute("Appropiateness Recognizability").unwrap(),
            id("AppropriatenessRecognizability")
        );
        assert_eq!(
            model.find_attribute("Representative-\\newline ness").unwrap(),
            id("Representativeness")
        );
        assert_eq!(
            model.find_attribute("Representative-ness").unwrap(),
            id("Representativeness")
        );
        assert_eq!(
            model.find_attribute("risk identification").unwrap(),
            id("RiskIdentification")
        );
        assert_eq!(model.find_attribute("SELF-MONITORING").unwrap(), id("SelfMonitoring"));
    }

    #[test]
    fn find_unknown_reports_suggestions_without_guessing() {
        let model = builtin_extended_model();
        let err = model.find_attribute("Quantumness").unwrap_err();
        assert_eq!(err.probed, "Quantumness");
        assert_eq!(err.suggestions.len(), 3);
        // one edit away, still NotFound
        let err = model.find_attribute("Explainabilty").unwrap_err();
        assert_eq!(err.suggestions[0], id("Explainability"));
        assert!(model.find_attribute("").is_err());
        assert!(model.find_attribute("  - ").is_err());
    }

    #[test]
    fn parent_lookup() {
        let model = builtin_extended_model();
        assert_eq!(model.parent_of(&id("Explainability")).unwrap(), id("Transparency"));
        assert_eq!(model.parent_of(&id("Robustness")).unwrap(), id("Reliability"));
        assert!(model.parent_of(&id("Safety")).is_err());
        assert!(model.parent_of(&id("Quantumness")).is_err());
    }

    #[test]
    fn forest_property_and_alias_closure() {
        let model = builtin_extended_model();
        for sub in model.sub_characteristics() {
            let parent = model.parent_of(&sub.id).unwrap();
            assert!(model.characteristic(&parent).is_some());
        }
        for (alias, target) in &model.aliases {
            assert_eq!(&model.find_attribute(alias).unwrap(), target);
        }
    }

    fn sub(name: &str) -> SubCharacteristic {
        SubCharacteristic {
            id: id(name),
            display_name: name.to_string(),
            definition: "d".to_string(),
            source: DefinitionSource::Other,
        }
    }

    fn characteristic(name: &str, children: &[&str]) -> Characteristic {
        Characteristic {
            id: id(name),
            display_name: name.to_string(),
            definition: "d".to_string(),
            source: DefinitionSource::Other,
            children: children.iter().map(|c| sub(c)).collect(),
        }
    }

    #[test]
    fn duplicate_parent_defect() {
        let model = QualityModel {
            name: "m".into(),
            characteristics: vec![
                characteristic("Transparency", &["Traceability"]),
                characteristic("Security", &["Traceability"]),
            ],
            aliases: BTreeMap::new(),
        };
        let defects = model.validate();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].kind, DefectKind::DuplicateParent);
        assert!(defects[0].to_string().starts_with("duplicate parent"));
    }

    #[test]
    fn dangling_alias_defect() {
        let mut model = QualityModel {
            name: "m".into(),
            characteristics: vec![characteristic("Safety", &["FailSafe"])],
            aliases: BTreeMap::new(),
        };
        model.aliases.insert("foo".into(), id("Bar"));
        let defects = model.validate();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].kind, DefectKind::DanglingAlias);
        assert!(model.find_attribute("foo").is_err());
    }

    #[test]
    fn duplicate_id_and_missing_definition_defects() {
        let mut c = characteristic("Safety", &["Safety", "FailSafe", "FailSafe"]);
        c.children[1].source = DefinitionSource::PaperTableI;
        c.children[1].definition = " ".into();
        let model = QualityModel {
            name: "m".into(),
            characteristics: vec![c, characteristic("Safety", &[])],
            aliases: BTreeMap::new(),
        };
        let kinds: Vec<DefectKind> = model.validate().into_iter().map(|d| d.kind).collect();
        assert_eq!(kinds.iter().filter(|k| **k == DefectKind::DuplicateId).count(), 3);
        assert!(kinds.contains(&DefectKind::MissingDefinition));
    }

    #[test]
    fn edit_distance_basics() {
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("abc", "abc"), 0);
    }
}
