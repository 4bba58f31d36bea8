use std::fmt;

use serde::Serialize;

/// Location of a construct in its source file. `line` and `column` are
/// 1-based, `column` counts characters, `length` counts bytes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: u32, column: u32, length: u32) -> Self {
        Self {
            file: file.into(),
            line,
            column,
            length,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RequirementStatus {
    #[serde(rename = "attested")]
    Attested,
    #[serde(rename = "open")]
    Open,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl RequirementStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Attested => "attested",
            Self::Open => "open",
            Self::NotApplicable => "not-applicable",
        }
    }

    pub fn parse(word: &str) -> Option<Self> {
        match word {
            "attested" => Some(Self::Attested),
            "open" => Some(Self::Open),
            "not-applicable" => Some(Self::NotApplicable),
            _ => None,
        }
    }
}

impl fmt::Display for RequirementStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parsed CSL file. Lists keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub name: String,
    pub version: u64,
    pub stakeholders: Vec<StakeholderDecl>,
    pub requirements: Vec<RequirementDecl>,
    pub contracts: Vec<ContractDecl>,
    pub flows: Vec<FlowDecl>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StakeholderDecl {
    pub id: String,
    pub role: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementDecl {
    pub id: String,
    pub owner: String,
    pub status: RequirementStatus,
    pub text: Option<String>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractDecl {
    pub id: String,
    pub owner: String,
    /// Attribute name as written; resolved against the quality model later.
    pub attribute: String,
    pub assumptions: Vec<AssumeDecl>,
    pub guarantees: Vec<GuaranteeDecl>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumeDecl {
    pub id: String,
    pub text: String,
    pub discharge: DischargeDecl,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DischargeDecl {
    /// Neither `discharged_by` nor `accepted` was written.
    Pending,
    Accepted,
    By(Vec<RefDecl>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefDecl {
    pub target: RefTarget,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RefTarget {
    Requirement(String),
    Guarantee { contract: String, guarantee: String },
}

impl fmt::Display for RefTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Requirement(id) => f.write_str(id),
            Self::Guarantee { contract, guarantee } => write!(f, "{contract}.{guarantee}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuaranteeDecl {
    pub id: String,
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowDecl {
    pub from: String,
    pub to: String,
    pub carries: Vec<String>,
    pub span: SourceSpan,
}

impl SpecDocument {
    /// Header-only document.
    pub fn new(name: impl Into<String>, version: u64) -> Self {
        Self {
            name: name.into(),
            version,
            ..Self::default()
        }
    }

    /// Copy with every span reset, for structural comparison.
    pub fn without_spans(&self) -> Self {
        let blank = SourceSpan::default;
        Self {
            name: self.name.clone(),
            version: self.version,
            stakeholders: self
                .stakeholders
                .iter()
                .map(|s| StakeholderDecl {
                    span: blank(),
                    ..s.clone()
                })
                .collect(),
            requirements: self
                .requirements
                .iter()
                .map(|r| RequirementDecl {
                    span: blank(),
                    ..r.clone()
                })
                .collect(),
            contracts: self
                .contracts
                .iter()
                .map(|c| ContractDecl {
                    id: c.id.clone(),
                    owner: c.owner.clone(),
                    attribute: c.attribute.clone(),
                    assumptions: c
                        .assumptions
                        .iter()
                        .map(|a| AssumeDecl {
                            id: a.id.clone(),
                            text: a.text.clone(),
                            discharge: match &a.discharge {
                                DischargeDecl::By(refs) => DischargeDecl::By(
                                    refs.iter()
                                        .map(|r| RefDecl {
                                            target: r.target.clone(),
                                            span: blank(),
                                        })
                                        .collect(),
                                ),
                                other => other.clone(),
                            },
                            span: blank(),
                        })
                        .collect(),
                    guarantees: c
                        .guarantees
                        .iter()
                        .map(|g| GuaranteeDecl {
                            span: blank(),
                            ..g.clone()
                        })
                        .collect(),
                    span: blank(),
                })
                .collect(),
            flows: self
                .flows
                .iter()
                .map(|f| FlowDecl {
                    span: blank(),
                    ..f.clone()
                })
                .collect(),
            span: blank(),
        }
    }

    /// Structural equality ignoring spans.
    pub fn same_content(&self, other: &Self) -> bool {
        self.without_spans() == other.without_spans()
    }

    pub fn is_empty(&self) -> bool {
        self.stakeholders.is_empty()
            && self.requirements.is_empty()
            && self.contracts.is_empty()
            && self.flows.is_empty()
    }

    pub fn contract(&self, id: &str) -> Option<&ContractDecl> {
        self.contracts.iter().find(|c| c.id == id)
    }

    pub fn requirement(&self, id: &str) -> Option<&RequirementDecl> {
        self.requirements.iter().find(|r| r.id == id)
    }

    pub fn requirement_mut(&mut self, id: &str) -> Option<&mut RequirementDecl> {
        self.requirements.iter_mut().find(|r| r.id == id)
    }
}

impl ContractDecl {
    pub fn assumption(&self, id: &str) -> Option<&AssumeDecl> {
        self.assumptions.iter().find(|a| a.id == id)
    }

    pub fn guarantee(&self, id: &str) -> Option<&GuaranteeDecl> {
        self.guarantees.iter().find(|g| g.id == id)
    }
}
