//! Typed supply-chain model bound from a parsed [`SpecDocument`].
//!
//! Discharge links are explicit identifier references: an assumption names
//! the technical requirements or `Contract.Guarantee` pairs that fulfil it.
//! Clause text is never compared.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::dsl::{DischargeDecl, RefTarget, RequirementStatus, SourceSpan, SpecDocument};
use crate::finding::{Finding, FindingCode, Severity};
use crate::quality_model::{AttributeId, QualityModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stakeholder {
    pub id: String,
    pub role: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TechnicalRequirement {
    pub id: String,
    pub owner: String,
    pub status: RequirementStatus,
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargeRef {
    pub target: RefTarget,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discharge {
    /// Stipulated true without derivation.
    Accepted,
    /// May be empty, in which case the assumption can never be fulfilled.
    By(Vec<DischargeRef>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    pub id: String,
    pub text: String,
    pub discharge: Discharge,
    pub span: SourceSpan,
}

impl Assumption {
    pub fn is_accepted(&self) -> bool {
        matches!(self.discharge, Discharge::Accepted)
    }

    pub fn refs(&self) -> &[DischargeRef] {
        match &self.discharge {
            Discharge::Accepted => &[],
            Discharge::By(refs) => refs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guarantee {
    pub id: String,
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignContract {
    pub id: String,
    pub owner: String,
    /// Attribute as written in the source.
    pub attribute_name: String,
    /// `None` when the name did not resolve in the active model.
    pub attribute: Option<AttributeId>,
    pub assumptions: Vec<Assumption>,
    pub guarantees: Vec<Guarantee>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: String,
    pub to: String,
    pub carries: Vec<String>,
    pub span: SourceSpan,
}

/// Identity of a node in the discharge dependency graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Requirement(String),
    Assumption { contract: String, id: String },
    Guarantee { contract: String, id: String },
}

impl ElementId {
    pub fn from_target(target: &RefTarget) -> Self {
        match target {
            RefTarget::Requirement(id) => Self::Requirement(id.clone()),
            RefTarget::Guarantee { contract, guarantee } => Self::Guarantee {
                contract: contract.clone(),
                id: guarantee.clone(),
            },
        }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Requirement(id) => f.write_str(id),
            Self::Assumption { contract, id } | Self::Guarantee { contract, id } => {
                write!(f, "{contract}.{id}")
            }
        }
    }
}

/// `assumption -> target`, one per discharge reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyEdge {
    pub contract: String,
    pub assumption: String,
    pub target: RefTarget,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupplyChainGraph {
    pub name: String,
    pub version: u64,
    pub stakeholders: Vec<Stakeholder>,
    pub requirements: Vec<TechnicalRequirement>,
    pub contracts: Vec<DesignContract>,
    pub flows: Vec<FlowEdge>,
    pub dependencies: Vec<DependencyEdge>,
}

impl SupplyChainGraph {
    pub fn stakeholder(&self, id: &str) -> Option<&Stakeholder> {
        self.stakeholders.iter().find(|s| s.id == id)
    }

    pub fn requirement(&self, id: &str) -> Option<&TechnicalRequirement> {
        self.requirements.iter().find(|r| r.id == id)
    }

    pub fn contract(&self, id: &str) -> Option<&DesignContract> {
        self.contracts.iter().find(|c| c.id == id)
    }

    /// Stakeholder owning a discharge target.
    pub fn owner_of(&self, target: &RefTarget) -> Option<&str> {
        match target {
            RefTarget::Requirement(id) => self.requirement(id).map(|r| r.owner.as_str()),
            RefTarget::Guarantee { contract, .. } => self.contract(contract).map(|c| c.owner.as_str()),
        }
    }

    pub fn span_of(&self, element: &ElementId) -> Option<&SourceSpan> {
        match element {
            ElementId::Requirement(id) => self.requirement(id).map(|r| &r.span),
            ElementId::Assumption { contract, id } => self
                .contract(contract)
                .and_then(|c| c.assumptions.iter().find(|a| &a.id == id))
                .map(|a| &a.span),
            ElementId::Guarantee { contract, id } => self
                .contract(contract)
                .and_then(|c| c.guarantees.iter().find(|g| &g.id == id))
                .map(|g| &g.span),
        }
    }

    /// Number of discharge elements (requirements, assumptions, guarantees).
    pub fn element_count(&self) -> usize {
        self.requirements.len()
            + self
                .contracts
                .iter()
                .map(|c| c.assumptions.len() + c.guarantees.len())
                .sum::<usize>()
    }
}

/// A successfully resolved graph together with its non-blocking findings.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub graph: SupplyChainGraph,
    pub findings: Vec<Finding>,
}

/// Binds every identifier in `doc`. Any Error finding means no graph.
pub fn resolve(doc: &SpecDocument, model: &QualityModel, strict: bool) -> Result<Resolved, Vec<Finding>> {
    let lenient = Severity::escalated(strict);
    let mut findings = Vec::new();

    let stakeholder_ids: BTreeSet<&str> = doc.stakeholders.iter().map(|s| s.id.as_str()).collect();
    let requirement_owner: BTreeMap<&str, &str> = doc
        .requirements
        .iter()
        .map(|r| (r.id.as_str(), r.owner.as_str()))
        .collect();

    let unknown_stakeholder = |who: &str, context: String, span: &SourceSpan, findings: &mut Vec<Finding>| {
        if !stakeholder_ids.contains(who) {
            findings.push(
                Finding::error(
                    FindingCode::UnresolvedRef,
                    format!("{who} is not a declared stakeholder ({context})"),
                )
                .with_span(span),
            );
        }
    };

    for r in &doc.requirements {
        unknown_stakeholder(
            &r.owner,
            format!("owner of requirement {}", r.id),
            &r.span,
            &mut findings,
        );
    }

    let mut contracts = Vec::with_capacity(doc.contracts.len());
    let mut dependencies = Vec::new();
    for c in &doc.contracts {
        unknown_stakeholder(&c.owner, format!("owner of contract {}", c.id), &c.span, &mut findings);
        if c.guarantees.is_empty() {
            findings.push(
                Finding::error(
                    FindingCode::MissingGuarantee,
                    format!("contract {} declares no guarantee", c.id),
                )
                .with_span(&c.span),
            );
        }
        let attribute = match model.find_attribute(&c.attribute) {
            Ok(id) => Some(id),
            Err(not_found) => {
                findings.push(
                    Finding::new(
                        lenient,
                        FindingCode::UnknownAttribute,
                        format!("contract {}: {not_found}", c.id),
                    )
                    .with_span(&c.span),
                );
                None
            }
        };

        let mut assumptions = Vec::with_capacity(c.assumptions.len());
        for a in &c.assumptions {
            let discharge = match &a.discharge {
                DischargeDecl::Accepted => Discharge::Accepted,
                DischargeDecl::Pending => Discharge::By(Vec::new()),
                DischargeDecl::By(refs) => {
                    let mut resolved = Vec::with_capacity(refs.len());
                    for r in refs {
                        if let Some(problem) = unresolved_target(doc, &requirement_owner, &r.target) {
                            findings.push(
                                Finding::error(
                                    FindingCode::UnresolvedRef,
                                    format!("{} in {}.{}: {problem}", r.target, c.id, a.id),
                                )
                                .with_span(&r.span),
                            );
                        }
                        dependencies.push(DependencyEdge {
                            contract: c.id.clone(),
                            assumption: a.id.clone(),
                            target: r.target.clone(),
                            span: r.span.clone(),
                        });
                        resolved.push(DischargeRef {
                            target: r.target.clone(),
                            span: r.span.clone(),
                        });
                    }
                    Discharge::By(resolved)
                }
            };
            assumptions.push(Assumption {
                id: a.id.clone(),
                text: a.text.clone(),
                discharge,
                span: a.span.clone(),
            });
        }
        contracts.push(DesignContract {
            id: c.id.clone(),
            owner: c.owner.clone(),
            attribute_name: c.attribute.clone(),
            attribute,
            assumptions,
            guarantees: c
                .guarantees
                .iter()
                .map(|g| Guarantee {
                    id: g.id.clone(),
                    text: g.text.clone(),
                    span: g.span.clone(),
                })
                .collect(),
            span: c.span.clone(),
        });
    }

    for f in &doc.flows {
        unknown_stakeholder(&f.from, "flow source".to_string(), &f.span, &mut findings);
        unknown_stakeholder(&f.to, "flow target".to_string(), &f.span, &mut findings);
        for carried in &f.carries {
            match requirement_owner.get(carried.as_str()) {
                None => findings.push(
                    Finding::error(
                        FindingCode::UnresolvedRef,
                        format!(
                            "{carried} carried by flow {} -> {} is not a declared requirement",
                            f.from, f.to
                        ),
                    )
                    .with_span(&f.span),
                ),
                Some(owner) if *owner != f.from => findings.push(
                    Finding::new(
                        lenient,
                        FindingCode::FlowOwnership,
                        format!(
                            "{carried} is owned by {owner} but carried by flow {} -> {}",
                            f.from, f.to
                        ),
                    )
                    .with_span(&f.span),
                ),
                Some(_) => {}
            }
        }
    }

    if findings.iter().any(Finding::is_error) {
        return Err(findings);
    }

    let graph = SupplyChainGraph {
        name: doc.name.clone(),
        version: doc.version,
        stakeholders: doc
            .stakeholders
            .iter()
            .map(|s| Stakeholder {
                id: s.id.clone(),
                role: s.role.clone(),
                span: s.span.clone(),
            })
            .collect(),
        requirements: doc
            .requirements
            .iter()
            .map(|r| TechnicalRequirement {
                id: r.id.clone(),
                owner: r.owner.clone(),
                status: r.status,
                text: r.text.clone().unwrap_or_default(),
                span: r.span.clone(),
            })
            .collect(),
        contracts,
        flows: doc
            .flows
            .iter()
            .map(|f| FlowEdge {
                from: f.from.clone(),
                to: f.to.clone(),
                carries: f.carries.clone(),
                span: f.span.clone(),
            })
            .collect(),
        dependencies,
    };
    Ok(Resolved { graph, findings })
}

fn unresolved_target(
    doc: &SpecDocument,
    requirement_owner: &BTreeMap<&str, &str>,
    target: &RefTarget,
) -> Option<String> {
    match target {
        RefTarget::Requirement(id) => {
            (!requirement_owner.contains_key(id.as_str())).then(|| "no such requirement".to_string())
        }
        RefTarget::Guarantee { contract, guarantee } => match doc.contract(contract) {
            None => Some(format!("no such contract `{contract}`")),
            Some(c) if c.guarantee(guarantee).is_none() => {
                Some(format!("contract `{contract}` has no guarantee `{guarantee}`"))
            }
            Some(_) => None,
        },
    }
}

/// Cross-stakeholder discharge must travel along declared flows. A
/// requirement needs a flow from its owner to the contract's owner that
/// carries it; a guarantee of another stakeholder's contract needs any flow
/// between the two owners.
pub fn flow_check(graph: &SupplyChainGraph, strict: bool) -> Vec<Finding> {
    let severity = Severity::escalated(strict);
    let carried: BTreeSet<(&str, &str, &str)> = graph
        .flows
        .iter()
        .flat_map(|f| {
            f.carries
                .iter()
                .map(move |r| (f.from.as_str(), f.to.as_str(), r.as_str()))
        })
        .collect();
    let linked: BTreeSet<(&str, &str)> = graph.flows.iter().map(|f| (f.from.as_str(), f.to.as_str())).collect();

    let mut findings = Vec::new();
    for c in &graph.contracts {
        for a in &c.assumptions {
            let mut reported: BTreeSet<String> = BTreeSet::new();
            for r in a.refs() {
                let message = match &r.target {
                    RefTarget::Requirement(req_id) => {
                        let Some(req) = graph.requirement(req_id) else {
                            continue;
                        };
                        if req.owner == c.owner
                            || carried.contains(&(req.owner.as_str(), c.owner.as_str(), req_id.as_str()))
                        {
                            continue;
                        }
                        format!(
                            "{req_id} (owned by {}) discharges {}.{} owned by {} but no flow {} -> {} carries it",
                            req.owner, c.id, a.id, c.owner, req.owner, c.owner
                        )
                    }
                    RefTarget::Guarantee { contract, .. } => {
                        let Some(other) = graph.contract(contract) else {
                            continue;
                        };
                        if other.owner == c.owner || linked.contains(&(other.owner.as_str(), c.owner.as_str())) {
                            continue;
                        }
                        format!(
                            "{} (owned by {}) discharges {}.{} owned by {} but there is no flow {} -> {}",
                            r.target, other.owner, c.id, a.id, c.owner, other.owner, c.owner
                        )
                    }
                };
                if !reported.insert(r.target.to_string()) {
                    continue;
                }
                findings.push(Finding::new(severity, FindingCode::FlowOwnership, message).with_span(&r.span));
            }
        }
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::fixtures::TSR_EXAMPLE;
    use crate::quality_model::builtin_extended_model;

    fn graph(src: &str) -> Result<Resolved, Vec<Finding>> {
        resolve(&parse(src, "t.csl").unwrap(), &builtin_extended_model(), false)
    }

    #[test]
    fn tsr_fixture_resolves() {
        let resolved = graph(TSR_EXAMPLE).unwrap();
        assert!(resolved.findings.is_empty(), "{:?}", resolved.findings);
        let g = &resolved.graph;
        assert_eq!(g.stakeholders.len(), 3);
        assert_eq!(g.flows.len(), 2);
        assert_eq!(g.dependencies.len(), 5);
        assert_eq!(
            g.contracts[0].attribute,
            Some(AttributeId::new("Explainability").unwrap())
        );
        assert!(flow_check(g, false).is_empty());
    }

    #[test]
    fn dependency_edges_match_refs() {
        let g = graph(TSR_EXAMPLE).unwrap().graph;
        let refs: usize = g
            .contracts
            .iter()
            .flat_map(|c| &c.assumptions)
            .map(|a| a.refs().len())
            .sum();
        assert_eq!(refs, g.dependencies.len());
    }

    #[test]
    fn unknown_requirement_ref() {
        let findings = graph(
            "spec \"x\" version 1\nstakeholder p role \"r\"\ncontract C owner p attribute Explainability { assume A1 \"a\" discharged_by [TR9] guarantee G1 \"g\" }",
        )
        .unwrap_err();
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].code, FindingCode::UnresolvedRef);
        assert!(findings[0].message.starts_with("TR9"));
    }

    #[test]
    fn unknown_owner_contract_and_guarantee() {
        let findings = graph(
            "spec \"x\" version 1\nstakeholder p role \"r\"\nrequirement T owner ghost status open\ncontract C owner p attribute Explainability { assume A1 \"a\" discharged_by [D.G1, C.G9] guarantee G1 \"g\" }\nflow p -> nobody carries [T]",
        )
        .unwrap_err();
        let codes: Vec<FindingCode> = findings.iter().map(|f| f.code).collect();
        // ghost owner, D unknown, C.G9 unknown, flow target, flow ownership (warning)
        assert_eq!(codes.iter().filter(|c| **c == FindingCode::UnresolvedRef).count(), 4);
        assert!(codes.contains(&FindingCode::FlowOwnership));
    }

    #[test]
    fn flow_ownership_warning_and_strict_error() {
        let src = "spec \"x\" version 1\nstakeholder a role \"r\"\nstakeholder b role \"r\"\nrequirement TR1 owner b status open\nflow a -> b carries [TR1]";
        let resolved = graph(src).unwrap();
        assert_eq!(resolved.findings.len(), 1);
        assert_eq!(resolved.findings[0].severity, Severity::Warning);
        assert_eq!(resolved.findings[0].code, FindingCode::FlowOwnership);

        let strict = resolve(&parse(src, "t.csl").unwrap(), &builtin_extended_model(), true).unwrap_err();
        assert_eq!(strict[0].severity, Severity::Error);
    }

    #[test]
    fn guarantee_across_owners_needs_a_flow() {
        let base = "spec \"x\" version 1\nstakeholder a role \"r\"\nstakeholder b role \"r\"\ncontract D owner a attribute Safety { guarantee G \"g\" }\ncontract C owner b attribute Explainability { assume A1 \"x\" discharged_by [D.G, D.G] guarantee G \"g\" }\n";
        let resolved = graph(base).unwrap();
        let found = flow_check(&resolved.graph, false);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].code, FindingCode::FlowOwnership);
        assert!(found[0].message.starts_with("D.G (owned by a)"), "{}", found[0].message);
        assert_eq!(flow_check(&resolved.graph, true)[0].severity, Severity::Error);

        let linked = format!("{base}requirement R owner a status open\nflow a -> b carries [R]\n");
        assert!(flow_check(&graph(&linked).unwrap().graph, false).is_empty());
        let reversed = format!("{base}requirement R owner b status open\nflow b -> a carries [R]\n");
        assert_eq!(flow_check(&graph(&reversed).unwrap().graph, false).len(), 1);
    }

    #[test]
    fn unknown_attribute_is_warning_unless_strict() {
        let src = "spec \"x\" version 1\nstakeholder a role \"r\"\ncontract C owner a attribute Quantumness { guarantee G \"g\" }";
        let resolved = graph(src).unwrap();
        assert_eq!(resolved.findings[0].code, FindingCode::UnknownAttribute);
        assert_eq!(resolved.graph.contracts[0].attribute, None);
        assert!(resolve(&parse(src, "t").unwrap(), &builtin_extended_model(), true).is_err());
    }

    #[test]
    fn lowercase_attribute_resolves_through_model() {
        let src = "spec \"x\" version 1\nstakeholder a role \"r\"\ncontract C owner a attribute self_descriptiveness { guarantee G \"g\" }";
        // underscores are not ignored by name resolution
        assert!(graph(src).unwrap().graph.contracts[0].attribute.is_none());
        let src = src.replace("self_descriptiveness", "selfdescriptiveness");
        assert_eq!(
            graph(&src).unwrap().graph.contracts[0].attribute,
            Some(AttributeId::new("SelfDescriptiveness").unwrap())
        );
    }

    #[test]
    fn contract_without_guarantee_is_rejected() {
        let findings =
            graph("spec \"x\" version 1\nstakeholder a role \"r\"\ncontract C owner a attribute Explainability { }")
                .unwrap_err();
        assert_eq!(findings[0].code, FindingCode::MissingGuarantee);
    }

    #[test]
    fn missing_flow_names_tr5() {
        let src = TSR_EXAMPLE.replace("flow ai_system_integrator -> ai_provider carries [TR5]", "");
        let g = graph(&src).unwrap().graph;
        let findings = flow_check(&g, false);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].severity, Severity::Warning);
        assert!(findings[0].message.starts_with("TR5"));
        assert_eq!(flow_check(&g, true)[0].severity, Severity::Error);
    }

    #[test]
    fn self_owned_requirements_need_no_flow() {
        let g = graph(
            "spec \"x\" version 1\nstakeholder a role \"r\"\nrequirement T1 owner a status attested\nrequirement T2 owner a status open\ncontract C owner a attribute Explainability { assume A \"a\" discharged_by [T1, T2] guarantee G \"g\" }",
        )
        .unwrap()
        .graph;
        assert!(flow_check(&g, false).is_empty());
    }

    #[test]
    fn repeated_ref_reports_once() {
        let g = graph(
            "spec \"x\" version 1\nstakeholder a role \"r\"\nstakeholder b role \"r\"\nrequirement T owner b status attested\ncontract C owner a attribute Explainability { assume A \"a\" discharged_by [T, T] guarantee G \"g\" }",
        )
        .unwrap()
        .graph;
        assert_eq!(flow_check(&g, false).len(), 1);
    }

    #[test]
    fn element_ids_display_qualified() {
        let id = ElementId::Assumption {
            contract: "X".into(),
            id: "A1".into(),
        };
        assert_eq!(id.to_string(), "X.A1");
        assert_eq!(ElementId::Requirement("TR1".into()).to_string(), "TR1");
    }
}
