//! Traceability chains between articles, attributes, contracts and
//! requirements.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::Verification;
use crate::act_mapping::Article;
use crate::contracts::{Assumption, DesignContract, ElementId, SupplyChainGraph};
use crate::dsl::RefTarget;
use crate::quality_model::AttributeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Article,
    Attribute,
    Contract,
    Guarantee,
    Assumption,
    Requirement,
    Stakeholder,
}

impl TraceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Article => "article",
            Self::Attribute => "attribute",
            Self::Contract => "contract",
            Self::Guarantee => "guarantee",
            Self::Assumption => "assumption",
            Self::Requirement => "requirement",
            Self::Stakeholder => "stakeholder",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TraceElement {
    pub kind: TraceKind,
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

impl fmt::Display for TraceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Some(status) => write!(f, "{} [{status}]", self.id),
            None => f.write_str(&self.id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TraceChain {
    pub elements: Vec<TraceElement>,
}

impl TraceChain {
    pub fn ids(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.id.as_str()).collect()
    }
}

impl fmt::Display for TraceChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("`{0}` is not an article, attribute or requirement id")]
    UnknownQuery(String),
    #[error("cannot trace: verification reported {0} error finding(s)")]
    Unverified(usize),
}

fn element(kind: TraceKind, id: impl Into<String>, status: Option<&str>) -> TraceElement {
    TraceElement {
        kind,
        id: id.into(),
        status: status.map(str::to_string),
    }
}

struct Walk<'a> {
    v: &'a Verification,
    graph: &'a SupplyChainGraph,
}

impl<'a> Walk<'a> {
    fn status(&self, e: &ElementId) -> Option<&'static str> {
        let key = e.to_string();
        let state = &self.v.report.state;
        match e {
            ElementId::Requirement(_) => state.requirements.get(&key).map(|f| f.as_str()),
            ElementId::Assumption { .. } => state.assumptions.get(&key).map(|f| f.as_str()),
            ElementId::Guarantee { .. } => state.guarantees.get(&key).map(|g| g.as_str()),
        }
    }

    fn assumption_element(&self, c: &DesignContract, a: &Assumption) -> TraceElement {
        let status = if a.is_accepted() {
            Some("accepted")
        } else {
            self.status(&ElementId::Assumption {
                contract: c.id.clone(),
                id: a.id.clone(),
            })
        };
        element(TraceKind::Assumption, a.id.clone(), status)
    }

    /// attribute -> contract -> guarantee -> assumption -> target -> owner
    fn downward(&self, attr: &AttributeId, prefix: &[TraceElement], out: &mut Vec<TraceChain>) {
        for c in self
            .graph
            .contracts
            .iter()
            .filter(|c| c.attribute.as_ref() == Some(attr))
        {
            let mut base = prefix.to_vec();
            base.push(element(TraceKind::Attribute, attr.as_str(), None));
            base.push(element(TraceKind::Contract, c.id.clone(), None));
            for g in &c.guarantees {
                let gid = ElementId::Guarantee {
                    contract: c.id.clone(),
                    id: g.id.clone(),
                };
                let mut with_g = base.clone();
                with_g.push(element(TraceKind::Guarantee, g.id.clone(), self.status(&gid)));
                if c.assumptions.is_empty() {
                    out.push(TraceChain { elements: with_g });
                    continue;
                }
                for a in &c.assumptions {
                    let mut with_a = with_g.clone();
                    with_a.push(self.assumption_element(c, a));
                    if a.refs().is_empty() {
                        out.push(TraceChain { elements: with_a });
                        continue;
                    }
                    for r in a.refs() {
                        let mut chain = with_a.clone();
                        let target = ElementId::from_target(&r.target);
                        let kind = match r.target {
                            RefTarget::Requirement(_) => TraceKind::Requirement,
                            RefTarget::Guarantee { .. } => TraceKind::Guarantee,
                        };
                        chain.push(element(kind, target.to_string(), self.status(&target)));
                        if let Some(owner) = self.graph.owner_of(&r.target) {
                            chain.push(element(TraceKind::Stakeholder, owner, None));
                        }
                        out.push(TraceChain { elements: chain });
                    }
                }
            }
        }
    }

    /// requirement -> assumption -> contract -> attribute -> article
    fn upward(&self, requirement: &str, out: &mut Vec<TraceChain>) {
        let status = self.status(&ElementId::Requirement(requirement.to_string()));
        for c in &self.graph.contracts {
            for a in &c.assumptions {
                let cites = a
                    .refs()
                    .iter()
                    .any(|r| matches!(&r.target, RefTarget::Requirement(id) if id == requirement));
                if !cites {
                    continue;
                }
                let mut chain = vec![
                    element(TraceKind::Requirement, requirement, status),
                    self.assumption_element(c, a),
                    element(TraceKind::Contract, c.id.clone(), None),
                ];
                let Some(attr) = &c.attribute else {
                    out.push(TraceChain { elements: chain });
                    continue;
                };
                chain.push(element(TraceKind::Attribute, attr.as_str(), None));
                let articles = self.v.mapping.articles_for_attribute(attr);
                if articles.is_empty() {
                    out.push(TraceChain { elements: chain });
                    continue;
                }
                for article in articles {
                    let mut full = chain.clone();
                    full.push(element(TraceKind::Article, article.as_str(), None));
                    out.push(TraceChain { elements: full });
                }
            }
        }
    }
}

/// Resolves `query` as an article, then an attribute, then a requirement id.
pub fn trace(v: &Verification, query: &str) -> Result<Vec<TraceChain>, TraceError> {
    if v.report.has_errors() {
        return Err(TraceError::Unverified(v.report.error_count()));
    }
    let empty = SupplyChainGraph {
        name: String::new(),
        version: 0,
        stakeholders: Vec::new(),
        requirements: Vec::new(),
        contracts: Vec::new(),
        flows: Vec::new(),
        dependencies: Vec::new(),
    };
    let walk = Walk {
        v,
        graph: v.graph.as_ref().unwrap_or(&empty),
    };
    let query = query.trim();
    let mut chains = Vec::new();
    if let Some(article) = Article::parse(query) {
        let prefix = [element(TraceKind::Article, article.as_str(), None)];
        for attr in v.mapping.attributes(article).into_iter().flatten() {
            walk.downward(attr, &prefix, &mut chains);
        }
    } else if let Ok(attr) = v.model.find_attribute(query) {
        walk.downward(&attr, &[], &mut chains);
    } else if walk.graph.requirement(query).is_some() {
        walk.upward(query, &mut chains);
    } else {
        return Err(TraceError::UnknownQuery(query.to_string()));
    }
    chains.sort_by(|a, b| a.ids().cmp(&b.ids()));
    chains.dedup();
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act_mapping::builtin_mapping;
    use crate::dsl::parse;
    use crate::fixtures::{TSR_EXAMPLE, TSR_TR4_OPEN};
    use crate::quality_model::builtin_extended_model;
    use crate::verify::verify_with_context;

    fn context(src: &str) -> Verification {
        let doc = parse(src, "t.csl").unwrap();
        verify_with_context(&[doc], &builtin_extended_model(), &builtin_mapping(), false)
    }

    #[test]
    fn article_query() {
        let v = context(TSR_EXAMPLE);
        let chains = trace(&v, "A14").unwrap();
        assert_eq!(chains.len(), 5);
        assert_eq!(
            chains[0].ids(),
            [
                "A14",
                "Explainability",
                "ExplainabilityDC",
                "G1",
                "A1",
                "TR1",
                "ai_developer"
            ]
        );
        assert_eq!(chains[0].elements[3].status.as_deref(), Some("established"));
        assert_eq!(chains[4].ids()[5], "TR5");
        assert_eq!(chains[4].ids()[6], "ai_system_integrator");
    }

    #[test]
    fn requirement_query() {
        let v = context(TSR_EXAMPLE);
        let chains = trace(&v, "TR5").unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(
            chains[0].ids(),
            ["TR5", "A4", "ExplainabilityDC", "Explainability", "A14"]
        );
    }

    #[test]
    fn attribute_query_omits_article() {
        let v = context(TSR_EXAMPLE);
        let chains = trace(&v, "explainability").unwrap();
        assert_eq!(chains.len(), 5);
        assert_eq!(chains[0].ids()[0], "Explainability");
    }

    #[test]
    fn article_without_contracts() {
        let v = context(TSR_EXAMPLE);
        assert!(trace(&v, "A9").unwrap().is_empty());
    }

    #[test]
    fn unknown_query_names_the_id() {
        let v = context(TSR_EXAMPLE);
        let err = trace(&v, "TR99").unwrap_err();
        assert_eq!(err, TraceError::UnknownQuery("TR99".into()));
        assert!(err.to_string().contains("TR99"));
    }

    #[test]
    fn statuses_follow_state() {
        let v = context(TSR_TR4_OPEN);
        let chains = trace(&v, "TR4").unwrap();
        assert_eq!(chains[0].elements[0].status.as_deref(), Some("unfulfilled"));
        assert_eq!(chains[0].elements[1].status.as_deref(), Some("unfulfilled"));
        assert_eq!(
            chains[0].to_string(),
            "TR4 [unfulfilled] -> A3 [unfulfilled] -> ExplainabilityDC -> Explainability -> A14"
        );
    }

    #[test]
    fn errors_block_tracing() {
        let v = context("spec \"x\" version 1\nrequirement T owner ghost status attested");
        assert!(matches!(trace(&v, "A14"), Err(TraceError::Unverified(_))));
    }
}
