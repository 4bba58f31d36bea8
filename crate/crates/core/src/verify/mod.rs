//! Discharge-state computation and report assembly.

mod cycles;
mod fixpoint;
mod trace;

use std::collections::BTreeSet;

use serde::Serialize;

pub use cycles::{detect_cycles, Cycle};
pub use fixpoint::{resolve_state, DischargeState, Establishment, Fulfillment};
pub use trace::{trace, TraceChain, TraceElement, TraceError, TraceKind};

use crate::act_mapping::{CoverageRecord, MappingTable};
use crate::contracts::{flow_check, resolve, ElementId, SupplyChainGraph};
use crate::dsl::{merge, SpecDocument};
use crate::finding::{sort_findings, Finding, FindingCode, Severity};
use crate::quality_model::{AttributeId, QualityModel};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SpecInfo {
    pub name: String,
    pub version: u64,
}

/// An assumption stipulated with `accepted`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AcceptedAssumption {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct VerificationReport {
    pub spec: SpecInfo,
    pub findings: Vec<Finding>,
    pub state: DischargeState,
    pub established: BTreeSet<AttributeId>,
    pub coverage: Vec<CoverageRecord>,
    pub cycles: Vec<Cycle>,
    pub accepted: Vec<AcceptedAssumption>,
}

impl VerificationReport {
    pub fn error_count(&self) -> usize {
        self.count(Severity::Error)
    }

    pub fn warning_count(&self) -> usize {
        self.count(Severity::Warning)
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.findings.iter().filter(|f| f.severity == severity).count()
    }

    pub fn has_errors(&self) -> bool {
        self.error_count() > 0
    }

    /// True when every guarantee in the state is established.
    pub fn all_established(&self) -> bool {
        self.state.guarantees.values().all(|g| g.is_established())
    }
}

/// A report plus what produced it, for tracing.
#[derive(Debug, Clone)]
pub struct Verification {
    pub report: VerificationReport,
    pub graph: Option<SupplyChainGraph>,
    pub model: QualityModel,
    pub mapping: MappingTable,
}

pub fn verify(docs: &[SpecDocument], model: &QualityModel, mapping: &MappingTable, strict: bool) -> VerificationReport {
    verify_with_context(docs, model, mapping, strict).report
}

pub fn verify_with_context(
    docs: &[SpecDocument],
    model: &QualityModel,
    mapping: &MappingTable,
    strict: bool,
) -> Verification {
    let mut report = VerificationReport::default();
    let mut findings = mapping.validate(model, strict);
    let finish = |mut report: VerificationReport, mut findings: Vec<Finding>, graph| {
        sort_findings(&mut findings);
        report.findings = findings;
        Verification {
            report,
            graph,
            model: model.clone(),
            mapping: mapping.clone(),
        }
    };

    let doc = match merge(docs) {
        Ok(doc) => doc,
        Err(errors) => {
            findings.extend(errors);
            return finish(report, findings, None);
        }
    };
    report.spec = SpecInfo {
        name: doc.name.clone(),
        version: doc.version,
    };
    let resolved = match resolve(&doc, model, strict) {
        Ok(resolved) => resolved,
        Err(errors) => {
            findings.extend(errors);
            return finish(report, findings, None);
        }
    };
    findings.extend(resolved.findings);
    let graph = resolved.graph;
    findings.extend(flow_check(&graph, strict));

    report.state = resolve_state(&graph);

    report.cycles = detect_cycles(&graph);
    for cycle in &report.cycles {
        findings.push(
            Finding::new(
                Severity::Warning,
                FindingCode::CircularDischarge,
                format!("circular discharge: {}", cycle.render()),
            )
            .with_spans(&cycle.spans),
        );
    }

    for c in &graph.contracts {
        for a in &c.assumptions {
            if a.is_accepted() {
                report.accepted.push(AcceptedAssumption {
                    id: format!("{}.{}", c.id, a.id),
                    text: a.text.clone(),
                });
                continue;
            }
            let element = ElementId::Assumption {
                contract: c.id.clone(),
                id: a.id.clone(),
            };
            if !report.state.holds(&element) {
                findings.push(
                    Finding::new(
                        Severity::Warning,
                        FindingCode::OpenAssumption,
                        format!("{} in contract {} is not fulfilled", a.id, c.id),
                    )
                    .with_span(&a.span),
                );
            }
            if a.refs().is_empty() {
                findings.push(
                    Finding::new(
                        Severity::Info,
                        FindingCode::EmptyDischarge,
                        format!("{} in contract {} has no discharge list", a.id, c.id),
                    )
                    .with_span(&a.span),
                );
            }
        }
    }
    report.accepted.sort();

    report.established = established_attributes(&graph, &report.state);
    report.coverage = mapping.coverage(&report.established);
    finish(report, findings, Some(graph))
}

/// Attributes of contracts whose guarantees are all established.
pub fn established_attributes(graph: &SupplyChainGraph, state: &DischargeState) -> BTreeSet<AttributeId> {
    graph
        .contracts
        .iter()
        .filter(|c| {
            c.guarantees.iter().all(|g| {
                state.holds(&ElementId::Guarantee {
                    contract: c.id.clone(),
                    id: g.id.clone(),
                })
            })
        })
        .filter_map(|c| c.attribute.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act_mapping::{builtin_mapping, Article, Ratio};
    use crate::dsl::parse;
    use crate::fixtures::{TSR_EXAMPLE, TSR_TR4_OPEN};
    use crate::quality_model::builtin_extended_model;

    fn run(src: &str) -> VerificationReport {
        let doc = parse(src, "t.csl").unwrap();
        verify(&[doc], &builtin_extended_model(), &builtin_mapping(), false)
    }

    fn a14(report: &VerificationReport) -> &CoverageRecord {
        report.coverage.iter().find(|r| r.article == Article::A14).unwrap()
    }

    #[test]
    fn tsr_all_attested() {
        let report = run(TSR_EXAMPLE);
        assert_eq!(report.error_count(), 0, "{:?}", report.findings);
        assert!(report.findings.is_empty(), "{:?}", report.findings);
        assert_eq!(
            report.state.guarantees["ExplainabilityDC.G1"],
            Establishment::Established
        );
        for a in ["A1", "A2", "A3", "A4"] {
            assert!(report.state.assumptions[&format!("ExplainabilityDC.{a}")].is_fulfilled());
        }
        let names: Vec<&str> = report.established.iter().map(AttributeId::as_str).collect();
        assert_eq!(names, ["Explainability"]);
        assert_eq!(a14(&report).ratio, Ratio::new(1, 10));
        assert!(report.cycles.is_empty());
        assert_eq!(report.spec.name, "tsr-explainability");
    }

    #[test]
    fn tsr_tr4_open() {
        let report = run(TSR_TR4_OPEN);
        assert_eq!(report.error_count(), 0);
        assert!(!report.state.assumptions["ExplainabilityDC.A3"].is_fulfilled());
        for a in ["A1", "A2", "A4"] {
            assert!(report.state.assumptions[&format!("ExplainabilityDC.{a}")].is_fulfilled());
        }
        assert_eq!(
            report.state.guarantees["ExplainabilityDC.G1"],
            Establishment::NotEstablished
        );
        assert!(report.established.is_empty());
        assert!(report.coverage.iter().all(|r| r.established == 0));
        let open: Vec<&Finding> = report
            .findings
            .iter()
            .filter(|f| f.code == FindingCode::OpenAssumption)
            .collect();
        assert_eq!(open.len(), 1);
        assert!(open[0].message.starts_with("A3 "));
        assert!(!report.all_established());
    }

    #[test]
    fn header_only_document() {
        let report = run("spec \"empty\" version 1");
        assert!(report.findings.is_empty());
        assert!(report.state.is_empty());
        assert!(report.established.is_empty());
        assert!(report.coverage.iter().all(|r| r.established == 0));
        assert!(report.all_established());
    }

    #[test]
    fn resolution_errors_abort_before_state() {
        let report = run("spec \"x\" version 1\nrequirement T owner ghost status attested");
        assert!(report.has_errors());
        assert!(report.state.is_empty());
        assert!(report.coverage.is_empty());
    }

    const MUTUAL: &str = r#"
spec "mutual" version 1
stakeholder s role "s"
contract X owner s attribute Explainability {
  assume A1 "x" discharged_by [Y.G1]
  guarantee G1 "gx"
}
contract Y owner s attribute Traceability {
  assume A1 "y" discharged_by [X.G1]
  guarantee G1 "gy"
}
"#;

    #[test]
    fn mutual_discharge_is_inert() {
        let report = run(MUTUAL);
        assert_eq!(report.state.guarantees["X.G1"], Establishment::NotEstablished);
        assert_eq!(report.state.guarantees["Y.G1"], Establishment::NotEstablished);
        assert_eq!(report.cycles.len(), 1);
        assert_eq!(report.cycles[0].ids, ["X.A1", "Y.G1", "Y.A1", "X.G1"]);
        assert_eq!(report.cycles[0].spans.len(), 4);
        assert_eq!(report.count(Severity::Warning), 3);
    }

    #[test]
    fn self_reference_is_a_cycle() {
        let report = run(
            "spec \"s\" version 1 stakeholder s role \"s\" contract C owner s attribute Safety { assume A \"a\" discharged_by [C.G] guarantee G \"g\" }",
        );
        assert_eq!(report.cycles.len(), 1);
        assert_eq!(report.cycles[0].ids, ["C.A", "C.G"]);
    }

    #[test]
    fn accepted_and_pending_assumptions() {
        let report = run(
            "spec \"s\" version 1 stakeholder s role \"s\" contract C owner s attribute Safety { assume A \"env\" accepted assume B \"todo\" guarantee G \"g\" }",
        );
        assert_eq!(report.accepted.len(), 1);
        assert_eq!(report.accepted[0].id, "C.A");
        let codes: Vec<FindingCode> = report.findings.iter().map(|f| f.code).collect();
        assert_eq!(codes, [FindingCode::OpenAssumption, FindingCode::EmptyDischarge]);
    }

    #[test]
    fn zero_assumption_contract_is_established() {
        let report = run(
            "spec \"s\" version 1 stakeholder s role \"s\" contract C owner s attribute Safety { guarantee G \"g\" }",
        );
        assert_eq!(report.established.len(), 1);
    }

    #[test]
    fn deterministic() {
        let a = run(TSR_TR4_OPEN);
        let b = run(TSR_TR4_OPEN);
        assert_eq!(a, b);
    }
}
