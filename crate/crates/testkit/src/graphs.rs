//! Resolvable supply-chain documents with at most a fixed number of
//! discharge elements.

use aiact_core::contracts::{resolve, SupplyChainGraph};
use aiact_core::dsl::{
    AssumeDecl, ContractDecl, DischargeDecl, GuaranteeDecl, RefDecl, RefTarget, RequirementDecl, RequirementStatus,
    SourceSpan, SpecDocument, StakeholderDecl,
};
use aiact_core::quality_model::builtin_extended_model;
use proptest::prelude::*;

pub const MAX_ELEMENTS: usize = 12;

const ATTRIBUTES: &[&str] = &[
    "Explainability",
    "Traceability",
    "Robustness",
    "Fairness",
    "Monitorability",
];

#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub doc: SpecDocument,
    /// Whether a discharge cycle was planted.
    pub planted_cycle: bool,
}

impl GeneratedGraph {
    pub fn graph(&self) -> SupplyChainGraph {
        resolve(&self.doc, &builtin_extended_model(), false)
            .expect("generated documents resolve")
            .graph
    }
}

struct Entropy<'a> {
    words: &'a [u32],
    pos: usize,
}

impl Entropy<'_> {
    fn below(&mut self, n: usize) -> usize {
        let w = self.words[self.pos % self.words.len()] as usize;
        self.pos += 1;
        if n == 0 {
            0
        } else {
            w % n
        }
    }
}

fn span() -> SourceSpan {
    SourceSpan::default()
}

fn reference(target: RefTarget) -> RefDecl {
    RefDecl { target, span: span() }
}

fn guarantee_ref(contract: &str, guarantee: &str) -> RefDecl {
    reference(RefTarget::Guarantee {
        contract: contract.to_string(),
        guarantee: guarantee.to_string(),
    })
}

fn build(words: &[u32], plant_cycle: bool) -> GeneratedGraph {
    let mut e = Entropy { words, pos: 0 };
    let mut doc = SpecDocument::new("generated", 1);

    let stakeholders = 1 + e.below(4);
    for i in 0..stakeholders {
        doc.stakeholders.push(StakeholderDecl {
            id: format!("s{i}"),
            role: format!("role {i}"),
            span: span(),
        });
    }

    let mut budget = MAX_ELEMENTS;
    let requirements = e.below(6);
    for i in 0..requirements {
        let status = match e.below(100) {
            0..=49 => RequirementStatus::Attested,
            50..=84 => RequirementStatus::Open,
            _ => RequirementStatus::NotApplicable,
        };
        doc.requirements.push(RequirementDecl {
            id: format!("R{i}"),
            owner: format!("s{}", e.below(stakeholders)),
            status,
            text: None,
            span: span(),
        });
        budget -= 1;
    }

    let wanted_contracts = 1 + e.below(3);
    for i in 0..wanted_contracts {
        if budget == 0 {
            break;
        }
        let guarantees = (1 + e.below(2)).min(budget);
        budget -= guarantees;
        let assumptions = e.below(4).min(budget);
        budget -= assumptions;
        doc.contracts.push(ContractDecl {
            id: format!("C{i}"),
            owner: format!("s{}", e.below(stakeholders)),
            attribute: ATTRIBUTES[e.below(ATTRIBUTES.len())].to_string(),
            assumptions: (0..assumptions)
                .map(|a| AssumeDecl {
                    id: format!("A{a}"),
                    text: format!("assumption {a}"),
                    discharge: DischargeDecl::Pending,
                    span: span(),
                })
                .collect(),
            guarantees: (0..guarantees)
                .map(|g| GuaranteeDecl {
                    id: format!("G{g}"),
                    text: format!("guarantee {g}"),
                    span: span(),
                })
                .collect(),
            span: span(),
        });
    }

    // Without a planted cycle, guarantee references only point to earlier
    // contracts, which keeps the dependency graph acyclic.
    let guarantee_ids: Vec<Vec<String>> = doc
        .contracts
        .iter()
        .map(|c| c.guarantees.iter().map(|g| g.id.clone()).collect())
        .collect();
    let contract_ids: Vec<String> = doc.contracts.iter().map(|c| c.id.clone()).collect();
    for (ci, contract) in doc.contracts.iter_mut().enumerate() {
        let reachable = if plant_cycle { contract_ids.len() } else { ci };
        let mut targets: Vec<RefTarget> = (0..requirements)
            .map(|r| RefTarget::Requirement(format!("R{r}")))
            .collect();
        for cj in 0..reachable {
            for g in &guarantee_ids[cj] {
                targets.push(RefTarget::Guarantee {
                    contract: contract_ids[cj].clone(),
                    guarantee: g.clone(),
                });
            }
        }
        for a in &mut contract.assumptions {
            a.discharge = match e.below(10) {
                0 => DischargeDecl::Accepted,
                1 => DischargeDecl::Pending,
                _ if targets.is_empty() => DischargeDecl::Pending,
                _ => {
                    let mut refs: Vec<RefDecl> = (0..1 + e.below(3))
                        .map(|_| reference(targets[e.below(targets.len())].clone()))
                        .collect();
                    refs.dedup_by(|a, b| a.target == b.target);
                    DischargeDecl::By(refs)
                }
            };
        }
    }

    let mut planted = false;
    if plant_cycle {
        let with_assumptions: Vec<usize> = (0..doc.contracts.len())
            .filter(|&i| !doc.contracts[i].assumptions.is_empty())
            .collect();
        if !with_assumptions.is_empty() {
            let i = with_assumptions[e.below(with_assumptions.len())];
            let partners: Vec<usize> = with_assumptions.iter().copied().filter(|&j| j >= i).collect();
            let j = partners[e.below(partners.len())];
            let (ci, cj) = (contract_ids[i].clone(), contract_ids[j].clone());
            let add = |c: &mut ContractDecl, target: RefDecl| match &mut c.assumptions[0].discharge {
                DischargeDecl::By(refs) => {
                    if !refs.iter().any(|r| r.target == target.target) {
                        refs.push(target);
                    }
                }
                other => *other = DischargeDecl::By(vec![target]),
            };
            add(&mut doc.contracts[i], guarantee_ref(&cj, "G0"));
            if i != j {
                add(&mut doc.contracts[j], guarantee_ref(&ci, "G0"));
            }
            planted = true;
        }
    }

    GeneratedGraph {
        doc,
        planted_cycle: planted,
    }
}

/// Documents with 1-4 stakeholders and at most [`MAX_ELEMENTS`] discharge
/// elements; about one in five has a planted discharge cycle.
pub fn arb_graph() -> impl Strategy<Value = GeneratedGraph> {
    (prop::collection::vec(any::<u32>(), 64), prop::bool::weighted(0.2))
        .prop_map(|(words, cyclic)| build(&words, cyclic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use aiact_core::verify::detect_cycles;
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    #[test]
    fn generated_graphs_resolve_and_cycles_match_plan() {
        let mut runner = TestRunner::deterministic();
        for _ in 0..300 {
            let g = arb_graph().new_tree(&mut runner).unwrap().current();
            let graph = g.graph();
            assert!(graph.element_count() <= MAX_ELEMENTS);
            let cycles = detect_cycles(&graph);
            if g.planted_cycle {
                assert!(!cycles.is_empty());
            } else {
                assert!(cycles.is_empty(), "{:?}", g.doc);
            }
        }
    }
}
