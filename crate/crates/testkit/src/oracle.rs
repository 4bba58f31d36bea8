//! Exhaustive least-model computation, independent of the forward-chaining
//! implementation.

use aiact_core::contracts::{ElementId, SupplyChainGraph};
use aiact_core::dsl::RequirementStatus;
use aiact_core::verify::{DischargeState, Establishment, Fulfillment};

/// Upper bound on the element count; the search is `2^n`.
pub const MAX_BRUTE_FORCE: usize = 16;

struct Clause {
    head: usize,
    body: Vec<usize>,
}

/// Enumerates every truth assignment, keeps those closed under the discharge
/// rules and returns their pointwise minimum.
pub fn brute_force_state(graph: &SupplyChainGraph) -> DischargeState {
    let mut elements: Vec<ElementId> = Vec::new();
    for r in &graph.requirements {
        elements.push(ElementId::Requirement(r.id.clone()));
    }
    for c in &graph.contracts {
        for a in &c.assumptions {
            elements.push(ElementId::Assumption {
                contract: c.id.clone(),
                id: a.id.clone(),
            });
        }
        for g in &c.guarantees {
            elements.push(ElementId::Guarantee {
                contract: c.id.clone(),
                id: g.id.clone(),
            });
        }
    }
    let n = elements.len();
    assert!(n <= MAX_BRUTE_FORCE, "{n} elements is too many to enumerate");
    let index = |e: &ElementId| elements.iter().position(|x| x == e).expect("known element");

    let mut clauses = Vec::new();
    for r in &graph.requirements {
        if r.status == RequirementStatus::Attested {
            clauses.push(Clause {
                head: index(&ElementId::Requirement(r.id.clone())),
                body: Vec::new(),
            });
        }
    }
    for c in &graph.contracts {
        let assumptions: Vec<usize> = c
            .assumptions
            .iter()
            .map(|a| {
                index(&ElementId::Assumption {
                    contract: c.id.clone(),
                    id: a.id.clone(),
                })
            })
            .collect();
        for (a, &head) in c.assumptions.iter().zip(&assumptions) {
            if a.is_accepted() {
                clauses.push(Clause { head, body: Vec::new() });
            } else if !a.refs().is_empty() {
                clauses.push(Clause {
                    head,
                    body: a
                        .refs()
                        .iter()
                        .map(|r| index(&ElementId::from_target(&r.target)))
                        .collect(),
                });
            }
        }
        for g in &c.guarantees {
            clauses.push(Clause {
                head: index(&ElementId::Guarantee {
                    contract: c.id.clone(),
                    id: g.id.clone(),
                }),
                body: assumptions.clone(),
            });
        }
    }

    let closed = |mask: u32| {
        clauses
            .iter()
            .all(|cl| mask & (1 << cl.head) != 0 || cl.body.iter().any(|&b| mask & (1 << b) == 0))
    };
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut least = full;
    for mask in 0..=full {
        if closed(mask) {
            least &= mask;
        }
    }
    assert!(closed(least), "Horn clauses have a least model");

    let mut state = DischargeState::default();
    for (i, e) in elements.iter().enumerate() {
        let holds = least & (1 << i) != 0;
        let key = e.to_string();
        match e {
            ElementId::Requirement(_) => {
                state.requirements.insert(key, Fulfillment::from_bool(holds));
            }
            ElementId::Assumption { .. } => {
                state.assumptions.insert(key, Fulfillment::from_bool(holds));
            }
            ElementId::Guarantee { .. } => {
                state.guarantees.insert(key, Establishment::from_bool(holds));
            }
        }
    }
    state
}
