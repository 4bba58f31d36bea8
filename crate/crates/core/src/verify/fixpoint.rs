//! Least fixpoint of the discharge rules.
//!
//! The rules are Horn clauses over three kinds of element:
//!
//! * requirement  <- (fact iff `attested`)
//! * assumption   <- fact if `accepted`, else all of its targets (no rule when the list is empty)
//! * guarantee    <- all assumptions of its contract (fact when there are none)
//!
//! Forward chaining with per-rule remaining-premise counters reaches the
//! least model in time linear in the number of rule premises, independent of
//! visiting order.

use std::collections::{BTreeMap, VecDeque};

use serde::{Serialize, Serializer};

use crate::contracts::{ElementId, SupplyChainGraph};
use crate::dsl::RequirementStatus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fulfillment {
    Fulfilled,
    Unfulfilled,
}

impl Fulfillment {
    pub fn from_bool(fulfilled: bool) -> Self {
        if fulfilled {
            Self::Fulfilled
        } else {
            Self::Unfulfilled
        }
    }

    pub fn is_fulfilled(self) -> bool {
        self == Self::Fulfilled
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fulfilled => "fulfilled",
            Self::Unfulfilled => "unfulfilled",
        }
    }
}

impl Serialize for Fulfillment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Establishment {
    Established,
    NotEstablished,
}

impl Establishment {
    pub fn from_bool(established: bool) -> Self {
        if established {
            Self::Established
        } else {
            Self::NotEstablished
        }
    }

    pub fn is_established(self) -> bool {
        self == Self::Established
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Established => "established",
            Self::NotEstablished => "not-established",
        }
    }
}

impl Serialize for Establishment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Fulfilment of every element, keyed by display id (`TR1`, `C.A1`, `C.G1`).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DischargeState {
    pub requirements: BTreeMap<String, Fulfillment>,
    pub assumptions: BTreeMap<String, Fulfillment>,
    pub guarantees: BTreeMap<String, Establishment>,
}

impl DischargeState {
    pub fn holds(&self, element: &ElementId) -> bool {
        let key = element.to_string();
        match element {
            ElementId::Requirement(_) => self.requirements.get(&key).is_some_and(|f| f.is_fulfilled()),
            ElementId::Assumption { .. } => self.assumptions.get(&key).is_some_and(|f| f.is_fulfilled()),
            ElementId::Guarantee { .. } => self.guarantees.get(&key).is_some_and(|g| g.is_established()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.requirements.is_empty() && self.assumptions.is_empty() && self.guarantees.is_empty()
    }
}

struct Rule {
    head: usize,
    remaining: usize,
}

/// Computes the least fixpoint over a resolved graph.
pub fn resolve_state(graph: &SupplyChainGraph) -> DischargeState {
    let mut index: BTreeMap<ElementId, usize> = BTreeMap::new();
    let intern = |e: ElementId, index: &mut BTreeMap<ElementId, usize>| -> usize {
        let next = index.len();
        *index.entry(e).or_insert(next)
    };

    let mut rules: Vec<Rule> = Vec::new();
    // premise element -> rules it appears in (once per rule)
    let mut watchers: Vec<Vec<usize>> = Vec::new();
    let mut facts: Vec<usize> = Vec::new();

    for r in &graph.requirements {
        let id = intern(ElementId::Requirement(r.id.clone()), &mut index);
        if r.status == RequirementStatus::Attested {
            facts.push(id);
        }
    }
    let mut pending_rules: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in &graph.contracts {
        let assumption_ids: Vec<usize> = c
            .assumptions
            .iter()
            .map(|a| {
                intern(
                    ElementId::Assumption {
                        contract: c.id.clone(),
                        id: a.id.clone(),
                    },
                    &mut index,
                )
            })
            .collect();
        for (a, &head) in c.assumptions.iter().zip(&assumption_ids) {
            if a.is_accepted() {
                facts.push(head);
            } else if !a.refs().is_empty() {
                let mut body: Vec<usize> = a
                    .refs()
                    .iter()
                    .map(|r| intern(ElementId::from_target(&r.target), &mut index))
                    .collect();
                body.sort_unstable();
                body.dedup();
                pending_rules.push((head, body));
            }
        }
        for g in &c.guarantees {
            let head = intern(
                ElementId::Guarantee {
                    contract: c.id.clone(),
                    id: g.id.clone(),
                },
                &mut index,
            );
            if assumption_ids.is_empty() {
                facts.push(head);
            } else {
                let mut body = assumption_ids.clone();
                body.sort_unstable();
                body.dedup();
                pending_rules.push((head, body));
            }
        }
    }

    watchers.resize(index.len(), Vec::new());
    for (head, body) in pending_rules {
        let rule = rules.len();
        for &premise in &body {
            watchers[premise].push(rule);
        }
        rules.push(Rule {
            head,
            remaining: body.len(),
        });
    }

    let mut holds = vec![false; index.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for f in facts {
        if !holds[f] {
            holds[f] = true;
            queue.push_back(f);
        }
    }
    while let Some(e) = queue.pop_front() {
        for &rule in &watchers[e] {
            let r = &mut rules[rule];
            r.remaining -= 1;
            if r.remaining == 0 && !holds[r.head] {
                holds[r.head] = true;
                queue.push_back(r.head);
            }
        }
    }

    let mut state = DischargeState::default();
    for r in &graph.requirements {
        let e = ElementId::Requirement(r.id.clone());
        state
            .requirements
            .insert(e.to_string(), Fulfillment::from_bool(holds[index[&e]]));
    }
    for c in &graph.contracts {
        for a in &c.assumptions {
            let e = ElementId::Assumption {
                contract: c.id.clone(),
                id: a.id.clone(),
            };
            state
                .assumptions
                .insert(e.to_string(), Fulfillment::from_bool(holds[index[&e]]));
        }
        for g in &c.guarantees {
            let e = ElementId::Guarantee {
                contract: c.id.clone(),
                id: g.id.clone(),
            };
            state
                .guarantees
                .insert(e.to_string(), Establishment::from_bool(holds[index[&e]]));
        }
    }
    state
}
