//! Circular discharge detection over the dependency graph
//! `assumption -> target` and `guarantee -> assumptions of its contract`.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Serialize, Serializer};

use crate::contracts::{ElementId, SupplyChainGraph};
use crate::dsl::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// Element ids, starting at the lexicographically smallest.
    pub ids: Vec<String>,
    pub spans: Vec<SourceSpan>,
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.ids.serialize(serializer)
    }
}

impl Cycle {
    pub fn render(&self) -> String {
        self.ids.join(" -> ")
    }
}

/// Adjacency keyed by display id, successors sorted.
fn dependency_edges(graph: &SupplyChainGraph) -> BTreeMap<String, BTreeSet<String>> {
    let mut adj: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for r in &graph.requirements {
        adj.entry(r.id.clone()).or_default();
    }
    for c in &graph.contracts {
        let assumption_ids: Vec<String> = c
            .assumptions
            .iter()
            .map(|a| {
                ElementId::Assumption {
                    contract: c.id.clone(),
                    id: a.id.clone(),
                }
                .to_string()
            })
            .collect();
        for g in &c.guarantees {
            let gid = ElementId::Guarantee {
                contract: c.id.clone(),
                id: g.id.clone(),
            }
            .to_string();
            adj.entry(gid).or_default().extend(assumption_ids.iter().cloned());
        }
        for (a, aid) in c.assumptions.iter().zip(&assumption_ids) {
            let targets = a.refs().iter().map(|r| ElementId::from_target(&r.target).to_string());
            adj.entry(aid.clone()).or_default().extend(targets);
        }
    }
    adj
}

/// Strongly connected components with at least two elements (or a self
/// loop). Each is ordered by a depth-first walk from its smallest id that
/// stays inside the component.
pub fn detect_cycles(graph: &SupplyChainGraph) -> Vec<Cycle> {
    let adj_by_id = dependency_edges(graph);
    let ids: Vec<&String> = adj_by_id.keys().collect();
    let position: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
    let adj: Vec<Vec<usize>> = adj_by_id
        .values()
        .map(|succ| succ.iter().filter_map(|s| position.get(s.as_str()).copied()).collect())
        .collect();
    let mut digraph: DiGraph<(), ()> = DiGraph::with_capacity(ids.len(), 0);
    for _ in &ids {
        digraph.add_node(());
    }
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            digraph.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
        }
    }

    let mut cycles = Vec::new();
    for component in tarjan_scc(&digraph) {
        let component: Vec<usize> = component.into_iter().map(NodeIndex::index).collect();
        let members: BTreeSet<usize> = component.iter().copied().collect();
        let is_cycle = members.len() > 1 || adj[component[0]].contains(&component[0]);
        if !is_cycle {
            continue;
        }
        // ids are sorted, so the smallest index is the smallest id
        let start = *members.iter().next().expect("non-empty component");
        let mut order = Vec::with_capacity(members.len());
        let mut seen = BTreeSet::new();
        let mut pending = vec![start];
        while let Some(v) = pending.pop() {
            if !seen.insert(v) {
                continue;
            }
            order.push(v);
            for &w in adj[v].iter().rev() {
                if members.contains(&w) && !seen.contains(&w) {
                    pending.push(w);
                }
            }
        }
        let cycle_ids: Vec<String> = order.iter().map(|&i| ids[i].clone()).collect();
        let spans = order.iter().filter_map(|&i| element_span(graph, ids[i])).collect();
        cycles.push(Cycle { ids: cycle_ids, spans });
    }
    cycles.sort_by(|a, b| a.ids.cmp(&b.ids));
    cycles
}

fn element_span(graph: &SupplyChainGraph, id: &str) -> Option<SourceSpan> {
    let element = match id.split_once('.') {
        None => ElementId::Requirement(id.to_string()),
        Some((contract, local)) => {
            let c = graph.contract(contract)?;
            if c.guarantees.iter().any(|g| g.id == local) {
                ElementId::Guarantee {
                    contract: contract.to_string(),
                    id: local.to_string(),
                }
            } else {
                ElementId::Assumption {
                    contract: contract.to_string(),
                    id: local.to_string(),
                }
            }
        }
    };
    graph.span_of(&element).cloned()
}
