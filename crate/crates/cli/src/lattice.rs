//! Rendering the sublattice a model's predicates generate on one object.
//!
//! Starting from the named predicates (plus bottom and top), the set is
//! closed under meet, join and orthocomplement, then laid out as a Hasse
//! diagram: nodes sorted by rank, edges the covering relation. Sublattices
//! generated this way can explode in higher dimensions, so the closure is
//! capped.

use prehilb_core::Subobject;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Model;

pub const MAX_NODES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeNode {
    pub label: String,
    pub rank: usize,
    pub proj: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeGraph {
    pub object: String,
    pub dim: usize,
    pub nodes: Vec<LatticeNode>,
    /// Covering relations, as (lower, upper) node indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("the generated sublattice exceeds {MAX_NODES} elements")]
    TooLarge,
}

/// Closes the object's named predicates under meet, join and perp and lays
/// out the Hasse diagram.
pub fn lattice_graph(model: &Model, object: &str) -> Result<LatticeGraph, LatticeError> {
    let dim = model
        .object_dim(object)
        .ok_or_else(|| LatticeError::UnknownObject(object.to_string()))?;

    let named: Vec<(&String, &Subobject)> = model
        .predicates()
        .filter(|(_, p)| p.object == object)
        .map(|(name, p)| (name, &p.subobject))
        .collect();

    let mut elements = vec![Subobject::bottom(dim)];
    let push_new = |elements: &mut Vec<Subobject>, sub: Subobject| {
        if !elements.contains(&sub) {
            elements.push(sub);
        }
    };
    push_new(&mut elements, Subobject::top(dim));
    for (_, sub) in &named {
        push_new(&mut elements, (*sub).clone());
    }

    // worklist closure under the three operations
    let mut stable = false;
    while !stable {
        stable = true;
        let snapshot = elements.clone();
        for (i, a) in snapshot.iter().enumerate() {
            let before = elements.len();
            push_new(&mut elements, a.perp());
            for b in snapshot.iter().take(i + 1) {
                push_new(&mut elements, a.meet(b));
                push_new(&mut elements, a.join(b));
            }
            if elements.len() > MAX_NODES {
                return Err(LatticeError::TooLarge);
            }
            if elements.len() != before {
                stable = false;
            }
        }
    }

    // deterministic layout: by rank, then by projection text
    let mut keyed: Vec<(usize, String, Subobject)> = elements
        .into_iter()
        .map(|s| (s.rank(), s.projection().to_string(), s))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let nodes: Vec<LatticeNode> = keyed
        .iter()
        .enumerate()
        .map(|(idx, (rank, proj, sub))| {
            let mut parts: Vec<String> = Vec::new();
            if sub.is_bottom() {
                parts.push("bot".to_string());
            }
            if sub.is_top() {
                parts.push("top".to_string());
            }
            for (name, named_sub) in &named {
                if *named_sub == sub {
                    parts.push((*name).clone());
                }
            }
            let name = if parts.is_empty() { format!("s{idx}") } else { parts.join("=") };
            LatticeNode { label: format!("{name} (rank {rank})"), rank: *rank, proj: proj.clone() }
        })
        .collect();

    let subs: Vec<&Subobject> = keyed.iter().map(|(_, _, s)| s).collect();
    let mut edges = Vec::new();
    for lo in 0..subs.len() {
        for hi in 0..subs.len() {
            if lo == hi || !subs[lo].leq(subs[hi]) {
                continue;
            }
            let covered = (0..subs.len()).any(|mid| {
                mid != lo
                    && mid != hi
                    && subs[lo].leq(subs[mid])
                    && subs[mid].leq(subs[hi])
            });
            if !covered {
                edges.push((lo, hi));
            }
        }
    }

    Ok(LatticeGraph { object: object.to_string(), dim, nodes, edges })
}

/// Graphviz rendering: bottom-up ranks, nodes labeled by name and rank.
pub fn to_dot(graph: &LatticeGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph clsub {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for (idx, node) in graph.nodes.iter().enumerate() {
        out.push_str(&format!("  n{idx} [label=\"{}\"];\n", node.label));
    }
    for (lo, hi) in &graph.edges {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}
