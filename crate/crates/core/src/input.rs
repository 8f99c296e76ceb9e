//! Private input bits: each potential edge's presence bit belongs to exactly
//! one of its endpoints.
//!
//! Ownership follows a round-robin tournament: `u` owns `{u, v}` iff
//! `(v - u) mod n` lies in `1..=floor((n-1)/2)`. For even `n` the pair at
//! offset exactly `n/2` goes to the smaller id. Every node therefore owns at
//! least `floor((n-1)/2)` pairs and can compute the owner of any pair from ids.

use crate::graph::{Graph, NodeId};

/// Owner of the unordered pair `{u, v}` in an `n`-node clique.
pub fn owner(n: usize, u: NodeId, v: NodeId) -> NodeId {
    debug_assert!(u != v && u >= 1 && v >= 1 && u <= n && v <= n);
    let d = (v + n - u) % n;
    let half = (n - 1) / 2;
    if (1..=half).contains(&d) {
        u
    } else if n.is_multiple_of(2) && d == n / 2 {
        u.min(v)
    } else {
        v
    }
}

/// Partners `v` (ascending) such that `u` owns `{u, v}`.
pub fn owned_partners(n: usize, u: NodeId) -> impl Iterator<Item = NodeId> {
    (1..=n).filter(move |&v| v != u && owner(n, u, v) == u)
}

/// The input one node starts with: presence bits of the pairs it owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeInput {
    /// `(partner, edge present)` in ascending partner order.
    pub pairs: Vec<(NodeId, bool)>,
}

impl NodeInput {
    pub fn for_node(g: &Graph, v: NodeId) -> Self {
        Self {
            pairs: owned_partners(g.n(), v).map(|u| (u, g.adjacent(v, u))).collect(),
        }
    }

    /// Builds the input from an arbitrary adjacency oracle; used when a node
    /// derives the input of a simulated node from its own local knowledge.
    pub fn from_fn(n: usize, v: NodeId, mut adjacent: impl FnMut(NodeId) -> bool) -> Self {
        Self {
            pairs: owned_partners(n, v).map(|u| (u, adjacent(u))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn owned_neighbours(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.pairs.iter().filter(|p| p.1).map(|p| p.0)
    }

    pub fn bit_for(&self, partner: NodeId) -> Option<bool> {
        self.pairs
            .binary_search_by_key(&partner, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }
}

/// Ownership of every pair together with each node's owned bits.
#[derive(Debug, Clone)]
pub struct InputAssignment {
    n: usize,
    inputs: Vec<NodeInput>,
}

pub fn assign_inputs(g: &Graph) -> InputAssignment {
    InputAssignment {
        n: g.n(),
        inputs: g.nodes().map(|v| NodeInput::for_node(g, v)).collect(),
    }
}

impl InputAssignment {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn owner(&self, u: NodeId, v: NodeId) -> NodeId {
        owner(self.n, u, v)
    }

    pub fn input(&self, v: NodeId) -> &NodeInput {
        &self.inputs[v - 1]
    }

    pub fn into_inputs(self) -> Vec<NodeInput> {
        self.inputs
    }
}
