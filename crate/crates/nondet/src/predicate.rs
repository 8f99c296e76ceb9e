//! Whole-graph predicates used as languages for the Σ₂ protocol.

use std::fmt;
use std::str::FromStr;

use clique_core::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphPredicate {
    HasEdge,
    IsConnected,
    HasTriangle,
    /// Every graph.
    All,
}

impl GraphPredicate {
    pub const ALL: [GraphPredicate; 4] = [
        GraphPredicate::HasEdge,
        GraphPredicate::IsConnected,
        GraphPredicate::HasTriangle,
        GraphPredicate::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphPredicate::HasEdge => "has-edge",
            GraphPredicate::IsConnected => "is-connected",
            GraphPredicate::HasTriangle => "has-triangle",
            GraphPredicate::All => "all",
        }
    }

    pub fn eval(self, g: &Graph) -> bool {
        match self {
            GraphPredicate::HasEdge => g.edge_count() > 0,
            GraphPredicate::IsConnected => is_connected(g),
            GraphPredicate::HasTriangle => g
                .edges()
                .any(|(u, v)| g.neighbours(u).iter().any(|w| w > v && g.adjacent(v, w))),
            GraphPredicate::All => true,
        }
    }
}

fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for w in g.neighbours(u).iter() {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

impl fmt::Display for GraphPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphPredicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GraphPredicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown predicate `{s}`"))
    }
}
