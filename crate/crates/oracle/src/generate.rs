//! Seeded, reproducible graph generators.

use clique_core::graph::{pair_at, pair_count};
use clique_core::{guard, Graph, NodeId};
use serde::{Deserialize, Serialize};

use crate::rng::SplitMix64;
use crate::solve::OracleError;

/// Largest `n` for which [`all_graphs`] is allowed.
pub const ALL_GRAPHS_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    ErdosRenyi { p: f64 },
    Path,
    Cycle,
    /// Centre is node 1.
    Star,
    Complete,
    Empty,
    /// The Petersen graph; `n` must be 10.
    Petersen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        Self { kind, n, seed }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, OracleError> {
    let n = spec.n;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    match spec.kind {
        GeneratorKind::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(OracleError::Spec(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = SplitMix64::new(spec.seed);
            for i in 0..pair_count(n) {
                if rng.next_f64() < p {
                    edges.push(pair_at(n, i));
                }
            }
        }
        GeneratorKind::Path => edges.extend((1..n).map(|v| (v, v + 1))),
        GeneratorKind::Cycle => {
            if n < 3 {
                return Err(OracleError::Spec(format!("a cycle needs 3 nodes, got {n}")));
            }
            edges.extend((1..n).map(|v| (v, v + 1)));
            edges.push((n, 1));
        }
        GeneratorKind::Star => edges.extend((2..=n).map(|v| (1, v))),
        GeneratorKind::Complete => edges.extend((0..pair_count(n)).map(|i| pair_at(n, i))),
        GeneratorKind::Empty => {}
        GeneratorKind::Petersen => {
            if n != 10 {
                return Err(OracleError::Spec(format!("the Petersen graph has 10 nodes, not {n}")));
            }
            for i in 0..5 {
                edges.push((i + 1, (i + 1) % 5 + 1));
                edges.push((i + 1, i + 6));
                edges.push((i + 6, (i + 2) % 5 + 6));
            }
        }
    }
    Graph::build(n, &edges).map_err(|e| OracleError::Spec(e.to_string()))
}

/// Every labelled graph on `n` nodes exactly once. Bit `i` of the index
/// selects the `i`-th pair in lexicographic order.
pub fn all_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, OracleError> {
    if n > ALL_GRAPHS_MAX_N {
        return Err(OracleError::TooManyNodes {
            n,
            max: ALL_GRAPHS_MAX_N,
        });
    }
    let pairs = pair_count(n);
    guard::check_bits(pairs)?;
    Ok((0..1u64 << pairs).map(move |mask| graph_from_mask(n, mask)))
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = (0..pair_count(n))
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| pair_at(n, i))
        .collect();
    Graph::build(n, &edges).expect("pairs from pair_at are valid")
}
