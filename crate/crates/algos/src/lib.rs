//! Distributed algorithms for parameterized problems in the congested clique:
//! k-dominating set, k-vertex cover, k-independent set (directly and through
//! a simulated reduction to dominating set), and the supporting reductions.

pub mod hosted;
pub mod kvc;
pub mod partition;
pub mod reduction;
pub mod search;

use clique_core::engine::{run_with, EngineError, Execution, ExecutionReport, NodeProgram, RunOptions};
use clique_core::sets::decode_answer;
use clique_core::{id_bits, Bits, Graph, SetKind, VertexSet};
use thiserror::Error;

pub use hosted::Hosted;
pub use kvc::VertexCoverProgram;
pub use partition::PartitionLabels;
pub use reduction::{build_col_to_is_reduction, build_is_to_ds_reduction, ReductionGraph, ReductionLayout, Role};
pub use search::{PartitionSearch, Target};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgoError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AlgoConfig {
    pub execution: Execution,
    /// Overrides the program's own round budget as the engine's timeout.
    pub max_rounds: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct AlgoOutcome {
    pub set: Option<VertexSet>,
    pub report: ExecutionReport,
}

fn check_params(g: &Graph, k: usize, min_k: usize) -> Result<(), AlgoError> {
    if g.n() < 2 {
        return Err(AlgoError::Parameter(format!("need at least 2 nodes, got {}", g.n())));
    }
    if k < min_k || k > g.n() {
        return Err(AlgoError::Parameter(format!("k = {k} outside {min_k}..={}", g.n())));
    }
    Ok(())
}

fn execute<P: NodeProgram>(
    program: &P,
    g: &Graph,
    budget: usize,
    cfg: &AlgoConfig,
) -> Result<ExecutionReport, AlgoError> {
    let opts = RunOptions::new(cfg.max_rounds.unwrap_or(budget)).with_execution(cfg.execution);
    Ok(run_with(program, g, None, &opts)?)
}

fn unanimous(report: &ExecutionReport) -> Result<&Bits, AlgoError> {
    report
        .unanimous_output()
        .ok_or_else(|| AlgoError::Internal("nodes disagree on the answer".into()))
}

fn decode(bits: &Bits, n: usize, kind: SetKind) -> Result<Option<VertexSet>, AlgoError> {
    decode_answer(bits, id_bits(n))
        .map(|a| a.map(|m| VertexSet::new(kind, m)))
        .ok_or_else(|| AlgoError::Internal(format!("malformed answer {bits}")))
}

/// A dominating set of at most `k` nodes, or none.
pub fn k_dominating_set(g: &Graph, k: usize, cfg: &AlgoConfig) -> Result<AlgoOutcome, AlgoError> {
    partition_search(g, k, Target::Dominating, cfg)
}

/// An independent set of exactly `k` nodes, or none, found by partition search.
pub fn k_independent_set_direct(g: &Graph, k: usize, cfg: &AlgoConfig) -> Result<AlgoOutcome, AlgoError> {
    partition_search(g, k, Target::Independent, cfg)
}

fn partition_search(g: &Graph, k: usize, target: Target, cfg: &AlgoConfig) -> Result<AlgoOutcome, AlgoError> {
    check_params(g, k, 1)?;
    let program = PartitionSearch::new(g.n(), k, target);
    let report = execute(&program, g, program.total_rounds(), cfg)?;
    let kind = match target {
        Target::Dominating => SetKind::Dominating,
        Target::Independent => SetKind::Independent,
    };
    let set = decode(unanimous(&report)?, g.n(), kind)?;
    Ok(AlgoOutcome { set, report })
}

/// A vertex cover of at most `k` nodes, or none, in at most `k + 2` rounds.
pub fn k_vertex_cover(g: &Graph, k: usize, cfg: &AlgoConfig) -> Result<AlgoOutcome, AlgoError> {
    check_params(g, k, 1)?;
    let program = VertexCoverProgram::new(g.n(), k);
    let report = execute(&program, g, program.total_rounds(), cfg)?;
    let set = decode(unanimous(&report)?, g.n(), SetKind::Cover)?;
    Ok(AlgoOutcome { set, report })
}

/// An independent set of `k` nodes, found by running the k-dominating-set
/// program on the reduction graph `G'`, simulated by the nodes of `G`.
pub fn k_independent_set_via_ds(g: &Graph, k: usize, cfg: &AlgoConfig) -> Result<AlgoOutcome, AlgoError> {
    check_params(g, k, 1)?;
    let layout = ReductionLayout::new(g.n(), k);
    let guest = PartitionSearch::new(layout.derived_n(), k, Target::Dominating);
    let guest_rounds = guest.total_rounds();
    let program = Hosted::new(layout, guest);
    let report = execute(&program, g, program.host_rounds(guest_rounds), cfg)?;
    let out = unanimous(&report)?;
    if out.is_empty() || out.get(0) {
        return Err(AlgoError::Internal(
            "simulated dominating set violates the one-per-clique structure or the simulation faulted".into(),
        ));
    }
    let set = decode(&out.slice(1, out.len() - 1), g.n(), SetKind::Independent)?;
    Ok(AlgoOutcome { set, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::build(n, e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (1..=n).map(|v| (v, v % n + 1)).collect();
        g(n, &e)
    }

    fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    const CFG: AlgoConfig = AlgoConfig {
        execution: Execution::Sequential,
        max_rounds: None,
    };

    #[test]
    fn dominating_examples() {
        let s = k_dominating_set(&complete(5), 1, &CFG).unwrap().set.unwrap();
        assert_eq!(s.len(), 1);
        assert!(k_dominating_set(&cycle(5), 1, &CFG).unwrap().set.is_none());
        let s = k_dominating_set(&cycle(5), 2, &CFG).unwrap().set.unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn cover_examples() {
        let star = g(6, &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]);
        let o = k_vertex_cover(&star, 1, &CFG).unwrap();
        assert_eq!(o.set.unwrap().members, vec![1]);
        assert!(o.report.rounds <= 3);
        assert!(k_vertex_cover(&complete(3), 1, &CFG).unwrap().set.is_none());
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(k_vertex_cover(&p4, 2, &CFG).unwrap().set.unwrap().len(), 2);
    }

    #[test]
    fn independent_examples() {
        assert!(k_independent_set_direct(&cycle(5), 2, &CFG).unwrap().set.is_some());
        assert!(k_independent_set_direct(&complete(6), 2, &CFG).unwrap().set.is_none());
        assert!(k_independent_set_via_ds(&complete(4), 2, &CFG).unwrap().set.is_none());
        let s = k_independent_set_via_ds(&Graph::empty(4), 3, &CFG).unwrap().set.unwrap();
        assert_eq!(s.len(), 3);
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        let s = k_independent_set_via_ds(&p4, 2, &CFG).unwrap().set.unwrap();
        assert_eq!(s.len(), 2);
        assert!(!p4.adjacent(s.members[0], s.members[1]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(k_dominating_set(&Graph::empty(1), 1, &CFG).is_err());
        assert!(k_vertex_cover(&Graph::empty(3), 0, &CFG).is_err());
        assert!(k_vertex_cover(&Graph::empty(3), 4, &CFG).is_err());
    }
}
