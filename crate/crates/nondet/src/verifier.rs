//! Nondeterministic verifiers and their brute-force existential oracle.

use clique_core::{guard, run, Bits, ExecutionReport, Graph, NodeProgram};
use rayon::prelude::*;

use crate::{Labelling, NondetError};

/// A constant-round program reading a per-node label from `aux`. States are
/// cloneable so local searches can branch on them.
pub trait Verifier: NodeProgram<State: Clone> {
    fn name(&self) -> String;

    /// Label width the verifier reads; labels of any other length are rejected.
    fn label_bits(&self, n: usize) -> usize;

    fn rounds(&self, n: usize) -> usize;

    /// True once the node is certain to output 0. Only used to prune searches.
    fn doomed(&self, _state: &Self::State) -> bool {
        false
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub accepted: bool,
    pub report: ExecutionReport,
}

/// A single run of `verifier` on `g` with labels `z`.
pub fn verify_certificate<V: Verifier>(verifier: &V, g: &Graph, z: &Labelling) -> Result<Verdict, NondetError> {
    z.check(g.n())?;
    let report = run(verifier, g, Some(&z.labels), verifier.rounds(g.n()))?;
    Ok(Verdict { accepted: report.accepted(), report })
}

/// Searches every labelling whose labels are exactly `size_bound` bits and
/// returns the first accepted one in index order.
pub fn exists_certificate<V: Verifier>(
    verifier: &V,
    g: &Graph,
    size_bound: usize,
) -> Result<Option<Labelling>, NondetError> {
    let n = g.n();
    let bits = n * size_bound;
    guard::check_bits(bits)?;
    if bits >= 64 {
        return Err(NondetError::Unsupported(format!("{bits}-bit certificate space")));
    }
    let found = (0..1u64 << bits).into_par_iter().find_map_first(|x| {
        let z = Labelling::from_index(n, size_bound, x);
        match verify_certificate(verifier, g, &z) {
            Ok(v) if v.accepted => Some(Ok(z)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

pub(crate) fn accepting(bits: &Bits) -> bool {
    bits.len() == 1 && bits.get(0)
}
