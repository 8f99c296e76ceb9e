//! Exhaustive solvers. Witnesses are canonical: the smallest size first, then
//! the lexicographically smallest member list.

use clique_core::guard::{self, GuardError};
use clique_core::{Graph, NodeId, NodeSet, SetKind, VertexSet};
use itertools::Itertools;
use thiserror::Error;

use crate::check::{is_cover, is_independent};

/// Largest `n` for [`chromatic_number_at_most`].
pub const CHROMATIC_MAX_N: usize = 16;
/// Largest `n` for [`max_independent_set_size`].
pub const MIS_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("{n} nodes exceed the oracle limit of {max}")]
    TooManyNodes { n: usize, max: usize },
    #[error("invalid generator spec: {0}")]
    Spec(String),
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Number of subsets of size `lo..=hi` of an `n`-set, saturating.
fn subsets_between(n: usize, lo: usize, hi: usize) -> u128 {
    (lo..=hi.min(n)).fold(0u128, |acc, s| acc.saturating_add(binomial(n, s)))
}

/// The first subset (by size, then lexicographically) of size `lo..=hi` accepted by `ok`.
fn first_subset(
    n: usize,
    lo: usize,
    hi: usize,
    mut ok: impl FnMut(&[NodeId]) -> bool,
) -> Result<Option<Vec<NodeId>>, OracleError> {
    guard::check(subsets_between(n, lo, hi))?;
    for size in lo..=hi.min(n) {
        if let Some(s) = (1..=n).combinations(size).find(|s| ok(s)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A dominating set of size at most `k`, if any.
pub fn has_dominating_set(g: &Graph, k: usize) -> Result<Option<VertexSet>, OracleError> {
    let n = g.n();
    let closed: Vec<NodeSet> = g.nodes().map(|v| g.closed_neighbourhood(v)).collect();
    let found = first_subset(n, 0, k, |s| {
        let mut covered = NodeSet::with_capacity(n);
        for &v in s {
            covered.union_with(&closed[v - 1]);
        }
        covered.covers(n)
    })?;
    Ok(found.map(|m| VertexSet::new(SetKind::Dominating, m)))
}

/// An independent set of exactly `k` nodes, if any (equivalently, of at least `k`).
pub fn has_independent_set(g: &Graph, k: usize) -> Result<Option<VertexSet>, OracleError> {
    let found = first_subset(g.n(), k, k, |s| is_independent(g, s))?;
    Ok(found.map(|m| VertexSet::new(SetKind::Independent, m)))
}

/// A vertex cover of size at most `k`, if any.
pub fn has_vertex_cover(g: &Graph, k: usize) -> Result<Option<VertexSet>, OracleError> {
    let found = first_subset(g.n(), 0, k, |s| is_cover(g, s))?;
    Ok(found.map(|m| VertexSet::new(SetKind::Cover, m)))
}

/// Whether `g` contains a clique on `k` nodes.
pub fn has_clique(g: &Graph, k: usize) -> Result<bool, OracleError> {
    let found = first_subset(g.n(), k, k, |s| {
        s.iter().tuple_combinations().all(|(&a, &b)| g.adjacent(a, b))
    })?;
    Ok(found.is_some())
}

/// Size of a maximum independent set, by branching on the lowest remaining node.
pub fn max_independent_set_size(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > MIS_MAX_N {
        return Err(OracleError::TooManyNodes { n, max: MIS_MAX_N });
    }
    let nbr: Vec<u64> = g
        .nodes()
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, u| m | 1 << (u - 1)))
        .collect();
    fn mis(nbr: &[u64], mask: u64) -> usize {
        if mask == 0 {
            return 0;
        }
        let v = mask.trailing_zeros() as usize;
        let without = mask & !(1 << v);
        if nbr[v] & mask == 0 {
            return 1 + mis(nbr, without);
        }
        mis(nbr, without).max(1 + mis(nbr, without & !nbr[v]))
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(mis(&nbr, all))
}

/// Whether `g` has a proper colouring with at most `k` colours.
pub fn chromatic_number_at_most(g: &Graph, k: usize) -> Result<bool, OracleError> {
    let n = g.n();
    if n > CHROMATIC_MAX_N {
        return Err(OracleError::TooManyNodes {
            n,
            max: CHROMATIC_MAX_N,
        });
    }
    fn extend(g: &Graph, k: usize, colour: &mut Vec<usize>, used: usize) -> bool {
        let v = colour.len() + 1;
        if v > g.n() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if (1..v).all(|u| !g.adjacent(u, v) || colour[u - 1] != c) {
                colour.push(c);
                if extend(g, k, colour, used.max(c + 1)) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    Ok(extend(g, k, &mut Vec::with_capacity(n), 0))
}
