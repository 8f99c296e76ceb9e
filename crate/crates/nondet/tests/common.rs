//! Independent graph-property oracles for the toy-verifier corpus.

#![allow(dead_code)]

use clique_core::Graph;
use clique_nondet::ToyKind;
use itertools::Itertools;

pub fn bipartite(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).any(|mask| g.edges().all(|(u, v)| (mask >> (u - 1) & 1) != (mask >> (v - 1) & 1)))
}

pub fn traceable(g: &Graph) -> bool {
    (1..=g.n())
        .permutations(g.n())
        .any(|p| p.windows(2).all(|w| g.adjacent(w[0], w[1])))
}

pub fn connected(g: &Graph) -> bool {
    let n = g.n();
    let mut reach = 1u64;
    loop {
        let mut next = reach;
        for (u, v) in g.edges() {
            if reach >> (u - 1) & 1 == 1 || reach >> (v - 1) & 1 == 1 {
                next |= 1 << (u - 1) | 1 << (v - 1);
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

/// Whether `g` has a certificate for the verifier, by graph theory alone.
pub fn expected(kind: ToyKind, g: &Graph) -> bool {
    match kind {
        ToyKind::TwoColouring => bipartite(g),
        ToyKind::Degree | ToyKind::AlwaysAccept => true,
        ToyKind::HamiltonianPath => traceable(g),
        ToyKind::SpanningTree => connected(g),
    }
}
