//! k-vertex cover in at most `k + 2` rounds.
//!
//! Round 1 exchanges presence bits so every node knows its degree. In round 2
//! every node of degree at least `k + 1` announces that it joins the cover
//! `C`; such nodes must be in every cover of size `k`. If `|C| > k` everyone
//! stops and answers none. Otherwise each remaining node has at most `k`
//! uncovered edges and sends one uncovered neighbour id per round to everyone
//! for `k` rounds, after which all nodes hold the residual graph and solve it
//! identically.

use clique_core::engine::{Draft, Message, NodeContext, NodeProgram};
use clique_core::sets::encode_answer;
use clique_core::{id_bits, Bits, NodeId, NodeSet};

pub struct VertexCoverProgram {
    pub n: usize,
    pub k: usize,
}

pub struct VcState {
    id: NodeId,
    width: usize,
    owned: Vec<(NodeId, bool)>,
    neighbours: NodeSet,
    forced: NodeSet,
    /// Residual edges `(u, v)` with `u < v`.
    residual: Vec<(NodeId, NodeId)>,
    answer: Option<Vec<NodeId>>,
}

impl VertexCoverProgram {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }

    pub fn total_rounds(&self) -> usize {
        self.k + 2
    }

    fn uncovered(&self, s: &VcState) -> Vec<NodeId> {
        s.neighbours.iter().filter(|&u| !s.forced.contains(u)).collect()
    }

    fn finish(&self, s: &mut VcState) {
        s.residual.sort_unstable();
        s.residual.dedup();
        let budget = self.k - s.forced.len();
        s.answer = min_cover_within(&s.residual, budget).map(|extra| {
            let mut all: Vec<NodeId> = s.forced.iter().chain(extra).collect();
            all.sort_unstable();
            all
        });
    }
}

/// A minimum vertex cover of `edges` with at most `budget` nodes, if any.
/// Iterative deepening over a search tree that branches on the endpoints of
/// the first uncovered edge; the result is a deterministic function of the
/// sorted edge list.
pub fn min_cover_within(edges: &[(NodeId, NodeId)], budget: usize) -> Option<Vec<NodeId>> {
    fn branch(edges: &[(NodeId, NodeId)], chosen: &mut Vec<NodeId>, left: usize) -> bool {
        let Some(&(u, v)) = edges.iter().find(|(a, b)| !chosen.contains(a) && !chosen.contains(b)) else {
            return true;
        };
        if left == 0 {
            return false;
        }
        for pick in [u, v] {
            chosen.push(pick);
            if branch(edges, chosen, left - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (0..=budget).find_map(|size| {
        let mut chosen = Vec::new();
        branch(edges, &mut chosen, size).then_some(chosen)
    })
}

impl NodeProgram for VertexCoverProgram {
    type State = VcState;

    fn init(&self, ctx: &NodeContext<'_>) -> VcState {
        VcState {
            id: ctx.id,
            width: id_bits(self.n),
            owned: ctx.input.pairs.clone(),
            neighbours: NodeSet::from_ids(self.n, ctx.input.owned_neighbours()),
            forced: NodeSet::with_capacity(self.n),
            residual: Vec::new(),
            answer: None,
        }
    }

    fn is_done(&self, s: &VcState, rounds: usize) -> bool {
        rounds >= self.total_rounds() || (rounds >= 2 && s.forced.len() > self.k)
    }

    fn send(&self, s: &VcState, round: usize) -> Vec<Draft> {
        let others = (1..=self.n).filter(move |&v| v != s.id);
        match round {
            1 => s
                .owned
                .iter()
                .map(|&(u, bit)| Draft::new(u, Bits::from_bools([bit])))
                .collect(),
            2 if s.neighbours.len() > self.k => others.map(|v| Draft::new(v, Bits::from_bools([true]))).collect(),
            r if r > 2 && r <= self.total_rounds() && !s.forced.contains(s.id) => {
                match self.uncovered(s).get(r - 3) {
                    Some(&u) => others
                        .map(|v| Draft::new(v, Bits::from_uint(u as u64 - 1, s.width)))
                        .collect(),
                    None => Vec::new(),
                }
            }
            _ => Vec::new(),
        }
    }

    fn receive(&self, mut s: VcState, round: usize, inbox: &[Message]) -> VcState {
        match round {
            1 => {
                for m in inbox.iter().filter(|m| m.payload.get(0)) {
                    s.neighbours.insert(m.src);
                }
            }
            2 => {
                for m in inbox {
                    s.forced.insert(m.src);
                }
                if s.neighbours.len() > self.k {
                    s.forced.insert(s.id);
                }
            }
            r if r <= self.total_rounds() => {
                if r == 3 && !s.forced.contains(s.id) {
                    for u in self.uncovered(&s) {
                        s.residual.push((s.id.min(u), s.id.max(u)));
                    }
                }
                for m in inbox {
                    let u = m.payload.to_uint() as NodeId + 1;
                    s.residual.push((m.src.min(u), m.src.max(u)));
                }
            }
            _ => {}
        }
        if round == self.total_rounds() && s.forced.len() <= self.k {
            self.finish(&mut s);
        }
        s
    }

    fn output(&self, s: &VcState) -> Bits {
        encode_answer(s.answer.as_deref(), s.width)
    }
}
