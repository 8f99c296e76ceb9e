//! The partition-search skeleton shared by k-dominating set and the direct
//! k-independent set detector.
//!
//! Every node `v` gathers enough edges around its union `S_v` to test every
//! candidate subset of `S_v` locally. Every size-`k` vertex set lies inside
//! some `S_v`, so exhaustive local search at all nodes together is complete.
//! Finders then announce their sets and everyone adopts the set of the
//! lowest-id finder.

use clique_core::engine::{Draft, Message, NodeContext, NodeProgram};
use clique_core::sets::encode_answer;
use clique_core::{owner, Bits, NodeId, NodeSet};
use itertools::Itertools;

use crate::partition::PartitionLabels;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// A dominating set of at most `k` nodes. Starts with one exchange round
    /// so every node knows its full neighbourhood.
    Dominating,
    /// An independent set of exactly `k` nodes. Needs only edges inside `S_v`.
    Independent,
}

pub struct PartitionSearch {
    pub n: usize,
    pub k: usize,
    pub target: Target,
    pub labels: PartitionLabels,
    /// Rounds of the gather phase: the worst per-link demand over all graphs.
    pub gather: usize,
}

pub struct SearchState {
    id: NodeId,
    width: usize,
    owned: Vec<(NodeId, bool)>,
    neighbours: NodeSet,
    queues: Vec<Vec<NodeId>>,
    /// Dominating: `N[b] ∩ S_v` for every node `b`. Independent: adjacency
    /// among the members of `S_v`. Sets hold 1-based indices into `S_v`.
    known: Vec<NodeSet>,
    found: Option<Vec<NodeId>>,
    announced: Vec<Vec<NodeId>>,
}

impl PartitionSearch {
    pub fn new(n: usize, k: usize, target: Target) -> Self {
        let labels = PartitionLabels::new(n, k);
        let mut gather = 0;
        for v in 1..=n {
            let sv = labels.union(v);
            if target == Target::Dominating && sv.len() < n {
                gather = gather.max(sv.iter().filter(|&&a| a != v).count());
            }
            for &b in sv.iter().filter(|&&b| b != v) {
                let load = sv
                    .iter()
                    .filter(|&&a| a != b && owner(n, b, a) == b)
                    .filter(|&&a| target == Target::Independent || a != v)
                    .count();
                gather = gather.max(load);
            }
        }
        Self {
            n,
            k,
            target,
            labels,
            gather,
        }
    }

    fn exchange(&self) -> usize {
        usize::from(self.target == Target::Dominating)
    }

    pub fn total_rounds(&self) -> usize {
        self.exchange() + self.gather + self.k
    }

    fn index_in_union(&self, v: NodeId, a: NodeId) -> Option<usize> {
        self.labels.union(v).binary_search(&a).ok().map(|i| i + 1)
    }

    /// What node `s.id` sends to each other node during the gather phase.
    fn plan(&self, s: &mut SearchState) {
        let b = s.id;
        for v in (1..=self.n).filter(|&v| v != b) {
            let in_sv = self.labels.union_set(v);
            let sv = self.labels.union(v);
            let items: Vec<NodeId> = if in_sv.contains(b) {
                sv.iter()
                    .copied()
                    .filter(|&a| a != b && owner(self.n, b, a) == b && s.neighbours.contains(a))
                    .filter(|&a| self.target == Target::Independent || a != v)
                    .collect()
            } else if self.target == Target::Dominating {
                sv.iter().copied().filter(|&a| a != v && s.neighbours.contains(a)).collect()
            } else {
                Vec::new()
            };
            s.queues[v - 1] = items;
        }
        let v = s.id;
        let sv = self.labels.union(v);
        match self.target {
            Target::Dominating => {
                for (i, &a) in sv.iter().enumerate() {
                    s.known[a - 1].insert(i + 1);
                }
                let own = self.index_in_union(v, v);
                for a in s.neighbours.iter() {
                    if let Some(iv) = own {
                        s.known[a - 1].insert(iv);
                    }
                    if let Some(ia) = self.index_in_union(v, a) {
                        s.known[v - 1].insert(ia);
                    }
                }
            }
            Target::Independent => {
                if let Some(iv) = self.index_in_union(v, v) {
                    for a in s.neighbours.iter() {
                        if let Some(ia) = self.index_in_union(v, a) {
                            s.known[iv - 1].insert(ia);
                            s.known[ia - 1].insert(iv);
                        }
                    }
                }
            }
        }
    }

    fn record(&self, s: &mut SearchState, b: NodeId, a: NodeId) {
        let v = s.id;
        let (Some(ia), in_sv_b) = (self.index_in_union(v, a), self.index_in_union(v, b)) else {
            return;
        };
        match (self.target, in_sv_b) {
            (Target::Dominating, None) => s.known[b - 1].insert(ia),
            (Target::Dominating, Some(ib)) => {
                s.known[b - 1].insert(ia);
                s.known[a - 1].insert(ib);
            }
            (Target::Independent, Some(ib)) => {
                s.known[ib - 1].insert(ia);
                s.known[ia - 1].insert(ib);
            }
            (Target::Independent, None) => {}
        }
    }

    fn search(&self, s: &mut SearchState) {
        let sv = self.labels.union(s.id);
        let found = match self.target {
            Target::Dominating => (1..=self.k.min(sv.len())).find_map(|size| {
                (1..=sv.len()).combinations(size).find(|c| {
                    let cs = NodeSet::from_ids(sv.len(), c.iter().copied());
                    s.known.iter().all(|nb| nb.intersects(&cs))
                })
            }),
            Target::Independent if self.k <= sv.len() => (1..=sv.len())
                .combinations(self.k)
                .find(|c| c.iter().tuple_combinations().all(|(&x, &y)| !s.known[x - 1].contains(y))),
            Target::Independent => None,
        };
        s.found = found.map(|c| c.into_iter().map(|i| sv[i - 1]).collect());
    }

    fn after_round(&self, s: &mut SearchState, completed: usize) {
        if completed == self.exchange() {
            self.plan(s);
        }
        if completed == self.exchange() + self.gather {
            self.search(s);
        }
    }
}

impl NodeProgram for PartitionSearch {
    type State = SearchState;

    fn init(&self, ctx: &NodeContext<'_>) -> SearchState {
        let known_len = match self.target {
            Target::Dominating => self.n,
            Target::Independent => self.labels.union(ctx.id).len(),
        };
        let mut s = SearchState {
            id: ctx.id,
            width: ctx.bandwidth(),
            owned: ctx.input.pairs.clone(),
            neighbours: NodeSet::from_ids(self.n, ctx.input.owned_neighbours()),
            queues: vec![Vec::new(); self.n],
            known: vec![NodeSet::with_capacity(self.labels.max_union()); known_len],
            found: None,
            announced: vec![Vec::new(); self.n],
        };
        self.after_round(&mut s, 0);
        s
    }

    fn is_done(&self, _: &SearchState, rounds: usize) -> bool {
        rounds >= self.total_rounds()
    }

    fn send(&self, s: &SearchState, round: usize) -> Vec<Draft> {
        let e = self.exchange();
        if round <= e {
            return s
                .owned
                .iter()
                .map(|&(u, bit)| Draft::new(u, Bits::from_bools([bit])))
                .collect();
        }
        if round <= e + self.gather {
            let i = round - e - 1;
            return s
                .queues
                .iter()
                .enumerate()
                .filter_map(|(d, q)| q.get(i).map(|&a| Draft::new(d + 1, Bits::from_uint(a as u64 - 1, s.width))))
                .collect();
        }
        let a = round - e - self.gather;
        match &s.found {
            Some(set) if a <= self.k => {
                let m = set[(a - 1).min(set.len() - 1)];
                (1..=self.n)
                    .filter(|&v| v != s.id)
                    .map(|v| Draft::new(v, Bits::from_uint(m as u64 - 1, s.width)))
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    fn receive(&self, mut s: SearchState, round: usize, inbox: &[Message]) -> SearchState {
        let e = self.exchange();
        if round <= e {
            for m in inbox {
                if m.payload.len() == 1 && m.payload.get(0) {
                    s.neighbours.insert(m.src);
                }
            }
        } else if round <= e + self.gather {
            for m in inbox {
                let a = m.payload.to_uint() as NodeId + 1;
                self.record(&mut s, m.src, a);
            }
        } else if round <= self.total_rounds() {
            for m in inbox {
                s.announced[m.src - 1].push(m.payload.to_uint() as NodeId + 1);
            }
        }
        self.after_round(&mut s, round);
        s
    }

    fn output(&self, s: &SearchState) -> Bits {
        let winner = (1..=self.n).find_map(|u| {
            if u == s.id {
                s.found.clone()
            } else if s.announced[u - 1].is_empty() {
                None
            } else {
                let mut set = s.announced[u - 1].clone();
                set.sort_unstable();
                set.dedup();
                Some(set)
            }
        });
        encode_answer(winner.as_deref(), s.width)
    }
}
