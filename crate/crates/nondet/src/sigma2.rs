//! The Σ₂ protocol deciding any graph predicate `L` in constant rounds.
//!
//! `z_1(v)` is a guessed graph `G'_v` as `C(n,2)` upper-triangle bits and
//! `z_2(v)` a bit index `i_v` (taken mod `C(n,2)`). Every node broadcasts
//! `G'_v[i_v]` and `i_v`; each node checks every announced bit against its
//! own guess and, for pairs it owns, against the input. It also checks its
//! own guess on the pairs it owns, and finally accepts iff all checks pass
//! and `G'_v ∈ L`.

use clique_core::graph::{pair_at, pair_count, pair_index};
use clique_core::{id_bits, owner, Bits, Draft, Graph, Message, NodeContext, NodeId, NodeInput, NodeProgram};

use crate::alternation::evaluate_from;
use crate::{AlternationSpec, GraphPredicate, MultiVerifier, NondetError, Quantifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sigma2Universal {
    pub predicate: GraphPredicate,
}

impl Sigma2Universal {
    pub fn new(predicate: GraphPredicate) -> Self {
        Self { predicate }
    }

    /// The Σ₂ game for `predicate`.
    pub fn spec(predicate: GraphPredicate) -> AlternationSpec<Self> {
        AlternationSpec::new(Quantifier::Exists, Self::new(predicate))
    }

    pub fn index_bits(n: usize) -> usize {
        id_bits(pair_count(n))
    }

    fn payload_bits(n: usize) -> usize {
        1 + Self::index_bits(n)
    }
}

/// `g` as upper-triangle bits in `pair_index` order.
pub fn encode_graph(g: &Graph) -> Bits {
    let n = g.n();
    Bits::from_bools((0..pair_count(n)).map(|i| {
        let (u, v) = pair_at(n, i);
        g.adjacent(u, v)
    }))
}

pub fn decode_graph(n: usize, bits: &Bits) -> Graph {
    let edges: Vec<_> = (0..pair_count(n)).filter(|&i| bits.get(i)).map(|i| pair_at(n, i)).collect();
    Graph::build(n, &edges).expect("pairs are valid")
}

#[derive(Debug, Clone)]
pub struct Sigma2State {
    n: usize,
    id: NodeId,
    b: usize,
    guess: Bits,
    payload: Bits,
    input: NodeInput,
    heard: Vec<Bits>,
    ok: bool,
}

impl NodeProgram for Sigma2Universal {
    type State = Sigma2State;

    fn init(&self, ctx: &NodeContext<'_>) -> Sigma2State {
        let n = ctx.n;
        let pairs = pair_count(n);
        let m = Self::index_bits(n);
        let mut ok = ctx.aux.len() == pairs + m;
        let (guess, idx) = if ok {
            (ctx.aux.slice(0, pairs), ctx.aux.uint_at(pairs, m) as usize % pairs)
        } else {
            (Bits::zeros(pairs), 0)
        };
        ok &= ctx.input.pairs.iter().all(|&(u, present)| guess.get(pair_index(n, ctx.id, u)) == present);
        let mut payload = Bits::from_bools([guess.get(idx)]);
        payload.push_uint(idx as u64, m);
        Sigma2State {
            n,
            id: ctx.id,
            b: ctx.bandwidth(),
            guess,
            payload,
            input: ctx.input.clone(),
            heard: vec![Bits::new(); n],
            ok,
        }
    }

    fn is_done(&self, s: &Sigma2State, rounds: usize) -> bool {
        rounds >= MultiVerifier::rounds(self, s.n)
    }

    fn send(&self, s: &Sigma2State, round: usize) -> Vec<Draft> {
        let start = (round - 1) * s.b;
        let chunk = s.payload.slice(start, s.b.min(s.payload.len() - start));
        (1..=s.n)
            .filter(|&u| u != s.id)
            .map(|u| Draft::new(u, chunk.clone()))
            .collect()
    }

    fn receive(&self, mut s: Sigma2State, round: usize, inbox: &[Message]) -> Sigma2State {
        for m in inbox {
            s.heard[m.src - 1].extend(&m.payload);
        }
        if round < MultiVerifier::rounds(self, s.n) {
            return s;
        }
        let (n, pairs) = (s.n, pair_count(s.n));
        let m = Self::index_bits(n);
        for u in (1..=n).filter(|&u| u != s.id) {
            let p = &s.heard[u - 1];
            if p.len() != 1 + m {
                s.ok = false;
                continue;
            }
            let bit = p.get(0);
            let j = p.uint_at(1, m) as usize % pairs;
            if s.guess.get(j) != bit {
                s.ok = false;
            }
            let (a, c) = pair_at(n, j);
            if owner(n, a, c) == s.id {
                let other = if a == s.id { c } else { a };
                if s.input.bit_for(other) != Some(bit) {
                    s.ok = false;
                }
            }
        }
        if s.ok {
            s.ok = self.predicate.eval(&decode_graph(n, &s.guess));
        }
        s
    }

    fn output(&self, s: &Sigma2State) -> Bits {
        Bits::from_bools([s.ok])
    }
}

impl MultiVerifier for Sigma2Universal {
    fn name(&self) -> String {
        format!("sigma2({})", self.predicate)
    }

    fn level_bits(&self, n: usize) -> Vec<usize> {
        vec![pair_count(n), Self::index_bits(n)]
    }

    fn rounds(&self, n: usize) -> usize {
        Self::payload_bits(n).div_ceil(id_bits(n))
    }
}

/// Result of checking the Σ₂ protocol on one graph without enumerating the
/// whole first level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessAudit {
    pub member: bool,
    /// Yes-instance: every `z_2` accepts the honest guess.
    /// No-instance: every audited `z_1` is refuted by some `z_2`.
    pub agrees: bool,
    pub first_levels_checked: usize,
}

/// For members, checks that the honest guess survives every `z_2`. For
/// non-members, checks that the honest guess, every uniform guess of a
/// member graph, and each of `samples` is refuted by some `z_2`.
pub fn witness_audit(predicate: GraphPredicate, g: &Graph, samples: &[Vec<Bits>]) -> Result<WitnessAudit, NondetError> {
    let n = g.n();
    let spec = Sigma2Universal::spec(predicate);
    let member = predicate.eval(g);
    let honest = vec![encode_graph(g); n];
    let survives = |z1: &[Bits]| evaluate_from(&spec, g, z1, 1);
    if member {
        return Ok(WitnessAudit { member, agrees: survives(&honest)?, first_levels_checked: 1 });
    }
    let pairs = pair_count(n);
    let mut candidates = vec![honest];
    for x in 0..1u64 << pairs {
        let h = Bits::from_uint(x, pairs);
        if predicate.eval(&decode_graph(n, &h)) {
            candidates.push(vec![h; n]);
        }
    }
    candidates.extend(samples.iter().cloned());
    let mut agrees = true;
    for z1 in &candidates {
        if z1.len() != n || z1.iter().any(|l| l.len() != pairs) {
            return Err(NondetError::LabellingSize { n, got: z1.len() });
        }
        if survives(z1)? {
            agrees = false;
            break;
        }
    }
    Ok(WitnessAudit { member, agrees, first_levels_checked: candidates.len() })
}
