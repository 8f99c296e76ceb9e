//! Communication primitives: all-to-all broadcast of fixed-length bit strings
//! and direct-link routing of arbitrary demands.

use std::collections::VecDeque;

use crate::bits::Bits;
use crate::engine::{run, Draft, EngineError, ExecutionReport, Message, NodeContext, NodeProgram};
use crate::graph::{Graph, NodeId};
use crate::id_bits;

/// Rounds needed for every node to broadcast `bits` bits: `ceil(bits / ceil(log2 n))`.
pub fn broadcast_rounds(n: usize, bits: usize) -> usize {
    bits.div_ceil(id_bits(n))
}

/// Chunk of `bits` sent in broadcast round `round` (1-based); empty past the end.
pub fn broadcast_chunk(bits: &Bits, width: usize, round: usize) -> Bits {
    let start = (round - 1) * width;
    if start >= bits.len() {
        return Bits::new();
    }
    bits.slice(start, width.min(bits.len() - start))
}

/// Every node broadcasts its auxiliary input, which must be exactly
/// `bits_per_node` bits long. Each node outputs the concatenation of all
/// nodes' vectors in id order.
#[derive(Debug, Clone, Copy)]
pub struct BroadcastBits {
    pub bits_per_node: usize,
}

pub struct BroadcastState {
    n: usize,
    id: NodeId,
    own: Bits,
    received: Vec<Bits>,
}

impl BroadcastBits {
    pub fn rounds(&self, n: usize) -> usize {
        broadcast_rounds(n, self.bits_per_node)
    }
}

impl NodeProgram for BroadcastBits {
    type State = BroadcastState;

    fn init(&self, ctx: &NodeContext<'_>) -> BroadcastState {
        assert_eq!(ctx.aux.len(), self.bits_per_node, "node {} broadcast input length", ctx.id);
        BroadcastState {
            n: ctx.n,
            id: ctx.id,
            own: ctx.aux.clone(),
            received: vec![Bits::new(); ctx.n],
        }
    }

    fn is_done(&self, s: &BroadcastState, rounds: usize) -> bool {
        rounds >= self.rounds(s.n)
    }

    fn send(&self, s: &BroadcastState, round: usize) -> Vec<Draft> {
        let chunk = broadcast_chunk(&s.own, id_bits(s.n), round);
        (1..=s.n)
            .filter(|&v| v != s.id)
            .map(|v| Draft::new(v, chunk.clone()))
            .collect()
    }

    fn receive(&self, mut s: BroadcastState, _: usize, inbox: &[Message]) -> BroadcastState {
        for m in inbox {
            s.received[m.src - 1].extend(&m.payload);
        }
        s
    }

    fn output(&self, s: &BroadcastState) -> Bits {
        let mut out = Bits::new();
        for v in 1..=s.n {
            out.extend(if v == s.id { &s.own } else { &s.received[v - 1] });
        }
        out
    }
}

/// Broadcasts `vectors[v - 1]` from every node `v`; all vectors must share a length.
pub fn broadcast_bits(g: &Graph, vectors: &[Bits]) -> Result<ExecutionReport, EngineError> {
    let len = vectors.first().map_or(0, Bits::len);
    assert!(vectors.iter().all(|v| v.len() == len), "broadcast vectors differ in length");
    let program = BroadcastBits { bits_per_node: len };
    run(&program, g, Some(vectors), program.rounds(g.n().max(2)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Demand {
    pub src: NodeId,
    pub dst: NodeId,
    pub payload: Bits,
}

/// FIFO scheduling over direct links: each round every node sends the head of
/// each of its non-empty per-destination queues. No relaying.
pub struct DirectRouter {
    demands: Vec<Demand>,
}

pub struct RouterState {
    n: usize,
    queues: Vec<VecDeque<Bits>>,
    received: Vec<(NodeId, Bits)>,
}

impl DirectRouter {
    pub fn new(demands: Vec<Demand>) -> Self {
        Self { demands }
    }

    /// The maximum number of demands on one ordered pair.
    pub fn rounds(&self, n: usize) -> usize {
        let mut load = vec![0usize; n * n];
        for d in &self.demands {
            load[(d.src - 1) * n + d.dst - 1] += 1;
        }
        load.into_iter().max().unwrap_or(0)
    }
}

impl NodeProgram for DirectRouter {
    type State = RouterState;

    fn init(&self, ctx: &NodeContext<'_>) -> RouterState {
        let mut queues = vec![VecDeque::new(); ctx.n];
        for d in self.demands.iter().filter(|d| d.src == ctx.id) {
            queues[d.dst - 1].push_back(d.payload.clone());
        }
        RouterState {
            n: ctx.n,
            queues,
            received: Vec::new(),
        }
    }

    fn is_done(&self, s: &RouterState, _: usize) -> bool {
        s.queues.iter().all(VecDeque::is_empty)
    }

    fn send(&self, s: &RouterState, _: usize) -> Vec<Draft> {
        s.queues
            .iter()
            .enumerate()
            .filter_map(|(i, q)| q.front().map(|p| Draft::new(i + 1, p.clone())))
            .collect()
    }

    fn receive(&self, mut s: RouterState, _: usize, inbox: &[Message]) -> RouterState {
        for q in &mut s.queues {
            q.pop_front();
        }
        s.received.extend(inbox.iter().map(|m| (m.src, m.payload.clone())));
        s
    }

    /// `[src - 1][payload length][payload]` per delivered message, in arrival order.
    fn output(&self, s: &RouterState) -> Bits {
        let w = id_bits(s.n);
        let lw = id_bits(w + 1);
        let mut out = Bits::new();
        for (src, p) in &s.received {
            out.push_uint(*src as u64 - 1, w);
            out.push_uint(p.len() as u64, lw);
            out.extend(p);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct RouteOutcome {
    pub report: ExecutionReport,
    /// Delivered messages, sorted.
    pub delivered: Vec<Demand>,
}

/// Delivers every demand over its direct link. Oversized payloads surface as
/// the engine's bandwidth error in the round they would be sent.
pub fn route(g: &Graph, demands: Vec<Demand>) -> Result<RouteOutcome, EngineError> {
    let n = g.n();
    let router = DirectRouter::new(demands);
    let budget = if n >= 2 { router.rounds(n) } else { 0 };
    let report = run(&router, g, None, budget)?;
    let w = id_bits(n);
    let lw = id_bits(w + 1);
    let mut delivered = Vec::new();
    for (i, out) in report.outputs.iter().enumerate() {
        let mut pos = 0;
        while pos < out.len() {
            let src = out.uint_at(pos, w) as NodeId + 1;
            let len = out.uint_at(pos + w, lw) as usize;
            let payload = out.slice(pos + w + lw, len);
            pos += w + lw + len;
            delivered.push(Demand { src, dst: i + 1, payload });
        }
    }
    delivered.sort();
    Ok(RouteOutcome { report, delivered })
}
