//! The round-synchronous execution engine.
//!
//! Each round every node drafts at most one message per destination from its
//! current state, the engine checks every draft against the bandwidth limit of
//! `ceil(log2 n)` bits, delivers all messages at once, and then every node
//! consumes its inbox. Inboxes are sorted by sender id, so the result does not
//! depend on the order in which node transitions are evaluated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::graph::{Graph, NodeId};
use crate::input::{assign_inputs, NodeInput};
use crate::id_bits;

pub const REPORT_VERSION: u32 = 1;

/// Everything a node knows when it starts.
#[derive(Debug, Clone, Copy)]
pub struct NodeContext<'a> {
    pub n: usize,
    pub id: NodeId,
    pub input: &'a NodeInput,
    /// Auxiliary input such as a certificate label; empty when none is given.
    pub aux: &'a Bits,
}

impl NodeContext<'_> {
    /// Bits per message.
    pub fn bandwidth(&self) -> usize {
        id_bits(self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Draft {
    pub dst: NodeId,
    pub payload: Bits,
}

impl Draft {
    pub fn new(dst: NodeId, payload: Bits) -> Self {
        Self { dst, payload }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message {
    pub src: NodeId,
    pub dst: NodeId,
    pub payload: Bits,
}

/// A per-node state machine. The same program runs at every node; all
/// transitions must be deterministic functions of their arguments.
pub trait NodeProgram: Sync {
    type State: Send + Sync;

    fn init(&self, ctx: &NodeContext<'_>) -> Self::State;

    /// Whether this node has finished after `rounds_completed` rounds. The
    /// engine stops once every node reports `true`.
    fn is_done(&self, state: &Self::State, rounds_completed: usize) -> bool;

    /// Messages for round `round` (1-based).
    fn send(&self, state: &Self::State, round: usize) -> Vec<Draft>;

    fn receive(&self, state: Self::State, round: usize, inbox: &[Message]) -> Self::State;

    fn output(&self, state: &Self::State) -> Bits;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    #[default]
    Sequential,
    /// Node transitions within a round are evaluated on the rayon pool.
    Parallel,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub max_rounds: usize,
    pub execution: Execution,
    pub record_transcripts: bool,
}

impl RunOptions {
    pub fn new(max_rounds: usize) -> Self {
        Self {
            max_rounds,
            execution: Execution::Sequential,
            record_transcripts: false,
        }
    }

    pub fn parallel(mut self) -> Self {
        self.execution = Execution::Parallel;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_transcripts(mut self) -> Self {
        self.record_transcripts = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkLoad {
    pub src: NodeId,
    pub dst: NodeId,
    pub messages: u64,
}

/// What one link slot carried in one round, seen from a single node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Slot {
    pub sent: Option<Bits>,
    pub received: Option<Bits>,
}

/// Everything one node sent and received, round by round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub n: usize,
    pub id: NodeId,
    /// `rounds[r][peer - 1]`; the node's own slot stays empty.
    pub rounds: Vec<Vec<Slot>>,
}

impl Transcript {
    pub fn new(n: usize, id: NodeId) -> Self {
        Self {
            n,
            id,
            rounds: Vec::new(),
        }
    }

    pub fn length_bits(&self) -> usize {
        self.rounds
            .iter()
            .flatten()
            .map(|s| s.sent.as_ref().map_or(0, Bits::len) + s.received.as_ref().map_or(0, Bits::len))
            .sum()
    }

    /// Fixed-layout encoding for executions in which every node sends exactly
    /// `width` bits to every other node in every round: for each round, for
    /// each peer in ascending order, the sent payload then the received one.
    /// Returns `None` when the execution does not have that shape.
    pub fn to_fixed_layout(&self, width: usize) -> Option<Bits> {
        let mut out = Bits::new();
        for round in &self.rounds {
            for (i, slot) in round.iter().enumerate() {
                if i + 1 == self.id {
                    continue;
                }
                let (s, r) = (slot.sent.as_ref()?, slot.received.as_ref()?);
                if s.len() != width || r.len() != width {
                    return None;
                }
                out.extend(s);
                out.extend(r);
            }
        }
        Some(out)
    }

    /// Length of [`Transcript::to_fixed_layout`] for `rounds` rounds.
    pub fn fixed_layout_len(n: usize, rounds: usize, width: usize) -> usize {
        2 * rounds * (n - 1) * width
    }

    /// Inverse of [`Transcript::to_fixed_layout`]; `None` on a length mismatch.
    pub fn from_fixed_layout(n: usize, id: NodeId, rounds: usize, width: usize, bits: &Bits) -> Option<Self> {
        if bits.len() != Self::fixed_layout_len(n, rounds, width) {
            return None;
        }
        let mut t = Transcript::new(n, id);
        let mut pos = 0;
        for _ in 0..rounds {
            let mut row = vec![Slot::default(); n];
            for (peer, slot) in row.iter_mut().enumerate() {
                if peer + 1 == id {
                    continue;
                }
                slot.sent = Some(bits.slice(pos, width));
                slot.received = Some(bits.slice(pos + width, width));
                pos += 2 * width;
            }
            t.rounds.push(row);
        }
        Some(t)
    }

    /// Message sent to `peer` in `round`, counting rounds from 1.
    pub fn sent(&self, round: usize, peer: NodeId) -> Option<&Bits> {
        self.slot(round, peer)?.sent.as_ref()
    }

    /// Message received from `peer` in `round`, counting rounds from 1.
    pub fn received(&self, round: usize, peer: NodeId) -> Option<&Bits> {
        self.slot(round, peer)?.received.as_ref()
    }

    fn slot(&self, round: usize, peer: NodeId) -> Option<&Slot> {
        self.rounds.get(round.checked_sub(1)?)?.get(peer.checked_sub(1)?)
    }
}

/// The measurable result of one execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionReport {
    pub version: u32,
    pub n: usize,
    pub rounds: usize,
    pub messages: u64,
    pub total_bits: u64,
    /// `outputs[v - 1]` is node `v`'s final output.
    pub outputs: Vec<Bits>,
    /// Messages carried per ordered pair over the whole run; zero entries omitted.
    pub link_load: Vec<LinkLoad>,
    #[serde(skip)]
    pub transcripts: Option<Vec<Transcript>>,
}

impl ExecutionReport {
    pub fn output(&self, v: NodeId) -> &Bits {
        &self.outputs[v - 1]
    }

    /// The common output, if every node produced the same one.
    pub fn unanimous_output(&self) -> Option<&Bits> {
        let first = self.outputs.first()?;
        self.outputs.iter().all(|o| o == first).then_some(first)
    }

    /// True iff every node output the single bit `1`.
    pub fn accepted(&self) -> bool {
        self.outputs.iter().all(|o| o.len() == 1 && o.get(0))
    }

    pub fn max_link_load(&self) -> u64 {
        self.link_load.iter().map(|l| l.messages).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the congested clique needs at least 2 nodes, got {n}")]
    TooFewNodes { n: usize },
    #[error("auxiliary input has {got} entries for {n} nodes")]
    AuxLength { n: usize, got: usize },
    #[error("round {round}: node {src} addressed invalid destination {dst}")]
    InvalidDestination { round: usize, src: NodeId, dst: NodeId },
    #[error("round {round}: message {src}->{dst} carries {bits} bits, limit is {limit}")]
    Bandwidth {
        round: usize,
        src: NodeId,
        dst: NodeId,
        bits: usize,
        limit: usize,
    },
    #[error("round {round}: node {src} drafted more than one message to {dst}")]
    Multiplexing { round: usize, src: NodeId, dst: NodeId },
    #[error("nodes still running after {max_rounds} rounds")]
    Timeout {
        max_rounds: usize,
        partial: Box<ExecutionReport>,
    },
}

/// Runs `program` on `g` until every node is done or `max_rounds` have passed.
pub fn run<P: NodeProgram>(
    program: &P,
    g: &Graph,
    aux: Option<&[Bits]>,
    max_rounds: usize,
) -> Result<ExecutionReport, EngineError> {
    run_with(program, g, aux, &RunOptions::new(max_rounds))
}

pub fn run_with<P: NodeProgram>(
    program: &P,
    g: &Graph,
    aux: Option<&[Bits]>,
    opts: &RunOptions,
) -> Result<ExecutionReport, EngineError> {
    let n = g.n();
    if n < 2 {
        return Err(EngineError::TooFewNodes { n });
    }
    if let Some(a) = aux {
        if a.len() != n {
            return Err(EngineError::AuxLength { n, got: a.len() });
        }
    }
    let limit = id_bits(n);
    let inputs = assign_inputs(g).into_inputs();
    let empty = Bits::new();
    let par = opts.execution == Execution::Parallel;

    let init = |i: usize| {
        let ctx = NodeContext {
            n,
            id: i + 1,
            input: &inputs[i],
            aux: aux.map_or(&empty, |a| &a[i]),
        };
        program.init(&ctx)
    };
    let mut states: Vec<P::State> = if par {
        (0..n).into_par_iter().map(init).collect()
    } else {
        (0..n).map(init).collect()
    };

    let mut load = vec![0u64; n * n];
    let mut messages = 0u64;
    let mut total_bits = 0u64;
    let mut transcripts = opts
        .record_transcripts
        .then(|| (1..=n).map(|v| Transcript::new(n, v)).collect::<Vec<_>>());
    let mut round = 0;

    loop {
        let done = |s: &P::State| program.is_done(s, round);
        let all_done = if par {
            states.par_iter().all(done)
        } else {
            states.iter().all(done)
        };
        if all_done {
            break;
        }
        if round == opts.max_rounds {
            let partial = finish(program, &states, n, round, messages, total_bits, &load, transcripts, par);
            return Err(EngineError::Timeout {
                max_rounds: opts.max_rounds,
                partial: Box::new(partial),
            });
        }
        round += 1;

        let drafts: Vec<Vec<Draft>> = if par {
            states.par_iter().map(|s| program.send(s, round)).collect()
        } else {
            states.iter().map(|s| program.send(s, round)).collect()
        };

        let mut inboxes: Vec<Vec<Message>> = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        if let Some(ts) = transcripts.as_mut() {
            for t in ts.iter_mut() {
                t.rounds.push(vec![Slot::default(); n]);
            }
        }
        for (si, ds) in drafts.into_iter().enumerate() {
            let src = si + 1;
            seen.iter_mut().for_each(|s| *s = false);
            for d in ds {
                let dst = d.dst;
                if dst == 0 || dst > n || dst == src {
                    return Err(EngineError::InvalidDestination { round, src, dst });
                }
                if d.payload.len() > limit {
                    return Err(EngineError::Bandwidth {
                        round,
                        src,
                        dst,
                        bits: d.payload.len(),
                        limit,
                    });
                }
                if std::mem::replace(&mut seen[dst - 1], true) {
                    return Err(EngineError::Multiplexing { round, src, dst });
                }
                load[si * n + dst - 1] += 1;
                messages += 1;
                total_bits += d.payload.len() as u64;
                if let Some(ts) = transcripts.as_mut() {
                    ts[si].rounds[round - 1][dst - 1].sent = Some(d.payload.clone());
                    ts[dst - 1].rounds[round - 1][si].received = Some(d.payload.clone());
                }
                inboxes[dst - 1].push(Message {
                    src,
                    dst,
                    payload: d.payload,
                });
            }
        }

        states = if par {
            states
                .into_par_iter()
                .zip(inboxes.into_par_iter())
                .map(|(s, inbox)| program.receive(s, round, &inbox))
                .collect()
        } else {
            states
                .into_iter()
                .zip(inboxes)
                .map(|(s, inbox)| program.receive(s, round, &inbox))
                .collect()
        };
    }

    Ok(finish(program, &states, n, round, messages, total_bits, &load, transcripts, par))
}

#[allow(clippy::too_many_arguments)]
fn finish<P: NodeProgram>(
    program: &P,
    states: &[P::State],
    n: usize,
    rounds: usize,
    messages: u64,
    total_bits: u64,
    load: &[u64],
    transcripts: Option<Vec<Transcript>>,
    par: bool,
) -> ExecutionReport {
    let outputs = if par {
        states.par_iter().map(|s| program.output(s)).collect()
    } else {
        states.iter().map(|s| program.output(s)).collect()
    };
    let link_load = load
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| LinkLoad {
            src: i / n + 1,
            dst: i % n + 1,
            messages: c,
        })
        .collect();
    ExecutionReport {
        version: REPORT_VERSION,
        n,
        rounds,
        messages,
        total_bits,
        outputs,
        link_load,
        transcripts,
    }
}

/// Runs a program at a single node against a scripted inbox, without the
/// rest of the network. Used for local consistency checks: the returned
/// drafts are exactly what the node would have sent in each round.
pub fn run_isolated<P: NodeProgram>(
    program: &P,
    ctx: &NodeContext<'_>,
    rounds: usize,
    mut inbox_for: impl FnMut(usize) -> Vec<Message>,
) -> (P::State, Vec<Vec<Draft>>) {
    let mut state = program.init(ctx);
    let mut sent = Vec::with_capacity(rounds);
    for r in 1..=rounds {
        sent.push(program.send(&state, r));
        let inbox = inbox_for(r);
        state = program.receive(state, r, &inbox);
    }
    (state, sent)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every node sends its id to node 1 in round 1.
    struct Echo;

    impl NodeProgram for Echo {
        type State = (NodeId, usize, Vec<NodeId>);

        fn init(&self, ctx: &NodeContext<'_>) -> Self::State {
            (ctx.id, ctx.n, Vec::new())
        }

        fn is_done(&self, _: &Self::State, rounds: usize) -> bool {
            rounds >= 1
        }

        fn send(&self, s: &Self::State, _: usize) -> Vec<Draft> {
            if s.0 == 1 {
                vec![]
            } else {
                vec![Draft::new(1, Bits::from_uint(s.0 as u64 - 1, id_bits(s.1)))]
            }
        }

        fn receive(&self, mut s: Self::State, _: usize, inbox: &[Message]) -> Self::State {
            s.2.extend(inbox.iter().map(|m| m.payload.to_uint() as usize + 1));
            s
        }

        fn output(&self, s: &Self::State) -> Bits {
            Bits::from_uint(s.2.len() as u64, 8)
        }
    }

    /// Sends a payload of the given width from node 1 to node 2 forever.
    struct Blaster {
        width: usize,
        twice: bool,
    }

    impl NodeProgram for Blaster {
        type State = NodeId;
        fn init(&self, ctx: &NodeContext<'_>) -> NodeId {
            ctx.id
        }
        fn is_done(&self, _: &NodeId, _: usize) -> bool {
            false
        }
        fn send(&self, s: &NodeId, _: usize) -> Vec<Draft> {
            if *s != 1 {
                return vec![];
            }
            let d = Draft::new(2, Bits::zeros(self.width));
            if self.twice {
                vec![d.clone(), d]
            } else {
                vec![d]
            }
        }
        fn receive(&self, s: NodeId, _: usize, _: &[Message]) -> NodeId {
            s
        }
        fn output(&self, _: &NodeId) -> Bits {
            Bits::new()
        }
    }

    #[test]
    fn echo_takes_one_round() {
        let g = Graph::empty(4);
        let r = run(&Echo, &g, None, 10).unwrap();
        assert_eq!(r.rounds, 1);
        assert_eq!(r.output(1).to_uint(), 3);
        assert_eq!(r.messages, 3);
        assert_eq!(r.total_bits, 6);
        assert_eq!(r.max_link_load(), 1);
    }

    #[test]
    fn oversized_payload_is_rejected() {
        let g = Graph::empty(4);
        let err = run(&Blaster { width: 4, twice: false }, &g, None, 10).unwrap_err();
        assert_eq!(
            err,
            EngineError::Bandwidth {
                round: 1,
                src: 1,
                dst: 2,
                bits: 4,
                limit: 2
            }
        );
    }

    #[test]
    fn double_send_is_rejected() {
        let g = Graph::empty(4);
        let err = run(&Blaster { width: 2, twice: true }, &g, None, 10).unwrap_err();
        assert_eq!(err, EngineError::Multiplexing { round: 1, src: 1, dst: 2 });
    }

    #[test]
    fn timeout_carries_partial_report() {
        let g = Graph::empty(3);
        match run(&Blaster { width: 1, twice: false }, &g, None, 5) {
            Err(EngineError::Timeout { max_rounds, partial }) => {
                assert_eq!(max_rounds, 5);
                assert_eq!(partial.rounds, 5);
                assert_eq!(partial.messages, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_node_is_rejected() {
        assert_eq!(
            run(&Echo, &Graph::empty(1), None, 1).unwrap_err(),
            EngineError::TooFewNodes { n: 1 }
        );
    }

    #[test]
    fn transcripts_record_both_directions() {
        let g = Graph::empty(3);
        let r = run_with(&Echo, &g, None, &RunOptions::new(3).with_transcripts()).unwrap();
        let ts = r.transcripts.unwrap();
        assert_eq!(ts[1].sent(1, 1).unwrap().to_uint(), 1);
        assert_eq!(ts[0].received(1, 3).unwrap().to_uint(), 2);
        assert_eq!(ts[0].length_bits(), 4);
    }

    #[test]
    fn fixed_layout_round_trip() {
        let mut t = Transcript::new(3, 2);
        t.rounds.push(vec![
            Slot {
                sent: Some(Bits::from_uint(1, 2)),
                received: Some(Bits::from_uint(2, 2)),
            },
            Slot::default(),
            Slot {
                sent: Some(Bits::from_uint(3, 2)),
                received: Some(Bits::from_uint(0, 2)),
            },
        ]);
        let bits = t.to_fixed_layout(2).unwrap();
        assert_eq!(bits.to_string(), "01101100");
        assert_eq!(Transcript::from_fixed_layout(3, 2, 1, 2, &bits).unwrap(), t);
        assert!(t.to_fixed_layout(3).is_none());
    }
}
