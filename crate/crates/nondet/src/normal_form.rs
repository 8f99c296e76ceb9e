//! The transcript normal form. Given a verifier `A` whose executions are
//! fixed-layout (every node sends `b = ⌈log₂ n⌉` bits to every peer in every
//! round), `NormalForm(A)` takes a claimed transcript of `A` as its label and
//! accepts iff
//!
//! 1. the label parses as a `T`-round transcript,
//! 2. replaying the claimed sent messages reproduces every peer's claimed
//!    received messages, and
//! 3. some local label `z'` makes `A` at this node produce exactly the
//!    claimed sent messages on the claimed received ones, and accept.

use std::collections::{BTreeSet, HashMap};

use clique_core::guard::{self, GuardError};
use clique_core::engine::run_isolated;
use clique_core::{id_bits, Bits, Draft, Graph, Message, NodeContext, NodeId, NodeInput, NodeProgram, Transcript};
use rayon::prelude::*;

use crate::verifier::accepting;
use crate::{Labelling, NondetError, Verifier};

#[derive(Debug, Clone, Copy)]
pub struct NormalForm<A> {
    pub inner: A,
}

impl<A: Verifier> NormalForm<A> {
    pub fn new(inner: A) -> Self {
        Self { inner }
    }

    /// Label width: `2 T (n-1) ⌈log₂ n⌉`.
    pub fn transcript_bits(&self, n: usize) -> usize {
        Transcript::fixed_layout_len(n, self.inner.rounds(n), id_bits(n))
    }

    /// Step 3 enumerates `2^S` local labels per node.
    pub fn check_feasible(&self, n: usize) -> Result<(), GuardError> {
        guard::check_bits(self.inner.label_bits(n))
    }

    /// Decides whether `t` is locally valid for node `id` with private input
    /// `input`: some label makes `A` send what `t` claims and accept.
    pub fn locally_valid(&self, n: usize, id: NodeId, input: &NodeInput, t: &Transcript) -> bool {
        let s = self.inner.label_bits(n);
        if guard::check_bits(s).is_err() || s >= 64 {
            return false;
        }
        let rounds = self.inner.rounds(n);
        (0..1u64 << s).any(|z| {
            let aux = Bits::from_uint(z, s);
            let ctx = NodeContext { n, id, input, aux: &aux };
            let (state, sent) = run_isolated(&self.inner, &ctx, rounds, |r| {
                (1..=n)
                    .filter(|&u| u != id)
                    .map(|u| Message { src: u, dst: id, payload: t.received(r, u).cloned().unwrap_or_default() })
                    .collect()
            });
            sent.iter().enumerate().all(|(i, drafts)| {
                full_exchange(n, id, id_bits(n), drafts).is_some_and(|vals| {
                    peers(n, id).zip(vals).all(|(u, v)| t.sent(i + 1, u).map(Bits::to_uint) == Some(v))
                })
            }) && accepting(&self.inner.output(&state))
        })
    }

    /// Every locally valid transcript of node `id`, found by branching on the
    /// messages it could receive. Exploring more than the guard's worth of
    /// search nodes is an error.
    pub fn local_candidates(&self, n: usize, id: NodeId, input: &NodeInput) -> Result<Vec<Candidate>, NondetError> {
        self.check_feasible(n)?;
        let s = self.inner.label_bits(n);
        let mut search = LocalSearch {
            nf: self,
            n,
            id,
            b: id_bits(n),
            rounds: self.inner.rounds(n),
            budget: guard::limit(),
            visited: 0,
            found: BTreeSet::new(),
        };
        for z in 0..1u64 << s {
            let aux = Bits::from_uint(z, s);
            let ctx = NodeContext { n, id, input, aux: &aux };
            let state = self.inner.init(&ctx);
            search.explore(state, 1, &mut Candidate::empty(n, search.rounds))?;
        }
        Ok(search.found.into_iter().collect())
    }

    /// Searches for an accepted `NormalForm(A)` certificate: locally valid
    /// candidates per node joined by pairwise consistency. Exact, and far
    /// smaller than enumerating `2^{n * transcript_bits}` labellings.
    pub fn find_certificate(&self, g: &Graph) -> Result<Option<Labelling>, NondetError> {
        let n = g.n();
        let inputs = clique_core::assign_inputs(g).into_inputs();
        let cands: Vec<Vec<Candidate>> = (1..=n)
            .into_par_iter()
            .map(|v| self.local_candidates(n, v, &inputs[v - 1]))
            .collect::<Result<_, _>>()?;
        let rounds = self.inner.rounds(n);
        let Some(choice) = join(n, rounds, &cands) else {
            return Ok(None);
        };
        let b = id_bits(n);
        let labels = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| cands[i][c].encode(n, i + 1, rounds, b))
            .collect();
        Ok(Some(Labelling::new(labels, self.transcript_bits(n))))
    }
}

fn peers(n: usize, id: NodeId) -> impl Iterator<Item = NodeId> {
    (1..=n).filter(move |&u| u != id)
}

/// Per-peer payload values, if `drafts` sends exactly `b` bits to each peer once.
fn full_exchange(n: usize, id: NodeId, b: usize, drafts: &[Draft]) -> Option<Vec<u64>> {
    let mut vals: Vec<Option<u64>> = vec![None; n];
    for d in drafts {
        if d.dst == id || d.dst == 0 || d.dst > n || d.payload.len() != b || vals[d.dst - 1].is_some() {
            return None;
        }
        vals[d.dst - 1] = Some(d.payload.to_uint());
    }
    peers(n, id).map(|u| vals[u - 1]).collect()
}

/// A transcript as integers: `sent[(r - 1) * n + (u - 1)]`, own slot 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub sent: Vec<u64>,
    pub received: Vec<u64>,
}

impl Candidate {
    fn empty(n: usize, rounds: usize) -> Self {
        Self { sent: vec![0; n * rounds], received: vec![0; n * rounds] }
    }

    pub fn encode(&self, n: usize, id: NodeId, rounds: usize, b: usize) -> Bits {
        let mut out = Bits::new();
        for r in 0..rounds {
            for u in peers(n, id) {
                out.push_uint(self.sent[r * n + u - 1], b);
                out.push_uint(self.received[r * n + u - 1], b);
            }
        }
        out
    }
}

struct LocalSearch<'a, A> {
    nf: &'a NormalForm<A>,
    n: usize,
    id: NodeId,
    b: usize,
    rounds: usize,
    budget: u128,
    visited: u128,
    found: BTreeSet<Candidate>,
}

impl<A: Verifier> LocalSearch<'_, A> {
    fn explore(&mut self, state: A::State, round: usize, acc: &mut Candidate) -> Result<(), NondetError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(GuardError { size: self.visited, limit: self.budget }.into());
        }
        let inner = &self.nf.inner;
        if inner.doomed(&state) {
            return Ok(());
        }
        if round > self.rounds {
            if accepting(&inner.output(&state)) {
                self.found.insert(acc.clone());
            }
            return Ok(());
        }
        let (n, id, b) = (self.n, self.id, self.b);
        let Some(sent) = full_exchange(n, id, b, &inner.send(&state, round)) else {
            return Ok(());
        };
        let base = (round - 1) * n;
        for (u, v) in peers(n, id).zip(&sent) {
            acc.sent[base + u - 1] = *v;
        }
        let inbound = (n - 1) * b;
        if inbound >= 64 {
            return Err(NondetError::Unsupported(format!("{inbound} inbound bits per round")));
        }
        for x in 0..1u64 << inbound {
            let all = Bits::from_uint(x, inbound);
            let inbox: Vec<Message> = peers(n, id)
                .enumerate()
                .map(|(i, u)| Message { src: u, dst: id, payload: all.slice(i * b, b) })
                .collect();
            for m in &inbox {
                acc.received[base + m.src - 1] = m.payload.to_uint();
            }
            let next = inner.receive(state.clone(), round, &inbox);
            self.explore(next, round + 1, acc)?;
        }
        Ok(())
    }
}

/// Picks one candidate per node so that every claimed message matches on
/// both ends of its link. Returns the first choice in candidate order.
fn join(n: usize, rounds: usize, cands: &[Vec<Candidate>]) -> Option<Vec<usize>> {
    let key = |v: NodeId, c: &Candidate| -> Vec<u64> {
        let mut k = Vec::with_capacity(2 * rounds * (v - 1));
        for r in 0..rounds {
            for u in 1..v {
                k.push(c.sent[r * n + u - 1]);
                k.push(c.received[r * n + u - 1]);
            }
        }
        k
    };
    let index: Vec<HashMap<Vec<u64>, Vec<usize>>> = (1..=n)
        .map(|v| {
            let mut m: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for (i, c) in cands[v - 1].iter().enumerate() {
                m.entry(key(v, c)).or_default().push(i);
            }
            m
        })
        .collect();

    fn go(
        v: NodeId,
        n: usize,
        rounds: usize,
        cands: &[Vec<Candidate>],
        index: &[HashMap<Vec<u64>, Vec<usize>>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if v > n {
            return true;
        }
        let mut want = Vec::with_capacity(2 * rounds * (v - 1));
        for r in 0..rounds {
            for u in 1..v {
                let c = &cands[u - 1][chosen[u - 1]];
                want.push(c.received[r * n + v - 1]);
                want.push(c.sent[r * n + v - 1]);
            }
        }
        let Some(options) = index[v - 1].get(&want) else {
            return false;
        };
        for &i in options {
            chosen.push(i);
            if go(v + 1, n, rounds, cands, index, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(n);
    go(1, n, rounds, cands, &index, &mut chosen).then_some(chosen)
}

#[derive(Debug, Clone)]
pub struct NormalFormState {
    n: usize,
    id: NodeId,
    b: usize,
    transcript: Option<Transcript>,
    input: NodeInput,
    ok: bool,
}

impl<A: Verifier> NodeProgram for NormalForm<A> {
    type State = NormalFormState;

    fn init(&self, ctx: &NodeContext<'_>) -> NormalFormState {
        let (n, id, b) = (ctx.n, ctx.id, ctx.bandwidth());
        let rounds = self.inner.rounds(n);
        let transcript = Transcript::from_fixed_layout(n, id, rounds, b, ctx.aux);
        let mut ok = transcript.is_some();
        if ok && rounds == 0 {
            ok = self.locally_valid(n, id, ctx.input, transcript.as_ref().unwrap());
        }
        NormalFormState { n, id, b, transcript, input: ctx.input.clone(), ok }
    }

    fn is_done(&self, s: &NormalFormState, rounds: usize) -> bool {
        rounds >= self.inner.rounds(s.n)
    }

    fn send(&self, s: &NormalFormState, round: usize) -> Vec<Draft> {
        peers(s.n, s.id)
            .map(|u| {
                let payload = s
                    .transcript
                    .as_ref()
                    .and_then(|t| t.sent(round, u).cloned())
                    .unwrap_or_else(|| Bits::zeros(s.b));
                Draft::new(u, payload)
            })
            .collect()
    }

    fn receive(&self, mut s: NormalFormState, round: usize, inbox: &[Message]) -> NormalFormState {
        let Some(t) = &s.transcript else {
            return s;
        };
        if inbox.len() != s.n - 1 || inbox.iter().any(|m| t.received(round, m.src) != Some(&m.payload)) {
            s.ok = false;
        }
        if s.ok && round == self.inner.rounds(s.n) {
            s.ok = self.locally_valid(s.n, s.id, &s.input, t);
        }
        s
    }

    fn output(&self, s: &NormalFormState) -> Bits {
        Bits::from_bools([s.ok])
    }
}

impl<A: Verifier> Verifier for NormalForm<A> {
    fn name(&self) -> String {
        format!("normal-form({})", self.inner.name())
    }

    fn label_bits(&self, n: usize) -> usize {
        self.transcript_bits(n)
    }

    fn rounds(&self, n: usize) -> usize {
        self.inner.rounds(n)
    }

    fn doomed(&self, s: &NormalFormState) -> bool {
        !s.ok
    }
}
