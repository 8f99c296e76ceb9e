//! Edge labelling problems: every pair of the clique carries a label, and
//! each endpoint checks its labels against a constraint over its own
//! neighbourhood.

use clique_core::engine::Slot;
use clique_core::graph::{pair_at, pair_count, pair_index};
use clique_core::input::owned_partners;
use clique_core::{guard, id_bits, run, Bits, Draft, Graph, Message, NodeContext, NodeId, NodeInput, NodeProgram, NodeSet, Transcript};
use rayon::prelude::*;

use crate::verifier::Verdict;
use crate::{Labelling, NondetError, NormalForm, Verifier};

/// Default constant in the `c_label * ⌈log₂ n⌉` label width limit.
pub const DEFAULT_C_LABEL: usize = 4;

pub trait NeighbourhoodConstraint: Sync {
    fn name(&self) -> String;

    fn label_bits(&self, n: usize) -> usize;

    /// Whether `label` is allowed on `{u, v}` as seen from `u`, whose
    /// neighbourhood is `nbrs`.
    fn allow(&self, n: usize, u: NodeId, v: NodeId, nbrs: &NodeSet, label: &Bits) -> bool;

    /// The check node `u` runs once it knows all its labels (`labels[w - 1]`,
    /// own slot empty). Defaults to `allow` on every pair.
    fn allow_all(&self, n: usize, u: NodeId, nbrs: &NodeSet, labels: &[Bits]) -> bool {
        (1..=n)
            .filter(|&v| v != u)
            .all(|v| self.allow(n, u, v, nbrs, &labels[v - 1]))
    }
}

/// Labels for all `C(n, 2)` pairs, indexed by `pair_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelling {
    pub n: usize,
    pub labels: Vec<Bits>,
}

impl EdgeLabelling {
    pub fn from_fn(n: usize, mut f: impl FnMut(NodeId, NodeId) -> Bits) -> Self {
        let labels = (0..pair_count(n))
            .map(|i| {
                let (u, v) = pair_at(n, i);
                f(u, v)
            })
            .collect();
        Self { n, labels }
    }

    pub fn get(&self, u: NodeId, v: NodeId) -> &Bits {
        &self.labels[pair_index(self.n, u, v)]
    }

    pub fn set(&mut self, u: NodeId, v: NodeId, label: Bits) {
        let i = pair_index(self.n, u, v);
        self.labels[i] = label;
    }
}

/// "The label is the presence bit of the edge."
#[derive(Debug, Clone, Copy, Default)]
pub struct PresenceConstraint;

impl NeighbourhoodConstraint for PresenceConstraint {
    fn name(&self) -> String {
        "presence".into()
    }

    fn label_bits(&self, _n: usize) -> usize {
        1
    }

    fn allow(&self, _n: usize, _u: NodeId, v: NodeId, nbrs: &NodeSet, label: &Bits) -> bool {
        label.len() == 1 && label.get(0) == nbrs.contains(v)
    }
}

/// Edge labels holding both directions of a fixed-layout execution of `A`:
/// for `u < v`, round by round, the message `u → v` then `v → u`. A node
/// reassembles its whole transcript from its labels and runs the normal
/// form's local check on it, so the constraint is joint over all of a
/// node's labels rather than per edge.
#[derive(Debug, Clone, Copy)]
pub struct TranscriptConstraint<A> {
    pub nf: NormalForm<A>,
}

impl<A: Verifier> TranscriptConstraint<A> {
    pub fn new(inner: A) -> Self {
        Self { nf: NormalForm::new(inner) }
    }

    fn transcript(&self, n: usize, u: NodeId, labels: &[Bits]) -> Option<Transcript> {
        let b = id_bits(n);
        let rounds = self.nf.inner.rounds(n);
        if labels.iter().enumerate().any(|(i, l)| i + 1 != u && l.len() != 2 * rounds * b) {
            return None;
        }
        let mut t = Transcript::new(n, u);
        for r in 0..rounds {
            let row = (1..=n)
                .map(|v| {
                    if v == u {
                        return Slot::default();
                    }
                    let l = &labels[v - 1];
                    let (lo, hi) = (l.slice(2 * r * b, b), l.slice((2 * r + 1) * b, b));
                    let (sent, received) = if u < v { (lo, hi) } else { (hi, lo) };
                    Slot { sent: Some(sent), received: Some(received) }
                })
                .collect();
            t.rounds.push(row);
        }
        Some(t)
    }

    /// Converts an accepted normal-form certificate into edge labels.
    pub fn from_certificate(&self, n: usize, z: &Labelling) -> Option<EdgeLabelling> {
        let b = id_bits(n);
        let rounds = self.nf.inner.rounds(n);
        let ts: Vec<Transcript> = (1..=n)
            .map(|v| Transcript::from_fixed_layout(n, v, rounds, b, &z.labels[v - 1]))
            .collect::<Option<_>>()?;
        Some(EdgeLabelling::from_fn(n, |u, v| {
            let mut l = Bits::new();
            for r in 1..=rounds {
                l.extend(ts[u - 1].sent(r, v).unwrap());
                l.extend(ts[u - 1].received(r, v).unwrap());
            }
            l
        }))
    }
}

impl<A: Verifier> NeighbourhoodConstraint for TranscriptConstraint<A> {
    fn name(&self) -> String {
        format!("transcript({})", self.nf.inner.name())
    }

    fn label_bits(&self, n: usize) -> usize {
        2 * self.nf.inner.rounds(n) * id_bits(n)
    }

    fn allow(&self, n: usize, _u: NodeId, _v: NodeId, _nbrs: &NodeSet, label: &Bits) -> bool {
        label.len() == self.label_bits(n)
    }

    fn allow_all(&self, n: usize, u: NodeId, nbrs: &NodeSet, labels: &[Bits]) -> bool {
        let input = NodeInput::from_fn(n, u, |v| nbrs.contains(v));
        self.transcript(n, u, labels)
            .is_some_and(|t| self.nf.locally_valid(n, u, &input, &t))
    }
}

/// The distributed check: one round exchanging presence bits, then
/// `⌈w / b⌉` rounds in which each pair's owner sends the label to the other
/// endpoint. The owner of `{u, v}` holds its label in `aux`, partners in
/// ascending order.
struct EdgeCheck<'a, C> {
    c: &'a C,
    width: usize,
}

impl<C> EdgeCheck<'_, C> {
    fn rounds(&self, n: usize) -> usize {
        1 + self.width.div_ceil(id_bits(n))
    }
}

#[derive(Debug, Clone)]
struct EdgeCheckState {
    n: usize,
    id: NodeId,
    b: usize,
    nbrs: NodeSet,
    labels: Vec<Bits>,
    owned: Vec<NodeId>,
    ok: bool,
}

impl<C: NeighbourhoodConstraint> NodeProgram for EdgeCheck<'_, C> {
    type State = EdgeCheckState;

    fn init(&self, ctx: &NodeContext<'_>) -> EdgeCheckState {
        let n = ctx.n;
        let mut nbrs = NodeSet::with_capacity(n);
        for v in ctx.input.owned_neighbours() {
            nbrs.insert(v);
        }
        let owned: Vec<NodeId> = owned_partners(n, ctx.id).collect();
        let mut labels = vec![Bits::new(); n];
        for (i, &v) in owned.iter().enumerate() {
            labels[v - 1] = ctx.aux.slice(i * self.width, self.width);
        }
        EdgeCheckState { n, id: ctx.id, b: ctx.bandwidth(), nbrs, labels, owned, ok: true }
    }

    fn is_done(&self, s: &EdgeCheckState, rounds: usize) -> bool {
        rounds >= self.rounds(s.n)
    }

    fn send(&self, s: &EdgeCheckState, round: usize) -> Vec<Draft> {
        s.owned
            .iter()
            .map(|&v| {
                let payload = if round == 1 {
                    Bits::from_bools([s.nbrs.contains(v)])
                } else {
                    let start = (round - 2) * s.b;
                    s.labels[v - 1].slice(start, s.b.min(self.width - start))
                };
                Draft::new(v, payload)
            })
            .collect()
    }

    fn receive(&self, mut s: EdgeCheckState, round: usize, inbox: &[Message]) -> EdgeCheckState {
        for m in inbox {
            if round == 1 {
                if m.payload.get(0) {
                    s.nbrs.insert(m.src);
                }
            } else {
                s.labels[m.src - 1].extend(&m.payload);
            }
        }
        if round == self.rounds(s.n) {
            s.ok = self.c.allow_all(s.n, s.id, &s.nbrs, &s.labels);
        }
        s
    }

    fn output(&self, s: &EdgeCheckState) -> Bits {
        Bits::from_bools([s.ok])
    }
}

/// Runs the distributed check of `labelling` against `c` on `g`. Labels must
/// be exactly `c.label_bits(n)` bits, at most `c_label * ⌈log₂ n⌉`.
pub fn check_edge_labelling<C: NeighbourhoodConstraint>(
    c: &C,
    g: &Graph,
    labelling: &EdgeLabelling,
    c_label: usize,
) -> Result<Verdict, NondetError> {
    let n = g.n();
    let width = c.label_bits(n);
    let limit = c_label * id_bits(n);
    if width > limit {
        return Err(NondetError::EdgeLabelTooWide { width, limit });
    }
    if labelling.n != n || labelling.labels.len() != pair_count(n) {
        return Err(NondetError::LabellingSize { n, got: labelling.labels.len() });
    }
    for (i, l) in labelling.labels.iter().enumerate() {
        if l.len() != width {
            let (u, v) = pair_at(n, i);
            return Err(NondetError::EdgeLabelFormat { u, v, len: l.len(), expected: width });
        }
    }
    let aux: Vec<Bits> = (1..=n)
        .map(|u| Bits::concat(owned_partners(n, u).map(|v| labelling.get(u, v))))
        .collect();
    let program = EdgeCheck { c, width };
    let report = run(&program, g, Some(&aux), program.rounds(n))?;
    Ok(Verdict { accepted: report.accepted(), report })
}

/// Brute force over every edge labelling; the first accepted one in index order.
pub fn exists_edge_labelling<C: NeighbourhoodConstraint>(
    c: &C,
    g: &Graph,
    c_label: usize,
) -> Result<Option<EdgeLabelling>, NondetError> {
    let n = g.n();
    let width = c.label_bits(n);
    let bits = pair_count(n) * width;
    guard::check_bits(bits)?;
    if bits >= 64 {
        return Err(NondetError::Unsupported(format!("{bits}-bit labelling space")));
    }
    let found = (0..1u64 << bits).into_par_iter().find_map_first(|x| {
        let all = Bits::from_uint(x, bits);
        let l = EdgeLabelling {
            n,
            labels: (0..pair_count(n)).map(|i| all.slice(i * width, width)).collect(),
        };
        match check_edge_labelling(c, g, &l, c_label) {
            Ok(v) if v.accepted => Some(Ok(l)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}
