//! Running a program on the derived graph `G'` inside the congested clique on
//! `G`, with every original node hosting its derived nodes.
//!
//! Host round 1 exchanges presence bits so every host knows its full row of
//! `G`, which is all it needs to derive its guests' private inputs in `G'`.
//! After that, one round of `G'` takes `g^2 * w` host rounds, where `g` is the
//! largest number of guests per host and `w` the number of host messages per
//! guest message: slot `(s, d)` of a simulated round carries the message from
//! the `s`-th guest of the sending host to the `d`-th guest of the receiving
//! host, as a frame `[payload length][payload]` split into `w` chunks.
//! Messages between guests of the same host are delivered locally.

use clique_core::engine::{Draft, Message, NodeContext, NodeProgram};
use clique_core::sets::{decode_answer, encode_answer};
use clique_core::{id_bits, Bits, NodeId, NodeInput, NodeSet};

use crate::reduction::{ReductionLayout, Role};

pub struct Hosted<P> {
    pub layout: ReductionLayout,
    pub guest: P,
    n: usize,
    width: usize,
    guest_width: usize,
    len_bits: usize,
    chunks: usize,
    slots: usize,
}

pub struct HostState<S> {
    id: NodeId,
    owned: Vec<(NodeId, bool)>,
    row: NodeSet,
    guests: Vec<(NodeId, S)>,
    /// Padded frames to send this simulated round, indexed `[dst host - 1][slot]`.
    outbox: Vec<Vec<Option<Bits>>>,
    /// Partially received frames, indexed by source host.
    partial: Vec<Bits>,
    pending: Vec<Vec<Message>>,
    fault: bool,
}

impl<P: NodeProgram> Hosted<P> {
    pub fn new(layout: ReductionLayout, guest: P) -> Self {
        let n = layout.n;
        let width = id_bits(n);
        let guest_width = id_bits(layout.derived_n());
        let len_bits = id_bits(guest_width + 1);
        let chunks = (len_bits + guest_width).div_ceil(width);
        let g = layout.max_guests();
        Self {
            layout,
            guest,
            n,
            width,
            guest_width,
            len_bits,
            chunks,
            slots: g * g,
        }
    }

    /// Host rounds per simulated round.
    pub fn frame_rounds(&self) -> usize {
        self.slots * self.chunks
    }

    /// Host rounds needed to simulate `guest_rounds` rounds of `G'`.
    pub fn host_rounds(&self, guest_rounds: usize) -> usize {
        1 + guest_rounds * self.frame_rounds()
    }

    fn guest_index(&self, w: NodeId) -> usize {
        let h = self.layout.host_of(w);
        self.layout.guests_of(h).binary_search(&w).expect("guest of its host")
    }

    fn init_guests(&self, s: &mut HostState<P::State>) {
        let n2 = self.layout.derived_n();
        let h = s.id;
        let row = &s.row;
        let adj = |u: NodeId, v: NodeId| {
            if u == h {
                row.contains(v)
            } else {
                debug_assert_eq!(v, h, "host {h} asked about {{{u},{v}}}");
                row.contains(u)
            }
        };
        let empty = Bits::new();
        s.guests = self
            .layout
            .guests_of(h)
            .iter()
            .map(|&w| {
                let rw = self.layout.role(w);
                let input = NodeInput::from_fn(n2, w, |w2| self.layout.derived_adjacent(rw, self.layout.role(w2), adj));
                let ctx = NodeContext {
                    n: n2,
                    id: w,
                    input: &input,
                    aux: &empty,
                };
                (w, self.guest.init(&ctx))
            })
            .collect();
        s.pending = vec![Vec::new(); s.guests.len()];
    }

    /// Collects the guests' drafts for simulated round `sim` into frames.
    fn prepare(&self, s: &mut HostState<P::State>, sim: usize) {
        let n2 = self.layout.derived_n();
        s.outbox = vec![vec![None; self.slots]; self.n];
        let g = self.layout.max_guests();
        for (si, (w, st)) in s.guests.iter().enumerate() {
            let mut seen = Vec::new();
            for d in self.guest.send(st, sim) {
                if d.dst == 0 || d.dst > n2 || d.dst == *w || d.payload.len() > self.guest_width || seen.contains(&d.dst) {
                    s.fault = true;
                    continue;
                }
                seen.push(d.dst);
                let h2 = self.layout.host_of(d.dst);
                let di = self.guest_index(d.dst);
                if h2 == s.id {
                    s.pending[di].push(Message {
                        src: *w,
                        dst: d.dst,
                        payload: d.payload,
                    });
                    continue;
                }
                let mut frame = Bits::from_uint(d.payload.len() as u64, self.len_bits);
                frame.extend(&d.payload);
                frame.extend(&Bits::zeros(self.chunks * self.width - frame.len()));
                s.outbox[h2 - 1][si * g + di] = Some(frame);
            }
        }
    }

    fn position(&self, round: usize) -> (usize, usize, usize) {
        let q = round - 2;
        let f = self.frame_rounds();
        (q / f + 1, (q % f) / self.chunks, q % self.chunks)
    }

    fn translate(&self, s: &HostState<P::State>) -> Option<Vec<NodeId>> {
        let (_, st) = s.guests.first()?;
        let ds = decode_answer(&self.guest.output(st), self.guest_width)??;
        let mut picks = vec![None; self.layout.k];
        for w in ds {
            match self.layout.role(w) {
                Role::Clique { i, v } if picks[i - 1].is_none() => picks[i - 1] = Some(v),
                _ => return None,
            }
        }
        let mut set = picks.into_iter().collect::<Option<Vec<_>>>()?;
        set.sort_unstable();
        set.dedup();
        (set.len() == self.layout.k).then_some(set)
    }
}

impl<P: NodeProgram> NodeProgram for Hosted<P> {
    type State = HostState<P::State>;

    fn init(&self, ctx: &NodeContext<'_>) -> Self::State {
        HostState {
            id: ctx.id,
            owned: ctx.input.pairs.clone(),
            row: NodeSet::from_ids(self.n, ctx.input.owned_neighbours()),
            guests: Vec::new(),
            outbox: Vec::new(),
            partial: vec![Bits::new(); self.n],
            pending: Vec::new(),
            fault: false,
        }
    }

    fn is_done(&self, s: &Self::State, rounds: usize) -> bool {
        if rounds == 0 || !(rounds - 1).is_multiple_of(self.frame_rounds()) {
            return false;
        }
        let sims = (rounds - 1) / self.frame_rounds();
        s.guests.iter().all(|(_, st)| self.guest.is_done(st, sims))
    }

    fn send(&self, s: &Self::State, round: usize) -> Vec<Draft> {
        if round == 1 {
            return s
                .owned
                .iter()
                .map(|&(u, bit)| Draft::new(u, Bits::from_bools([bit])))
                .collect();
        }
        let (_, slot, chunk) = self.position(round);
        s.outbox
            .iter()
            .enumerate()
            .filter_map(|(i, frames)| {
                frames[slot]
                    .as_ref()
                    .map(|f| Draft::new(i + 1, f.slice(chunk * self.width, self.width)))
            })
            .collect()
    }

    fn receive(&self, mut s: Self::State, round: usize, inbox: &[Message]) -> Self::State {
        if round == 1 {
            for m in inbox.iter().filter(|m| m.payload.get(0)) {
                s.row.insert(m.src);
            }
            self.init_guests(&mut s);
            self.prepare(&mut s, 1);
            return s;
        }
        let (sim, slot, chunk) = self.position(round);
        let g = self.layout.max_guests();
        for m in inbox {
            let buf = &mut s.partial[m.src - 1];
            if chunk == 0 {
                *buf = Bits::new();
            }
            buf.extend(&m.payload);
            if chunk + 1 == self.chunks {
                let len = buf.uint_at(0, self.len_bits) as usize;
                let (si, di) = (slot / g, slot % g);
                let src = self.layout.guests_of(m.src).get(si).copied();
                match (src, s.guests.get(di)) {
                    (Some(src), Some(&(dst, _))) if len <= self.guest_width => {
                        let payload = buf.slice(self.len_bits, len);
                        s.pending[di].push(Message { src, dst, payload });
                    }
                    _ => s.fault = true,
                }
            }
        }
        if slot + 1 == self.slots && chunk + 1 == self.chunks {
            let pending = std::mem::take(&mut s.pending);
            let guests = std::mem::take(&mut s.guests);
            s.guests = guests
                .into_iter()
                .zip(pending)
                .map(|((w, st), mut inbox)| {
                    inbox.sort();
                    (w, self.guest.receive(st, sim, &inbox))
                })
                .collect();
            s.pending = vec![Vec::new(); s.guests.len()];
            self.prepare(&mut s, sim + 1);
        }
        s
    }

    /// `[fault]` followed by the translated answer.
    fn output(&self, s: &Self::State) -> Bits {
        let answer = self.translate(s);
        let found_malformed = s.guests.first().is_some_and(|(_, st)| {
            decode_answer(&self.guest.output(st), self.guest_width).is_some_and(|a| a.is_some()) && answer.is_none()
        });
        let mut out = Bits::from_bools([s.fault || found_malformed]);
        out.extend(&encode_answer(answer.as_deref(), self.width));
        out
    }
}
