//! The fixed toy-verifier corpus. Every verifier sends exactly `⌈log₂ n⌉`
//! bits to every other node in every round, so its executions have
//! fixed-layout transcripts. Verifiers are strict: a malformed label or
//! message makes the node reject.

use std::fmt;
use std::str::FromStr;

use clique_core::input::owner;
use clique_core::{id_bits, Bits, Draft, Message, NodeContext, NodeId, NodeProgram, NodeSet};

use crate::Verifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ToyKind {
    /// Label: a colour bit. Accept iff no owned edge joins equal colours.
    TwoColouring,
    /// Label: the node's degree. Accept iff it is correct.
    Degree,
    /// Label: the node's position on a Hamiltonian path, from 0.
    HamiltonianPath,
    /// Label: the node's parent in a spanning tree, as `id - 1`; the root
    /// points to itself.
    SpanningTree,
    /// Ignores the label.
    AlwaysAccept,
}

impl ToyKind {
    pub const ALL: [ToyKind; 5] = [
        ToyKind::TwoColouring,
        ToyKind::Degree,
        ToyKind::HamiltonianPath,
        ToyKind::SpanningTree,
        ToyKind::AlwaysAccept,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ToyKind::TwoColouring => "two-colouring",
            ToyKind::Degree => "degree",
            ToyKind::HamiltonianPath => "hamiltonian-path",
            ToyKind::SpanningTree => "spanning-tree",
            ToyKind::AlwaysAccept => "always-accept",
        }
    }

    fn exchanges(self) -> bool {
        matches!(self, ToyKind::Degree | ToyKind::HamiltonianPath | ToyKind::SpanningTree)
    }

    fn broadcasts(self) -> bool {
        self != ToyKind::Degree
    }
}

impl fmt::Display for ToyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ToyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ToyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ToyKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown verifier `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toy {
    pub kind: ToyKind,
}

impl Toy {
    pub fn new(kind: ToyKind) -> Self {
        Self { kind }
    }
}

#[derive(Debug, Clone)]
pub struct ToyState {
    n: usize,
    id: NodeId,
    b: usize,
    /// The label as an integer, `None` if it has the wrong length.
    value: Option<u64>,
    owned: Vec<(NodeId, bool)>,
    row: NodeSet,
    /// `heard[u - 1]` is what `u` broadcast; our own value sits at `id - 1`.
    heard: Vec<u64>,
    ok: bool,
}

impl NodeProgram for Toy {
    type State = ToyState;

    fn init(&self, ctx: &NodeContext<'_>) -> ToyState {
        let n = ctx.n;
        let width = self.label_bits(n);
        let value = (ctx.aux.len() == width).then(|| ctx.aux.to_uint());
        let mut row = NodeSet::with_capacity(n);
        for &(u, present) in &ctx.input.pairs {
            if present {
                row.insert(u);
            }
        }
        let mut heard = vec![0; n];
        heard[ctx.id - 1] = value.unwrap_or(0);
        ToyState {
            n,
            id: ctx.id,
            b: ctx.bandwidth(),
            value,
            owned: ctx.input.pairs.clone(),
            row,
            heard,
            ok: value.is_some() || self.kind == ToyKind::AlwaysAccept,
        }
    }

    fn is_done(&self, s: &ToyState, rounds: usize) -> bool {
        rounds >= self.rounds(s.n)
    }

    fn send(&self, s: &ToyState, round: usize) -> Vec<Draft> {
        let exchange = self.kind.exchanges() && round == 1;
        let own = match self.kind {
            ToyKind::AlwaysAccept => 0,
            _ => s.value.unwrap_or(0),
        };
        (1..=s.n)
            .filter(|&u| u != s.id)
            .map(|u| {
                let value = if exchange {
                    s.owned.iter().find(|p| p.0 == u).map_or(0, |p| p.1 as u64)
                } else {
                    own
                };
                Draft::new(u, Bits::from_uint(value, s.b))
            })
            .collect()
    }

    fn receive(&self, mut s: ToyState, round: usize, inbox: &[Message]) -> ToyState {
        if inbox.len() != s.n - 1 || inbox.iter().any(|m| m.payload.len() != s.b) {
            s.ok = false;
            return s;
        }
        let exchange = self.kind.exchanges() && round == 1;
        for m in inbox {
            let value = m.payload.to_uint();
            if exchange {
                let theirs = owner(s.n, m.src, s.id) == m.src;
                match (theirs, value) {
                    (true, 1) => s.row.insert(m.src),
                    (true, 0) | (false, 0) => {}
                    _ => s.ok = false,
                }
            } else {
                s.heard[m.src - 1] = value;
            }
        }
        if round == self.rounds(s.n) && s.ok {
            s.ok = self.decide(&s);
        }
        s
    }

    fn output(&self, s: &ToyState) -> Bits {
        Bits::from_bools([s.ok])
    }
}

impl Toy {
    fn decide(&self, s: &ToyState) -> bool {
        let n = s.n;
        let own = s.value.unwrap_or(0);
        match self.kind {
            ToyKind::AlwaysAccept => true,
            ToyKind::TwoColouring => {
                s.heard.iter().all(|&c| c < 2)
                    && s.owned.iter().all(|&(u, present)| !present || s.heard[u - 1] != own)
            }
            ToyKind::Degree => own == s.row.len() as u64,
            ToyKind::HamiltonianPath => {
                let mut seen = vec![false; n];
                for &p in &s.heard {
                    if p >= n as u64 || std::mem::replace(&mut seen[p as usize], true) {
                        return false;
                    }
                }
                own + 1 == n as u64 || s.row.iter().any(|u| s.heard[u - 1] == own + 1)
            }
            ToyKind::SpanningTree => {
                if s.heard.iter().any(|&p| p >= n as u64) {
                    return false;
                }
                let parent = |u: NodeId| s.heard[u - 1] as usize + 1;
                let roots: Vec<NodeId> = (1..=n).filter(|&u| parent(u) == u).collect();
                if roots.len() != 1 {
                    return false;
                }
                let reaches_root = |mut u: NodeId| {
                    for _ in 0..n {
                        if u == roots[0] {
                            return true;
                        }
                        u = parent(u);
                    }
                    u == roots[0]
                };
                (1..=n).all(reaches_root) && (s.id == roots[0] || s.row.contains(parent(s.id)))
            }
        }
    }
}

impl Verifier for Toy {
    fn name(&self) -> String {
        self.kind.name().to_string()
    }

    fn label_bits(&self, n: usize) -> usize {
        match self.kind {
            ToyKind::TwoColouring => 1,
            ToyKind::AlwaysAccept => 0,
            _ => id_bits(n),
        }
    }

    fn rounds(&self, _n: usize) -> usize {
        self.kind.exchanges() as usize + self.kind.broadcasts() as usize
    }

    fn doomed(&self, s: &ToyState) -> bool {
        !s.ok
    }
}
