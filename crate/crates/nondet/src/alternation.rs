//! Alternating quantifier games over labellings `z_1, …, z_k`, evaluated by
//! exhaustive game-tree search.

use clique_core::{guard, run, Bits, Draft, Graph, Message, NodeContext, NodeProgram};
use rayon::prelude::*;

use crate::verifier::accepting;
use crate::{Labelling, NondetError, Verifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    ForAll,
}

impl Quantifier {
    pub fn flip(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::ForAll,
            Quantifier::ForAll => Quantifier::Exists,
        }
    }
}

/// A constant-round verifier reading `k` labels per node. Node `v`'s `aux`
/// is `z_1(v) ‖ z_2(v) ‖ … ‖ z_k(v)`, each exactly `level_bits(n)[i]` bits.
pub trait MultiVerifier: NodeProgram {
    fn name(&self) -> String;
    fn level_bits(&self, n: usize) -> Vec<usize>;
    fn rounds(&self, n: usize) -> usize;
}

/// `Q_1 z_1 Q_2 z_2 ⋯ : A(G, z_1, …) = 1` with strictly alternating
/// quantifiers starting at `first` (`Exists` gives Σ_k, `ForAll` gives Π_k).
#[derive(Debug, Clone, Copy)]
pub struct AlternationSpec<V> {
    pub first: Quantifier,
    pub verifier: V,
}

impl<V: MultiVerifier> AlternationSpec<V> {
    pub fn new(first: Quantifier, verifier: V) -> Self {
        Self { first, verifier }
    }

    pub fn k(&self, n: usize) -> usize {
        self.verifier.level_bits(n).len()
    }

    pub fn quantifier(&self, level: usize) -> Quantifier {
        if level.is_multiple_of(2) {
            self.first
        } else {
            self.first.flip()
        }
    }
}

/// The quantified truth value on `g`.
pub fn evaluate_alternation<V: MultiVerifier>(spec: &AlternationSpec<V>, g: &Graph) -> Result<bool, NondetError> {
    if spec.k(g.n()) == 0 {
        return Err(NondetError::Unsupported("alternation needs at least one labelling".into()));
    }
    evaluate_from(spec, g, &vec![Bits::new(); g.n()], 0)
}

/// Evaluates levels `level..k` with levels before `level` fixed to `prefix`
/// (per node, already concatenated). The first level evaluated runs in
/// parallel over its candidates; results equal sequential evaluation.
pub fn evaluate_from<V: MultiVerifier>(
    spec: &AlternationSpec<V>,
    g: &Graph,
    prefix: &[Bits],
    level: usize,
) -> Result<bool, NondetError> {
    let n = g.n();
    let bits = spec.verifier.level_bits(n);
    let remaining: usize = bits[level..].iter().map(|s| n * s).sum();
    guard::check_bits(remaining)?;
    if remaining >= 64 {
        return Err(NondetError::Unsupported(format!("{remaining}-bit game tree")));
    }
    if level == bits.len() {
        return leaf(spec, g, prefix);
    }
    let width = bits[level];
    let q = spec.quantifier(level);
    let decisive = q == Quantifier::Exists;
    let hit = (0..1u64 << (n * width)).into_par_iter().find_map_any(|x| {
        match eval(spec, g, &extend(prefix, width, x), level + 1) {
            Ok(v) if v == decisive => Some(Ok(())),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match hit {
        Some(Ok(())) => Ok(decisive),
        Some(Err(e)) => Err(e),
        None => Ok(!decisive),
    }
}

fn eval<V: MultiVerifier>(spec: &AlternationSpec<V>, g: &Graph, prefix: &[Bits], level: usize) -> Result<bool, NondetError> {
    let n = g.n();
    let bits = spec.verifier.level_bits(n);
    if level == bits.len() {
        return leaf(spec, g, prefix);
    }
    let width = bits[level];
    let decisive = spec.quantifier(level) == Quantifier::Exists;
    for x in 0..1u64 << (n * width) {
        if eval(spec, g, &extend(prefix, width, x), level + 1)? == decisive {
            return Ok(decisive);
        }
    }
    Ok(!decisive)
}

fn extend(prefix: &[Bits], width: usize, x: u64) -> Vec<Bits> {
    let level = Labelling::from_index(prefix.len(), width, x);
    prefix
        .iter()
        .zip(&level.labels)
        .map(|(p, l)| {
            let mut p = p.clone();
            p.extend(l);
            p
        })
        .collect()
}

fn leaf<V: MultiVerifier>(spec: &AlternationSpec<V>, g: &Graph, aux: &[Bits]) -> Result<bool, NondetError> {
    Ok(run(&spec.verifier, g, Some(aux), spec.verifier.rounds(g.n()))?.accepted())
}

/// A single-label verifier seen as a one-level game.
#[derive(Debug, Clone, Copy)]
pub struct Single<V>(pub V);

impl<V: Verifier> NodeProgram for Single<V> {
    type State = V::State;

    fn init(&self, ctx: &NodeContext<'_>) -> V::State {
        self.0.init(ctx)
    }
    fn is_done(&self, s: &V::State, rounds: usize) -> bool {
        self.0.is_done(s, rounds)
    }
    fn send(&self, s: &V::State, round: usize) -> Vec<Draft> {
        self.0.send(s, round)
    }
    fn receive(&self, s: V::State, round: usize, inbox: &[Message]) -> V::State {
        self.0.receive(s, round, inbox)
    }
    fn output(&self, s: &V::State) -> Bits {
        self.0.output(s)
    }
}

impl<V: Verifier> MultiVerifier for Single<V> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn level_bits(&self, n: usize) -> Vec<usize> {
        vec![self.0.label_bits(n)]
    }
    fn rounds(&self, n: usize) -> usize {
        self.0.rounds(n)
    }
}

/// Adds a 1-bit dummy labelling that the verifier never reads, either before
/// the first level or after the last.
#[derive(Debug, Clone, Copy)]
pub struct Padded<V> {
    pub inner: V,
    pub front: bool,
}

impl<V: MultiVerifier> NodeProgram for Padded<V> {
    type State = V::State;

    fn init(&self, ctx: &NodeContext<'_>) -> V::State {
        let len = ctx.aux.len().saturating_sub(1);
        let aux = ctx.aux.slice(usize::from(self.front && !ctx.aux.is_empty()), len);
        self.inner.init(&NodeContext { aux: &aux, ..*ctx })
    }
    fn is_done(&self, s: &V::State, rounds: usize) -> bool {
        self.inner.is_done(s, rounds)
    }
    fn send(&self, s: &V::State, round: usize) -> Vec<Draft> {
        self.inner.send(s, round)
    }
    fn receive(&self, s: V::State, round: usize, inbox: &[Message]) -> V::State {
        self.inner.receive(s, round, inbox)
    }
    fn output(&self, s: &V::State) -> Bits {
        self.inner.output(s)
    }
}

impl<V: MultiVerifier> MultiVerifier for Padded<V> {
    fn name(&self) -> String {
        format!("padded({})", self.inner.name())
    }
    fn level_bits(&self, n: usize) -> Vec<usize> {
        let mut bits = self.inner.level_bits(n);
        if self.front {
            bits.insert(0, 1);
        } else {
            bits.push(1);
        }
        bits
    }
    fn rounds(&self, n: usize) -> usize {
        self.inner.rounds(n)
    }
}

/// Accepts iff the inner verifier rejects: after the inner rounds every node
/// broadcasts its verdict bit, and all output 1 iff someone had output 0.
#[derive(Debug, Clone, Copy)]
pub struct Complement<V>(pub V);

#[derive(Debug, Clone)]
pub struct ComplementState<S> {
    inner: S,
    n: usize,
    id: usize,
    someone_rejected: bool,
}

impl<V: MultiVerifier> NodeProgram for Complement<V> {
    type State = ComplementState<V::State>;

    fn init(&self, ctx: &NodeContext<'_>) -> Self::State {
        ComplementState { inner: self.0.init(ctx), n: ctx.n, id: ctx.id, someone_rejected: false }
    }

    fn is_done(&self, s: &Self::State, rounds: usize) -> bool {
        rounds > self.0.rounds(s.n)
    }

    fn send(&self, s: &Self::State, round: usize) -> Vec<Draft> {
        if round <= self.0.rounds(s.n) {
            return self.0.send(&s.inner, round);
        }
        let own = accepting(&self.0.output(&s.inner));
        (1..=s.n)
            .filter(|&u| u != s.id)
            .map(|u| Draft::new(u, Bits::from_bools([own])))
            .collect()
    }

    fn receive(&self, mut s: Self::State, round: usize, inbox: &[Message]) -> Self::State {
        let inner_rounds = self.0.rounds(s.n);
        if round <= inner_rounds {
            s.inner = self.0.receive(s.inner, round, inbox);
        } else if round == inner_rounds + 1 {
            s.someone_rejected =
                !accepting(&self.0.output(&s.inner)) || inbox.iter().any(|m| !m.payload.get(0));
        }
        s
    }

    fn output(&self, s: &Self::State) -> Bits {
        Bits::from_bools([s.someone_rejected])
    }
}

impl<V: MultiVerifier> MultiVerifier for Complement<V> {
    fn name(&self) -> String {
        format!("complement({})", self.0.name())
    }
    fn level_bits(&self, n: usize) -> Vec<usize> {
        self.0.level_bits(n)
    }
    fn rounds(&self, n: usize) -> usize {
        self.0.rounds(n) + 1
    }
}
