//! Graph reductions: independent set to dominating set through compatibility
//! gadgets, and colouring to independent set through per-node cliques.

use clique_core::{Graph, NodeId};

/// What a node of the derived graph stands for. Indices `i`, `j` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// `v^i`: copy of `v` in the clique `K^i`.
    Clique { i: usize, v: NodeId },
    /// `v^{i,j}` with `i < j`: copy of `v` in the gadget between `K^i` and `K^j`.
    Gadget { i: usize, j: usize, v: NodeId },
    /// `x^i`, adjacent to exactly `K^i`.
    X(usize),
    /// `y^i`, adjacent to exactly `K^i`.
    Y(usize),
}

/// Node numbering and hosting for the independent-set to dominating-set
/// reduction on a base graph with `n` nodes.
///
/// Ids: `v^i = (i-1)n + v`; gadget pairs `(i, j)` follow lexicographic order
/// with `v^{i,j} = kn + idx(i,j) n + v`; then `x^1..x^k`, then `y^1..y^k`.
/// Node `v` hosts every `v^i` and `v^{i,j}`; node 1 hosts the `x^i` and node
/// 2 hosts the `y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    pub n: usize,
    pub k: usize,
    pairs: Vec<(usize, usize)>,
    guests: Vec<Vec<NodeId>>,
}

impl ReductionLayout {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 2 && k >= 1, "reduction needs n >= 2 and k >= 1");
        let pairs: Vec<_> = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).collect();
        let mut layout = Self {
            n,
            k,
            pairs,
            guests: vec![Vec::new(); n],
        };
        for w in 1..=layout.derived_n() {
            let h = layout.host_of(w);
            layout.guests[h - 1].push(w);
        }
        layout
    }

    /// `kn + C(k,2) n + 2k`.
    pub fn derived_n(&self) -> usize {
        self.k * self.n + self.pairs.len() * self.n + 2 * self.k
    }

    pub fn id(&self, role: Role) -> NodeId {
        let (n, k) = (self.n, self.k);
        let base = k * n + self.pairs.len() * n;
        match role {
            Role::Clique { i, v } => (i - 1) * n + v,
            Role::Gadget { i, j, v } => {
                let idx = self.pairs.iter().position(|&p| p == (i, j)).expect("gadget pair i < j");
                k * n + idx * n + v
            }
            Role::X(i) => base + i,
            Role::Y(i) => base + k + i,
        }
    }

    pub fn role(&self, w: NodeId) -> Role {
        let (n, k) = (self.n, self.k);
        let w0 = w - 1;
        if w0 < k * n {
            return Role::Clique {
                i: w0 / n + 1,
                v: w0 % n + 1,
            };
        }
        let g = w0 - k * n;
        if g < self.pairs.len() * n {
            let (i, j) = self.pairs[g / n];
            return Role::Gadget { i, j, v: g % n + 1 };
        }
        let s = g - self.pairs.len() * n;
        if s < k {
            Role::X(s + 1)
        } else {
            Role::Y(s - k + 1)
        }
    }

    pub fn host_of(&self, w: NodeId) -> NodeId {
        match self.role(w) {
            Role::Clique { v, .. } | Role::Gadget { v, .. } => v,
            Role::X(_) => 1,
            Role::Y(_) => 2,
        }
    }

    /// Guests of host `h`, ascending.
    pub fn guests_of(&self, h: NodeId) -> &[NodeId] {
        &self.guests[h - 1]
    }

    pub fn max_guests(&self) -> usize {
        self.guests.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Adjacency in the derived graph, given adjacency in the base graph.
    /// Only pairs `{v^j, u^{i,j}}` with `u != v` consult `base`.
    pub fn derived_adjacent(&self, a: Role, b: Role, base: impl Fn(NodeId, NodeId) -> bool) -> bool {
        use Role::*;
        match (a, b) {
            (Clique { i, v }, Clique { i: i2, v: u }) => i == i2 && v != u,
            (Clique { i: c, v }, Gadget { i, j, v: u }) | (Gadget { i, j, v: u }, Clique { i: c, v }) => {
                u != v && (c == i || (c == j && !base(u, v)))
            }
            (Clique { i, .. }, X(c) | Y(c)) | (X(c) | Y(c), Clique { i, .. }) => i == c,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub base: Graph,
    pub derived: Graph,
    pub layout: ReductionLayout,
}

impl ReductionGraph {
    pub fn role(&self, w: NodeId) -> Role {
        self.layout.role(w)
    }

    pub fn host(&self, w: NodeId) -> NodeId {
        self.layout.host_of(w)
    }
}

/// `G'` such that `G` has an independent set of size `k` iff `G'` has a
/// dominating set of size `k`.
pub fn build_is_to_ds_reduction(g: &Graph, k: usize) -> ReductionGraph {
    let layout = ReductionLayout::new(g.n(), k);
    let n2 = layout.derived_n();
    let roles: Vec<Role> = (1..=n2).map(|w| layout.role(w)).collect();
    let mut edges = Vec::new();
    for a in 1..=n2 {
        for b in a + 1..=n2 {
            if layout.derived_adjacent(roles[a - 1], roles[b - 1], |u, v| g.adjacent(u, v)) {
                edges.push((a, b));
            }
        }
    }
    let derived = Graph::build(n2, &edges).expect("derived ids are in range");
    ReductionGraph {
        base: g.clone(),
        derived,
        layout,
    }
}

/// Id of copy `c` (1-based) of node `v` in the colouring reduction.
pub fn colour_copy(k: usize, v: NodeId, c: usize) -> NodeId {
    (v - 1) * k + c
}

/// `k` copies per node joined into a clique; copies of the same colour are
/// adjacent iff their originals are. The result has an independent set of
/// size `n` iff `g` is `k`-colourable.
pub fn build_col_to_is_reduction(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for v in 1..=n {
        for c in 1..=k {
            for d in c + 1..=k {
                edges.push((colour_copy(k, v, c), colour_copy(k, v, d)));
            }
        }
    }
    for (u, v) in g.edges() {
        for c in 1..=k {
            edges.push((colour_copy(k, u, c), colour_copy(k, v, c)));
        }
    }
    Graph::build(n * k, &edges).expect("copy ids are in range")
}
