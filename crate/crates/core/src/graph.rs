//! Undirected simple graphs on nodes `1..=n` and their text file format.
//!
//! File format: the first significant line is `n m`, followed by `m` lines
//! `u v` with 1-based ids. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

/// 1-based node identifier.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {{{u},{v}}}: endpoint out of range 1..={n}")]
    OutOfRange { n: usize, u: NodeId, v: NodeId },
    #[error("edge {{{u},{v}}}: self-loop")]
    SelfLoop { u: NodeId, v: NodeId },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A set of node ids backed by a bitmap.
#[derive(Clone, Default)]
pub struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    fn significant(&self) -> &[u64] {
        let end = self.words.iter().rposition(|&w| w != 0).map_or(0, |i| i + 1);
        &self.words[..end]
    }
}

impl PartialEq for NodeSet {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for NodeSet {}

impl std::hash::Hash for NodeSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.significant().hash(state);
    }
}

impl NodeSet {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        for v in 1..=n {
            s.insert(v);
        }
        s
    }

    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = NodeId>) -> Self {
        let mut s = Self::with_capacity(n);
        for v in ids {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: NodeId) {
        let i = v - 1;
        if i / 64 >= self.words.len() {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: NodeId) {
        let i = v - 1;
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        let i = v - 1;
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &NodeSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Ascending ids.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b + 1)
            })
        })
    }

    /// True iff every id in `1..=n` is present.
    pub fn covers(&self, n: usize) -> bool {
        self.len() >= n && (1..=n).all(|v| self.contains(v))
    }
}

impl std::fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<NodeSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![NodeSet::with_capacity(n); n],
        }
    }

    /// Builds a graph, collapsing duplicate pairs. Pairs are unordered.
    pub fn build(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(GraphError::OutOfRange { n, u, v });
            }
            if u == v {
                return Err(GraphError::SelfLoop { u, v });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: NodeId, v: NodeId) {
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<NodeId> {
        1..=self.n
    }

    #[inline]
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.adj[u - 1].contains(v)
    }

    pub fn neighbours(&self, v: NodeId) -> &NodeSet {
        &self.adj[v - 1]
    }

    /// `N[v]`: the neighbours of `v` together with `v`.
    pub fn closed_neighbourhood(&self, v: NodeId) -> NodeSet {
        let mut s = self.adj[v - 1].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v - 1].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(NodeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |u| self.adj[u - 1].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in self.nodes() {
            for v in u + 1..=self.n {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::build(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let mut it = l.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse {
            line,
            msg: format!("expected two integers, got `{l}`"),
        }),
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Index of the unordered pair `{u, v}` in the upper-triangle lexicographic
/// order `(1,2), (1,3), …, (1,n), (2,3), …`.
pub fn pair_index(n: usize, u: NodeId, v: NodeId) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let a0 = a - 1;
    a0 * (2 * n - a0 - 1) / 2 + (b - a - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, mut index: usize) -> (NodeId, NodeId) {
    for a in 1..n {
        let row = n - a;
        if index < row {
            return (a, a + 1 + index);
        }
        index -= row;
    }
    panic!("pair index out of range for n={n}");
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::build(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.adjacent(3, 1) && g.adjacent(1, 3));
    }

    #[test]
    fn empty_on_two() {
        let g = Graph::build(2, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(!g.adjacent(1, 2));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::build(3, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            Graph::build(3, &[(1, 4)]),
            Err(GraphError::OutOfRange { n: 3, u: 1, v: 4 })
        );
        assert_eq!(Graph::build(3, &[(2, 2)]), Err(GraphError::SelfLoop { u: 2, v: 2 }));
        assert!(Graph::build(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn file_format() {
        let text = "# a path\n4 3\n\n1 2\n2 3\n# middle\n3 4\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        let err = Graph::parse("3 2\n1 2\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
        assert!(matches!(
            Graph::parse("3 1\n1 x\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn pair_indexing_is_a_bijection() {
        for n in 2..9 {
            for i in 0..pair_count(n) {
                let (u, v) = pair_at(n, i);
                assert!(u < v && v <= n);
                assert_eq!(pair_index(n, u, v), i);
                assert_eq!(pair_index(n, v, u), i);
            }
        }
    }

    #[test]
    fn node_set_ops() {
        let mut s = NodeSet::from_ids(70, [1, 65, 70]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 65, 70]);
        s.remove(65);
        assert_eq!(s.len(), 2);
        assert!(!NodeSet::from_ids(3, [1, 2]).covers(3));
        assert!(NodeSet::full(3).covers(3));
    }
}
