//! Per-node labels with a size bound, and the certificate file format: one
//! line `node_id hexbits` per node, labels big-endian, zero-padded to whole
//! hex digits.

use std::fmt::Write as _;

use clique_core::{Bits, NodeId};

use crate::NondetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    /// `labels[v - 1]` belongs to node `v`.
    pub labels: Vec<Bits>,
    pub size_bound: usize,
}

impl Labelling {
    pub fn new(labels: Vec<Bits>, size_bound: usize) -> Self {
        Self { labels, size_bound }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(vec![Bits::new(); n], 0)
    }

    /// Splits `value`'s low `n * width` bits into per-node labels, node 1 first.
    pub fn from_index(n: usize, width: usize, value: u64) -> Self {
        let all = Bits::from_uint(value, n * width);
        Self::new((0..n).map(|i| all.slice(i * width, width)).collect(), width)
    }

    pub fn check(&self, n: usize) -> Result<(), NondetError> {
        if self.labels.len() != n {
            return Err(NondetError::LabellingSize { n, got: self.labels.len() });
        }
        match self.labels.iter().position(|l| l.len() > self.size_bound) {
            Some(i) => Err(NondetError::CertificateFormat {
                node: i + 1,
                len: self.labels[i].len(),
                bound: self.size_bound,
            }),
            None => Ok(()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(s, "{} {}", i + 1, l.to_hex()).unwrap();
        }
        s
    }

    /// Parses a certificate file for `n` nodes whose labels are `width` bits.
    /// Every node must appear exactly once.
    pub fn parse(text: &str, n: usize, width: usize) -> Result<Self, NondetError> {
        let mut labels: Vec<Option<Bits>> = vec![None; n];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| NondetError::Parse { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let id: NodeId = parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| err(format!("expected a node id in `{line}`")))?;
            let hex = parts.next().unwrap_or("");
            if parts.next().is_some() {
                return Err(err("trailing fields".into()));
            }
            if id == 0 || id > n {
                return Err(err(format!("node {id} outside 1..={n}")));
            }
            let bits = Bits::parse_hex(hex, width)
                .ok_or_else(|| err(format!("`{hex}` is not a {width}-bit hex label")))?;
            if labels[id - 1].replace(bits).is_some() {
                return Err(err(format!("node {id} labelled twice")));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or(NondetError::MissingLabel(i + 1)))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(labels, width))
    }
}
