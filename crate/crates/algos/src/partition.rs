//! Globally known partition of the nodes and the label tuples that assign each
//! node a union of parts.

use clique_core::{NodeId, NodeSet};

/// Largest `p` with `p^k <= n`.
pub fn integer_root(n: usize, k: usize) -> usize {
    assert!(k >= 1 && n >= 1);
    let fits = |p: usize| {
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc = acc.saturating_mul(p as u128);
            if acc > n as u128 {
                return false;
            }
        }
        true
    };
    let mut p = 1;
    while fits(p + 1) {
        p += 1;
    }
    p
}

/// `p = floor(n^(1/k))` contiguous blocks `S_0 .. S_{p-1}` (the first `n mod p`
/// one node larger), and for every node `v` a label in `[p]^k`: the base-`p`
/// digits of `v - 1`, or all zeros for the surplus nodes with `v - 1 >= p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLabels {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub parts: Vec<Vec<NodeId>>,
    labels: Vec<Vec<usize>>,
    unions: Vec<Vec<NodeId>>,
    union_sets: Vec<NodeSet>,
}

impl PartitionLabels {
    pub fn new(n: usize, k: usize) -> Self {
        let p = integer_root(n, k);
        let (q, r) = (n / p, n % p);
        let mut parts = Vec::with_capacity(p);
        let mut next = 1;
        for i in 0..p {
            let size = q + usize::from(i < r);
            parts.push((next..next + size).collect::<Vec<_>>());
            next += size;
        }
        let pk = p.pow(k as u32);
        let labels: Vec<Vec<usize>> = (0..n)
            .map(|rank| {
                let mut digits = vec![0; k];
                if rank < pk {
                    let mut x = rank;
                    for d in digits.iter_mut().rev() {
                        *d = x % p;
                        x /= p;
                    }
                }
                digits
            })
            .collect();
        let unions: Vec<Vec<NodeId>> = labels
            .iter()
            .map(|l| {
                let mut u: Vec<NodeId> = l.iter().flat_map(|&i| parts[i].iter().copied()).collect();
                u.sort_unstable();
                u.dedup();
                u
            })
            .collect();
        let union_sets = unions.iter().map(|u| NodeSet::from_ids(n, u.iter().copied())).collect();
        Self {
            n,
            k,
            p,
            parts,
            labels,
            unions,
            union_sets,
        }
    }

    pub fn label(&self, v: NodeId) -> &[usize] {
        &self.labels[v - 1]
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: NodeId) -> usize {
        let (q, r) = (self.n / self.p, self.n % self.p);
        let rank = v - 1;
        if rank < r * (q + 1) {
            rank / (q + 1)
        } else {
            r + (rank - r * (q + 1)) / q
        }
    }

    /// `S_v`: the union of the parts named by `v`'s label, ascending.
    pub fn union(&self, v: NodeId) -> &[NodeId] {
        &self.unions[v - 1]
    }

    pub fn union_set(&self, v: NodeId) -> &NodeSet {
        &self.union_sets[v - 1]
    }

    pub fn max_union(&self) -> usize {
        self.unions.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn roots() {
        assert_eq!(integer_root(16, 2), 4);
        assert_eq!(integer_root(15, 2), 3);
        assert_eq!(integer_root(256, 2), 16);
        assert_eq!(integer_root(7, 3), 1);
        assert_eq!(integer_root(8, 3), 2);
        assert_eq!(integer_root(5, 1), 5);
    }

    #[test]
    fn parts_partition_and_labels_cover() {
        for n in 1..=70 {
            for k in 1..=4 {
                let pl = PartitionLabels::new(n, k);
                let all: Vec<_> = pl.parts.iter().flatten().copied().collect();
                assert_eq!(all, (1..=n).collect::<Vec<_>>());
                let sizes: HashSet<_> = pl.parts.iter().map(Vec::len).collect();
                assert!(sizes.len() <= 2);
                for v in 1..=n {
                    assert!(pl.parts[pl.part_of(v)].contains(&v), "n={n} k={k} v={v}");
                }
                let tuples: HashSet<_> = (1..=n).map(|v| pl.label(v).to_vec()).collect();
                assert_eq!(tuples.len(), pl.p.pow(k as u32));
            }
        }
    }

    #[test]
    fn surplus_nodes_take_the_first_tuple() {
        let pl = PartitionLabels::new(10, 2);
        assert_eq!(pl.p, 3);
        assert_eq!(pl.label(10), &[0, 0]);
        assert_eq!(pl.label(6), &[1, 2]);
        assert_eq!(pl.union(6), &[5, 6, 7, 8, 9, 10]);
    }
}
