//! Validity checks for vertex sets.

use clique_core::{Graph, NodeId};

fn in_range(g: &Graph, s: &[NodeId]) -> bool {
    s.iter().all(|&v| v >= 1 && v <= g.n())
}

/// Every node is in `s` or has a neighbour in `s`.
pub fn is_dominating(g: &Graph, s: &[NodeId]) -> bool {
    in_range(g, s)
        && g.nodes()
            .all(|v| s.iter().any(|&d| d == v || g.adjacent(d, v)))
}

/// No two members of `s` are adjacent.
pub fn is_independent(g: &Graph, s: &[NodeId]) -> bool {
    in_range(g, s)
        && s.iter()
            .enumerate()
            .all(|(i, &a)| s[i + 1..].iter().all(|&b| !g.adjacent(a, b)))
}

/// Every edge has an endpoint in `s`.
pub fn is_cover(g: &Graph, s: &[NodeId]) -> bool {
    in_range(g, s) && g.edges().all(|(u, v)| s.contains(&u) || s.contains(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k3 = Graph::build(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(is_dominating(&k3, &[1]));
        assert!(!is_independent(&k3, &[1, 2]));
        let p4 = Graph::build(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(is_cover(&p4, &[2, 3]));
        assert!(!is_cover(&p4, &[2]));
        assert!(is_independent(&p4, &[1, 3]));
        assert!(!is_dominating(&p4, &[5]));
    }
}
