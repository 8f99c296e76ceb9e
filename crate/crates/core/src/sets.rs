//! Vertex sets returned by algorithms and oracles, and their wire encoding.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Dominating,
    Independent,
    Cover,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    pub kind: SetKind,
    /// Ascending, without duplicates.
    pub members: Vec<NodeId>,
}

impl VertexSet {
    pub fn new(kind: SetKind, members: impl IntoIterator<Item = NodeId>) -> Self {
        let mut members: Vec<_> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { kind, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Node output for an optional set: a found bit, then each member as
/// `id - 1` in `width` bits.
pub fn encode_answer(members: Option<&[NodeId]>, width: usize) -> Bits {
    let mut out = Bits::new();
    match members {
        None => out.push(false),
        Some(ms) => {
            out.push(true);
            for &m in ms {
                out.push_uint(m as u64 - 1, width);
            }
        }
    }
    out
}

/// Inverse of [`encode_answer`]; `None` on malformed input.
pub fn decode_answer(bits: &Bits, width: usize) -> Option<Option<Vec<NodeId>>> {
    if bits.is_empty() {
        return None;
    }
    if !bits.get(0) {
        return (bits.len() == 1).then_some(None);
    }
    let body = bits.len() - 1;
    if width == 0 || !body.is_multiple_of(width) {
        return None;
    }
    Some(Some(
        (0..body / width)
            .map(|i| bits.uint_at(1 + i * width, width) as NodeId + 1)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn answer_round_trip() {
        for ans in [None, Some(vec![]), Some(vec![1, 4, 7])] {
            let b = encode_answer(ans.as_deref(), 3);
            assert_eq!(decode_answer(&b, 3), Some(ans));
        }
        assert_eq!(decode_answer(&Bits::parse_binary("11").unwrap(), 3), None);
    }

    #[test]
    fn sets_are_normalised() {
        assert_eq!(VertexSet::new(SetKind::Cover, [3, 1, 3]).members, vec![1, 3]);
    }
}
