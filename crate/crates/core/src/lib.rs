//! The congested clique model: graphs, input-bit ownership, the
//! round-synchronous engine and its communication primitives.

pub mod bits;
pub mod comm;
pub mod engine;
pub mod graph;
pub mod guard;
pub mod input;
pub mod sets;

pub use bits::Bits;
pub use engine::{
    run, run_with, Draft, EngineError, Execution, ExecutionReport, Message, NodeContext, NodeProgram,
    RunOptions, Transcript,
};
pub use graph::{Graph, GraphError, NodeId, NodeSet};
pub use input::{assign_inputs, owner, InputAssignment, NodeInput};
pub use sets::{SetKind, VertexSet};

/// `ceil(log2 n)`: the message size in bits, and the width of an encoded node id.
pub fn id_bits(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}
