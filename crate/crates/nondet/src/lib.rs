//! Nondeterministic verification in the congested clique: certificates,
//! the transcript normal form, edge labelling problems and alternating
//! quantifier games.

pub mod alternation;
pub mod corpus;
pub mod edge_label;
pub mod labelling;
pub mod normal_form;
pub mod predicate;
pub mod sigma2;
pub mod verifier;

use clique_core::guard::GuardError;
use clique_core::{EngineError, NodeId};
use thiserror::Error;

pub use alternation::{evaluate_alternation, AlternationSpec, Complement, MultiVerifier, Padded, Quantifier, Single};
pub use corpus::{Toy, ToyKind};
pub use edge_label::{check_edge_labelling, EdgeLabelling, NeighbourhoodConstraint, PresenceConstraint, TranscriptConstraint};
pub use labelling::Labelling;
pub use normal_form::NormalForm;
pub use predicate::GraphPredicate;
pub use sigma2::Sigma2Universal;
pub use verifier::{exists_certificate, verify_certificate, Verdict, Verifier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NondetError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("label of node {node} has {len} bits, bound is {bound}")]
    CertificateFormat { node: NodeId, len: usize, bound: usize },
    #[error("labelling has {got} labels for {n} nodes")]
    LabellingSize { n: usize, got: usize },
    #[error("edge label for {{{u},{v}}} has {len} bits, expected {expected}")]
    EdgeLabelFormat { u: NodeId, v: NodeId, len: usize, expected: usize },
    #[error("edge labels of {width} bits exceed the limit of {limit}")]
    EdgeLabelTooWide { width: usize, limit: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate has no label for node {0}")]
    MissingLabel(NodeId),
    #[error("{0}")]
    Unsupported(String),
}
