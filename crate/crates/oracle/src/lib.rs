//! Centralized ground truth: exhaustive solvers, validity checks and seeded
//! graph generators.

pub mod check;
pub mod generate;
pub mod rng;
pub mod solve;

pub use check::{is_cover, is_dominating, is_independent};
pub use generate::{all_graphs, generate, GeneratorKind, GeneratorSpec};
pub use rng::SplitMix64;
pub use solve::{
    chromatic_number_at_most, has_clique, has_dominating_set, has_independent_set, has_vertex_cover,
    max_independent_set_size, OracleError,
};
