//! Uniform hypergraphs, proper colorings and exact chromatic numbers.

mod chromatic;
mod coloring;
mod hypergraph;
mod ops;

pub use chromatic::{chromatic_at_least, chromatic_number, chromatic_number_with, find_coloring, SearchLimits};
pub use coloring::{
    greedy_coloring, greedy_coloring_with_witnesses, is_proper, EdgePartition, GreedyWitnesses, VertexColoring,
};
pub use hypergraph::{binomial, combinations, complete_hypergraph, Hypergraph, DEFAULT_VERTEX_CAP, MAX_COMPLETE_EDGES};
pub use ops::{components, induced, remove};
