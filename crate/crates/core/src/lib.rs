//! Chromatic Ramsey numbers of acyclic hypergraphs, computed and checked at
//! desk scale.
//!
//! The crate is organised bottom-up:
//!
//! - [`hypercore`]: uniform hypergraphs, proper colorings, exact and greedy
//!   chromatic numbers, components and restrictions.
//! - [`intersect`]: the 1-intersection graph and the structure of triple
//!   systems without 1-intersections.
//! - [`skeleton`]: union-of-matchings skeletons with the switching repair.
//! - [`lift`]: turning a proper coloring of the 1-intersection graph of a
//!   triple system into a proper coloring of the triple system itself.
//! - [`ramsey`]: monochromatic matching, star and tree finders together with
//!   extremal edge-coloring generators.
//! - [`workbench`]: file formats, enumeration, brute-force oracles and
//!   seeded verification campaigns.

pub mod error;
pub mod hypercore;
pub mod intersect;
pub mod lift;
pub mod ramsey;
pub mod skeleton;
pub mod workbench;

pub use error::{Error, Result};
pub use hypercore::{
    binomial, chromatic_at_least, chromatic_number, chromatic_number_with, combinations, complete_hypergraph,
    components, find_coloring, greedy_coloring, greedy_coloring_with_witnesses, induced, is_proper, remove,
    EdgePartition, GreedyWitnesses, Hypergraph, SearchLimits, VertexColoring,
};
pub use intersect::{
    one_intersection_graph, partition_from_igraph_coloring, structure_decompose, two_color_no_one_intersections, Part,
    StructureDecomposition,
};
pub use lift::{
    brooks_color, color_via_intersection, lift_coloring, list_color, Branch, ColorSet, IntersectionColoring, Lift,
    LiftContext, ListColoring, Route,
};
pub use ramsey::{
    assemble_lower_witness, embed_tree, find_mono_matching, find_mono_matching_2col, find_mono_star, find_mono_tree,
    gen_matching_extremal, gen_star_witness, gen_two_factor_split, validate_witness, LowerKind, LowerWitness,
    MonoWitness, Pattern, PatternKind, TreeEmbedding, TreePattern,
};
pub use skeleton::{
    build_skeleton, build_skeleton_traced, find_bad_components, initial_skeleton, switch, verify_skeleton, Provenance,
    Skeleton, SkeletonEdge, SwitchTrace,
};
