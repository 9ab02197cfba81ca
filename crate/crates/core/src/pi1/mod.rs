//! Finite presentation of the fundamental group of the complement, read off
//! from the chamber structure of the periodic lift.

mod group;
mod nerve;
mod paths;
mod relations;

pub use group::{
    abelianize, count_homomorphisms, cyclic_reduce, free_reduce, inverse, kill_generators, simplify_presentation,
    symmetric_group, GroupPresentation, Word,
};
pub use nerve::edge_path_presentation;
pub use paths::{chamber_graph, sigma, PeriodicFace, Pi1Context};
pub use relations::{h_of_g, presentation, PresentationBuilder};
