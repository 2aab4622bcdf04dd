//! Weighted and locally constrained graph homomorphisms, with solvers tuned for
//! geometric intersection graphs and generators for the matching hardness gadgets.

pub mod atlas;
pub mod budget;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod hom;
pub mod induced;
pub mod lists;
pub mod local;
pub mod models;
pub mod reductions;
pub mod separator;
pub mod star;
pub mod targets;
pub mod weight;
pub mod whom;

pub use error::{HomError, Result};
pub use graph::Graph;
pub use hom::{Homomorphism, LocalKind};
pub use lists::{ColorSet, ListAssignment};
pub use weight::{Weight, WeightModel};
