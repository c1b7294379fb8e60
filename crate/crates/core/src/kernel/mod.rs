//! Polyhedral kernel: halfspace/vertex representations of bounded convex sets
//! in `R^d` (`1 <= d <= 6`), conversion between them, Minkowski sum,
//! intersection, containment and support queries.
//!
//! All predicates share a single tolerance `eps` applied to unit-normal
//! halfspaces.

mod dd;
mod free;
mod halfspace;
mod hull;
pub(crate) mod linalg;
mod lp;
mod polytope;
mod walk;

use thiserror::Error;

pub use dd::vertices_of;
pub use free::{free_directions, split_subspaces, FreeDirections};
pub use halfspace::{HRep, Halfspace, VRep};
pub use hull::hull_of;
pub use lp::{is_feasible, remove_redundant};
pub use polytope::{contains, dim_of, intersect, minkowski_sum, same_vertex_set, support, Polytope};

pub const MAX_DIM: usize = 6;
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolytopeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} outside 1..=6")]
    BadDimension(usize),
    #[error("halfspace normal is zero or not finite")]
    ZeroNormal,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("zero direction")]
    ZeroDirection,
    #[error("halfspace system is infeasible")]
    Empty,
    #[error("unbounded along {direction:?}")]
    Unbounded { direction: Vec<f64> },
    #[error("numerical failure: {0}")]
    Numerical(&'static str),
}
