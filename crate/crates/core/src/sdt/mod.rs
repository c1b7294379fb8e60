//! Small-displacement torsors and the compiler from surface specifications
//! to constraint rows and displacement polytopes.

mod displacement;
mod mating;
mod rows;
mod sample;
mod screw;

use thiserror::Error;

use crate::kernel::PolytopeError;

pub use displacement::{rows_to_polytope, DisplacementPolytope};
pub use mating::{
    check_mating_parallel_planes, contact_samples, overlap_polygon, MatingFailure, MatingReport, PlaneDef,
};
pub use rows::{
    contact_rows, free_directions, functional_rows, geometric_rows, ConstraintRow, ContactSpec, ToleranceSpec,
};
pub use sample::{sample_cylinder, sample_plane, sample_sphere, Frame, SurfaceSample};
pub use screw::{transport, Screw, Vec3};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SdtError {
    #[error("no surface samples")]
    EmptySamples,
    #[error("sample {index}: normal is not unit length")]
    DegenerateNormal { index: usize },
    #[error("samples do not share one reduction point")]
    MixedReductionPoints,
    #[error("mating conditions not satisfied: {}", reasons_text(.0))]
    MatingViolated(Vec<MatingFailure>),
    #[error("bad sampling grid: {0}")]
    BadGrid(String),
    #[error("bad geometry: {0}")]
    BadGeometry(String),
    #[error("bad specification: {0}")]
    BadSpec(String),
    #[error("constraint rows are infeasible")]
    Infeasible,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn reasons_text(r: &[MatingFailure]) -> String {
    r.iter().map(|m| m.code()).collect::<Vec<_>>().join(", ")
}
