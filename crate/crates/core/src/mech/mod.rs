//! Mechanism files, the check pipeline, reports and exports.

mod build;
mod export;
mod file;
mod report;

use thiserror::Error;

use crate::chain::ChainError;
use crate::kernel::PolytopeError;
use crate::sdt::SdtError;

pub use build::{compile, compile_spec, run, run_check, surface_samples, CheckOptions, Compiled, CompiledSpec};
pub use export::{Embedding, PolytopeRecord};
pub use file::{
    split_ref, GlobalSettings, Mating, MechanismFile, PartDef, SpecDef, SpecKind, SurfaceDef, SurfaceType, DEFAULT_K,
};
pub use report::{EdgeSummary, PolySummary, Report, Verdict};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MechError {
    #[error("{msg} (line {line}, column {column})")]
    Parse { line: usize, column: usize, msg: String },
    #[error("{msg} (line {line}, column {column})")]
    Validation { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("spec '{name}': {source}")]
    Spec { name: String, source: SdtError },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("{0}")]
    Export(String),
    #[error("cannot write a {0}-dimensional polytope as OFF")]
    DimTooHighForOff(usize),
}
