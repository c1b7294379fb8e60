//! Surface graph of a mechanism and composition of its specifications:
//! Minkowski sums along series paths, intersections across parallel paths,
//! and the final inclusion test against the functional requirement.

mod check;
mod compose;
mod expr;
mod graph;

use thiserror::Error;

use crate::kernel::PolytopeError;
use crate::sdt::SdtError;

pub use check::{check_requirement, RequirementCheck, Witness};
pub use compose::{compose_parallel, compose_series, evaluate};
pub use expr::ChainExpr;
pub use graph::{EdgeKind, SpecEdge, SpecGraph, SurfaceRef};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ChainError {
    #[error("chain expression references unknown edge '{0}'")]
    UnresolvedLeaf(String),
    #[error("unknown surface '{0}'")]
    UnknownSurface(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("no path from {from} to {to}")]
    NoPath { from: String, to: String },
    #[error("paths share edge '{0}'; supply the chain expression explicitly")]
    SharedEdgeTopology(String),
    #[error("operands are expressed at different reduction points")]
    ReductionPointMismatch,
    #[error("nothing to compose")]
    NoOperands,
    #[error("chain expression, byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Sdt(#[from] SdtError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{same_vertex_set, Halfspace};
    use crate::sdt::{DisplacementPolytope, Vec3};

    const EPS: f64 = 1e-9;

    fn unit(i: usize, s: f64) -> Vec<f64> {
        let mut e = vec![0.0; 6];
        e[i] = s;
        e
    }

    fn box6(lo: [f64; 6], hi: [f64; 6]) -> DisplacementPolytope {
        let mut hs = Vec::new();
        for i in 0..6 {
            hs.push(Halfspace::new(unit(i, 1.0), hi[i]).unwrap());
            hs.push(Halfspace::new(unit(i, -1.0), -lo[i]).unwrap());
        }
        DisplacementPolytope::from_halfspaces(&hs, Vec3::zeros(), EPS).unwrap()
    }

    fn ez_interval(lo: f64, hi: f64) -> DisplacementPolytope {
        let hs = [Halfspace::new(unit(5, 1.0), hi).unwrap(), Halfspace::new(unit(5, -1.0), -lo).unwrap()];
        DisplacementPolytope::from_halfspaces(&hs, Vec3::zeros(), EPS).unwrap()
    }

    const EZ: [f64; 6] = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    const MEZ: [f64; 6] = [0.0, 0.0, 0.0, 0.0, 0.0, -1.0];

    #[test]
    fn interval_sum() {
        let s = compose_series(&[ez_interval(-0.1, 0.1), ez_interval(-0.2, 0.2)]).unwrap();
        assert!((s.support(&EZ) - 0.3).abs() < 1e-15);
        assert!((s.support(&MEZ) - 0.3).abs() < 1e-15);
        assert_eq!(s.free().len(), 5);
    }

    #[test]
    fn point_is_the_identity() {
        let zero = box6([0.0; 6], [0.0; 6]);
        let b = box6([-1.0, -2.0, 0.0, 0.0, 0.0, -0.5], [1.0, 2.0, 0.5, 0.1, 0.0, 0.5]);
        let s = compose_series(&[b.clone(), zero]).unwrap();
        assert!(same_vertex_set(&s.vertices(), &b.vertices(), 1e-12));
    }

    #[test]
    fn free_directions_union_in_series() {
        let s = compose_series(&[ez_interval(-0.1, 0.1), box6([-1.0; 6], [1.0; 6])]).unwrap();
        assert_eq!(s.free().len(), 5);
        assert!((s.support(&EZ) - 1.1).abs() < 1e-12);
    }

    #[test]
    fn nested_parallel() {
        let p = compose_parallel(&[ez_interval(-0.3, 0.3), ez_interval(-0.2, 0.2)]).unwrap().unwrap();
        assert!((p.support(&EZ) - 0.2).abs() < 1e-15);
        assert_eq!(p.body().unwrap().halfspaces().len(), 2);
        assert!(compose_parallel(&[ez_interval(0.0, 0.1), ez_interval(0.2, 0.3)]).unwrap().is_none());
    }

    #[test]
    fn parallel_constrains_union_of_subspaces() {
        let x = DisplacementPolytope::from_halfspaces(
            &[Halfspace::new(unit(3, 1.0), 1.0).unwrap(), Halfspace::new(unit(3, -1.0), 1.0).unwrap()],
            Vec3::zeros(),
            EPS,
        )
        .unwrap();
        let p = compose_parallel(&[x, ez_interval(-0.2, 0.2)]).unwrap().unwrap();
        assert_eq!(p.free().len(), 4);
        assert_eq!(p.body().unwrap().vertices().len(), 4);
    }

    #[test]
    fn requirement_margins() {
        let calc = box6([-1.0; 6], [1.0; 6]);
        let same = check_requirement(Some(&calc), &calc).unwrap();
        assert!(same.satisfied && (same.margin - 1.0).abs() < 1e-12);
        let twice = box6([-2.0; 6], [2.0; 6]);
        let r = check_requirement(Some(&calc), &twice).unwrap();
        assert!(r.satisfied && (r.margin - 2.0).abs() < 1e-12);

        let shifted = box6([-1.0, -1.0, -1.0, -1.0, -1.0, -0.5], [1.0, 1.0, 1.0, 1.0, 1.0, 1.5]);
        let r = check_requirement(Some(&shifted), &calc).unwrap();
        assert!(!r.satisfied && r.margin < 1.0);
        let Some(Witness::Vertex { vertex, halfspace, excess, .. }) = r.witness else { panic!() };
        assert_eq!(halfspace.normal(), &EZ[..]);
        assert!((vertex[5] - 1.5).abs() < 1e-12 && (excess - 0.5).abs() < 1e-12);

        let empty = check_requirement(None, &calc).unwrap();
        assert!(empty.over_constrained && empty.margin.is_infinite());

        let r = check_requirement(Some(&ez_interval(-0.1, 0.1)), &calc).unwrap();
        assert!(matches!(r.witness, Some(Witness::FreeDirection { .. })) && r.margin == 0.0);
    }
}
