use serde::{Deserialize, Serialize};

use super::linalg::{dot, norm, span_and_complement};

/// Orthonormal basis of the directions a halfspace system leaves unbounded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeDirections {
    dim: usize,
    basis: Vec<Vec<f64>>,
}

impl FreeDirections {
    pub fn new(dim: usize, basis: Vec<Vec<f64>>) -> Self {
        Self { dim, basis }
    }

    pub fn none(dim: usize) -> Self {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether `v` is orthogonal to every free direction within `tol`.
    pub fn is_orthogonal_to(&self, v: &[f64], tol: f64) -> bool {
        let scale = norm(v).max(1.0);
        self.basis.iter().all(|u| dot(u, v).abs() <= tol * scale)
    }
}

/// Splits `R^dim` into the row space of `normals` (returned as a canonical
/// orthonormal basis) and its orthogonal complement, the free directions.
///
/// Rank is decided on singular values with tolerance `eps`.
pub fn split_subspaces(normals: &[Vec<f64>], dim: usize, eps: f64) -> (Vec<Vec<f64>>, FreeDirections) {
    let (constrained, free) = span_and_complement(normals, dim, eps.max(1e-12));
    (constrained, FreeDirections::new(dim, free))
}

/// Null space of the stacked normals: the degrees of freedom the system leaves open.
pub fn free_directions(normals: &[Vec<f64>], dim: usize, eps: f64) -> FreeDirections {
    split_subspaces(normals, dim, eps).1
}
