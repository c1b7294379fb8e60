use serde::{Deserialize, Serialize};

use super::linalg::{dot, lex_cmp, norm};
use super::{PolytopeError, MAX_DIM};

/// Closed halfspace `{x : normal·x <= offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    normal: Vec<f64>,
    offset: f64,
}

impl Halfspace {
    /// Builds a halfspace, rescaling so the normal has unit length.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self, PolytopeError> {
        let n = norm(&normal);
        if !(n > 0.0) || !n.is_finite() || !offset.is_finite() {
            return Err(PolytopeError::ZeroNormal);
        }
        Ok(Self {
            normal: normal.iter().map(|x| x / n).collect(),
            offset: offset / n,
        })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `offset - normal·x`; negative when `x` lies outside.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - dot(&self.normal, x)
    }

    pub fn contains_point(&self, x: &[f64], eps: f64) -> bool {
        self.slack(x) >= -eps
    }

    pub fn negated(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: self.offset,
        }
    }
}

/// Halfspace description of a convex set in `R^dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HRep {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl HRep {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        check_dim(dim)?;
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        Ok(Self { dim, halfspaces })
    }

    /// Convenience constructor from `(normal, offset)` pairs.
    pub fn from_rows(dim: usize, rows: &[(Vec<f64>, f64)]) -> Result<Self, PolytopeError> {
        let hs = rows
            .iter()
            .map(|(n, b)| Halfspace::new(n.clone(), *b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn contains_point(&self, x: &[f64], eps: f64) -> bool {
        self.halfspaces.iter().all(|h| h.contains_point(x, eps))
    }

    pub(crate) fn sorted(mut self) -> Self {
        self.halfspaces.sort_by(|a, b| {
            lex_cmp(&a.normal, &b.normal).then(a.offset.total_cmp(&b.offset))
        });
        self
    }

    pub(crate) fn concat(&self, other: &HRep) -> HRep {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        HRep {
            dim: self.dim,
            halfspaces,
        }
    }
}

/// Finite point set in `R^dim`. Vertex sets produced by the kernel hold
/// only extreme points, pairwise farther apart than eps, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VRep {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl VRep {
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>) -> Result<Self, PolytopeError> {
        check_dim(dim)?;
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(PolytopeError::NonFinite);
        }
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn canonical(dim: usize, mut vertices: Vec<Vec<f64>>) -> Self {
        vertices.sort_by(|a, b| lex_cmp(a, b));
        Self { dim, vertices }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<(), PolytopeError> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(PolytopeError::BadDimension(dim))
    }
}
