use super::rows::ConstraintRow;
use super::screw::{transport_normal, Screw, Vec3};
use super::SdtError;
use crate::kernel::{
    dim_of, split_subspaces, FreeDirections, HRep, Halfspace, Polytope, PolytopeError, VRep,
};

/// Set of admissible screws at one reduction point, stored as a bounded
/// polytope in the constrained subspace of `R^6` plus the free directions
/// along which it extends without bound.
///
/// `body` is expressed in coordinates of the orthonormal `basis`; it is
/// `None` only when every direction is free.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementPolytope {
    body: Option<Polytope>,
    basis: Vec<Vec<f64>>,
    free: FreeDirections,
    point: Vec3,
    eps: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl DisplacementPolytope {
    /// Polytope of all screws satisfying the halfspaces (normals over the
    /// six screw components at `point`).
    pub fn from_halfspaces(halfspaces: &[Halfspace], point: Vec3, eps: f64) -> Result<Self, SdtError> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != 6) {
            return Err(PolytopeError::DimensionMismatch {
                expected: 6,
                found: h.dim(),
            }
            .into());
        }
        let normals: Vec<Vec<f64>> = halfspaces.iter().map(|h| h.normal().to_vec()).collect();
        let (basis, free) = split_subspaces(&normals, 6, eps);
        if basis.is_empty() {
            return Ok(Self::unconstrained(point, eps));
        }
        let projected = halfspaces
            .iter()
            .map(|h| Halfspace::new(basis.iter().map(|b| dot(b, h.normal())).collect(), h.offset()))
            .collect::<Result<Vec<_>, _>>()?;
        let body = match Polytope::from_hrep(HRep::new(basis.len(), projected)?, eps) {
            Ok(p) => p,
            Err(PolytopeError::Empty) => return Err(SdtError::Infeasible),
            Err(e) => return Err(e.into()),
        };
        Ok(Self {
            body: Some(body),
            basis,
            free,
            point,
            eps,
        })
    }

    /// Hull of screws given by their six components, extended along `free`.
    pub fn from_points(points: &[Vec<f64>], free: FreeDirections, point: Vec3, eps: f64) -> Result<Self, SdtError> {
        // span of the free directions first, constrained complement second
        let (free_span, complement) = split_subspaces(free.basis(), 6, eps);
        let free = FreeDirections::new(6, free_span);
        let basis = complement.basis().to_vec();
        if basis.is_empty() {
            return Ok(Self::unconstrained(point, eps));
        }
        let coords: Vec<Vec<f64>> = points
            .iter()
            .map(|p| basis.iter().map(|b| dot(b, p)).collect())
            .collect();
        let body = Polytope::from_vrep(&VRep::new(basis.len(), coords)?, eps)?;
        Ok(Self {
            body: Some(body),
            basis,
            free,
            point,
            eps,
        })
    }

    pub(crate) fn from_parts(
        body: Polytope,
        basis: Vec<Vec<f64>>,
        free: FreeDirections,
        point: Vec3,
        eps: f64,
    ) -> Self {
        Self {
            body: Some(body),
            basis,
            free,
            point,
            eps,
        }
    }

    /// The whole screw space.
    pub fn unconstrained(point: Vec3, eps: f64) -> Self {
        let basis = (0..6)
            .map(|i| {
                let mut e = vec![0.0; 6];
                e[i] = 1.0;
                e
            })
            .collect();
        Self {
            body: None,
            basis: Vec::new(),
            free: FreeDirections::new(6, basis),
            point,
            eps,
        }
    }

    pub fn body(&self) -> Option<&Polytope> {
        self.body.as_ref()
    }

    /// Orthonormal basis of the constrained subspace, in screw components.
    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn free(&self) -> &FreeDirections {
        &self.free
    }

    pub fn point(&self) -> Vec3 {
        self.point
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Dimension of the bounded factor (0 for a point or when unconstrained).
    pub fn dim(&self) -> usize {
        self.body.as_ref().map_or(0, dim_of)
    }

    pub fn constrained_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lift(&self, coords: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; 6];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|b| dot(b, x)).collect()
    }

    /// Vertices of the bounded factor as screw components.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        match &self.body {
            Some(p) => p.vertices().iter().map(|v| self.lift(v)).collect(),
            None => vec![vec![0.0; 6]],
        }
    }

    /// Halfspaces over the six screw components at the reduction point.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let Some(p) = &self.body else { return Vec::new() };
        p.halfspaces()
            .iter()
            .map(|h| Halfspace::new(self.lift(h.normal()), h.offset()).expect("lifted unit normal"))
            .collect()
    }

    /// `max u . x` over the set; infinite when `u` has a free component.
    pub fn support(&self, u: &[f64; 6]) -> f64 {
        if !self.free.is_orthogonal_to(u, self.eps) {
            return f64::INFINITY;
        }
        self.vertices().iter().map(|v| dot(u, v)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains_screw(&self, s: &Screw) -> bool {
        let x = s.transport(self.point).components();
        self.halfspaces().iter().all(|h| h.contains_point(&x, self.eps))
    }

    /// The same set of physical displacements expressed at `new_point`.
    pub fn transport(&self, new_point: Vec3) -> Result<Self, SdtError> {
        if self.body.is_none() {
            return Ok(Self::unconstrained(new_point, self.eps));
        }
        let moved = self
            .halfspaces()
            .iter()
            .map(|h| Halfspace::new(transport_normal(h.normal(), self.point, new_point), h.offset()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_halfspaces(&moved, new_point, self.eps)
    }

    /// Reverse relation: `{-x : x in self}`.
    pub fn negated(&self) -> Self {
        Self {
            body: self.body.as_ref().map(Polytope::negated),
            ..self.clone()
        }
    }

    /// Scales the bounded factor about `center` (screw components).
    pub fn scaled_about(&self, center: &[f64], lambda: f64) -> Result<Self, SdtError> {
        let Some(p) = &self.body else { return Ok(self.clone()) };
        let body = p.scaled_about(&self.project(center), lambda)?;
        Ok(Self {
            body: Some(body),
            ..self.clone()
        })
    }

    pub fn vertex_centroid(&self) -> Vec<f64> {
        match &self.body {
            Some(p) => self.lift(&p.vertex_centroid()),
            None => vec![0.0; 6],
        }
    }
}

/// Displacement polytope of a list of rows sharing one reduction point.
pub fn rows_to_polytope(rows: &[ConstraintRow], eps: f64) -> Result<DisplacementPolytope, SdtError> {
    let first = rows.first().ok_or(SdtError::EmptySamples)?;
    let m = first.reduction_point();
    let mut hs = Vec::with_capacity(2 * rows.len());
    for r in rows {
        if (r.reduction_point() - m).norm() > 1e-9 * (1.0 + m.norm()) {
            return Err(SdtError::MixedReductionPoints);
        }
        hs.extend(r.to_halfspaces()?);
    }
    DisplacementPolytope::from_halfspaces(&hs, m, eps)
}
