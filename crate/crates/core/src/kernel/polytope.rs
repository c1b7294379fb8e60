use super::dd::vertices_of;
use super::halfspace::{HRep, Halfspace, VRep};
use super::hull::hull;
use super::linalg::{add, centroid, dist, dot, norm, rank, sub};
use super::lp::remove_redundant;
use super::PolytopeError;

/// Bounded, nonempty convex polytope carrying both representations.
///
/// The halfspace list is authoritative; the vertex list is computed at
/// construction and always holds exactly the extreme points in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    hrep: HRep,
    vrep: VRep,
    eps: f64,
}

impl Polytope {
    pub fn from_hrep(hrep: HRep, eps: f64) -> Result<Self, PolytopeError> {
        let vrep = vertices_of(&hrep, eps)?;
        Ok(Self { hrep, vrep, eps })
    }

    /// Convex hull of arbitrary points; non-extreme points are discarded.
    pub fn from_points(dim: usize, points: Vec<Vec<f64>>, eps: f64) -> Result<Self, PolytopeError> {
        let v = VRep::new(dim, points)?;
        Self::from_vrep(&v, eps)
    }

    pub fn from_vrep(v: &VRep, eps: f64) -> Result<Self, PolytopeError> {
        let h = hull(v.dim(), v.vertices().to_vec(), eps)?;
        Ok(Self {
            hrep: h.hrep,
            vrep: h.extreme,
            eps,
        })
    }

    /// Axis-aligned box `lo <= x <= hi`.
    pub fn cuboid(lo: &[f64], hi: &[f64], eps: f64) -> Result<Self, PolytopeError> {
        let d = lo.len();
        let mut rows = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut n = vec![0.0; d];
            n[i] = 1.0;
            rows.push((n.clone(), hi[i]));
            n[i] = -1.0;
            rows.push((n, -lo[i]));
        }
        Self::from_hrep(HRep::from_rows(d, &rows)?, eps)
    }

    pub fn point(p: Vec<f64>, eps: f64) -> Result<Self, PolytopeError> {
        Self::from_points(p.len(), vec![p], eps)
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        self.hrep.halfspaces()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        self.vrep.vertices()
    }

    pub fn vertex_centroid(&self) -> Vec<f64> {
        centroid(self.vertices(), self.dim())
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        self.hrep.contains_point(x, self.eps)
    }

    /// Point reflection `-P`.
    pub fn negated(&self) -> Self {
        let hs = self.halfspaces().iter().map(Halfspace::negated).collect();
        let vs = self
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        Self {
            hrep: HRep::new(self.dim(), hs).expect("same dim").sorted(),
            vrep: VRep::canonical(self.dim(), vs),
            eps: self.eps,
        }
    }

    pub fn translated(&self, t: &[f64]) -> Result<Self, PolytopeError> {
        self.affine(|x| add(x, t), |h| Ok(Halfspace::new(h.normal().to_vec(), h.offset() + dot(h.normal(), t))?))
    }

    /// Image under `x -> center + lambda (x - center)`, `lambda > 0`.
    pub fn scaled_about(&self, center: &[f64], lambda: f64) -> Result<Self, PolytopeError> {
        if !(lambda > 0.0) {
            return Err(PolytopeError::NonFinite);
        }
        self.affine(
            |x| {
                x.iter()
                    .zip(center)
                    .map(|(xi, ci)| ci + lambda * (xi - ci))
                    .collect()
            },
            |h| {
                Halfspace::new(
                    h.normal().to_vec(),
                    lambda * h.offset() + (1.0 - lambda) * dot(h.normal(), center),
                )
            },
        )
    }

    fn affine(
        &self,
        map_point: impl Fn(&[f64]) -> Vec<f64>,
        map_half: impl Fn(&Halfspace) -> Result<Halfspace, PolytopeError>,
    ) -> Result<Self, PolytopeError> {
        let hs = self
            .halfspaces()
            .iter()
            .map(map_half)
            .collect::<Result<Vec<_>, _>>()?;
        let vs = self.vertices().iter().map(|v| map_point(v)).collect();
        Ok(Self {
            hrep: HRep::new(self.dim(), hs)?,
            vrep: VRep::canonical(self.dim(), vs),
            eps: self.eps,
        })
    }
}

fn same_dim(p: &Polytope, q: &Polytope) -> Result<(), PolytopeError> {
    if p.dim() != q.dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

/// `{x1 + x2 : x1 in p, x2 in q}` from pairwise vertex sums and a hull pass.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, PolytopeError> {
    same_dim(p, q)?;
    let eps = p.eps.max(q.eps);
    let sums: Vec<Vec<f64>> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| add(a, b)))
        .collect();
    Polytope::from_points(p.dim(), sums, eps)
}

/// Intersection; `Ok(None)` when the two sets do not meet.
pub fn intersect(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>, PolytopeError> {
    same_dim(p, q)?;
    let eps = p.eps.max(q.eps);
    let joined = p.hrep.concat(&q.hrep);
    let reduced = match remove_redundant(&joined, eps) {
        Ok(h) => h,
        Err(PolytopeError::Empty) => return Ok(None),
        Err(e) => return Err(e),
    };
    match Polytope::from_hrep(reduced, eps) {
        Ok(r) => Ok(Some(r)),
        Err(PolytopeError::Empty) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every vertex of `inner` satisfies every halfspace of `outer` within eps.
pub fn contains(outer: &Polytope, inner: &Polytope, eps: f64) -> Result<bool, PolytopeError> {
    same_dim(outer, inner)?;
    Ok(inner
        .vertices()
        .iter()
        .all(|v| outer.hrep.contains_point(v, eps)))
}

/// `max_{x in p} u·x`.
pub fn support(p: &Polytope, u: &[f64]) -> Result<f64, PolytopeError> {
    if u.len() != p.dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim(),
            found: u.len(),
        });
    }
    if !(norm(u) > 0.0) {
        return Err(PolytopeError::ZeroDirection);
    }
    Ok(p.vertices()
        .iter()
        .map(|v| dot(u, v))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Dimension of the affine hull; 0 for a point.
pub fn dim_of(p: &Polytope) -> usize {
    let v = p.vertices();
    let base = &v[0];
    let diffs: Vec<Vec<f64>> = v[1..].iter().map(|x| sub(x, base)).collect();
    let scale = v.iter().map(|x| norm(x)).fold(1.0, f64::max);
    rank(&diffs, p.dim(), p.eps * scale)
}

/// Order-free equality of two point sets within `tol`.
pub fn same_vertex_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| dist(x, y) <= tol))
        && b.iter().all(|y| a.iter().any(|x| dist(x, y) <= tol))
}
