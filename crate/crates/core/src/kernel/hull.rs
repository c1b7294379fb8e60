//! Facet enumeration for a finite point set.
//!
//! Points are centered on their centroid and projected onto their affine hull
//! (dimension `r`). In those coordinates the centroid is interior, so the
//! facets of the hull are exactly the vertices of the polar set
//! `{z : y_i·z <= 1}`, which [`vertices_of`] enumerates. The directions
//! orthogonal to the affine hull become equality pairs.

use super::dd::{dedup, vertices_of};
use super::halfspace::{HRep, Halfspace, VRep};
use super::linalg::{centroid, dot, norm, rank, span_and_complement, sub};
use super::PolytopeError;

pub(crate) struct Hull {
    pub hrep: HRep,
    pub extreme: VRep,
}

/// Irredundant halfspace description of `conv(v)`.
///
/// A point set that does not span `R^d` yields paired halfspaces pinning its
/// affine hull; a single point yields only such pairs.
pub fn hull_of(v: &VRep, eps: f64) -> Result<HRep, PolytopeError> {
    Ok(hull(v.dim(), v.vertices().to_vec(), eps)?.hrep)
}

pub(crate) fn hull(dim: usize, points: Vec<Vec<f64>>, eps: f64) -> Result<Hull, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let points = dedup(points, eps);
    let c = centroid(&points, dim);
    let centered: Vec<Vec<f64>> = points.iter().map(|p| sub(p, &c)).collect();
    let (basis, complement) = span_and_complement(&centered, dim, eps.max(1e-12));
    let r = basis.len();

    let mut halfspaces = Vec::new();
    for n in &complement {
        let b = dot(n, &c);
        halfspaces.push(Halfspace::new(n.clone(), b)?);
        halfspaces.push(Halfspace::new(n.iter().map(|x| -x).collect(), -b)?);
    }
    if r == 0 {
        let hrep = HRep::new(dim, halfspaces)?.sorted();
        let extreme = VRep::canonical(dim, vec![points[0].clone()]);
        return Ok(Hull { hrep, extreme });
    }

    // coordinates within the affine hull
    let coords: Vec<Vec<f64>> = centered
        .iter()
        .map(|p| basis.iter().map(|b| dot(b, p)).collect())
        .collect();
    let scale = coords.iter().map(|y| norm(y)).fold(0.0, f64::max);
    let polar_rows: Vec<Halfspace> = coords
        .iter()
        .filter(|y| norm(y) > 1e-12 * scale)
        .map(|y| Halfspace::new(y.clone(), 1.0))
        .collect::<Result<_, _>>()?;
    let polar = HRep::new(r, polar_rows)?;
    let facets = vertices_of(&polar, eps).map_err(|e| match e {
        PolytopeError::Unbounded { .. } | PolytopeError::Empty => {
            PolytopeError::Numerical("degenerate point set in facet enumeration")
        }
        other => other,
    })?;

    for z in facets.vertices() {
        let n: Vec<f64> = (0..dim)
            .map(|i| basis.iter().zip(z).map(|(b, zk)| b[i] * zk).sum())
            .collect();
        let b = 1.0 + dot(&n, &c);
        halfspaces.push(Halfspace::new(n, b)?);
    }

    // a point is extreme when the facets through it pin it down
    let extreme: Vec<Vec<f64>> = points
        .iter()
        .zip(&coords)
        .filter(|(_, y)| {
            let tight: Vec<Vec<f64>> = facets
                .vertices()
                .iter()
                .filter(|z| (dot(z, y) - 1.0).abs() <= 1e3 * eps.max(1e-12) * (1.0 + norm(z) * norm(y)))
                .cloned()
                .collect();
            rank(&tight, r, 1e-9) == r
        })
        .map(|(p, _)| p.clone())
        .collect();

    Ok(Hull {
        hrep: HRep::new(dim, halfspaces)?.sorted(),
        extreme: VRep::canonical(dim, extreme),
    })
}
