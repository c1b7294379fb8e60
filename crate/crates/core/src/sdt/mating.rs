//! Mating conditions of a joint between two nominally parallel planes.

use serde::{Deserialize, Serialize};

use super::sample::{Frame, SurfaceSample};
use super::screw::Vec3;

/// Rectangle `[-a, a] x [-b, b]` in the xy-plane of `frame`; `frame.z` is
/// the outward normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneDef {
    pub frame: Frame,
    pub half_extents: (f64, f64),
}

impl PlaneDef {
    pub fn new(frame: Frame, half_extents: (f64, f64)) -> Self {
        Self { frame, half_extents }
    }

    pub fn corners(&self) -> [Vec3; 4] {
        let (a, b) = self.half_extents;
        [(-a, -b), (a, -b), (a, b), (-a, b)].map(|(u, v)| self.frame.to_world(Vec3::new(u, v, 0.0)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatingFailure {
    CrossProductNonzero,
    NormalsNotOpposed,
    SNotPlanar,
    SeparationMismatch,
}

impl MatingFailure {
    pub fn code(&self) -> &'static str {
        match self {
            Self::CrossProductNonzero => "cross-product-nonzero",
            Self::NormalsNotOpposed => "normals-not-opposed",
            Self::SNotPlanar => "S-not-planar",
            Self::SeparationMismatch => "separation-mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatingReport {
    pub satisfied: bool,
    pub reasons: Vec<MatingFailure>,
}

impl MatingReport {
    pub fn from_reasons(reasons: Vec<MatingFailure>) -> Self {
        Self {
            satisfied: reasons.is_empty(),
            reasons,
        }
    }

    /// Report for joints whose mating conditions the caller vouches for.
    pub fn ok() -> Self {
        Self::from_reasons(Vec::new())
    }
}

/// Checks the planar-joint mating conditions: parallel normals, opposed
/// orientation, a 2-dimensional overlap, and a gap equal to `d_nominal`.
pub fn check_mating_parallel_planes(p1: &PlaneDef, p2: &PlaneDef, d_nominal: f64, eps: f64) -> MatingReport {
    let (z1, z2) = (p1.frame.z, p2.frame.z);
    let mut reasons = Vec::new();
    let parallel = z1.cross(&z2).norm() <= eps;
    if !parallel {
        reasons.push(MatingFailure::CrossProductNonzero);
    }
    if !(z1.dot(&z2) < 0.0) {
        reasons.push(MatingFailure::NormalsNotOpposed);
    }
    let area = polygon_area(&overlap_local(p1, p2));
    let (a, b) = p1.half_extents;
    if !(area > eps * 4.0 * a * b) {
        reasons.push(MatingFailure::SNotPlanar);
    }
    if parallel {
        let gap = (p2.frame.origin - p1.frame.origin).dot(&z1);
        let scale = 1.0 + p1.frame.origin.norm() + p2.frame.origin.norm() + d_nominal.abs();
        if (gap - d_nominal).abs() > eps * scale {
            reasons.push(MatingFailure::SeparationMismatch);
        }
    }
    MatingReport::from_reasons(reasons)
}

/// Overlap `S1 ∩ S2` of the two rectangles after projecting the second onto
/// the first's plane, as world points on the first plane (counter-clockwise
/// about its normal).
pub fn overlap_polygon(p1: &PlaneDef, p2: &PlaneDef) -> Vec<Vec3> {
    overlap_local(p1, p2)
        .into_iter()
        .map(|(u, v)| p1.frame.to_world(Vec3::new(u, v, 0.0)))
        .collect()
}

/// Samples at the corners of the overlap with the first plane's normal; for
/// linear constraints the corners bound every interior point.
pub fn contact_samples(p1: &PlaneDef, p2: &PlaneDef, reduction_point: Vec3) -> Vec<SurfaceSample> {
    overlap_polygon(p1, p2)
        .into_iter()
        .map(|p| SurfaceSample::new(p, p1.frame.z, reduction_point))
        .collect()
}

fn overlap_local(p1: &PlaneDef, p2: &PlaneDef) -> Vec<(f64, f64)> {
    let (a, b) = p1.half_extents;
    let mut poly: Vec<(f64, f64)> = p2
        .corners()
        .iter()
        .map(|c| {
            let l = p1.frame.to_local(*c);
            (l.x, l.y)
        })
        .collect();
    if signed_area(&poly) < 0.0 {
        poly.reverse();
    }
    // clip against x <= a, -x <= a, y <= b, -y <= b
    for (nx, ny, off) in [(1.0, 0.0, a), (-1.0, 0.0, a), (0.0, 1.0, b), (0.0, -1.0, b)] {
        poly = clip(&poly, nx, ny, off);
        if poly.is_empty() {
            break;
        }
    }
    poly
}

fn clip(poly: &[(f64, f64)], nx: f64, ny: f64, off: f64) -> Vec<(f64, f64)> {
    let inside = |p: (f64, f64)| nx * p.0 + ny * p.1 <= off;
    let cross = |p: (f64, f64), q: (f64, f64)| {
        let (fp, fq) = (nx * p.0 + ny * p.1 - off, nx * q.0 + ny * q.1 - off);
        let t = fp / (fp - fq);
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        match (inside(p), inside(q)) {
            (true, true) => out.push(q),
            (true, false) => out.push(cross(p, q)),
            (false, true) => {
                out.push(cross(p, q));
                out.push(q);
            }
            (false, false) => {}
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn signed_area(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum::<f64>()
        / 2.0
}

fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    if poly.len() < 3 {
        0.0
    } else {
        signed_area(poly).abs()
    }
}
