//! Discretization of nominal surfaces into points with outward normals.

use std::f64::consts::PI;

use super::screw::Vec3;
use super::SdtError;

/// Point `N` on a nominal surface with unit normal `z_N` pointing away from
/// the material, and the lever arm `MN` from the reduction point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub point: Vec3,
    pub normal: Vec3,
    pub lever: Vec3,
}

impl SurfaceSample {
    pub fn new(point: Vec3, normal: Vec3, reduction_point: Vec3) -> Self {
        Self {
            point,
            normal,
            lever: point - reduction_point,
        }
    }

    pub fn reduction_point(&self) -> Vec3 {
        self.point - self.lever
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -self.normal,
            ..*self
        }
    }
}

/// Right-handed orthonormal frame; `z` is the surface normal or axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub origin: Vec3,
    pub x: Vec3,
    pub y: Vec3,
    pub z: Vec3,
}

impl Frame {
    /// Frame with the given `z` axis. `x_hint` is projected onto the plane
    /// normal to `z`; when absent or parallel to `z` a fixed world axis is used.
    pub fn new(origin: Vec3, z: Vec3, x_hint: Option<Vec3>) -> Result<Self, SdtError> {
        let z = z
            .try_normalize(1e-12)
            .ok_or_else(|| SdtError::BadGeometry("zero axis".into()))?;
        let pick = |h: Vec3| {
            let p = h - z * h.dot(&z);
            p.try_normalize(1e-9)
        };
        let x = x_hint
            .and_then(pick)
            .or_else(|| pick(Vec3::x()))
            .or_else(|| pick(Vec3::y()))
            .expect("one of two world axes is not parallel to z");
        Ok(Self {
            origin,
            x,
            y: z.cross(&x),
            z,
        })
    }

    pub fn to_world(&self, local: Vec3) -> Vec3 {
        self.origin + self.x * local.x + self.y * local.y + self.z * local.z
    }

    pub fn dir_to_world(&self, local: Vec3) -> Vec3 {
        self.x * local.x + self.y * local.y + self.z * local.z
    }

    pub fn to_local(&self, world: Vec3) -> Vec3 {
        let d = world - self.origin;
        Vec3::new(d.dot(&self.x), d.dot(&self.y), d.dot(&self.z))
    }
}

fn grid(n: usize, half: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
}

/// Regular `nx x ny` grid on the rectangle `[-a, a] x [-b, b]` of the frame's
/// xy-plane; the four corners are always part of the grid.
pub fn sample_plane(
    half_extents: (f64, f64),
    frame: &Frame,
    reduction_point: Vec3,
    grid_size: (usize, usize),
) -> Result<Vec<SurfaceSample>, SdtError> {
    let (a, b) = half_extents;
    let (nx, ny) = grid_size;
    if !(a > 0.0 && b > 0.0) {
        return Err(SdtError::BadGrid(format!("plane half-extents must be positive, got ({a}, {b})")));
    }
    if nx < 2 || ny < 2 {
        return Err(SdtError::BadGrid(format!("plane grid needs at least 2x2, got {nx}x{ny}")));
    }
    let mut out = Vec::with_capacity(nx * ny);
    for u in grid(nx, a) {
        for v in grid(ny, b) {
            let p = frame.to_world(Vec3::new(u, v, 0.0));
            out.push(SurfaceSample::new(p, frame.z, reduction_point));
        }
    }
    Ok(out)
}

/// Samples on the cylinder of the given radius around the frame's z axis,
/// `n_circ` around and `n_axial` along (end circles included). Normals point
/// radially outward; flip them for a hole.
pub fn sample_cylinder(
    radius: f64,
    half_length: f64,
    frame: &Frame,
    reduction_point: Vec3,
    grid_size: (usize, usize),
) -> Result<Vec<SurfaceSample>, SdtError> {
    let (n_circ, n_axial) = grid_size;
    if !(radius > 0.0) || !(half_length > 0.0) {
        return Err(SdtError::BadGrid("cylinder radius and half-length must be positive".into()));
    }
    if n_circ < 3 || n_axial < 2 {
        return Err(SdtError::BadGrid(format!(
            "cylinder grid needs n_circ >= 3 and n_axial >= 2, got {n_circ}x{n_axial}"
        )));
    }
    let mut out = Vec::with_capacity(n_circ * n_axial);
    for j in 0..n_circ {
        let theta = 2.0 * PI * j as f64 / n_circ as f64;
        let radial = Vec3::new(theta.cos(), theta.sin(), 0.0);
        let normal = frame.dir_to_world(radial);
        for h in grid(n_axial, half_length) {
            let p = frame.to_world(radial * radius + Vec3::new(0.0, 0.0, h));
            out.push(SurfaceSample::new(p, normal, reduction_point));
        }
    }
    Ok(out)
}

/// Samples on a sphere: both poles of the world z axis plus `n - 2` latitude
/// rings of `n` points each (`n >= 3`).
pub fn sample_sphere(
    radius: f64,
    center: Vec3,
    reduction_point: Vec3,
    n: usize,
) -> Result<Vec<SurfaceSample>, SdtError> {
    if !(radius > 0.0) {
        return Err(SdtError::BadGrid("sphere radius must be positive".into()));
    }
    if n < 3 {
        return Err(SdtError::BadGrid(format!("sphere resolution must be >= 3, got {n}")));
    }
    let mut normals = vec![Vec3::z(), -Vec3::z()];
    for i in 1..n - 1 {
        let phi = PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            normals.push(Vec3::new(phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos()));
        }
    }
    Ok(normals
        .into_iter()
        .map(|z| SurfaceSample::new(center + z * radius, z, reduction_point))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn world() -> Frame {
        Frame::new(Vec3::zeros(), Vec3::z(), None).unwrap()
    }

    #[test]
    fn two_by_two_plane_is_the_corners() {
        let s = sample_plane((1.0, 1.0), &world(), Vec3::zeros(), (2, 2)).unwrap();
        let pts: Vec<Vec3> = s.iter().map(|x| x.point).collect();
        assert_eq!(pts.len(), 4);
        for c in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            assert!(pts.contains(&Vec3::new(c.0, c.1, 0.0)));
        }
        assert!(s.iter().all(|x| x.normal == Vec3::z()));
    }

    #[test]
    fn refined_grid_keeps_corners_and_center() {
        let coarse = sample_plane((1.0, 2.0), &world(), Vec3::zeros(), (2, 2)).unwrap();
        for g in [(3, 3), (5, 4), (7, 2)] {
            let fine = sample_plane((1.0, 2.0), &world(), Vec3::zeros(), g).unwrap();
            assert_eq!(fine.len(), g.0 * g.1);
            for c in &coarse {
                assert!(fine.iter().any(|f| (f.point - c.point).norm() < 1e-15));
            }
        }
        let nine = sample_plane((1.0, 1.0), &world(), Vec3::zeros(), (3, 3)).unwrap();
        assert!(nine.iter().any(|f| f.point == Vec3::zeros()));
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(matches!(
            sample_plane((1.0, 1.0), &world(), Vec3::zeros(), (1, 3)),
            Err(SdtError::BadGrid(_))
        ));
        assert!(sample_plane((0.0, 1.0), &world(), Vec3::zeros(), (2, 2)).is_err());
        assert!(sample_cylinder(1.0, 1.0, &world(), Vec3::zeros(), (2, 2)).is_err());
        assert!(sample_sphere(1.0, Vec3::zeros(), Vec3::zeros(), 2).is_err());
    }

    #[test]
    fn cylinder_normals_are_radial() {
        let s = sample_cylinder(2.0, 1.0, &world(), Vec3::zeros(), (4, 2)).unwrap();
        assert_eq!(s.len(), 8);
        for want in [Vec3::x(), Vec3::y(), -Vec3::x(), -Vec3::y()] {
            assert!(s.iter().any(|x| (x.normal - want).norm() < 1e-12));
        }
        for x in &s {
            assert!((x.normal.norm() - 1.0).abs() < 1e-12);
            assert!((x.point.z.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_pole_normal_is_axis() {
        let s = sample_sphere(3.0, Vec3::new(1.0, 0.0, 0.0), Vec3::zeros(), 5).unwrap();
        assert_eq!(s[0].normal, Vec3::z());
        assert_eq!(s[0].point, Vec3::new(1.0, 0.0, 3.0));
        assert!(s.iter().all(|x| (x.normal.norm() - 1.0).abs() < 1e-12));
        assert_eq!(s.len(), 2 + 3 * 5);
    }

    #[test]
    fn frame_honours_hint() {
        let f = Frame::new(Vec3::zeros(), Vec3::new(0.0, 0.0, 2.0), Some(Vec3::new(1.0, 1.0, 0.0))).unwrap();
        assert!((f.x - Vec3::new(1.0, 1.0, 0.0).normalize()).norm() < 1e-15);
        assert!((f.x.cross(&f.y) - f.z).norm() < 1e-15);
    }
}
