use nalgebra::Vector3;

pub type Vec3 = Vector3<f64>;

/// Small-displacement torsor: rotation vector `rho` and translation vector
/// `translation` of the reduction point `point`.
///
/// Component order used throughout the crate is
/// `(rho_x, rho_y, rho_z, eps_x, eps_y, eps_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Screw {
    pub rho: Vec3,
    pub translation: Vec3,
    pub point: Vec3,
}

impl Screw {
    pub fn new(rho: Vec3, translation: Vec3, point: Vec3) -> Self {
        Self {
            rho,
            translation,
            point,
        }
    }

    pub fn from_components(c: &[f64; 6], point: Vec3) -> Self {
        Self {
            rho: Vec3::new(c[0], c[1], c[2]),
            translation: Vec3::new(c[3], c[4], c[5]),
            point,
        }
    }

    pub fn components(&self) -> [f64; 6] {
        [
            self.rho.x,
            self.rho.y,
            self.rho.z,
            self.translation.x,
            self.translation.y,
            self.translation.z,
        ]
    }

    /// Same displacement reduced at `new_point`: `eps' = eps + rho x (new_point - point)`.
    pub fn transport(&self, new_point: Vec3) -> Screw {
        transport(self, new_point)
    }
}

pub fn transport(s: &Screw, new_point: Vec3) -> Screw {
    Screw {
        rho: s.rho,
        translation: s.translation + s.rho.cross(&(new_point - s.point)),
        point: new_point,
    }
}

/// Transforms a constraint normal over screw components at `from` into the
/// normal expressing the same linear form at `to`.
pub(crate) fn transport_normal(n: &[f64], from: Vec3, to: Vec3) -> Vec<f64> {
    let r = to - from;
    let n_rho = Vec3::new(n[0], n[1], n[2]);
    let n_eps = Vec3::new(n[3], n[4], n[5]);
    let rho = n_rho - r.cross(&n_eps);
    vec![rho.x, rho.y, rho.z, n_eps.x, n_eps.y, n_eps.z]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_translation_is_unchanged() {
        let s = Screw::new(Vec3::zeros(), Vec3::new(1.0, 2.0, 3.0), Vec3::zeros());
        assert_eq!(s.transport(Vec3::new(5.0, -4.0, 2.0)).translation, s.translation);
    }

    #[test]
    fn identity_transport() {
        let s = Screw::new(Vec3::new(0.1, 0.2, 0.3), Vec3::new(1.0, 2.0, 3.0), Vec3::new(1.0, 1.0, 1.0));
        assert_eq!(s.transport(s.point), s);
    }

    #[test]
    fn lever_arm_along_x() {
        let s = Screw::new(Vec3::new(0.0, 0.0, 0.001), Vec3::zeros(), Vec3::zeros());
        let t = s.transport(Vec3::new(100.0, 0.0, 0.0));
        assert!((t.translation - Vec3::new(0.0, 0.1, 0.0)).norm() < 1e-15);
        assert_eq!(t.point, Vec3::new(100.0, 0.0, 0.0));
    }

    #[test]
    fn round_trip_recovers_translation() {
        let s = Screw::new(Vec3::new(0.01, -0.02, 0.003), Vec3::new(0.1, 0.2, -0.3), Vec3::new(1.0, 2.0, 3.0));
        let back = s.transport(Vec3::new(-40.0, 7.0, 12.0)).transport(s.point);
        assert!((back.translation - s.translation).norm() < 1e-15);
    }

    #[test]
    fn normal_transport_preserves_values() {
        let s = Screw::new(Vec3::new(0.01, -0.02, 0.003), Vec3::new(0.1, 0.2, -0.3), Vec3::new(1.0, 2.0, 3.0));
        let n = [0.3, -0.1, 0.7, 0.2, 0.5, -0.4];
        let to = Vec3::new(4.0, -3.0, 8.0);
        let n2 = transport_normal(&n, s.point, to);
        let v1: f64 = n.iter().zip(s.components()).map(|(a, b)| a * b).sum();
        let v2: f64 = n2.iter().zip(s.transport(to).components()).map(|(a, b)| a * b).sum();
        assert!((v1 - v2).abs() < 1e-14);
    }
}
