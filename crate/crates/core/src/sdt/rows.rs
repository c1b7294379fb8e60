use serde::{Deserialize, Serialize};

use super::mating::MatingReport;
use super::sample::SurfaceSample;
use super::screw::{Screw, Vec3};
use super::SdtError;
use crate::kernel::{self, FreeDirections, Halfspace, PolytopeError};

/// Allowed deviation of a sample normal from unit length.
const NORMAL_TOL: f64 = 1e-9;

/// Tolerance zone of width `t` split by `k`: the deviation along the normal
/// lies in `[(k - 1) t, k t]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSpec {
    t: f64,
    k: f64,
}

impl ToleranceSpec {
    pub fn new(t: f64, k: f64) -> Result<Self, SdtError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(SdtError::BadSpec(format!("zone width t must be positive, got {t}")));
        }
        if !(0.0..=1.0).contains(&k) {
            return Err(SdtError::BadSpec(format!("zone split k must lie in [0, 1], got {k}")));
        }
        Ok(Self { t, k })
    }

    pub fn symmetric(t: f64) -> Result<Self, SdtError> {
        Self::new(t, 0.5)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn bounds(&self) -> (f64, f64) {
        ((self.k - 1.0) * self.t, self.k * self.t)
    }
}

/// Clearance `D` of a planar joint and the nominal gap `d` between the two
/// surfaces. `D = 0` is permanent contact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactSpec {
    clearance: f64,
    nominal_separation: f64,
}

impl ContactSpec {
    pub fn new(clearance: f64, nominal_separation: f64) -> Result<Self, SdtError> {
        if !(clearance >= 0.0 && clearance.is_finite()) {
            return Err(SdtError::BadSpec(format!("clearance D must be >= 0, got {clearance}")));
        }
        if !(nominal_separation >= 0.0 && nominal_separation.is_finite()) {
            return Err(SdtError::BadSpec(format!(
                "nominal separation d must be >= 0, got {nominal_separation}"
            )));
        }
        Ok(Self {
            clearance,
            nominal_separation,
        })
    }

    pub fn permanent() -> Self {
        Self {
            clearance: 0.0,
            nominal_separation: 0.0,
        }
    }

    pub fn clearance(&self) -> f64 {
        self.clearance
    }

    pub fn nominal_separation(&self) -> f64 {
        self.nominal_separation
    }

    /// Bounds on the displacement along the normal: the actual gap
    /// `d + delta` must stay in `[0, D]`.
    pub fn bounds(&self) -> (f64, f64) {
        (0.0 - self.nominal_separation, self.clearance - self.nominal_separation)
    }
}

/// `lower <= coeffs . x <= upper` over screw components at `point`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRow {
    pub coeffs: [f64; 6],
    pub lower: f64,
    pub upper: f64,
    pub point: [f64; 3],
}

impl ConstraintRow {
    pub fn new(coeffs: [f64; 6], lower: f64, upper: f64, point: Vec3) -> Result<Self, SdtError> {
        if coeffs.iter().all(|c| *c == 0.0) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(SdtError::BadSpec("row coefficients are zero or not finite".into()));
        }
        if !(lower <= upper) {
            return Err(SdtError::BadSpec(format!("row bounds reversed: {lower} > {upper}")));
        }
        Ok(Self {
            coeffs,
            lower,
            upper,
            point: [point.x, point.y, point.z],
        })
    }

    pub fn reduction_point(&self) -> Vec3 {
        Vec3::from(self.point)
    }

    /// Value of the row's linear form for `s`, after moving `s` to the row's point.
    pub fn value(&self, s: &Screw) -> f64 {
        let c = s.transport(self.reduction_point()).components();
        self.coeffs.iter().zip(c).map(|(a, b)| a * b).sum()
    }

    pub fn to_halfspaces(&self) -> Result<[Halfspace; 2], PolytopeError> {
        let n = self.coeffs.to_vec();
        let m: Vec<f64> = n.iter().map(|x| -x).collect();
        Ok([Halfspace::new(n, self.upper)?, Halfspace::new(m, -self.lower)?])
    }
}

fn coefficients(s: &SurfaceSample) -> [f64; 6] {
    let r = s.lever.cross(&s.normal);
    [r.x, r.y, r.z, s.normal.x, s.normal.y, s.normal.z]
}

fn common_point(samples: &[SurfaceSample]) -> Result<Vec3, SdtError> {
    let first = samples.first().ok_or(SdtError::EmptySamples)?;
    let m = first.reduction_point();
    for (index, s) in samples.iter().enumerate() {
        if (s.normal.norm() - 1.0).abs() > NORMAL_TOL {
            return Err(SdtError::DegenerateNormal { index });
        }
        let scale = 1.0 + s.point.norm() + m.norm();
        if (s.reduction_point() - m).norm() > 1e-9 * scale {
            return Err(SdtError::MixedReductionPoints);
        }
    }
    Ok(m)
}

fn rows_with_bounds(samples: &[SurfaceSample], lower: f64, upper: f64) -> Result<Vec<ConstraintRow>, SdtError> {
    let m = common_point(samples)?;
    samples
        .iter()
        .map(|s| ConstraintRow::new(coefficients(s), lower, upper, m))
        .collect()
}

/// One row per sample constraining the associated surface inside the zone
/// built around the nominal one.
pub fn geometric_rows(samples: &[SurfaceSample], spec: &ToleranceSpec) -> Result<Vec<ConstraintRow>, SdtError> {
    let (lo, hi) = spec.bounds();
    rows_with_bounds(samples, lo, hi)
}

/// Same construction as [`geometric_rows`], applied to the relative screw
/// between the toleranced surface and its reference.
pub fn functional_rows(samples: &[SurfaceSample], spec: &ToleranceSpec) -> Result<Vec<ConstraintRow>, SdtError> {
    geometric_rows(samples, spec)
}

/// Rows of a contact joint; refuses to run when the mating conditions failed.
pub fn contact_rows(
    samples: &[SurfaceSample],
    spec: &ContactSpec,
    mating: &MatingReport,
) -> Result<Vec<ConstraintRow>, SdtError> {
    if !mating.satisfied {
        return Err(SdtError::MatingViolated(mating.reasons.clone()));
    }
    let (lo, hi) = spec.bounds();
    rows_with_bounds(samples, lo, hi)
}

/// Directions of the screw space that no row constrains.
pub fn free_directions(rows: &[ConstraintRow], eps: f64) -> FreeDirections {
    let normals: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let n = r.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt();
            r.coeffs.iter().map(|x| x / n).collect()
        })
        .collect();
    kernel::free_directions(&normals, 6, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdt::mating::MatingFailure;

    fn sample(p: [f64; 3], z: [f64; 3]) -> SurfaceSample {
        SurfaceSample::new(Vec3::from(p), Vec3::from(z), Vec3::zeros())
    }

    #[test]
    fn sample_at_reduction_point() {
        let rows = geometric_rows(&[sample([0.0; 3], [0.0, 0.0, 1.0])], &ToleranceSpec::symmetric(0.1).unwrap()).unwrap();
        assert_eq!(rows[0].coeffs, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((rows[0].lower + 0.05).abs() < 1e-15 && (rows[0].upper - 0.05).abs() < 1e-15);
    }

    #[test]
    fn lever_terms() {
        let rows = geometric_rows(&[sample([1.0, 1.0, 0.0], [0.0, 0.0, 1.0])], &ToleranceSpec::symmetric(0.1).unwrap())
            .unwrap();
        assert_eq!(rows[0].coeffs, [1.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn one_sided_zone() {
        let s = ToleranceSpec::new(0.2, 1.0).unwrap();
        assert_eq!(s.bounds(), (0.0, 0.2));
        assert_eq!(ToleranceSpec::new(0.2, 0.0).unwrap().bounds(), (-0.2, 0.0));
        assert!(ToleranceSpec::new(0.0, 0.5).is_err());
        assert!(ToleranceSpec::new(0.1, 1.5).is_err());
    }

    #[test]
    fn contact_single_sample() {
        let ok = MatingReport::ok();
        let rows = contact_rows(&[sample([0.0; 3], [0.0, 0.0, 1.0])], &ContactSpec::new(0.2, 0.0).unwrap(), &ok).unwrap();
        assert_eq!(rows[0].coeffs, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!((rows[0].lower, rows[0].upper), (0.0, 0.2));
    }

    #[test]
    fn contact_refuses_failed_mating() {
        let bad = MatingReport::from_reasons(vec![MatingFailure::CrossProductNonzero]);
        let err = contact_rows(&[sample([0.0; 3], [0.0, 0.0, 1.0])], &ContactSpec::permanent(), &bad).unwrap_err();
        assert_eq!(err, SdtError::MatingViolated(vec![MatingFailure::CrossProductNonzero]));
    }

    #[test]
    fn input_errors() {
        let spec = ToleranceSpec::symmetric(0.1).unwrap();
        assert_eq!(geometric_rows(&[], &spec).unwrap_err(), SdtError::EmptySamples);
        assert_eq!(
            geometric_rows(&[sample([0.0; 3], [0.0, 0.0, 1.1])], &spec).unwrap_err(),
            SdtError::DegenerateNormal { index: 0 }
        );
        let other = SurfaceSample::new(Vec3::x(), Vec3::z(), Vec3::y());
        assert_eq!(
            geometric_rows(&[sample([0.0; 3], [0.0, 0.0, 1.0]), other], &spec).unwrap_err(),
            SdtError::MixedReductionPoints
        );
    }

    #[test]
    fn planar_contact_frees_three_directions() {
        let samples: Vec<_> = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|(x, y)| sample([*x, *y, 0.0], [0.0, 0.0, 1.0]))
            .collect();
        let rows = contact_rows(&samples, &ContactSpec::new(1.0, 0.0).unwrap(), &MatingReport::ok()).unwrap();
        let free = free_directions(&rows, 1e-9);
        assert_eq!(free.len(), 3);
        let e = |i: usize| {
            let mut v = vec![0.0; 6];
            v[i] = 1.0;
            v
        };
        for (u, want) in free.basis().iter().zip([e(2), e(3), e(4)]) {
            assert_eq!(u, &want);
        }
        assert!(free_directions(&[], 1e-9).len() == 6);
    }
}
