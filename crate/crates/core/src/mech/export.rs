//! Polytope records (JSON) and OFF meshes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::MechError;
use crate::kernel::{dim_of, Halfspace, Polytope};
use crate::sdt::DisplacementPolytope;

/// Subspace embedding of a record's coordinates in the screw space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    /// Orthonormal basis of the constrained subspace; record coordinate `i`
    /// is the component along `basis[i]`.
    pub basis: Vec<Vec<f64>>,
    pub free: Vec<Vec<f64>>,
    pub reduction_point: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeRecord {
    pub dim: usize,
    pub eps: f64,
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
    /// Set when free directions were bounded at this half-width for display.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic_cap: Option<f64>,
}

impl PolytopeRecord {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            eps: p.eps(),
            halfspaces: p.halfspaces().to_vec(),
            vertices: p.vertices().to_vec(),
            embedding: None,
            synthetic_cap: None,
        }
    }

    pub fn from_displacement(p: &DisplacementPolytope) -> Self {
        let point = p.point();
        let embedding = Some(Embedding {
            basis: p.basis().to_vec(),
            free: p.free().basis().to_vec(),
            reduction_point: [point.x, point.y, point.z],
        });
        match p.body() {
            Some(b) => Self {
                embedding,
                ..Self::from_polytope(b)
            },
            None => Self {
                dim: 0,
                eps: p.eps(),
                halfspaces: Vec::new(),
                vertices: Vec::new(),
                embedding,
                synthetic_cap: None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, MechError> {
        serde_json::from_str(text).map_err(|e| MechError::Export(format!("bad record: {e}")))
    }

    pub fn polytope(&self) -> Result<Polytope, MechError> {
        if self.dim == 0 || self.vertices.is_empty() {
            return Err(MechError::Export("record has no bounded part".into()));
        }
        Ok(Polytope::from_points(self.dim, self.vertices.clone(), self.eps)?)
    }

    fn free_count(&self) -> usize {
        self.embedding.as_ref().map_or(0, |e| e.free.len())
    }

    /// Bounds up to `3 - dim` free directions at `+-cap` (appended as extra
    /// coordinates) so that the result can be drawn. `None` picks ten times
    /// the largest extent of the bounded part.
    pub fn capped(&self, cap: Option<f64>) -> Result<Self, MechError> {
        let p = self.polytope()?;
        let extra = self.free_count().min(3usize.saturating_sub(self.dim));
        if extra == 0 {
            return Ok(self.clone());
        }
        let cap = cap.unwrap_or_else(|| {
            let extent = (0..self.dim)
                .map(|i| {
                    let (lo, hi) = p
                        .vertices()
                        .iter()
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v[i]), hi.max(v[i])));
                    hi - lo
                })
                .fold(0.0, f64::max);
            if extent > 0.0 {
                10.0 * extent
            } else {
                1.0
            }
        });
        if !(cap > 0.0 && cap.is_finite()) {
            return Err(MechError::Export(format!("cap must be positive, got {cap}")));
        }
        let mut pts = Vec::new();
        for v in p.vertices() {
            for mask in 0..1usize << extra {
                let mut x = v.clone();
                x.extend((0..extra).map(|j| if mask >> j & 1 == 1 { cap } else { -cap }));
                pts.push(x);
            }
        }
        let q = Polytope::from_points(self.dim + extra, pts, self.eps)?;
        Ok(Self {
            synthetic_cap: Some(cap),
            embedding: self.embedding.clone(),
            ..Self::from_polytope(&q)
        })
    }

    /// OFF mesh of the record's polytope (coordinates padded with zeros to 3).
    pub fn to_off(&self) -> Result<String, MechError> {
        if self.dim > 3 {
            return Err(MechError::DimTooHighForOff(self.dim));
        }
        let p = self.polytope()?;
        let verts: Vec<[f64; 3]> = p
            .vertices()
            .iter()
            .map(|v| {
                let mut x = [0.0; 3];
                x[..v.len()].copy_from_slice(v);
                x
            })
            .collect();
        let faces = faces(&p, &verts);
        let mut s = String::from("OFF\n");
        writeln!(s, "{} {} 0", verts.len(), faces.len()).unwrap();
        for v in &verts {
            writeln!(s, "{} {} {}", v[0], v[1], v[2]).unwrap();
        }
        for f in &faces {
            let idx: Vec<String> = f.iter().map(|i| i.to_string()).collect();
            writeln!(s, "{} {}", f.len(), idx.join(" ")).unwrap();
        }
        Ok(s)
    }
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Vertex indices of `idx` sorted counter-clockwise about `normal`.
fn ccw(idx: Vec<usize>, verts: &[[f64; 3]], normal: &[f64; 3]) -> Vec<usize> {
    let n = idx.len() as f64;
    let c = idx.iter().fold([0.0; 3], |acc, &i| {
        [acc[0] + verts[i][0] / n, acc[1] + verts[i][1] / n, acc[2] + verts[i][2] / n]
    });
    let u = sub(&verts[idx[0]], &c);
    let w = cross(normal, &u);
    let mut keyed: Vec<(f64, usize)> = idx
        .into_iter()
        .map(|i| {
            let r = sub(&verts[i], &c);
            (dot(&w, &r).atan2(dot(&u, &r)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn faces(p: &Polytope, verts: &[[f64; 3]]) -> Vec<Vec<usize>> {
    let tol = 1e3 * p.eps();
    match dim_of(p) {
        3 => p
            .halfspaces()
            .iter()
            .map(|h| {
                let n = h.normal();
                let normal = [n[0], n[1], n[2]];
                let on: Vec<usize> = (0..verts.len())
                    .filter(|&i| (dot(&normal, &verts[i]) - h.offset()).abs() <= tol * (1.0 + h.offset().abs()))
                    .collect();
                ccw(on, verts, &normal)
            })
            .collect(),
        2 => {
            // single polygon; orient it by the plane normal of its first corner
            let (a, b) = (sub(&verts[1], &verts[0]), sub(&verts[2], &verts[0]));
            let mut normal = cross(&a, &b);
            for k in 3..verts.len() {
                if dot(&normal, &normal) > 1e-24 {
                    break;
                }
                normal = cross(&a, &sub(&verts[k], &verts[0]));
            }
            vec![ccw((0..verts.len()).collect(), verts, &normal)]
        }
        _ => Vec::new(),
    }
}
