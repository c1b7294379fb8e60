use super::ChainError;
use crate::kernel::Halfspace;
use crate::sdt::DisplacementPolytope;

/// Why a calculated set escapes the functional one.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `vertex` violates functional halfspace `index` by `excess`.
    Vertex {
        vertex: Vec<f64>,
        index: usize,
        halfspace: Halfspace,
        excess: f64,
    },
    /// The calculated set is unbounded along `direction`, which functional
    /// halfspace `index` bounds.
    FreeDirection {
        direction: Vec<f64>,
        index: usize,
        halfspace: Halfspace,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RequirementCheck {
    pub satisfied: bool,
    /// Largest factor by which the calculated set can be scaled about the
    /// functional set's vertex centroid and still fit inside it.
    pub margin: f64,
    /// The calculated set is empty: satisfied only vacuously.
    pub over_constrained: bool,
    pub witness: Option<Witness>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Inclusion test of the calculated displacement set in the functional one.
/// `None` for `calculated` stands for the empty set.
pub fn check_requirement(
    calculated: Option<&DisplacementPolytope>,
    functional: &DisplacementPolytope,
) -> Result<RequirementCheck, ChainError> {
    let Some(calc) = calculated else {
        return Ok(RequirementCheck {
            satisfied: true,
            margin: f64::INFINITY,
            over_constrained: true,
            witness: None,
        });
    };
    let scale = 1.0 + functional.point().norm();
    if (calc.point() - functional.point()).norm() > 1e-12 * scale {
        return Err(ChainError::ReductionPointMismatch);
    }
    let eps = functional.eps().max(calc.eps());
    let hs = functional.halfspaces();

    for (index, h) in hs.iter().enumerate() {
        if let Some(u) = calc.free().basis().iter().find(|u| dot(u, h.normal()).abs() > eps) {
            return Ok(RequirementCheck {
                satisfied: false,
                margin: 0.0,
                over_constrained: false,
                witness: Some(Witness::FreeDirection {
                    direction: u.clone(),
                    index,
                    halfspace: h.clone(),
                }),
            });
        }
    }

    let verts = calc.vertices();
    let mut worst: Option<(f64, usize, usize)> = None;
    for (i, h) in hs.iter().enumerate() {
        for (j, v) in verts.iter().enumerate() {
            let excess = dot(h.normal(), v) - h.offset();
            if worst.map_or(true, |(w, _, _)| excess > w) {
                worst = Some((excess, i, j));
            }
        }
    }
    let witness = match worst {
        Some((excess, i, j)) if excess > eps => Some(Witness::Vertex {
            vertex: verts[j].clone(),
            index: i,
            halfspace: hs[i].clone(),
            excess,
        }),
        _ => None,
    };

    let c = functional.vertex_centroid();
    let mut margin = f64::INFINITY;
    for h in &hs {
        let reach = verts
            .iter()
            .map(|v| dot(h.normal(), v) - dot(h.normal(), &c))
            .fold(f64::NEG_INFINITY, f64::max);
        if reach > 0.0 {
            margin = margin.min((h.offset() - dot(h.normal(), &c)) / reach);
        }
    }
    Ok(RequirementCheck {
        satisfied: witness.is_none(),
        margin,
        over_constrained: false,
        witness,
    })
}
