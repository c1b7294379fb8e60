use super::expr::ChainExpr;
use super::graph::SpecGraph;
use super::ChainError;
use crate::kernel::{minkowski_sum, split_subspaces, FreeDirections, Polytope};
use crate::sdt::{DisplacementPolytope, SdtError, Vec3};

fn common_point(polys: &[DisplacementPolytope]) -> Result<(Vec3, f64), ChainError> {
    let first = polys.first().ok_or(ChainError::NoOperands)?;
    let m = first.point();
    let scale = 1.0 + m.norm();
    if polys.iter().any(|p| (p.point() - m).norm() > 1e-12 * scale) {
        return Err(ChainError::ReductionPointMismatch);
    }
    let eps = polys.iter().map(|p| p.eps()).fold(0.0, f64::max);
    Ok((m, eps))
}

/// Minkowski sum of displacement sets (specifications in series). Free
/// directions are unioned; the bounded factors are summed in the remaining
/// constrained subspace.
pub fn compose_series(polys: &[DisplacementPolytope]) -> Result<DisplacementPolytope, ChainError> {
    let (m, eps) = common_point(polys)?;
    let all_free: Vec<Vec<f64>> = polys.iter().flat_map(|p| p.free().basis().to_vec()).collect();
    let (free, basis) = split_subspaces(&all_free, 6, eps);
    let basis = basis.basis().to_vec();
    if basis.is_empty() {
        return Ok(DisplacementPolytope::unconstrained(m, eps));
    }
    let project = |v: &[f64]| -> Vec<f64> { basis.iter().map(|b| b.iter().zip(v).map(|(x, y)| x * y).sum()).collect() };
    let mut acc: Option<Polytope> = None;
    for p in polys {
        let pts: Vec<Vec<f64>> = p.vertices().iter().map(|v| project(v)).collect();
        let q = Polytope::from_points(basis.len(), pts, eps)?;
        acc = Some(match acc {
            None => q,
            Some(a) => minkowski_sum(&a, &q)?,
        });
    }
    Ok(DisplacementPolytope::from_parts(
        acc.expect("at least one operand"),
        basis,
        FreeDirections::new(6, free),
        m,
        eps,
    ))
}

/// Intersection of displacement sets (specifications in parallel). `None`
/// when the branches admit no common displacement.
pub fn compose_parallel(branches: &[DisplacementPolytope]) -> Result<Option<DisplacementPolytope>, ChainError> {
    let (m, eps) = common_point(branches)?;
    let hs: Vec<_> = branches.iter().flat_map(|b| b.halfspaces()).collect();
    let p = match DisplacementPolytope::from_halfspaces(&hs, m, eps) {
        Ok(p) => p,
        Err(SdtError::Infeasible) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    // rebuild from the vertices to drop redundant halfspaces
    let Some(body) = p.body() else { return Ok(Some(p)) };
    let body = Polytope::from_vrep(body.vrep(), eps)?;
    Ok(Some(DisplacementPolytope::from_parts(
        body,
        p.basis().to_vec(),
        p.free().clone(),
        m,
        eps,
    )))
}

/// Evaluates `expr` over the graph's edges. `None` means an empty set
/// (an over-constrained assembly).
pub fn evaluate(graph: &SpecGraph, expr: &ChainExpr) -> Result<Option<DisplacementPolytope>, ChainError> {
    match expr {
        ChainExpr::Leaf { edge, reversed } => {
            let e = graph.edge(edge).ok_or_else(|| ChainError::UnresolvedLeaf(edge.clone()))?;
            Ok(Some(if *reversed {
                e.polytope.negated()
            } else {
                e.polytope.clone()
            }))
        }
        ChainExpr::Series(children) | ChainExpr::Parallel(children) => {
            let mut parts = Vec::with_capacity(children.len());
            for c in children {
                match evaluate(graph, c)? {
                    Some(p) => parts.push(p),
                    None => return Ok(None),
                }
            }
            if matches!(expr, ChainExpr::Series(_)) {
                compose_series(&parts).map(Some)
            } else {
                compose_parallel(&parts)
            }
        }
    }
}
