//! Vertex enumeration by walking the edge graph.
//!
//! Output-sensitive alternative to double description for systems with many
//! more rows than vertices. A first vertex comes from an LP; the edges leaving
//! a vertex are the extreme rays of its tangent cone (a small system over the
//! tight rows only, so degenerate vertices are handled), and a ratio test
//! finds the vertex at the other end of each edge.

use nalgebra::{DMatrix, DVector};

use super::dd::vertices_no_walk;
use super::halfspace::{HRep, Halfspace};
use super::linalg::{dist, dot, norm, rank};
use super::lp::{self, LpResult};
use super::PolytopeError;

/// Edge directions below this (unit rows, unit direction) count as parallel.
const PARALLEL: f64 = 1e-9;

fn tight_rows(h: &HRep, x: &[f64], tol: f64) -> Vec<usize> {
    let scale = 1.0 + norm(x);
    h.halfspaces()
        .iter()
        .enumerate()
        .filter(|(_, hs)| hs.slack(x).abs() <= tol * scale)
        .map(|(i, _)| i)
        .collect()
}

/// Least-squares solution of the tight rows at `x`; `None` when they do not
/// pin down a point.
fn snap(h: &HRep, x: &[f64], tol: f64) -> Option<(Vec<f64>, Vec<usize>)> {
    let d = h.dim();
    let tight = tight_rows(h, x, tol);
    let rows: Vec<Vec<f64>> = tight.iter().map(|&i| h.halfspaces()[i].normal().to_vec()).collect();
    if rank(&rows, d, 1e-9) < d {
        return None;
    }
    let a = DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j]);
    let b = DVector::from_iterator(tight.len(), tight.iter().map(|&i| h.halfspaces()[i].offset()));
    let y = a.svd(true, true).solve(&b, 1e-12).ok()?;
    let y: Vec<f64> = y.iter().copied().collect();
    let worst = h.halfspaces().iter().map(|hs| -hs.slack(&y)).fold(0.0, f64::max);
    if worst > tol * (1.0 + norm(&y)) {
        return None;
    }
    let tight = tight_rows(h, &y, tol);
    Some((y, tight))
}

/// Extreme rays of `{y : a_i·y <= 0, i in tight}`, unit length.
fn edge_directions(h: &HRep, tight: &[usize], eps: f64) -> Result<Vec<Vec<f64>>, PolytopeError> {
    let d = h.dim();
    let mut s = vec![0.0; d];
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(tight.len() + 2);
    for &i in tight {
        let n = h.halfspaces()[i].normal();
        s.iter_mut().zip(n).for_each(|(a, b)| *a += b);
        rows.push((n.to_vec(), 0.0));
    }
    // s·y < 0 on the pointed cone, so s·y = -1 is a bounded cross-section
    rows.push((s.clone(), -1.0));
    rows.push((s.iter().map(|x| -x).collect(), 1.0));
    let cross = HRep::from_rows(d, &rows)?;
    let v = vertices_no_walk(&cross, eps)?;
    Ok(v.vertices()
        .iter()
        .map(|r| {
            let n = norm(r);
            r.iter().map(|x| x / n).collect()
        })
        .collect())
}

fn recession_direction(h: &HRep, objective: &[f64]) -> Result<Vec<f64>, PolytopeError> {
    let d = h.dim();
    let mut cone: Vec<Halfspace> = h
        .halfspaces()
        .iter()
        .map(|hs| Halfspace::new(hs.normal().to_vec(), 0.0))
        .collect::<Result<_, _>>()?;
    cone.push(Halfspace::new(objective.to_vec(), 1.0)?);
    match lp::argmax(objective, &cone)? {
        Ok(y) => {
            let n = norm(&y);
            Ok(y.iter().map(|x| x / n).collect())
        }
        Err(_) => Ok(vec![0.0; d]),
    }
}

/// Vertices of a bounded system, or `None` when the walk hits numerical
/// trouble and the caller should fall back to double description.
pub(crate) fn walk_vertices(h: &HRep, eps: f64) -> Result<Option<Vec<Vec<f64>>>, PolytopeError> {
    let d = h.dim();
    let tol = 10.0 * eps.max(1e-12);
    // generic objective so the LP optimum is a vertex of a bounded set
    let objective: Vec<f64> = (0..d).map(|i| 1.0 / ((i + 2) as f64).sqrt()).collect();
    let start = match lp::argmax(&objective, h.halfspaces())? {
        Ok(x) => x,
        Err(LpResult::Infeasible) => return Err(PolytopeError::Empty),
        Err(LpResult::Unbounded) => {
            return Err(PolytopeError::Unbounded {
                direction: recession_direction(h, &objective)?,
            })
        }
        Err(LpResult::Optimal(_)) => unreachable!("argmax reports optima as points"),
    };
    let Some(first) = snap(h, &start, tol) else { return Ok(None) };

    let mut found: Vec<Vec<f64>> = vec![first.0.clone()];
    let mut queue = vec![first];
    while let Some((v, tight)) = queue.pop() {
        for r in edge_directions(h, &tight, eps)? {
            let mut step = f64::INFINITY;
            for hs in h.halfspaces() {
                let rate = dot(hs.normal(), &r);
                if rate > PARALLEL {
                    step = step.min(hs.slack(&v).max(0.0) / rate);
                }
            }
            if !step.is_finite() {
                return Err(PolytopeError::Unbounded { direction: r });
            }
            let w: Vec<f64> = v.iter().zip(&r).map(|(a, b)| a + step * b).collect();
            let Some((w, wt)) = snap(h, &w, tol) else { return Ok(None) };
            if found.iter().any(|u| dist(u, &w) <= eps * (1.0 + norm(&w))) {
                continue;
            }
            found.push(w.clone());
            queue.push((w, wt));
        }
    }
    Ok(Some(found))
}
