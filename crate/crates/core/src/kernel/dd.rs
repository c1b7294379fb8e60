//! Vertex enumeration by the double description method.
//!
//! The system `a_i·x <= b_i` is homogenized to the cone
//! `{(x, t) : b_i t - a_i·x >= 0, t >= 0}` in `R^{d+1}`. Starting from the
//! simplicial cone of `d + 1` independent rows, the remaining rows are inserted
//! one at a time; new extreme rays come from adjacent pairs straddling the new
//! hyperplane, adjacency being decided by the rank of the common zero set.
//! Rays with `t > 0` are the vertices. Systems with many rows per dimension
//! go through the edge walk in `walk` first.

use super::halfspace::{HRep, VRep};
use super::linalg::{dist, dot, inverse, norm, rank, span_and_complement};
use super::{lp, walk, PolytopeError};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// Whether the rows `idx` of `g` reach rank `want` (Gram-Schmidt, stopping
/// as soon as the rank is reached).
fn reaches_rank(g: &[Vec<f64>], idx: impl Iterator<Item = usize>, want: usize, tol: f64) -> bool {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(want);
    for i in idx {
        let mut r = g[i].clone();
        for q in &basis {
            let c = dot(&r, q);
            r.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
        }
        let n = norm(&r);
        if n > tol {
            basis.push(r.into_iter().map(|x| x / n).collect());
            if basis.len() >= want {
                return true;
            }
        }
    }
    basis.len() >= want
}

struct Ray {
    v: Vec<f64>,
    zero: Bits,
}

fn normalized(v: Vec<f64>) -> Vec<f64> {
    let n = norm(&v);
    v.into_iter().map(|x| x / n).collect()
}

/// Greedy pivoted selection of up to `want` linearly independent rows.
fn pick_basis(rows: &[Vec<f64>], want: usize, tol: f64) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(want);
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(want);
    let mut residuals: Vec<Vec<f64>> = rows.to_vec();
    while chosen.len() < want {
        let best = residuals
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(i, r)| (i, norm(r)))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
        let Some((i, n)) = best else { break };
        if n <= tol.max(1e-10) {
            break;
        }
        let q: Vec<f64> = residuals[i].iter().map(|x| x / n).collect();
        for r in residuals.iter_mut() {
            let c = dot(r, &q);
            r.iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
        }
        ortho.push(q);
        chosen.push(i);
    }
    chosen
}

/// Extreme points of `{x : a_i·x <= b_i}`, lexicographically sorted.
///
/// Fails with `Empty` when infeasible and `Unbounded` when the feasible set
/// has a recession direction.
pub fn vertices_of(h: &HRep, eps: f64) -> Result<VRep, PolytopeError> {
    enumerate(h, eps, true)
}

/// [`vertices_of`] restricted to double description.
pub(crate) fn vertices_no_walk(h: &HRep, eps: f64) -> Result<VRep, PolytopeError> {
    enumerate(h, eps, false)
}

/// Row count per dimension above which the edge walk is tried first.
const WALK_ROWS_PER_DIM: usize = 20;

fn enumerate(h: &HRep, eps: f64, allow_walk: bool) -> Result<VRep, PolytopeError> {
    let d = h.dim();
    let tol = eps.max(1e-12);

    let mut g: Vec<Vec<f64>> = Vec::with_capacity(h.len() + 1);
    let mut t_row = vec![0.0; d + 1];
    t_row[d] = 1.0;
    g.push(t_row);
    for hs in h.halfspaces() {
        let mut row: Vec<f64> = hs.normal().iter().map(|x| -x).collect();
        row.push(hs.offset());
        g.push(normalized(row));
    }
    let m = g.len();

    let chosen = pick_basis(&g, d + 1, tol);
    if chosen.len() < d + 1 {
        // a lineality space: the set contains a whole line if it is nonempty
        if !lp::is_feasible(h, eps)? {
            return Err(PolytopeError::Empty);
        }
        let normals: Vec<Vec<f64>> = h.halfspaces().iter().map(|x| x.normal().to_vec()).collect();
        let (_, free) = span_and_complement(&normals, d, tol);
        let direction = free.into_iter().next().unwrap_or_else(|| vec![0.0; d]);
        return Err(PolytopeError::Unbounded { direction });
    }

    if allow_walk && h.len() > WALK_ROWS_PER_DIM * (d + 1) {
        if let Some(v) = walk::walk_vertices(h, eps)? {
            return finish(h, v, eps);
        }
    }

    let basis_rows: Vec<Vec<f64>> = chosen.iter().map(|&i| g[i].clone()).collect();
    let inv = inverse(&basis_rows).ok_or(PolytopeError::Numerical("singular initial basis"))?;
    let mut rays: Vec<Ray> = (0..=d)
        .map(|j| {
            let v: Vec<f64> = (0..=d).map(|i| inv[i][j]).collect();
            let mut zero = Bits::new(m);
            for (k, &c) in chosen.iter().enumerate() {
                if k != j {
                    zero.set(c);
                }
            }
            Ray {
                v: normalized(v),
                zero,
            }
        })
        .collect();

    let mut in_basis = vec![false; m];
    chosen.iter().for_each(|&i| in_basis[i] = true);

    let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); m];
    for j in (0..m).filter(|&j| !in_basis[j]) {
        let row = &g[j];
        let vals: Vec<f64> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zer = Vec::new();
        for (k, &s) in vals.iter().enumerate() {
            if s > tol {
                pos.push(k);
            } else if s < -tol {
                neg.push(k);
            } else {
                zer.push(k);
            }
        }
        if neg.is_empty() {
            for &k in &zer {
                rays[k].zero.set(j);
            }
            continue;
        }

        // candidate partners share at least d - 1 tight rows; find them
        // through a row -> positive-ray index instead of scanning all pairs
        by_row.iter_mut().for_each(Vec::clear);
        for &p in &pos {
            for i in rays[p].zero.ones() {
                by_row[i].push(p);
            }
        }
        let mut shared = vec![0usize; rays.len()];
        let mut touched: Vec<usize> = Vec::new();
        let mut fresh: Vec<Ray> = Vec::new();
        for &n in &neg {
            for i in rays[n].zero.ones() {
                for &p in &by_row[i] {
                    if shared[p] == 0 {
                        touched.push(p);
                    }
                    shared[p] += 1;
                }
            }
            if d == 1 {
                // on a line every pair is adjacent, shared rows or not
                touched = pos.clone();
                touched.iter().for_each(|&p| shared[p] = 1);
            }
            touched.sort_unstable();
            for &p in &touched {
                let enough = shared[p] + 1 >= d;
                shared[p] = 0;
                if !enough {
                    continue;
                }
                let z = rays[p].zero.and(&rays[n].zero);
                // adjacent iff the common tight rows leave a 2-dimensional face
                if !reaches_rank(&g, z.ones(), d - 1, 1e-9) {
                    continue;
                }
                let (sp, sn) = (vals[p], vals[n]);
                let v: Vec<f64> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(rn, rp)| sp * rn - sn * rp)
                    .collect();
                let mut zero = z;
                zero.set(j);
                fresh.push(Ray {
                    v: normalized(v),
                    zero,
                });
            }
            touched.clear();
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + zer.len() + fresh.len());
        let mut old: Vec<Option<Ray>> = rays.into_iter().map(Some).collect();
        for &k in &pos {
            next.push(old[k].take().expect("ray used once"));
        }
        for &k in &zer {
            let mut r = old[k].take().expect("ray used once");
            r.zero.set(j);
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
        if rays.is_empty() {
            return Err(PolytopeError::Empty);
        }
    }

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut recession: Option<Vec<f64>> = None;
    for r in &rays {
        let t = r.v[d];
        if t > tol {
            vertices.push(r.v[..d].iter().map(|x| x / t).collect());
        } else if recession.is_none() {
            recession = Some(normalized(r.v[..d].to_vec()));
        }
    }
    if vertices.is_empty() {
        return Err(PolytopeError::Empty);
    }
    if let Some(direction) = recession {
        return Err(PolytopeError::Unbounded { direction });
    }

    finish(h, vertices, eps)
}

fn finish(h: &HRep, vertices: Vec<Vec<f64>>, eps: f64) -> Result<VRep, PolytopeError> {
    let d = h.dim();
    let tol = eps.max(1e-12);
    let vertices = dedup(vertices, eps);
    // drop points that are not 0-dimensional faces (floating adjacency slips)
    let vertices: Vec<Vec<f64>> = vertices
        .into_iter()
        .filter(|x| {
            let scale = 1.0 + norm(x);
            let tight: Vec<Vec<f64>> = h
                .halfspaces()
                .iter()
                .filter(|hs| hs.slack(x).abs() <= 10.0 * tol * scale)
                .map(|hs| hs.normal().to_vec())
                .collect();
            rank(&tight, d, 1e-9) == d
        })
        .collect();
    if vertices.is_empty() {
        return Err(PolytopeError::Numerical("no vertex survived the extremality check"));
    }
    Ok(VRep::canonical(d, vertices))
}

pub(crate) fn dedup(points: Vec<Vec<f64>>, eps: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        let tol = eps * (1.0 + norm(&p));
        if !out.iter().any(|q| dist(q, &p) <= tol) {
            out.push(p);
        }
    }
    out
}
