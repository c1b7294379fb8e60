//! Small dense helpers over `&[f64]` vectors plus subspace utilities.

use nalgebra::DMatrix;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub fn centroid(points: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let mut c = vec![0.0; dim];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let n = points.len().max(1) as f64;
    c.iter_mut().for_each(|ci| *ci /= n);
    c
}

/// Lexicographic comparison, used for canonical vertex and halfspace order.
pub fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Orthonormal basis of the span of `vectors`, rank decided by singular
/// values above `tol * max(1, sigma_max)`.
fn svd_span(vectors: &[Vec<f64>], dim: usize, tol: f64) -> Vec<Vec<f64>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let rows = vectors.len().max(dim);
    let mut m = DMatrix::<f64>::zeros(rows, dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m[(i, j)] = *x;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * sigma_max.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > threshold)
        .map(|(i, _)| v_t.row(i).iter().cloned().collect())
        .collect()
}

/// Orthonormalize `v` against `basis` (two Gram-Schmidt passes).
fn orthogonalize(mut v: Vec<f64>, basis: &[Vec<f64>]) -> Vec<f64> {
    for _ in 0..2 {
        for b in basis {
            let c = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
    v
}

/// Deterministic orthonormal basis of a subspace given by an orthonormal
/// `span`: coordinate axes are projected onto it in order and kept when they
/// contribute a new direction. Axis-aligned subspaces come back as axes.
fn canonicalize(span: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let rank = span.len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(rank);
    let mut candidates: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            // projection of e_i onto span
            let mut p = vec![0.0; dim];
            for s in span {
                let c = s[i];
                p.iter_mut().zip(s).for_each(|(x, y)| *x += c * y);
            }
            p
        })
        .collect();
    while out.len() < rank {
        // first axis whose residual is substantial, else the largest residual
        let residuals: Vec<Vec<f64>> = candidates
            .iter()
            .map(|c| orthogonalize(c.clone(), &out))
            .collect();
        let pick = residuals
            .iter()
            .position(|r| norm(r) > 1e-6)
            .or_else(|| {
                residuals
                    .iter()
                    .enumerate()
                    .max_by(|a, b| norm(a.1).total_cmp(&norm(b.1)))
                    .map(|(i, _)| i)
            });
        let Some(i) = pick else { break };
        let r = &residuals[i];
        let n = norm(r);
        if n == 0.0 {
            break;
        }
        let mut u: Vec<f64> = r.iter().map(|x| x / n).collect();
        // snap exact axes
        u.iter_mut().for_each(|x| {
            if x.abs() < 1e-15 {
                *x = 0.0
            }
        });
        out.push(u);
        candidates.remove(i);
    }
    out
}

/// Canonical orthonormal basis of span(vectors) and of its orthogonal complement.
pub fn span_and_complement(
    vectors: &[Vec<f64>],
    dim: usize,
    tol: f64,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let span = svd_span(vectors, dim, tol);
    let basis = canonicalize(&span, dim);
    let complement_span = complement_of(&span, dim);
    let complement = canonicalize(&complement_span, dim);
    (basis, complement)
}

fn complement_of(span: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut all: Vec<Vec<f64>> = span.to_vec();
    for i in 0..dim {
        if out.len() + span.len() == dim {
            break;
        }
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        let r = orthogonalize(e, &all);
        let n = norm(&r);
        if n > 1e-6 {
            let u: Vec<f64> = r.iter().map(|x| x / n).collect();
            all.push(u.clone());
            out.push(u);
        }
    }
    out
}

/// Numerical rank of a set of vectors.
pub fn rank(vectors: &[Vec<f64>], dim: usize, tol: f64) -> usize {
    svd_span(vectors, dim, tol).len()
}

/// Inverse of a square matrix given as rows.
pub fn inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let inv = m.try_inverse()?;
    Some((0..n).map(|i| inv.row(i).iter().cloned().collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_aligned_span_comes_back_as_axes() {
        let v = vec![
            vec![1.0, 1.0, 0.0, 0.0, 0.0, 3.0],
            vec![1.0, -1.0, 0.0, 0.0, 0.0, 3.0],
            vec![-1.0, 1.0, 0.0, 0.0, 0.0, 3.0],
        ];
        let (basis, comp) = span_and_complement(&v, 6, 1e-9);
        assert_eq!(basis.len(), 3);
        assert_eq!(comp.len(), 3);
        let axis = |i: usize| {
            let mut e = vec![0.0; 6];
            e[i] = 1.0;
            e
        };
        for (b, i) in basis.iter().zip([0, 1, 5]) {
            assert!(dist(b, &axis(i)) < 1e-12, "{b:?}");
        }
        for (b, i) in comp.iter().zip([2, 3, 4]) {
            assert!(dist(b, &axis(i)) < 1e-12, "{b:?}");
        }
    }

    #[test]
    fn empty_span_has_full_complement() {
        let (b, c) = span_and_complement(&[], 4, 1e-9);
        assert!(b.is_empty());
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn rank_of_dependent_vectors() {
        let v = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 0.0]];
        assert_eq!(rank(&v, 3, 1e-9), 2);
    }
}
