//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls into the double-description or hull code paths.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x : a_i·x <= b_i}` by solving every d-subset of rows as
/// equalities and keeping the feasible, distinct solutions.
pub fn brute_force_vertices(rows: &[(Vec<f64>, f64)], d: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for subset in combinations(rows.len(), d) {
        let a: Vec<Vec<f64>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<f64> = subset.iter().map(|&i| rows[i].1).collect();
        let Some(x) = solve(a, b) else { continue };
        let feasible = rows.iter().all(|(n, c)| {
            let nn = dot(n, n).sqrt();
            (dot(n, &x) - c) / nn <= tol
        });
        if feasible && !out.iter().any(|y| dist(y, &x) <= 1e-7) {
            out.push(x);
        }
    }
    out
}

/// Facets of the hull of a full-dimensional point set: every hyperplane
/// through `d` affinely independent points with all points on one side.
/// Returned as unit normal + offset.
pub fn brute_force_facets(points: &[Vec<f64>], d: usize, tol: f64) -> Vec<(Vec<f64>, f64)> {
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
    for subset in combinations(points.len(), d) {
        // normal n with n·(p_i - p_0) = 0, found by fixing one free coordinate
        let p0 = &points[subset[0]];
        let diffs: Vec<Vec<f64>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = None;
        for fix in 0..d {
            let a: Vec<Vec<f64>> = diffs
                .iter()
                .map(|r| (0..d).filter(|&c| c != fix).map(|c| r[c]).collect())
                .collect();
            let b: Vec<f64> = diffs.iter().map(|r| -r[fix]).collect();
            if let Some(sol) = solve(a, b) {
                let mut n = Vec::with_capacity(d);
                let mut it = sol.into_iter();
                for c in 0..d {
                    n.push(if c == fix { 1.0 } else { it.next().unwrap() });
                }
                normal = Some(n);
                break;
            }
        }
        let Some(n) = normal else { continue };
        let len = dot(&n, &n).sqrt();
        let n: Vec<f64> = n.iter().map(|x| x / len).collect();
        let b = dot(&n, p0);
        let vals: Vec<f64> = points.iter().map(|p| dot(&n, p) - b).collect();
        let (n, b) = if vals.iter().all(|v| *v <= tol) {
            (n, b)
        } else if vals.iter().all(|v| *v >= -tol) {
            (n.iter().map(|x| -x).collect(), -b)
        } else {
            continue;
        };
        if !out.iter().any(|(m, c)| dist(m, &n) < 1e-7 && (c - b).abs() < 1e-7) {
            out.push((n, b));
        }
    }
    out
}

/// `x in conv(points)` by an LP on convex weights (independent of the kernel).
pub fn in_convex_hull(points: &[Vec<f64>], x: &[f64], tol: f64) -> bool {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let mut pb = Problem::new(OptimizationDirection::Minimize);
    let d = x.len();
    let lambdas: Vec<_> = points.iter().map(|_| pb.add_var(0.0, (0.0, f64::INFINITY))).collect();
    // slack s_i >= |sum lambda p - x|
    let slacks: Vec<_> = (0..d).map(|_| pb.add_var(1.0, (0.0, f64::INFINITY))).collect();
    pb.add_constraint(lambdas.iter().map(|l| (*l, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, 1.0);
    for i in 0..d {
        let mut e: Vec<_> = lambdas.iter().zip(points).map(|(l, p)| (*l, p[i])).collect();
        e.push((slacks[i], -1.0));
        pb.add_constraint(e, ComparisonOp::Le, x[i]);
        let mut e: Vec<_> = lambdas.iter().zip(points).map(|(l, p)| (*l, p[i])).collect();
        e.push((slacks[i], 1.0));
        pb.add_constraint(e, ComparisonOp::Ge, x[i]);
    }
    match pb.solve() {
        Ok(microlp::SolveOutcome::Solution(s)) => s.objective() <= tol,
        _ => false,
    }
}

pub fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = dot(&v, &v).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub fn random_points(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// Random halfspaces tangent to spheres of radius in [0.5, 1.5] around a
/// random center; bounded with high probability once there are enough rows.
pub fn random_rows(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<(Vec<f64>, f64)> {
    let center: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
    (0..n)
        .map(|_| {
            let u = random_unit(rng, d);
            let b = dot(&u, &center) + rng.gen_range(0.5..1.5);
            (u, b)
        })
        .collect()
}
