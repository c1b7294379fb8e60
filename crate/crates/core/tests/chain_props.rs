mod common;

use common::{brute_force_vertices, dot, random_unit};
use polychain::chain::{
    check_requirement, compose_parallel, compose_series, evaluate, ChainError, ChainExpr, EdgeKind, SpecEdge,
    SpecGraph, SurfaceRef, Witness,
};
use polychain::kernel::{same_vertex_set, FreeDirections, Halfspace};
use polychain::sdt::{DisplacementPolytope, Screw, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-9;
/// Components bounded by the planar-contact style polytopes below.
const AXES: [usize; 3] = [0, 1, 5];

fn free3() -> FreeDirections {
    let basis = [2, 3, 4]
        .iter()
        .map(|&i| {
            let mut e = vec![0.0; 6];
            e[i] = 1.0;
            e
        })
        .collect();
    FreeDirections::new(6, basis)
}

fn lift(x: &[f64]) -> Vec<f64> {
    let mut v = vec![0.0; 6];
    for (k, &i) in AXES.iter().enumerate() {
        v[i] = x[k];
    }
    v
}

/// Centrally symmetric random polytope in span{rho_x, rho_y, eps_z}.
fn random_sym(rng: &mut ChaCha8Rng, scale: f64) -> DisplacementPolytope {
    let n = rng.gen_range(3..8);
    let mut pts = Vec::new();
    for _ in 0..n {
        let x: Vec<f64> = (0..3).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
        pts.push(lift(&x));
        pts.push(lift(&x.iter().map(|v| -v).collect::<Vec<_>>()));
    }
    DisplacementPolytope::from_points(&pts, free3(), Vec3::zeros(), EPS).unwrap()
}

fn random_dir(rng: &mut ChaCha8Rng) -> [f64; 6] {
    let u = lift(&random_unit(rng, 3));
    u.try_into().unwrap()
}

fn max_dot(vs: &[Vec<f64>], u: &[f64]) -> f64 {
    vs.iter().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max)
}

fn contains(p: &DisplacementPolytope, x: &[f64]) -> bool {
    let c: [f64; 6] = x.try_into().unwrap();
    p.contains_screw(&Screw::from_components(&c, p.point()))
}

fn unit6(i: usize, s: f64) -> Vec<f64> {
    let mut e = vec![0.0; 6];
    e[i] = s;
    e
}

fn ez_interval(lo: f64, hi: f64) -> DisplacementPolytope {
    let hs = [Halfspace::new(unit6(5, 1.0), hi).unwrap(), Halfspace::new(unit6(5, -1.0), -lo).unwrap()];
    DisplacementPolytope::from_halfspaces(&hs, Vec3::zeros(), EPS).unwrap()
}

fn box6(lo: [f64; 6], hi: [f64; 6]) -> DisplacementPolytope {
    let mut hs = Vec::new();
    for i in 0..6 {
        hs.push(Halfspace::new(unit6(i, 1.0), hi[i]).unwrap());
        hs.push(Halfspace::new(unit6(i, -1.0), -lo[i]).unwrap());
    }
    DisplacementPolytope::from_halfspaces(&hs, Vec3::zeros(), EPS).unwrap()
}

#[test]
fn series_support_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let (p, q, r) = (random_sym(&mut rng, 1.0), random_sym(&mut rng, 0.5), random_sym(&mut rng, 2.0));
        let s = compose_series(&[p.clone(), q.clone(), r.clone()]).unwrap();
        assert_eq!(s.free().len(), 3);
        for _ in 0..20 {
            let u = random_dir(&mut rng);
            let want = max_dot(&p.vertices(), &u) + max_dot(&q.vertices(), &u) + max_dot(&r.vertices(), &u);
            assert!((s.support(&u) - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }
}

#[test]
fn series_grows_monotonically() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let (p, q) = (random_sym(&mut rng, 1.0), random_sym(&mut rng, 0.3));
        let s = compose_series(&[p.clone(), q.clone()]).unwrap();
        // q contains the origin, so p sits inside p + q
        for v in p.vertices() {
            assert!(contains(&s, &v));
        }
        for v in p.vertices() {
            for w in q.vertices() {
                let x: Vec<f64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
                assert!(contains(&s, &x));
            }
        }
    }
}

#[test]
fn parallel_matches_concatenated_halfspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let (p, q) = (random_sym(&mut rng, 1.0), random_sym(&mut rng, 1.0));
        let r = compose_parallel(&[p.clone(), q.clone()]).unwrap().expect("both contain the origin");
        for v in r.vertices() {
            assert!(contains(&p, &v) && contains(&q, &v));
        }
        // oracle: every 3-subset of the combined rows, solved directly
        let rows: Vec<(Vec<f64>, f64)> = p
            .halfspaces()
            .iter()
            .chain(q.halfspaces().iter())
            .map(|h| (AXES.iter().map(|&i| h.normal()[i]).collect(), h.offset()))
            .collect();
        let want: Vec<Vec<f64>> = brute_force_vertices(&rows, 3, 1e-9).iter().map(|x| lift(x)).collect();
        assert!(same_vertex_set(&r.vertices(), &want, 1e-8));
    }
}

#[test]
fn offset_branches_shrink_support() {
    let a = ez_interval(-0.2, 0.3);
    let b = ez_interval(-0.1, 0.45);
    let p = compose_parallel(&[a.clone(), b.clone()]).unwrap().unwrap();
    let ez = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    let mez = [0.0, 0.0, 0.0, 0.0, 0.0, -1.0];
    let width = |x: &DisplacementPolytope| x.support(&ez) + x.support(&mez);
    assert!(width(&p) < width(&a) && width(&p) < width(&b));
    assert!((p.support(&ez) - 0.3).abs() < 1e-15);
    assert!((p.support(&mez) - 0.1).abs() < 1e-15);
}

#[test]
fn series_is_scale_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let zero = [0.0; 6];
    for _ in 0..20 {
        let (p, q) = (random_sym(&mut rng, 1.0), random_sym(&mut rng, 1.0));
        let s = compose_series(&[p.clone(), q.clone()]).unwrap();
        for lambda in [0.5, 2.0] {
            let ps = p.scaled_about(&zero, lambda).unwrap();
            let qs = q.scaled_about(&zero, lambda).unwrap();
            let lhs = compose_series(&[ps, qs]).unwrap();
            let rhs = s.scaled_about(&zero, lambda).unwrap();
            assert!(same_vertex_set(&lhs.vertices(), &rhs.vertices(), 1e-9));
        }
    }
}

#[test]
fn verdict_and_margin_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let functional = box6([-1.0; 6], [1.0; 6]);
    for _ in 0..60 {
        let a = rng.gen_range(0.05..1.2);
        let s: Vec<f64> = (0..6).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let lo: [f64; 6] = std::array::from_fn(|i| s[i] - a);
        let hi: [f64; 6] = std::array::from_fn(|i| s[i] + a);
        let calc = box6(lo, hi);
        let fits = s.iter().all(|x| x.abs() + a <= 1.0);
        let r = check_requirement(Some(&calc), &functional).unwrap();
        assert_eq!(r.satisfied, fits);
        assert_eq!(r.satisfied, r.margin >= 1.0 - 1e-12);
        // scaling about the origin: each face bounds lambda * (|s_i| + a) <= 1
        let want = s.iter().map(|x| 1.0 / (x.abs() + a)).fold(f64::INFINITY, f64::min);
        assert!((r.margin - want).abs() < 1e-9);
        if !fits {
            let Some(Witness::Vertex { vertex, halfspace, excess, .. }) = r.witness else {
                panic!("violated check without a vertex witness")
            };
            assert!(dot(halfspace.normal(), &vertex) - halfspace.offset() > 0.0);
            assert!(excess > 0.0);
        }
    }
}

fn node(p: &str, s: Option<&str>) -> SurfaceRef {
    match s {
        Some(s) => SurfaceRef::associated(p, s),
        None => SurfaceRef::nominal(p),
    }
}

fn graph(parts: &[(&str, &[&str])], edges: &[(&str, EdgeKind, &str, &str)]) -> SpecGraph {
    let mut g = SpecGraph::new(Vec3::zeros());
    for (p, ss) in parts {
        g.add_surface(node(p, None));
        for s in *ss {
            g.add_surface(node(p, Some(s)));
        }
    }
    let parse = |r: &str| match r.split_once('.') {
        Some((p, "nominal")) => node(p, None),
        Some((p, s)) => node(p, Some(s)),
        None => panic!("bad ref {r}"),
    };
    for (name, kind, from, to) in edges {
        g.add_edge(SpecEdge {
            name: name.to_string(),
            from: parse(from),
            to: parse(to),
            kind: *kind,
            polytope: ez_interval(-0.1, 0.1),
        })
        .unwrap();
    }
    g
}

#[test]
fn derived_series_chain() {
    use EdgeKind::*;
    let g = graph(
        &[("p1", &["s11", "s12"]), ("p2", &["s21", "s22"]), ("p3", &[])],
        &[
            ("g11", Geometric, "p1.nominal", "p1.s11"),
            ("g12", Geometric, "p1.nominal", "p1.s12"),
            ("g21", Geometric, "p2.nominal", "p2.s21"),
            ("g22", Geometric, "p2.nominal", "p2.s22"),
            ("c", Contact, "p1.s11", "p2.s21"),
        ],
    );
    let e = g.paths_between(&node("p1", Some("s12")), &node("p2", Some("s22"))).unwrap();
    assert_eq!(e, ChainExpr::parse("series(-g12, g11, c, -g21, g22)").unwrap());
    let back = g.paths_between(&node("p2", Some("s22")), &node("p1", Some("s12"))).unwrap();
    assert_eq!(back, ChainExpr::parse("series(-g22, g21, -c, -g11, g12)").unwrap());
    let calc = evaluate(&g, &e).unwrap().unwrap();
    assert!((calc.support(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]) - 0.5).abs() < 1e-12);
    assert!(matches!(
        g.paths_between(&node("p1", None), &node("p3", None)),
        Err(ChainError::NoPath { .. })
    ));
}

#[test]
fn derived_parallel_chain() {
    use EdgeKind::*;
    let g = graph(
        &[("p1", &["s11", "s12"]), ("p2", &["s21", "s22", "s23"])],
        &[
            ("g11", Geometric, "p1.nominal", "p1.s11"),
            ("g12", Geometric, "p1.nominal", "p1.s12"),
            ("g21", Geometric, "p2.nominal", "p2.s21"),
            ("g22", Geometric, "p2.nominal", "p2.s22"),
            ("g23", Geometric, "p2.nominal", "p2.s23"),
            ("c1", Contact, "p1.s11", "p2.s21"),
            ("c2", Contact, "p1.s12", "p2.s22"),
        ],
    );
    let e = g.paths_between(&node("p1", None), &node("p2", None)).unwrap();
    let ChainExpr::Parallel(branches) = &e else { panic!("expected parallel, got {e}") };
    let mut got: Vec<String> = branches.iter().map(ToString::to_string).collect();
    got.sort();
    assert_eq!(got, ["series(g11, c1, -g21)", "series(g12, c2, -g22)"]);
    // both branches go through g23 here
    assert!(matches!(
        g.paths_between(&node("p1", None), &node("p2", Some("s23"))),
        Err(ChainError::SharedEdgeTopology(_))
    ));
}
