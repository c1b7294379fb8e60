use std::time::Instant;

use super::file::{split_ref, Mating, MechanismFile, SpecDef, SpecKind, SurfaceDef, SurfaceType};
use super::report::{EdgeSummary, Report, Verdict};
use super::MechError;
use crate::chain::{check_requirement, evaluate, ChainExpr, EdgeKind, SpecEdge, SpecGraph, SurfaceRef};
use crate::kernel::DEFAULT_EPS;
use crate::sdt::{
    check_mating_parallel_planes, contact_rows, contact_samples, functional_rows, geometric_rows, rows_to_polytope,
    sample_cylinder, sample_plane, sample_sphere, ConstraintRow, ContactSpec, DisplacementPolytope, Frame,
    MatingReport, PlaneDef, SdtError, SurfaceSample, ToleranceSpec, Vec3,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    /// Overrides the file's tolerance.
    pub eps: Option<f64>,
    /// Tolerance used when neither the options nor the file set one.
    pub fallback_eps: f64,
    pub reduction_point: Option<[f64; 3]>,
    pub timing: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            eps: None,
            fallback_eps: DEFAULT_EPS,
            reduction_point: None,
            timing: false,
        }
    }
}

/// Everything derived from a file before evaluation.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub eps: f64,
    pub point: Vec3,
    pub graph: SpecGraph,
    pub functional_name: String,
    pub functional: DisplacementPolytope,
    pub reference: SurfaceRef,
    pub toleranced: SurfaceRef,
    pub chain: ChainExpr,
}

/// Rows and polytope of one specification.
#[derive(Clone, Debug)]
pub struct CompiledSpec {
    pub rows: Vec<ConstraintRow>,
    pub polytope: DisplacementPolytope,
    pub mating: Option<MatingReport>,
    pub from: SurfaceRef,
    pub to: SurfaceRef,
}

fn v3(a: [f64; 3]) -> Vec3 {
    Vec3::from(a)
}

fn frame_of(s: &SurfaceDef) -> Result<Frame, SdtError> {
    Frame::new(v3(s.origin.unwrap()), v3(s.normal.unwrap()), s.x_axis.map(v3))
}

fn grid2(s: &SurfaceDef, default: (usize, usize)) -> (usize, usize) {
    s.grid.as_ref().map_or(default, |g| (g[0], g[1]))
}

/// Samples of a validated surface definition, lever arms taken from `m`.
pub fn surface_samples(s: &SurfaceDef, m: Vec3) -> Result<Vec<SurfaceSample>, SdtError> {
    match s.kind.get_ref() {
        SurfaceType::Plane => {
            let [a, b] = s.extent.unwrap();
            sample_plane((a, b), &frame_of(s)?, m, grid2(s, (2, 2)))
        }
        SurfaceType::Cylinder => {
            let out = sample_cylinder(s.radius.unwrap(), s.half_length.unwrap(), &frame_of(s)?, m, grid2(s, (8, 2)))?;
            Ok(if s.hole == Some(true) {
                out.iter().map(SurfaceSample::flipped).collect()
            } else {
                out
            })
        }
        SurfaceType::Sphere => {
            let n = s.grid.as_ref().map_or(5, |g| g[0]);
            sample_sphere(s.radius.unwrap(), v3(s.origin.unwrap()), m, n)
        }
        SurfaceType::Sampled => Ok(s
            .points
            .as_ref()
            .unwrap()
            .iter()
            .zip(s.normals.as_ref().unwrap())
            .map(|(p, n)| SurfaceSample::new(v3(*p), v3(*n).normalize(), m))
            .collect()),
    }
}

pub fn surface_center(s: &SurfaceDef) -> Vec3 {
    match (s.origin, &s.points) {
        (Some(o), _) => v3(o),
        (None, Some(p)) => p.iter().map(|x| v3(*x)).sum::<Vec3>() / p.len() as f64,
        _ => Vec3::zeros(),
    }
}

fn plane_def(s: &SurfaceDef) -> Result<PlaneDef, SdtError> {
    let [a, b] = s.extent.unwrap();
    Ok(PlaneDef::new(frame_of(s)?, (a, b)))
}

fn node(r: &str) -> SurfaceRef {
    let (p, s) = split_ref(r).expect("validated reference");
    match s {
        Some(s) => SurfaceRef::associated(p, s),
        None => SurfaceRef::nominal(p),
    }
}

fn resolved_eps(file: &MechanismFile, opts: &CheckOptions) -> f64 {
    opts.eps.or(file.global.eps).unwrap_or(opts.fallback_eps)
}

/// Reduction point: explicit option, then the file, then the center of the
/// functional spec's toleranced surface.
fn resolved_point(file: &MechanismFile, opts: &CheckOptions) -> Vec3 {
    if let Some(p) = opts.reduction_point.or(file.global.reduction_point) {
        return v3(p);
    }
    let f = file.functional();
    let r = f.surfaces.get_ref().last().unwrap();
    let (_, s) = file.surface(r.get_ref()).unwrap();
    surface_center(s.unwrap())
}

/// Compiles one specification at reduction point `m`.
pub fn compile_spec(file: &MechanismFile, spec: &SpecDef, eps: f64, m: Vec3) -> Result<CompiledSpec, MechError> {
    let name = spec.name.get_ref().clone();
    let wrap = |e: SdtError| MechError::Spec {
        name: name.clone(),
        source: e,
    };
    let refs: Vec<&str> = spec.surfaces.get_ref().iter().map(|r| r.get_ref().as_str()).collect();
    let surf = |r: &str| file.surface(r).unwrap().1.unwrap();
    let toleranced = *refs.last().unwrap();
    let (from, to) = match refs.len() {
        1 => {
            let (p, _) = split_ref(toleranced).unwrap();
            (SurfaceRef::nominal(p), node(toleranced))
        }
        _ => (node(refs[0]), node(toleranced)),
    };
    let mut mating = None;
    let rows = match spec.kind.get_ref() {
        SpecKind::Geometric | SpecKind::Functional => {
            let tol = ToleranceSpec::new(*spec.t.as_ref().unwrap().get_ref(), spec.k()).map_err(wrap)?;
            let samples = surface_samples(surf(toleranced), m).map_err(wrap)?;
            if *spec.kind.get_ref() == SpecKind::Geometric {
                geometric_rows(&samples, &tol)
            } else {
                functional_rows(&samples, &tol)
            }
            .map_err(wrap)?
        }
        SpecKind::Contact => {
            let clearance = *spec.clearance.as_ref().unwrap().get_ref();
            let given = spec.d.as_ref().map(|d| *d.get_ref());
            let (samples, report, d) = match spec.mating() {
                Mating::Auto => {
                    let (p1, p2) = (plane_def(surf(refs[0])).map_err(wrap)?, plane_def(surf(refs[1])).map_err(wrap)?);
                    let gap = (p2.frame.origin - p1.frame.origin).dot(&p1.frame.z);
                    let d = given.unwrap_or(gap.max(0.0));
                    let report = check_mating_parallel_planes(&p1, &p2, d, eps);
                    (contact_samples(&p1, &p2, m), report, d)
                }
                Mating::AssumeOk => (
                    surface_samples(surf(refs[0]), m).map_err(wrap)?,
                    MatingReport::ok(),
                    given.unwrap_or(0.0),
                ),
            };
            let cs = ContactSpec::new(clearance, d).map_err(wrap)?;
            let rows = contact_rows(&samples, &cs, &report).map_err(wrap)?;
            mating = Some(report);
            rows
        }
    };
    let polytope = rows_to_polytope(&rows, eps).map_err(wrap)?;
    Ok(CompiledSpec {
        rows,
        polytope,
        mating,
        from,
        to,
    })
}

pub fn compile(file: &MechanismFile, opts: &CheckOptions) -> Result<Compiled, MechError> {
    let eps = resolved_eps(file, opts);
    let point = resolved_point(file, opts);
    let mut graph = SpecGraph::new(point);
    for part in &file.parts {
        let p = part.name.get_ref();
        graph.add_surface(SurfaceRef::nominal(p.as_str()));
        for s in &part.surfaces {
            graph.add_surface(SurfaceRef::associated(p.as_str(), s.name.get_ref().as_str()));
        }
    }
    let mut functional = None;
    for spec in &file.specs {
        let c = compile_spec(file, spec, eps, point)?;
        let kind = match spec.kind.get_ref() {
            SpecKind::Geometric => EdgeKind::Geometric,
            SpecKind::Contact => EdgeKind::Contact,
            SpecKind::Functional => {
                functional = Some(c);
                continue;
            }
        };
        graph.add_edge(SpecEdge {
            name: spec.name.get_ref().clone(),
            from: c.from,
            to: c.to,
            kind,
            polytope: c.polytope,
        })?;
    }
    let f = functional.expect("validated file has a functional spec");
    let chain = match file.parsed_chain() {
        Some(c) => c,
        None => graph.paths_between(&f.from, &f.to)?,
    };
    Ok(Compiled {
        eps,
        point,
        graph,
        functional_name: file.functional().name.get_ref().clone(),
        functional: f.polytope,
        reference: f.from,
        toleranced: f.to,
        chain,
    })
}

/// Full pipeline: compile, evaluate the chain, check the requirement.
pub fn run_check(file: &MechanismFile, opts: &CheckOptions) -> Result<Report, MechError> {
    run(file, opts).map(|(_, r)| r)
}

/// [`run_check`] that also hands back the compiled graph.
pub fn run(file: &MechanismFile, opts: &CheckOptions) -> Result<(Compiled, Report), MechError> {
    let start = Instant::now();
    let c = compile(file, opts)?;
    let calculated = evaluate(&c.graph, &c.chain)?;
    let check = check_requirement(calculated.as_ref(), &c.functional)?;
    let verdict = if check.over_constrained {
        Verdict::OverConstrained
    } else if check.satisfied {
        Verdict::Satisfied
    } else {
        Verdict::Violated
    };
    let edges = c
        .graph
        .edges()
        .map(|e| EdgeSummary::new(&e.name, kind_label(e.kind), &e.from, &e.to, &e.polytope))
        .collect();
    let report = Report {
        units: file.units.clone(),
        eps: c.eps,
        reduction_point: [c.point.x, c.point.y, c.point.z],
        chain: c.chain.to_string(),
        edges,
        functional: EdgeSummary::new(&c.functional_name, "functional", &c.reference, &c.toleranced, &c.functional),
        calculated,
        verdict,
        check,
        elapsed: opts.timing.then(|| start.elapsed()),
    };
    Ok((c, report))
}

fn kind_label(k: EdgeKind) -> &'static str {
    match k {
        EdgeKind::Geometric => "geometric",
        EdgeKind::Contact => "contact",
    }
}
