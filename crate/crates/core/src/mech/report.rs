use std::fmt::{self, Write as _};
use std::time::Duration;

use crate::chain::{RequirementCheck, SurfaceRef, Witness};
use crate::sdt::DisplacementPolytope;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    OverConstrained,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Satisfied => 0,
            Self::Violated => 1,
            Self::OverConstrained => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Satisfied => "satisfied",
            Self::Violated => "violated",
            Self::OverConstrained => "over-constrained",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolySummary {
    pub dim: usize,
    pub vertices: usize,
    pub halfspaces: usize,
    pub free: usize,
}

impl PolySummary {
    pub fn of(p: &DisplacementPolytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p.body().map_or(0, |b| b.vertices().len()),
            halfspaces: p.body().map_or(0, |b| b.halfspaces().len()),
            free: p.free().len(),
        }
    }
}

impl fmt::Display for PolySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim {}, {} vertices, {} halfspaces, {} free directions",
            self.dim, self.vertices, self.halfspaces, self.free
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSummary {
    pub name: String,
    pub kind: &'static str,
    pub from: String,
    pub to: String,
    pub polytope: PolySummary,
}

impl EdgeSummary {
    pub fn new(name: &str, kind: &'static str, from: &SurfaceRef, to: &SurfaceRef, p: &DisplacementPolytope) -> Self {
        Self {
            name: name.to_string(),
            kind,
            from: from.to_string(),
            to: to.to_string(),
            polytope: PolySummary::of(p),
        }
    }
}

/// Outcome of a check run. `Display` renders the plain-text report with a
/// fixed line order; timing appears only when it was requested.
#[derive(Clone, Debug)]
pub struct Report {
    pub units: String,
    pub eps: f64,
    pub reduction_point: [f64; 3],
    pub chain: String,
    pub edges: Vec<EdgeSummary>,
    pub functional: EdgeSummary,
    pub calculated: Option<DisplacementPolytope>,
    pub verdict: Verdict,
    pub check: RequirementCheck,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn margin(&self) -> f64 {
        self.check.margin
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

fn vec_text(v: &[f64]) -> String {
    // round-off residue below 1e-15 prints as 0
    let parts: Vec<String> = v
        .iter()
        .map(|&x| format!("{}", if x.abs() < 1e-15 { 0.0 } else { x }))
        .collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "polychain check report")?;
        writeln!(s, "units: {}", self.units)?;
        writeln!(s, "eps: {:e}", self.eps)?;
        writeln!(s, "reduction point: {}", vec_text(&self.reduction_point))?;
        writeln!(s, "screw components: rho_x rho_y rho_z eps_x eps_y eps_z")?;
        writeln!(s, "chain: {}", self.chain)?;
        writeln!(s, "edges:")?;
        for e in &self.edges {
            writeln!(s, "  {} ({}) {} -> {}: {}", e.name, e.kind, e.from, e.to, e.polytope)?;
        }
        let fun = &self.functional;
        writeln!(s, "functional {}: {} -> {}: {}", fun.name, fun.from, fun.to, fun.polytope)?;
        match &self.calculated {
            Some(p) => writeln!(s, "calculated: {}", PolySummary::of(p))?,
            None => writeln!(s, "calculated: empty")?,
        }
        match self.verdict {
            Verdict::OverConstrained => writeln!(
                s,
                "verdict: over-constrained (the branches admit no common displacement; the requirement holds only vacuously)"
            )?,
            v => writeln!(s, "verdict: {}", v.label())?,
        }
        writeln!(
            s,
            "margin: {} (largest scaling of the calculated set about the functional centroid that still fits; >= 1 iff satisfied)",
            self.check.margin
        )?;
        match &self.check.witness {
            None => writeln!(s, "witness: none")?,
            Some(Witness::Vertex {
                vertex,
                index,
                halfspace,
                excess,
            }) => writeln!(
                s,
                "witness: vertex {} violates functional halfspace #{index} {} . x <= {} by {}",
                vec_text(vertex),
                vec_text(halfspace.normal()),
                halfspace.offset(),
                excess
            )?,
            Some(Witness::FreeDirection {
                direction,
                index,
                halfspace,
            }) => writeln!(
                s,
                "witness: free direction {} is bounded by functional halfspace #{index} {} . x <= {}",
                vec_text(direction),
                vec_text(halfspace.normal()),
                halfspace.offset()
            )?,
        }
        if let Some(t) = self.elapsed {
            writeln!(s, "elapsed: {:.3} ms", t.as_secs_f64() * 1e3)?;
        }
        f.write_str(&s)
    }
}
