use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::expr::ChainExpr;
use super::ChainError;
use crate::sdt::{DisplacementPolytope, Vec3};

/// A node of the surface graph: the nominal frame of a part, or one of its
/// associated (real, fitted) surfaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceRef {
    pub part: String,
    pub surface: Option<String>,
}

impl SurfaceRef {
    pub fn nominal(part: impl Into<String>) -> Self {
        Self {
            part: part.into(),
            surface: None,
        }
    }

    pub fn associated(part: impl Into<String>, surface: impl Into<String>) -> Self {
        Self {
            part: part.into(),
            surface: Some(surface.into()),
        }
    }

    pub fn is_nominal(&self) -> bool {
        self.surface.is_none()
    }
}

impl fmt::Display for SurfaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surface {
            Some(s) => write!(f, "{}.{}", self.part, s),
            None => write!(f, "{}.nominal", self.part),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Geometric,
    Contact,
}

/// Specification edge. `polytope` bounds the screw of `to` relative to `from`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecEdge {
    pub name: String,
    pub from: SurfaceRef,
    pub to: SurfaceRef,
    pub kind: EdgeKind,
    pub polytope: DisplacementPolytope,
}

#[derive(Clone, Debug)]
pub struct SpecGraph {
    point: Vec3,
    surfaces: BTreeSet<SurfaceRef>,
    edges: BTreeMap<String, SpecEdge>,
}

impl SpecGraph {
    /// Empty graph whose edges are all expressed at `point`.
    pub fn new(point: Vec3) -> Self {
        Self {
            point,
            surfaces: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn point(&self) -> Vec3 {
        self.point
    }

    pub fn add_surface(&mut self, s: SurfaceRef) {
        self.surfaces.insert(s);
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &SurfaceRef> {
        self.surfaces.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &SpecEdge> {
        self.edges.values()
    }

    pub fn edge(&self, name: &str) -> Option<&SpecEdge> {
        self.edges.get(name)
    }

    /// Adds an edge, moving its polytope to the graph's reduction point.
    pub fn add_edge(&mut self, mut edge: SpecEdge) -> Result<(), ChainError> {
        if self.edges.contains_key(&edge.name) {
            return Err(ChainError::InvalidEdge(format!("duplicate edge '{}'", edge.name)));
        }
        for s in [&edge.from, &edge.to] {
            if !self.surfaces.contains(s) {
                return Err(ChainError::UnknownSurface(s.to_string()));
            }
        }
        match edge.kind {
            EdgeKind::Geometric if edge.from.part != edge.to.part => {
                return Err(ChainError::InvalidEdge(format!(
                    "geometric edge '{}' joins two parts",
                    edge.name
                )))
            }
            EdgeKind::Contact if edge.from.part == edge.to.part => {
                return Err(ChainError::InvalidEdge(format!(
                    "contact edge '{}' stays inside part '{}'",
                    edge.name, edge.from.part
                )))
            }
            _ => {}
        }
        if edge.polytope.point() != self.point {
            edge.polytope = edge.polytope.transport(self.point)?;
        }
        self.edges.insert(edge.name.clone(), edge);
        Ok(())
    }

    /// Composition tree for the screw of `b` relative to `a`, derived from
    /// the simple paths between them. Several paths must be pairwise
    /// edge-disjoint.
    pub fn paths_between(&self, a: &SurfaceRef, b: &SurfaceRef) -> Result<ChainExpr, ChainError> {
        for s in [a, b] {
            if !self.surfaces.contains(s) {
                return Err(ChainError::UnknownSurface(s.to_string()));
            }
        }
        if a == b {
            return Err(ChainError::NoPath {
                from: a.to_string(),
                to: b.to_string(),
            });
        }
        let mut adj: BTreeMap<&SurfaceRef, Vec<(&SpecEdge, &SurfaceRef)>> = BTreeMap::new();
        for e in self.edges.values() {
            adj.entry(&e.from).or_default().push((e, &e.to));
            adj.entry(&e.to).or_default().push((e, &e.from));
        }
        let mut paths: Vec<Vec<ChainExpr>> = Vec::new();
        let mut visited = BTreeSet::from([a]);
        let mut steps = Vec::new();
        walk(&adj, a, b, &mut visited, &mut steps, &mut paths);
        match paths.len() {
            0 => {
                return Err(ChainError::NoPath {
                    from: a.to_string(),
                    to: b.to_string(),
                })
            }
            1 => return Ok(series(paths.pop().unwrap())),
            _ => {}
        }
        let mut used = BTreeSet::new();
        for p in &paths {
            for leaf in p {
                let ChainExpr::Leaf { edge, .. } = leaf else { unreachable!() };
                if !used.insert(edge.clone()) {
                    return Err(ChainError::SharedEdgeTopology(edge.clone()));
                }
            }
        }
        Ok(ChainExpr::Parallel(paths.into_iter().map(series).collect()))
    }
}

fn series(mut leaves: Vec<ChainExpr>) -> ChainExpr {
    if leaves.len() == 1 {
        leaves.pop().unwrap()
    } else {
        ChainExpr::Series(leaves)
    }
}

fn walk<'g>(
    adj: &BTreeMap<&'g SurfaceRef, Vec<(&'g SpecEdge, &'g SurfaceRef)>>,
    at: &'g SurfaceRef,
    target: &SurfaceRef,
    visited: &mut BTreeSet<&'g SurfaceRef>,
    steps: &mut Vec<ChainExpr>,
    out: &mut Vec<Vec<ChainExpr>>,
) {
    for (e, next) in adj.get(at).map(Vec::as_slice).unwrap_or(&[]) {
        if visited.contains(next) {
            continue;
        }
        // a step at -> next contributes next relative to at
        steps.push(ChainExpr::Leaf {
            edge: e.name.clone(),
            reversed: e.from != *at,
        });
        if *next == target {
            out.push(steps.clone());
        } else {
            visited.insert(next);
            walk(adj, next, target, visited, steps, out);
            visited.remove(next);
        }
        steps.pop();
    }
}
