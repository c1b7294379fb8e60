//! Mechanism description files (TOML).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::MechError;
use crate::chain::ChainExpr;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismFile {
    pub units: String,
    /// Explicit composition in prefix notation; derived from the graph when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "GlobalSettings::is_default")]
    pub global: GlobalSettings,
    pub parts: Vec<PartDef>,
    pub specs: Vec<SpecDef>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction_point: Option<[f64; 3]>,
}

impl GlobalSettings {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDef {
    pub name: Spanned<String>,
    pub surfaces: Vec<SurfaceDef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceType {
    Plane,
    Cylinder,
    Sphere,
    Sampled,
}

/// One nominal surface. Which optional fields are required depends on `type`:
/// plane needs `origin`, `normal`, `extent`; cylinder `origin`, `normal`
/// (axis), `radius`, `half_length`; sphere `origin` (center), `radius`;
/// sampled `points` and `normals`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDef {
    pub name: Spanned<String>,
    #[serde(rename = "type")]
    pub kind: Spanned<SurfaceType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_axis: Option<[f64; 3]>,
    /// Half-lengths of a plane's rectangle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_length: Option<f64>,
    /// Cylinder material is outside (normals point to the axis).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hole: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<[f64; 3]>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    Geometric,
    Contact,
    Functional,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mating {
    #[default]
    Auto,
    AssumeOk,
}

/// A specification. `surfaces` lists `part.surface` references:
/// geometric `[toleranced]` or `[reference, toleranced]` within one part
/// (`part.nominal` names the part's nominal frame); contact `[base, mating]`
/// on two parts; functional `[reference, toleranced]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDef {
    pub kind: Spanned<SpecKind>,
    pub name: Spanned<String>,
    pub surfaces: Spanned<Vec<Spanned<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Spanned<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Spanned<f64>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub clearance: Option<Spanned<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Spanned<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mating: Option<Mating>,
}

pub const DEFAULT_K: f64 = 0.5;

impl SpecDef {
    pub fn k(&self) -> f64 {
        self.k.as_ref().map_or(DEFAULT_K, |k| *k.get_ref())
    }

    pub fn mating(&self) -> Mating {
        self.mating.unwrap_or_default()
    }
}

/// `part.surface` split in two; `surface == None` for `part.nominal`.
pub fn split_ref(r: &str) -> Option<(&str, Option<&str>)> {
    let (p, s) = r.split_once('.')?;
    if p.is_empty() || s.is_empty() || s.contains('.') {
        return None;
    }
    Some((p, (s != "nominal").then_some(s)))
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

struct Checker<'a> {
    text: &'a str,
}

impl Checker<'_> {
    fn err<T>(&self, span: std::ops::Range<usize>, msg: impl Into<String>) -> Result<T, MechError> {
        let (line, column) = line_col(self.text, span.start);
        Err(MechError::Validation {
            line,
            column,
            msg: msg.into(),
        })
    }
}

impl MechanismFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, MechError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| MechError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses and validates a file's text.
    pub fn parse(text: &str) -> Result<Self, MechError> {
        let file: MechanismFile = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            MechError::Parse {
                line,
                column,
                msg: e.message().to_string(),
            }
        })?;
        file.validate(text)?;
        Ok(file)
    }

    pub fn to_toml(&self) -> Result<String, MechError> {
        toml::to_string(self).map_err(|e| MechError::Io(e.to_string()))
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), MechError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_toml()?).map_err(|e| MechError::Io(format!("{}: {e}", path.display())))
    }

    pub fn surface(&self, reference: &str) -> Option<(&PartDef, Option<&SurfaceDef>)> {
        let (p, s) = split_ref(reference)?;
        let part = self.parts.iter().find(|x| x.name.get_ref() == p)?;
        match s {
            None => Some((part, None)),
            Some(s) => part.surfaces.iter().find(|x| x.name.get_ref() == s).map(|x| (part, Some(x))),
        }
    }

    pub fn spec(&self, name: &str) -> Option<&SpecDef> {
        self.specs.iter().find(|s| s.name.get_ref() == name)
    }

    pub fn functional(&self) -> &SpecDef {
        self.specs
            .iter()
            .find(|s| *s.kind.get_ref() == SpecKind::Functional)
            .expect("validated file has a functional spec")
    }

    pub fn parsed_chain(&self) -> Option<ChainExpr> {
        self.chain.as_ref().map(|c| ChainExpr::parse(c.get_ref()).expect("validated chain"))
    }

    fn validate(&self, text: &str) -> Result<(), MechError> {
        let ck = Checker { text };
        if self.units.trim().is_empty() {
            return ck.err(0..0, "units must not be empty");
        }
        if let Some(e) = self.global.eps {
            if !(e > 0.0 && e.is_finite()) {
                return ck.err(0..0, format!("global.eps must be positive, got {e}"));
            }
        }
        let mut parts = BTreeSet::new();
        for part in &self.parts {
            let name = part.name.get_ref();
            if !valid_name(name) {
                return ck.err(part.name.span(), format!("invalid part name '{name}'"));
            }
            if !parts.insert(name.as_str()) {
                return ck.err(part.name.span(), format!("duplicate part '{name}'"));
            }
            let mut seen = BTreeSet::new();
            for s in &part.surfaces {
                let sn = s.name.get_ref();
                if !valid_name(sn) || sn == "nominal" {
                    return ck.err(s.name.span(), format!("invalid surface name '{sn}'"));
                }
                if !seen.insert(sn.as_str()) {
                    return ck.err(s.name.span(), format!("duplicate surface '{name}.{sn}'"));
                }
                check_surface(&ck, name, s)?;
            }
        }

        let mut names = BTreeMap::new();
        let mut functional = 0;
        for spec in &self.specs {
            let name = spec.name.get_ref();
            if !valid_name(name) {
                return ck.err(spec.name.span(), format!("invalid spec name '{name}'"));
            }
            if names.insert(name.clone(), *spec.kind.get_ref()).is_some() {
                return ck.err(spec.name.span(), format!("duplicate spec '{name}'"));
            }
            self.check_spec(&ck, spec)?;
            if *spec.kind.get_ref() == SpecKind::Functional {
                functional += 1;
                if functional > 1 {
                    return ck.err(spec.name.span(), "exactly one functional spec is allowed");
                }
            }
        }
        if functional == 0 {
            return ck.err(0..0, "no functional spec");
        }

        if let Some(chain) = &self.chain {
            let expr = ChainExpr::parse(chain.get_ref()).or_else(|e| ck.err(chain.span(), e.to_string()))?;
            for leaf in expr.leaves() {
                match names.get(leaf) {
                    None => return ck.err(chain.span(), format!("chain references unknown spec '{leaf}'")),
                    Some(SpecKind::Functional) => {
                        return ck.err(chain.span(), format!("chain may not use functional spec '{leaf}'"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn check_spec(&self, ck: &Checker, spec: &SpecDef) -> Result<(), MechError> {
        let kind = *spec.kind.get_ref();
        let refs = spec.surfaces.get_ref();
        let (want, label) = match kind {
            SpecKind::Geometric => (1..=2, "geometric spec '{}' needs 1 or 2 surfaces"),
            SpecKind::Contact => (2..=2, "contact spec '{}' needs 2 surfaces"),
            SpecKind::Functional => (2..=2, "functional spec '{}' needs 2 surfaces"),
        };
        if !want.contains(&refs.len()) {
            return ck.err(spec.surfaces.span(), label.replace("{}", spec.name.get_ref()));
        }
        let mut resolved = Vec::new();
        for r in refs {
            let Some((part, surface)) = self.surface(r.get_ref()) else {
                return ck.err(r.span(), format!("unknown surface '{}'", r.get_ref()));
            };
            resolved.push((part.name.get_ref().as_str(), surface.is_none()));
        }
        if resolved.last().unwrap().1 || kind == SpecKind::Contact && resolved[0].1 {
            return ck.err(spec.surfaces.span(), "toleranced and contact surfaces must be real surfaces, not part.nominal");
        }
        match kind {
            SpecKind::Geometric if resolved.len() == 2 && resolved[0].0 != resolved[1].0 => {
                return ck.err(
                    spec.surfaces.span(),
                    format!("geometric spec '{}' joins parts '{}' and '{}'", spec.name.get_ref(), resolved[0].0, resolved[1].0),
                )
            }
            SpecKind::Contact if resolved[0].0 == resolved[1].0 => {
                return ck.err(
                    spec.surfaces.span(),
                    format!(
                        "contact spec '{}' must join two distinct parts, both surfaces are on '{}'",
                        spec.name.get_ref(),
                        resolved[0].0
                    ),
                )
            }
            SpecKind::Functional if refs[0].get_ref() == refs[1].get_ref() => {
                return ck.err(spec.surfaces.span(), "functional spec relates a surface to itself")
            }
            _ => {}
        }
        let unexpected = |f: bool, field: &str| -> Result<(), MechError> {
            if f {
                ck.err(spec.name.span(), format!("field '{field}' does not apply to {kind:?} specs").to_lowercase())
            } else {
                Ok(())
            }
        };
        match kind {
            SpecKind::Geometric | SpecKind::Functional => {
                let Some(t) = &spec.t else {
                    return ck.err(spec.name.span(), format!("spec '{}' needs t", spec.name.get_ref()));
                };
                if !(*t.get_ref() > 0.0 && t.get_ref().is_finite()) {
                    return ck.err(t.span(), "t must be positive");
                }
                if let Some(k) = &spec.k {
                    if !(0.0..=1.0).contains(k.get_ref()) {
                        return ck.err(k.span(), "k must lie in [0, 1]");
                    }
                }
                unexpected(spec.clearance.is_some(), "D")?;
                unexpected(spec.mating.is_some(), "mating")?;
                if kind == SpecKind::Geometric {
                    unexpected(spec.d.is_some(), "d")?;
                }
            }
            SpecKind::Contact => {
                let Some(c) = &spec.clearance else {
                    return ck.err(spec.name.span(), format!("contact spec '{}' needs D", spec.name.get_ref()));
                };
                if !(*c.get_ref() >= 0.0 && c.get_ref().is_finite()) {
                    return ck.err(c.span(), "D must be >= 0");
                }
                if let Some(d) = &spec.d {
                    if !(*d.get_ref() >= 0.0 && d.get_ref().is_finite()) {
                        return ck.err(d.span(), "d must be >= 0");
                    }
                }
                unexpected(spec.t.is_some(), "t")?;
                unexpected(spec.k.is_some(), "k")?;
                if spec.mating() == Mating::Auto {
                    for r in refs {
                        let (_, s) = self.surface(r.get_ref()).unwrap();
                        if *s.unwrap().kind.get_ref() != SurfaceType::Plane {
                            return ck.err(
                                r.span(),
                                "mating = \"auto\" only checks plane pairs; use mating = \"assume-ok\"",
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

fn check_surface(ck: &Checker, part: &str, s: &SurfaceDef) -> Result<(), MechError> {
    let at = s.name.span();
    let label = format!("surface '{part}.{}'", s.name.get_ref());
    let need = |present: bool, field: &str| -> Result<(), MechError> {
        if present {
            Ok(())
        } else {
            ck.err(at.clone(), format!("{label} needs field '{field}'"))
        }
    };
    let positive = |v: Option<f64>, field: &str| -> Result<(), MechError> {
        need(v.is_some(), field)?;
        if v.unwrap() > 0.0 && v.unwrap().is_finite() {
            Ok(())
        } else {
            ck.err(at.clone(), format!("{label}: {field} must be positive"))
        }
    };
    let unit = |v: Option<[f64; 3]>, field: &str| -> Result<(), MechError> {
        need(v.is_some(), field)?;
        let n = v.unwrap().iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 && n.is_finite() {
            Ok(())
        } else {
            ck.err(at.clone(), format!("{label}: {field} must be a nonzero vector"))
        }
    };
    let grid_len = |n: usize| -> Result<(), MechError> {
        match &s.grid {
            Some(g) if g.len() != n => ck.err(at.clone(), format!("{label}: grid needs {n} entries")),
            _ => Ok(()),
        }
    };
    match s.kind.get_ref() {
        SurfaceType::Plane => {
            need(s.origin.is_some(), "origin")?;
            unit(s.normal, "normal")?;
            need(s.extent.is_some(), "extent")?;
            let [a, b] = s.extent.unwrap();
            if !(a > 0.0 && b > 0.0) {
                return ck.err(at, format!("{label}: extent must be positive"));
            }
            grid_len(2)
        }
        SurfaceType::Cylinder => {
            need(s.origin.is_some(), "origin")?;
            unit(s.normal, "normal")?;
            positive(s.radius, "radius")?;
            positive(s.half_length, "half_length")?;
            grid_len(2)
        }
        SurfaceType::Sphere => {
            need(s.origin.is_some(), "origin")?;
            positive(s.radius, "radius")?;
            grid_len(1)
        }
        SurfaceType::Sampled => {
            need(s.points.is_some(), "points")?;
            need(s.normals.is_some(), "normals")?;
            let (p, n) = (s.points.as_ref().unwrap(), s.normals.as_ref().unwrap());
            if p.is_empty() || p.len() != n.len() {
                return ck.err(at, format!("{label}: points and normals must be nonempty and of equal length"));
            }
            for v in n {
                unit(Some(*v), "normals")?;
            }
            Ok(())
        }
    }
}
