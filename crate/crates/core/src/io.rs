//! JSON workspaces: an algebra, named modules, a context, named morphism
//! objects and named spliced complexes. Matrices are row-major integer arrays.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, Algebra, QuiverPresentation};
use crate::bridge::functor_f;
use crate::complex::BoundedComplex;
use crate::error::{Error, Result};
use crate::frobenius::{ContextSpec, FrobeniusContext};
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap};
use crate::mor::MorE;
use crate::spliced::SplicedComplex;

pub type MatrixRows = Vec<Vec<i64>>;

/// Where the algebra comes from: a presentation file (relative to the
/// workspace), an inline presentation, or the triangular algebra of another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Triangular { triangular_of: Box<AlgebraSource> },
    File(String),
    Inline(QuiverPresentation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Simple { vertex: String },
    /// Canonical projective on the listed vertices, with multiplicity.
    Projective { vertices: Vec<String> },
    Syzygy { of: String },
    Sum { of: Vec<String> },
    /// Actions of arrows (and optionally idempotents) by basis label. When
    /// `vertices` is given the idempotent actions are read off from it.
    Explicit {
        dim: usize,
        #[serde(default)]
        vertices: Option<Vec<String>>,
        action: BTreeMap<String, MatrixRows>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContextFile {
    #[default]
    Gorenstein,
    List { generators: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// `α: source ↠ target` given by its matrix.
    Map { source: String, target: String, matrix: MatrixRows },
    /// The projective cover of a module.
    Cover { of: String },
    ToZero { of: String },
    Identity { of: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexSpec {
    FunctorF { of: String },
    Resolution {
        of: String,
        #[serde(default = "default_degree")]
        degree: i64,
    },
    /// Components are names of projective modules.
    Bounded { lo: i64, components: Vec<String>, differentials: Vec<MatrixRows> },
    Shift { of: String, by: i64 },
}

fn default_degree() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceSpec {
    pub algebra: AlgebraSource,
    #[serde(default)]
    pub context: ContextFile,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
}

fn ws(msg: impl Into<String>) -> Error {
    Error::Workspace(msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| ws(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ws(format!("{}: {e}", path.display())))
}

pub fn load_presentation(path: &Path) -> Result<QuiverPresentation> {
    read_json(path)
}

/// Algebra files may themselves hold any algebra source, relative to their own directory.
pub fn load_algebra(source: &AlgebraSource, base: &Path) -> Result<Arc<Algebra>> {
    load_algebra_nested(source, base, 0)
}

fn load_algebra_nested(source: &AlgebraSource, base: &Path, depth: usize) -> Result<Arc<Algebra>> {
    if depth > 8 {
        return Err(ws("algebra files refer to each other too deeply"));
    }
    match source {
        AlgebraSource::File(f) => {
            let path = base.join(f);
            let inner: AlgebraSource = read_json(&path)?;
            load_algebra_nested(&inner, &base_dir(&path), depth + 1)
        }
        AlgebraSource::Inline(p) => Ok(Arc::new(build_algebra(p)?)),
        AlgebraSource::Triangular { triangular_of } => Ok(Arc::new(load_algebra_nested(triangular_of, base, depth + 1)?.triangular2())),
    }
}

/// Reads either a workspace or a bare presentation and returns its algebra.
pub fn load_algebra_file(path: &Path) -> Result<Arc<Algebra>> {
    let base = path.parent().unwrap_or(Path::new("."));
    let value: serde_json::Value = read_json(path)?;
    let source = if value.get("algebra").is_some() {
        serde_json::from_value::<WorkspaceSpec>(value).map_err(|e| ws(format!("{}: {e}", path.display())))?.algebra
    } else {
        serde_json::from_value::<AlgebraSource>(value).map_err(|e| ws(format!("{}: {e}", path.display())))?
    };
    load_algebra(&source, base)
}

fn matrix(alg: &Algebra, rows: &MatrixRows, nrows: usize, ncols: usize, what: &str) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(ws(format!("{what}: expected a {nrows}x{ncols} matrix")));
    }
    if nrows == 0 {
        return Ok(Matrix::zeros(alg.field(), 0, ncols));
    }
    Matrix::from_rows(alg.field(), rows)
}

fn vertex(alg: &Algebra, name: &str) -> Result<usize> {
    alg.vertex_index(name).ok_or_else(|| ws(format!("unknown vertex {name:?}")))
}

pub struct Workspace {
    pub algebra: Arc<Algebra>,
    pub context: Arc<FrobeniusContext>,
    pub modules: BTreeMap<String, Module>,
    pub objects: BTreeMap<String, MorE>,
    pub complexes: BTreeMap<String, SplicedComplex>,
}

struct ModuleResolver<'a> {
    algebra: &'a Arc<Algebra>,
    specs: &'a BTreeMap<String, ModuleSpec>,
    done: BTreeMap<String, Module>,
    active: BTreeSet<String>,
}

impl ModuleResolver<'_> {
    fn get(&mut self, name: &str) -> Result<Module> {
        if let Some(m) = self.done.get(name) {
            return Ok(m.clone());
        }
        let spec = self.specs.get(name).ok_or_else(|| ws(format!("unknown module {name:?}")))?;
        if !self.active.insert(name.to_string()) {
            return Err(ws(format!("module {name:?} is defined in terms of itself")));
        }
        let alg = self.algebra;
        let m = match spec {
            ModuleSpec::Simple { vertex: v } => Module::simple(alg, vertex(alg, v)?),
            ModuleSpec::Projective { vertices } => {
                let vs: Vec<usize> = vertices.iter().map(|v| vertex(alg, v)).collect::<Result<_>>()?;
                Module::projective(alg, &vs)
            }
            ModuleSpec::Syzygy { of } => self.get(of)?.syzygy().0,
            ModuleSpec::Sum { of } => {
                let parts: Vec<Module> = of.iter().map(|n| self.get(n)).collect::<Result<_>>()?;
                Module::direct_sum(alg, &parts).0
            }
            ModuleSpec::Explicit { dim, vertices, action } => {
                let mut given = Vec::new();
                if let Some(vs) = vertices {
                    if vs.len() != *dim {
                        return Err(ws(format!("module {name:?}: {} vertices for dimension {dim}", vs.len())));
                    }
                    let vs: Vec<usize> = vs.iter().map(|v| vertex(alg, v)).collect::<Result<_>>()?;
                    for v in 0..alg.num_vertices() {
                        let e = Matrix::from_fn(alg.field(), *dim, *dim, |i, j| u32::from(i == j && vs[i] == v));
                        given.push((alg.idempotent(v), e));
                    }
                }
                for (label, rows) in action {
                    let b = alg.label_index(label).ok_or_else(|| ws(format!("module {name:?}: unknown basis label {label:?}")))?;
                    given.retain(|(c, _)| *c != b);
                    given.push((b, matrix(alg, rows, *dim, *dim, &format!("module {name:?}, action of {label}"))?));
                }
                Module::from_generator_action(alg.clone(), *dim, &given)?
            }
        };
        self.active.remove(name);
        self.done.insert(name.to_string(), m.clone());
        Ok(m)
    }
}

impl Workspace {
    pub fn load(path: &Path, cap: usize) -> Result<Workspace> {
        let spec: WorkspaceSpec = read_json(path)?;
        Workspace::from_spec(&spec, path.parent().unwrap_or(Path::new(".")), cap)
    }

    pub fn from_spec(spec: &WorkspaceSpec, base: &Path, cap: usize) -> Result<Workspace> {
        let algebra = load_algebra(&spec.algebra, base)?;
        let mut resolver = ModuleResolver { algebra: &algebra, specs: &spec.modules, done: BTreeMap::new(), active: BTreeSet::new() };
        for name in spec.modules.keys() {
            resolver.get(name)?;
        }
        let modules = resolver.done;
        let module = |n: &str| modules.get(n).cloned().ok_or_else(|| ws(format!("unknown module {n:?}")));
        let context = match &spec.context {
            ContextFile::Gorenstein => FrobeniusContext::new(algebra.clone(), ContextSpec::Gorenstein, cap)?,
            ContextFile::List { generators } => {
                let gens: Vec<Module> = generators.iter().map(|n| module(n)).collect::<Result<_>>()?;
                FrobeniusContext::new(algebra.clone(), ContextSpec::ExplicitList(gens), cap)?
            }
        };
        let mut objects = BTreeMap::new();
        for (name, o) in &spec.objects {
            let a = match o {
                ObjectSpec::Map { source, target, matrix: rows } => {
                    let (s, t) = (module(source)?, module(target)?);
                    let m = matrix(&algebra, rows, t.dim(), s.dim(), &format!("object {name:?}"))?;
                    MorE::new(&context, ModuleMap::new(&s, &t, m)?)?
                }
                ObjectSpec::Cover { of } => MorE::new(&context, module(of)?.projective_cover())?,
                ObjectSpec::ToZero { of } => MorE::to_zero(&context, &module(of)?)?,
                ObjectSpec::Identity { of } => MorE::identity_on(&context, &module(of)?)?,
            };
            objects.insert(name.clone(), a);
        }
        let mut complexes = BTreeMap::new();
        let mut active = BTreeSet::new();
        for name in spec.complexes.keys() {
            resolve_complex(name, spec, &context, &modules, &objects, &mut complexes, &mut active)?;
        }
        Ok(Workspace { algebra, context, modules, objects, complexes })
    }

    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules.get(name).ok_or_else(|| ws(format!("unknown module {name:?}")))
    }

    pub fn object(&self, name: &str) -> Result<&MorE> {
        self.objects.get(name).ok_or_else(|| ws(format!("unknown object {name:?}")))
    }

    /// A named complex, or `F(name)` for a named object.
    pub fn complex(&self, name: &str) -> Result<SplicedComplex> {
        if let Some(inner) = name.strip_prefix("F(").and_then(|s| s.strip_suffix(')')) {
            return functor_f(self.object(inner)?);
        }
        self.complexes.get(name).cloned().ok_or_else(|| ws(format!("unknown complex {name:?}")))
    }
}

fn resolve_complex(
    name: &str,
    spec: &WorkspaceSpec,
    ctx: &Arc<FrobeniusContext>,
    modules: &BTreeMap<String, Module>,
    objects: &BTreeMap<String, MorE>,
    done: &mut BTreeMap<String, SplicedComplex>,
    active: &mut BTreeSet<String>,
) -> Result<SplicedComplex> {
    if let Some(s) = done.get(name) {
        return Ok(s.clone());
    }
    let c = spec.complexes.get(name).ok_or_else(|| ws(format!("unknown complex {name:?}")))?;
    if !active.insert(name.to_string()) {
        return Err(ws(format!("complex {name:?} is defined in terms of itself")));
    }
    let module = |n: &str| modules.get(n).ok_or_else(|| ws(format!("unknown module {n:?}")));
    let s = match c {
        ComplexSpec::FunctorF { of } => functor_f(objects.get(of).ok_or_else(|| ws(format!("unknown object {of:?}")))?)?,
        ComplexSpec::Resolution { of, degree } => SplicedComplex::complete_resolution_at(ctx, module(of)?, *degree)?,
        ComplexSpec::Bounded { lo, components, differentials } => {
            let comps: Vec<Module> = components.iter().map(|n| module(n).cloned()).collect::<Result<_>>()?;
            if differentials.len() + 1 != comps.len().max(1) {
                return Err(ws(format!("complex {name:?}: {} components need {} differentials", comps.len(), comps.len().saturating_sub(1))));
            }
            let mut ds = Vec::new();
            for (i, rows) in differentials.iter().enumerate() {
                let (s, t) = (&comps[i], &comps[i + 1]);
                let m = matrix(ctx.algebra(), rows, t.dim(), s.dim(), &format!("complex {name:?}, differential {i}"))?;
                ds.push(ModuleMap::new(s, t, m)?);
            }
            SplicedComplex::bounded(ctx, &BoundedComplex::new(ctx.algebra(), *lo, comps, ds)?)?
        }
        ComplexSpec::Shift { of, by } => resolve_complex(of, spec, ctx, modules, objects, done, active)?.shift(*by),
    };
    active.remove(name);
    done.insert(name.to_string(), s.clone());
    Ok(s)
}

/// Directory holding a file, for resolving relative references.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r2_spec() -> WorkspaceSpec {
        serde_json::from_value(serde_json::json!({
            "algebra": fixtures::r2_presentation(),
            "modules": {
                "k": {"kind": "explicit", "dim": 1, "vertices": ["1"], "action": {"x": [[0]]}},
                "R": {"kind": "projective", "vertices": ["1"]},
                "k2": {"kind": "syzygy", "of": "k"}
            },
            "objects": {"a": {"kind": "map", "source": "R", "target": "k", "matrix": [[1, 0]]}},
            "complexes": {"S": {"kind": "resolution", "of": "k"}, "T": {"kind": "shift", "of": "S", "by": 1}}
        }))
        .unwrap()
    }

    #[test]
    fn loads_inline_workspace() {
        let w = Workspace::from_spec(&r2_spec(), Path::new("."), 16).unwrap();
        assert!(w.module("k2").unwrap().stable_hom(w.module("k").unwrap()).unwrap().dim == 1);
        assert_eq!(w.object("a").unwrap().x().dim(), 2);
        assert_eq!(w.complex("T").unwrap().lo(), -1);
        assert!(w.complex("F(a)").is_ok());
        assert!(w.complex("F(b)").is_err());
    }

    #[test]
    fn rejects_bad_references() {
        let mut spec = r2_spec();
        spec.modules.insert("loop".into(), ModuleSpec::Syzygy { of: "loop".into() });
        assert!(matches!(Workspace::from_spec(&spec, Path::new("."), 16), Err(Error::Workspace(_))));
        let mut spec = r2_spec();
        spec.objects.insert("b".into(), ObjectSpec::Cover { of: "nothing".into() });
        assert!(Workspace::from_spec(&spec, Path::new("."), 16).is_err());
        let bad: std::result::Result<WorkspaceSpec, _> = serde_json::from_str(r#"{"algebra": 3}"#);
        assert!(bad.is_err());
    }
}
