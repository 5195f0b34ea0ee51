//! Ext groups, Frobenius contexts, membership and cosyzygies.
//!
//! A context is either the Cohen-Macaulay modules over an Iwanaga-Gorenstein
//! algebra, or the additive closure of an explicit list of modules that is
//! closed under syzygies and cosyzygies. In both cases the projective modules
//! are exactly the projective-injective objects.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::krull_schmidt::{distinct_indecomposables, in_additive_closure_of};
use crate::linalg::Matrix;
use crate::module::{projective_resolution, quotient_basis, Module, ModuleMap};

/// Coordinates of a map out of a canonical projective: the entries of each
/// generator image at the target positions of the matching vertex.
fn generator_coordinates(f: &ModuleMap) -> Vec<u32> {
    let source = f.source();
    let alg = source.algebra();
    let mut out = Vec::new();
    let mut off = 0;
    for &v in source.projective_summands().expect("canonical projective source") {
        let block = alg.right_ideal_basis(v);
        let g = off + block.iter().position(|&c| c == alg.idempotent(v)).unwrap();
        for (i, &u) in f.target().vertices().iter().enumerate() {
            if u == v {
                out.push(f.matrix().get(i, g));
            }
        }
        off += block.len();
    }
    out
}

/// `dim Ext^i(M, N)` from a minimal projective resolution of `M`.
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    m.check_same_algebra(n)?;
    let res = projective_resolution(m, i + 1);
    let field = m.field();
    // d^k : Hom(P_k, N) → Hom(P_{k+1}, N), φ ↦ φ ∘ ∂_{k+1}
    let rank = |k: usize| -> usize {
        let pk = res[k].source();
        let boundary = &res[k + 1];
        let cols: Vec<Vec<u32>> = pk
            .hom_basis(n)
            .expect("same algebra")
            .iter()
            .map(|phi| generator_coordinates(&phi.compose(boundary)))
            .collect();
        let len = cols.first().map_or(0, Vec::len);
        Matrix::from_columns(field, len, &cols).rank()
    };
    let hom_i = res[i].source().hom_dim(n)?;
    let below = if i == 0 { 0 } else { rank(i - 1) };
    Ok(hom_i - rank(i) - below)
}

/// How a context decides membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextMode {
    /// Cohen-Macaulay modules over an algebra of Gorenstein dimension `d`.
    Gorenstein { d: usize },
    /// The additive closure of the given generators.
    ExplicitList,
}

/// Request for a context.
#[derive(Clone, Debug)]
pub enum ContextSpec {
    Gorenstein,
    ExplicitList(Vec<Module>),
}

pub struct FrobeniusContext {
    algebra: Arc<Algebra>,
    opposite: Arc<Algebra>,
    mode: ContextMode,
    generators: Vec<Module>,
    indecomposables: Vec<Module>,
    triangular: OnceLock<Arc<Algebra>>,
    triangular_context: OnceLock<Arc<FrobeniusContext>>,
}

impl fmt::Debug for FrobeniusContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrobeniusContext({:?}, algebra dim {})", self.mode, self.algebra.dim())
    }
}

/// `M ↪ P ↠ cok` with `P` a canonical projective.
#[derive(Clone, Debug)]
pub struct Cosyzygy {
    pub mono: ModuleMap,
    pub projection: ModuleMap,
}

impl Cosyzygy {
    pub fn projective(&self) -> &Module {
        self.mono.target()
    }
    pub fn cokernel(&self) -> &Module {
        self.projection.target()
    }
}

/// Minimal left approximation of `m` by canonical projectives: a basis of
/// `Hom(M, A)` modulo its radical part, stacked into `M → ⊕ e_v A`.
pub fn left_projective_approximation(m: &Module) -> ModuleMap {
    if m.projective_summands().is_some() {
        return ModuleMap::identity(m);
    }
    let alg = m.algebra();
    let field = m.field();
    let nv = alg.num_vertices();
    let ideals: Vec<Module> = (0..nv).map(|v| Module::projective(alg, &[v])).collect();
    let homs: Vec<Vec<ModuleMap>> = ideals.iter().map(|p| m.hom_basis(p).expect("same algebra")).collect();
    let mut summands = Vec::new();
    let mut chosen: Vec<&ModuleMap> = Vec::new();
    for v in 0..nv {
        // radical part: g·φ with g a radical generator from e_u A into e_v A
        let mut radical = Vec::new();
        for &g in alg.generators() {
            if alg.left_vertex(g) != v {
                continue;
            }
            let u = alg.right_vertex(g);
            let lm = left_mult_between(alg, g, u, v, field);
            for phi in &homs[u] {
                radical.push(lm.mul(phi.matrix()).data().to_vec());
            }
        }
        let all: Vec<Vec<u32>> = homs[v].iter().map(|h| h.matrix().data().to_vec()).collect();
        for k in quotient_basis(field, &radical, &all) {
            summands.push(v);
            chosen.push(&homs[v][k]);
        }
    }
    let target = Module::projective(alg, &summands);
    let blocks: Vec<Matrix> = chosen.iter().map(|h| h.matrix().clone()).collect();
    let mut matrix = Matrix::zeros(field, 0, m.dim());
    for b in blocks {
        matrix = matrix.vstack(&b);
    }
    ModuleMap::new(m, &target, matrix).expect("stacked maps into projectives form a module map")
}

/// Matrix of `c ↦ g c` from `e_u A` to `e_v A` in their path bases.
fn left_mult_between(alg: &Algebra, g: usize, u: usize, v: usize, field: crate::linalg::Fp) -> Matrix {
    let src = alg.right_ideal_basis(u);
    let dst = alg.right_ideal_basis(v);
    let mut m = Matrix::zeros(field, dst.len(), src.len());
    for (j, &c) in src.iter().enumerate() {
        for &(k, s) in alg.product(g, c) {
            let i = dst.iter().position(|&x| x == k).expect("left multiplication stays in e_v A");
            m.set(i, j, s);
        }
    }
    m
}

impl FrobeniusContext {
    pub fn new(algebra: Arc<Algebra>, spec: ContextSpec, cap: usize) -> Result<Arc<FrobeniusContext>> {
        let opposite = Arc::new(algebra.opposite());
        let ctx = match spec {
            ContextSpec::Gorenstein => {
                let (ok, d) = algebra.is_iwanaga_gorenstein(cap);
                if !ok {
                    return Err(Error::NotGorenstein { cap });
                }
                FrobeniusContext {
                    algebra,
                    opposite,
                    mode: ContextMode::Gorenstein { d },
                    generators: Vec::new(),
                    indecomposables: Vec::new(),
                    triangular: OnceLock::new(),
                    triangular_context: OnceLock::new(),
                }
            }
            ContextSpec::ExplicitList(generators) => {
                for g in &generators {
                    if !crate::module::same_algebra(g.algebra(), &algebra) {
                        return Err(Error::AlgebraMismatch);
                    }
                }
                let indecomposables = distinct_indecomposables(&generators)?;
                let ctx = FrobeniusContext {
                    algebra,
                    opposite,
                    mode: ContextMode::ExplicitList,
                    generators,
                    indecomposables,
                    triangular: OnceLock::new(),
                    triangular_context: OnceLock::new(),
                };
                ctx.check_closure()?;
                ctx
            }
        };
        Ok(Arc::new(ctx))
    }

    fn check_closure(&self) -> Result<()> {
        for v in 0..self.algebra.num_vertices() {
            let p = Module::indecomposable_projective(&self.algebra, v);
            if !in_additive_closure_of(&p, &self.indecomposables)? {
                return Err(Error::NotFrobeniusClosed {
                    generator: format!("e_{}A", self.algebra.vertices()[v]),
                    witness: "projective is not in the additive closure".into(),
                });
            }
        }
        for (k, g) in self.generators.iter().enumerate() {
            let name = format!("generator {k} (dimension vector {:?})", g.dimension_vector());
            let (omega, _) = g.syzygy();
            if !in_additive_closure_of(&omega, &self.indecomposables)? {
                return Err(Error::NotFrobeniusClosed {
                    generator: name,
                    witness: format!("syzygy with dimension vector {:?} is outside the closure", omega.dimension_vector()),
                });
            }
            let approx = left_projective_approximation(g);
            if !approx.is_injective() {
                return Err(Error::NotFrobeniusClosed { generator: name, witness: "no monomorphism into a projective".into() });
            }
            let (cok, _) = approx.cokernel();
            if !in_additive_closure_of(&cok, &self.indecomposables)? {
                return Err(Error::NotFrobeniusClosed {
                    generator: name,
                    witness: format!("cosyzygy with dimension vector {:?} is outside the closure", cok.dimension_vector()),
                });
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn opposite(&self) -> &Arc<Algebra> {
        &self.opposite
    }

    pub fn mode(&self) -> &ContextMode {
        &self.mode
    }

    pub fn generators(&self) -> &[Module] {
        &self.generators
    }

    /// Indecomposable summands of the generators, one per isomorphism class.
    pub fn indecomposables(&self) -> &[Module] {
        &self.indecomposables
    }

    pub fn gorenstein_dimension(&self) -> Option<usize> {
        match self.mode {
            ContextMode::Gorenstein { d } => Some(d),
            ContextMode::ExplicitList => None,
        }
    }

    /// `T_2(A)`, built once per context.
    pub fn triangular(&self) -> Arc<Algebra> {
        self.triangular.get_or_init(|| Arc::new(self.algebra.triangular2())).clone()
    }

    /// The Cohen-Macaulay context of `T_2(A)`; Gorenstein mode only.
    pub fn triangular_context(&self, cap: usize) -> Result<Arc<FrobeniusContext>> {
        if self.gorenstein_dimension().is_none() {
            return Err(Error::NotGorensteinContext);
        }
        if let Some(c) = self.triangular_context.get() {
            return Ok(c.clone());
        }
        let c = FrobeniusContext::new(self.triangular(), ContextSpec::Gorenstein, cap)?;
        Ok(self.triangular_context.get_or_init(|| c).clone())
    }

    pub fn is_member(&self, m: &Module) -> Result<bool> {
        if !crate::module::same_algebra(m.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if m.is_projective() {
            return Ok(true);
        }
        match self.mode {
            // idim A = d, so Ext^i(M, A) vanishes automatically beyond d
            ContextMode::Gorenstein { d } => {
                let regular = Module::regular(&self.algebra);
                for i in 1..=d {
                    if ext_dim(m, &regular, i)? != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            ContextMode::ExplicitList => in_additive_closure_of(m, &self.indecomposables),
        }
    }

    pub fn require_member(&self, m: &Module, what: &str) -> Result<()> {
        if self.is_member(m)? {
            Ok(())
        } else {
            Err(Error::NotMember(format!("{what} with dimension vector {:?}", m.dimension_vector())))
        }
    }

    /// `0 → M → P → ΣM → 0` with `P` the minimal projective approximation.
    /// Canonical projectives map identically onto themselves.
    pub fn cosyzygy(&self, m: &Module) -> Result<Cosyzygy> {
        let mono = left_projective_approximation(m);
        if !mono.is_injective() {
            return Err(Error::NoAdmissibleMono { dim: m.dim() });
        }
        let (_, projection) = mono.cokernel();
        Ok(Cosyzygy { mono, projection })
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<FrobeniusContext>) -> bool {
        Arc::ptr_eq(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::krull_schmidt::is_isomorphic;

    #[test]
    fn ext_examples() {
        let r2 = fixtures::r2();
        let k = fixtures::r2_k();
        assert_eq!(ext_dim(&k, &k, 1).unwrap(), 1);
        assert_eq!(ext_dim(&k, &k, 0).unwrap(), k.hom_dim(&k).unwrap());
        let p = Module::regular(&r2);
        for i in 1..4 {
            assert_eq!(ext_dim(&p, &k, i).unwrap(), 0);
        }
    }

    #[test]
    fn contexts() {
        let ctx = FrobeniusContext::new(fixtures::r2(), ContextSpec::Gorenstein, 8).unwrap();
        assert_eq!(ctx.gorenstein_dimension(), Some(0));
        assert!(ctx.is_member(&fixtures::r2_k()).unwrap());

        let list_ctx = FrobeniusContext::new(fixtures::a9(), ContextSpec::ExplicitList(fixtures::a9_list_generators()), 8).unwrap();
        assert!(!list_ctx.is_member(&Module::simple(&fixtures::a9(), 1)).unwrap());
        assert!(list_ctx.is_member(&fixtures::a9_m2()).unwrap());

        let mut partial = fixtures::a9_list_generators();
        partial.pop();
        let err = FrobeniusContext::new(fixtures::a9(), ContextSpec::ExplicitList(partial), 8).unwrap_err();
        assert!(matches!(err, Error::NotFrobeniusClosed { .. }));
    }

    #[test]
    fn cosyzygy_examples() {
        let ctx = FrobeniusContext::new(fixtures::r2(), ContextSpec::Gorenstein, 8).unwrap();
        let c = ctx.cosyzygy(&fixtures::r2_k()).unwrap();
        assert_eq!(c.projective().dim(), 2);
        assert_eq!(c.cokernel().dim(), 1);
        let p = Module::regular(&fixtures::r2());
        let c = ctx.cosyzygy(&p).unwrap();
        assert!(c.mono.matrix().is_identity());
        assert!(c.cokernel().is_zero());

        let list_ctx = FrobeniusContext::new(fixtures::a9(), ContextSpec::ExplicitList(fixtures::a9_list_generators()), 8).unwrap();
        let c = list_ctx.cosyzygy(&fixtures::a9_m2()).unwrap();
        assert!(is_isomorphic(c.cokernel(), &fixtures::a9_m1()).unwrap());
    }

    #[test]
    fn t6_membership() {
        let ctx = FrobeniusContext::new(fixtures::t6(), ContextSpec::Gorenstein, 8).unwrap();
        assert_eq!(ctx.gorenstein_dimension(), Some(1));
        // the simple at the first vertex corresponds to the non-injective map k → 0
        let t6 = fixtures::t6();
        assert!(!ctx.is_member(&Module::simple(&t6, 0)).unwrap());
    }
}
