//! Morphism categories of a Frobenius context: epimorphisms `X ↠ T` and
//! monomorphisms `Z ↪ X` between members, their stable categories, and the
//! equivalence with modules over the triangular algebra.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::frobenius::{ContextMode, FrobeniusContext};
use crate::krull_schmidt::{all_vectors, is_isomorphic, SEARCH_BUDGET};
use crate::linalg::Matrix;
use crate::module::{combine, quotient_basis, solve_combination, Module, ModuleMap};

/// An admissible epimorphism `alpha: X ↠ T` between members.
#[derive(Clone)]
pub struct MorE {
    ctx: Arc<FrobeniusContext>,
    alpha: ModuleMap,
}

impl fmt::Debug for MorE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorE({:?} ↠ {:?})", self.x().dimension_vector(), self.t().dimension_vector())
    }
}

/// An admissible monomorphism `alpha: Z ↪ X` with members `Z`, `X`, `cok alpha`.
#[derive(Clone)]
pub struct MorM {
    ctx: Arc<FrobeniusContext>,
    alpha: ModuleMap,
}

impl fmt::Debug for MorM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorM({:?} ↪ {:?})", self.z().dimension_vector(), self.x().dimension_vector())
    }
}

/// A commutative square `(fx, ft)` from `a` to `b`: `ft ∘ α_a = α_b ∘ fx`.
#[derive(Clone, Debug)]
pub struct MorMap {
    source: MorE,
    target: MorE,
    fx: ModuleMap,
    ft: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct MorStableHom {
    pub dim: usize,
    pub representatives: Vec<MorMap>,
}

/// `a ↪ q ↠ Σa` with `q` a projective object.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub q: MorE,
    pub embed: MorMap,
    pub projection: MorMap,
    pub sigma: MorE,
}

/// The three triangles splitting an object along the three subcategories.
#[derive(Clone, Debug)]
pub struct DecompositionTriangles {
    /// `(Ker α → 0) → a → (T = T)`
    pub kernel_part: (MorE, MorMap, MorE, MorMap),
    /// `(P(X) → T) → a → (X → 0)`
    pub cover_part: (MorE, MorMap, MorE, MorMap),
    /// `(X = X) → a → (P ↠ M)` with `M` the pushout of `T ← X ↪ P`
    pub pushout_part: (MorE, MorMap, MorE, MorMap),
}

/// Membership in the three subcategories, each closed under stable isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MorClasses {
    /// stably `X → 0`
    pub mor10: bool,
    /// stably `T = T`
    pub mor11: bool,
    /// stably `P ↠ T` with `P` projective
    pub mor01: bool,
}

fn flatten(fx: &ModuleMap, ft: &ModuleMap) -> Vec<u32> {
    let mut v = fx.matrix().data().to_vec();
    v.extend_from_slice(ft.matrix().data());
    v
}

/// Basis of commutative squares from the arrow `a` to the arrow `b`.
fn square_basis(a: &ModuleMap, b: &ModuleMap) -> Result<Vec<(ModuleMap, ModuleMap)>> {
    let field = a.source().field();
    let us = a.source().hom_basis(b.source())?;
    let vs = a.target().hom_basis(b.target())?;
    let len = b.target().dim() * a.source().dim();
    let mut columns = Vec::with_capacity(us.len() + vs.len());
    for u in &us {
        columns.push(b.compose(u).neg().matrix().data().to_vec());
    }
    for v in &vs {
        columns.push(v.compose(a).matrix().data().to_vec());
    }
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    let system = Matrix::from_columns(field, len, &columns);
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|c| {
            let fx = combine(a.source(), b.source(), &us, &c[..us.len()]);
            let ft = combine(a.target(), b.target(), &vs, &c[us.len()..]);
            (fx, ft)
        })
        .collect())
}

/// The arrow `Z → X` as a module over `T_2(A)`: `(z, x)·[a b; 0 c] = (za, α(z)b + xc)`.
pub fn arrow_to_t2(t2: &Arc<Algebra>, alpha: &ModuleMap) -> Module {
    let z = alpha.source();
    let x = alpha.target();
    let alg = z.algebra();
    let d = alg.dim();
    let nv = alg.num_vertices();
    let field = alg.field();
    let n = z.dim() + x.dim();
    let mut action = Vec::with_capacity(3 * d);
    for b in 0..d {
        let mut m = Matrix::zeros(field, n, n);
        m.paste(0, 0, z.action(b));
        action.push(m);
    }
    for b in 0..d {
        let mut m = Matrix::zeros(field, n, n);
        m.paste(z.dim(), 0, &x.action(b).mul(alpha.matrix()));
        action.push(m);
    }
    for b in 0..d {
        let mut m = Matrix::zeros(field, n, n);
        m.paste(z.dim(), z.dim(), x.action(b));
        action.push(m);
    }
    let mut vertex: Vec<usize> = z.vertices().to_vec();
    vertex.extend(x.vertices().iter().map(|&v| nv + v));
    Module::from_action_unchecked(t2.clone(), action, vertex)
}

/// Splits a `T_2(A)`-module into `M·E11 → M·E22`, the arrow given by `E12`.
pub fn arrow_from_t2(base: &Arc<Algebra>, m: &Module) -> Result<ModuleMap> {
    let d = base.dim();
    let nv = base.num_vertices();
    if m.algebra().dim() != 3 * d || m.algebra().num_vertices() != 2 * nv {
        return Err(Error::AlgebraMismatch);
    }
    let zi: Vec<usize> = (0..m.dim()).filter(|&i| m.vertices()[i] < nv).collect();
    let xi: Vec<usize> = (0..m.dim()).filter(|&i| m.vertices()[i] >= nv).collect();
    let z_action = (0..d).map(|b| m.action(b).select(&zi, &zi)).collect();
    let x_action = (0..d).map(|b| m.action(2 * d + b).select(&xi, &xi)).collect();
    let z = Module::from_action(base.clone(), zi.len(), z_action)?;
    let x = Module::from_action(base.clone(), xi.len(), x_action)?;
    let mut e12 = Matrix::zeros(base.field(), m.dim(), m.dim());
    for &e in base.idempotents() {
        e12 = e12.add(m.action(d + e));
    }
    ModuleMap::new(&z, &x, e12.select(&xi, &zi))
}

/// Whether two arrows are isomorphic as objects of the morphism category.
pub fn arrows_isomorphic(t2: &Arc<Algebra>, a: &ModuleMap, b: &ModuleMap) -> Result<bool> {
    is_isomorphic(&arrow_to_t2(t2, a), &arrow_to_t2(t2, b))
}

impl MorE {
    pub fn new(ctx: &Arc<FrobeniusContext>, alpha: ModuleMap) -> Result<MorE> {
        if !crate::module::same_algebra(alpha.source().algebra(), ctx.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if !alpha.is_surjective() {
            return Err(Error::NotSurjective);
        }
        ctx.require_member(alpha.source(), "source X")?;
        ctx.require_member(alpha.target(), "target T")?;
        ctx.require_member(&alpha.kernel().0, "kernel of the epimorphism")?;
        Ok(MorE { ctx: ctx.clone(), alpha })
    }

    fn new_unchecked(ctx: &Arc<FrobeniusContext>, alpha: ModuleMap) -> MorE {
        debug_assert!(alpha.is_surjective());
        MorE { ctx: ctx.clone(), alpha }
    }

    /// `X → 0`.
    pub fn to_zero(ctx: &Arc<FrobeniusContext>, x: &Module) -> Result<MorE> {
        let zero = Module::zero(ctx.algebra());
        MorE::new(ctx, ModuleMap::zero(x, &zero))
    }

    /// `T = T`.
    pub fn identity_on(ctx: &Arc<FrobeniusContext>, t: &Module) -> Result<MorE> {
        MorE::new(ctx, ModuleMap::identity(t))
    }

    pub fn context(&self) -> &Arc<FrobeniusContext> {
        &self.ctx
    }

    pub fn x(&self) -> &Module {
        self.alpha.source()
    }

    pub fn t(&self) -> &Module {
        self.alpha.target()
    }

    pub fn alpha(&self) -> &ModuleMap {
        &self.alpha
    }

    fn check_context(&self, other: &MorE) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn direct_sum(&self, other: &MorE) -> Result<MorE> {
        self.check_context(other)?;
        let alg = self.ctx.algebra();
        let (x, _, _) = Module::direct_sum(alg, &[self.x().clone(), other.x().clone()]);
        let (t, _, _) = Module::direct_sum(alg, &[self.t().clone(), other.t().clone()]);
        let m = self.alpha.matrix().block_diag(other.alpha.matrix());
        Ok(MorE::new_unchecked(&self.ctx, ModuleMap::new(&x, &t, m)?))
    }

    /// `(Ker α ↪ X)`.
    pub fn kernel_mono(&self) -> MorM {
        let (_, incl) = self.alpha.kernel();
        MorM { ctx: self.ctx.clone(), alpha: incl }
    }

    pub fn hom_basis(&self, other: &MorE) -> Result<Vec<MorMap>> {
        self.check_context(other)?;
        Ok(square_basis(&self.alpha, &other.alpha)?
            .into_iter()
            .map(|(fx, ft)| MorMap { source: self.clone(), target: other.clone(), fx, ft })
            .collect())
    }

    /// `(P(K) ⊕ P(T) → P(T), (0, 1)) ↠ a` with `K = Ker α`: the projective
    /// cover in the morphism category.
    pub fn projective_cover(&self) -> MorMap {
        let alg = self.ctx.algebra();
        let field = alg.field();
        let (_, incl_k) = self.alpha.kernel();
        let rho_k = incl_k.source().projective_cover();
        let rho_t = self.t().projective_cover();
        let h = rho_t.lift_through(&self.alpha).expect("covers of the target lift through an epimorphism");
        let (pk, pt) = (rho_k.source().clone(), rho_t.source().clone());
        let (px, _, _) = Module::direct_sum(alg, &[pk.clone(), pt.clone()]);
        let mut map = Matrix::zeros(field, pt.dim(), px.dim());
        map.paste(0, pk.dim(), &Matrix::identity(field, pt.dim()));
        let cover_obj = MorE::new_unchecked(&self.ctx, ModuleMap::new_unchecked(px.clone(), pt.clone(), map));
        let fx = ModuleMap::new_unchecked(px, self.x().clone(), incl_k.compose(&rho_k).matrix().hstack(h.matrix()));
        MorMap { source: cover_obj, target: self.clone(), fx, ft: rho_t }
    }

    fn factoring_vectors(&self, other: &MorE) -> Result<Vec<Vec<u32>>> {
        let cover = other.projective_cover();
        Ok(self.hom_basis(cover.source())?.iter().map(|g| cover.compose(g).flat()).collect())
    }

    /// Hom modulo maps factoring through projective objects.
    pub fn stable_hom(&self, other: &MorE) -> Result<MorStableHom> {
        let all = self.hom_basis(other)?;
        let sub = self.factoring_vectors(other)?;
        let vectors: Vec<Vec<u32>> = all.iter().map(MorMap::flat).collect();
        let keep = quotient_basis(self.ctx.algebra().field(), &sub, &vectors);
        Ok(MorStableHom { dim: keep.len(), representatives: keep.into_iter().map(|k| all[k].clone()).collect() })
    }

    /// Whether the identity factors through a projective object.
    pub fn is_stably_trivial(&self) -> bool {
        let cover = self.projective_cover();
        let id = MorMap::identity(self);
        let Ok(basis) = self.hom_basis(cover.source()) else {
            return false;
        };
        let vectors: Vec<Vec<u32>> = basis.iter().map(|g| cover.compose(g).flat()).collect();
        solve_combination(self.ctx.algebra().field(), id.flat().len(), &vectors, &id.flat()).is_some()
    }

    /// A stable isomorphism `self → other`, if one exists: candidates `f` run
    /// over the stable Hom space, and an inverse is solved for linearly.
    pub fn stable_isomorphism(&self, other: &MorE) -> Result<Option<MorMap>> {
        self.check_context(other)?;
        let field = self.ctx.algebra().field();
        let (triv_a, triv_b) = (self.is_stably_trivial(), other.is_stably_trivial());
        if triv_a || triv_b {
            return Ok((triv_a && triv_b).then(|| MorMap::zero(self, other)));
        }
        let forward = self.stable_hom(other)?;
        if forward.dim == 0 || self.stable_hom(self)?.dim != other.stable_hom(other)?.dim {
            return Ok(None);
        }
        let backward = other.hom_basis(self)?;
        let sub_a = self.factoring_vectors(self)?;
        let sub_b = other.factoring_vectors(other)?;
        let (id_a, id_b) = (MorMap::identity(self).flat(), MorMap::identity(other).flat());
        let Some(coeffs) = all_vectors(field.p(), forward.dim, SEARCH_BUDGET) else {
            return Err(Error::FieldTooSmallForSplit { dim: forward.dim });
        };
        for c in coeffs.into_iter().skip(1) {
            let mut f = MorMap::zero(self, other);
            for (r, &k) in forward.representatives.iter().zip(&c) {
                if k != 0 {
                    f = f.add(&r.scale(k));
                }
            }
            // unknowns: g-coefficients, then the two factoring corrections
            let (la, lb) = (id_a.len(), id_b.len());
            let mut columns = Vec::new();
            for g in &backward {
                let mut col = g.compose(&f).flat();
                col.extend(f.compose(g).flat());
                columns.push(col);
            }
            for s in &sub_a {
                let mut col = s.clone();
                col.extend(std::iter::repeat_n(0, lb));
                columns.push(col);
            }
            for s in &sub_b {
                let mut col = vec![0; la];
                col.extend_from_slice(s);
                columns.push(col);
            }
            let mut rhs = id_a.clone();
            rhs.extend_from_slice(&id_b);
            if solve_combination(field, la + lb, &columns, &rhs).is_some() {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    pub fn is_stably_isomorphic(&self, other: &MorE) -> Result<bool> {
        Ok(self.stable_isomorphism(other)?.is_some())
    }

    /// `0 → a → q → Σa → 0` with `q = (P ⊕ Q ↠ Q)` built from the cosyzygies
    /// `s: X ↪ P`, `t: T ↪ Q`, embedding `((s, tα), t)`.
    pub fn suspension(&self) -> Result<Suspension> {
        let alg = self.ctx.algebra();
        let field = alg.field();
        let cx = self.ctx.cosyzygy(self.x())?;
        let ct = self.ctx.cosyzygy(self.t())?;
        let (p, q) = (cx.projective().clone(), ct.projective().clone());
        let (pq, _, _) = Module::direct_sum(alg, &[p.clone(), q.clone()]);
        let mut to_q = Matrix::zeros(field, q.dim(), pq.dim());
        to_q.paste(0, p.dim(), &Matrix::identity(field, q.dim()));
        let to_q = ModuleMap::new_unchecked(pq.clone(), q.clone(), to_q);
        let q_obj = MorE::new(&self.ctx, to_q.clone())?;
        let ex = ModuleMap::new_unchecked(self.x().clone(), pq.clone(), cx.mono.matrix().vstack(ct.mono.compose(&self.alpha).matrix()));
        let embed = MorMap::new(self, &q_obj, ex.clone(), ct.mono.clone())?;
        let (_, px) = ex.cokernel();
        let pt = ct.projection.clone();
        let section = px.matrix().right_inverse().expect("cokernel projection is onto");
        let induced = pt.compose(&to_q).matrix().mul(&section);
        let sigma = MorE::new(&self.ctx, ModuleMap::new(px.target(), pt.target(), induced)?)?;
        let projection = MorMap::new(&q_obj, &sigma, px, pt)?;
        Ok(Suspension { q: q_obj, embed, projection, sigma })
    }

    /// `Σ⁻¹a`: the kernel of the projective cover.
    pub fn cosuspension(&self) -> Result<MorE> {
        let cover = self.projective_cover();
        let (kx, ix) = cover.fx.kernel();
        let (kt, it) = cover.ft.kernel();
        let inv = it.matrix().left_inverse().expect("kernel inclusion is injective");
        let m = inv.mul(cover.source().alpha.matrix()).mul(ix.matrix());
        MorE::new(&self.ctx, ModuleMap::new(&kx, &kt, m)?)
    }

    pub fn decomposition_triangles(&self) -> Result<DecompositionTriangles> {
        let ctx = &self.ctx;
        let alg = ctx.algebra();
        let field = alg.field();
        let zero = Module::zero(alg);

        let (k, incl) = self.alpha.kernel();
        let k_obj = MorE::to_zero(ctx, &k)?;
        let t_obj = MorE::identity_on(ctx, self.t())?;
        let into = MorMap::new(&k_obj, self, incl, ModuleMap::zero(&zero, self.t()))?;
        let onto = MorMap::new(self, &t_obj, self.alpha.clone(), ModuleMap::identity(self.t()))?;
        let kernel_part = (k_obj, into, t_obj, onto);

        let rho = self.x().projective_cover();
        let sigma = MorE::new(ctx, self.alpha.compose(&rho))?;
        let x_obj = MorE::to_zero(ctx, self.x())?;
        let into = MorMap::new(&sigma, self, rho, ModuleMap::identity(self.t()))?;
        let onto = MorMap::new(self, &x_obj, ModuleMap::identity(self.x()), ModuleMap::zero(self.t(), &zero))?;
        let cover_part = (sigma, into, x_obj, onto);

        // M = (T ⊕ P) / {(αx, -sx)}
        let s = ctx.cosyzygy(self.x())?.mono;
        let p = s.target().clone();
        let (tp, _, _) = Module::direct_sum(alg, &[self.t().clone(), p.clone()]);
        let relation = self.alpha.matrix().vstack(&s.matrix().neg());
        let (m, proj) = tp.quotient(&relation.columns());
        let from_p = {
            let mut e = Matrix::zeros(field, tp.dim(), p.dim());
            e.paste(self.t().dim(), 0, &Matrix::identity(field, p.dim()));
            proj.matrix().mul(&e)
        };
        let from_t = {
            let mut e = Matrix::zeros(field, tp.dim(), self.t().dim());
            e.paste(0, 0, &Matrix::identity(field, self.t().dim()));
            proj.matrix().mul(&e)
        };
        let tau = MorE::new(ctx, ModuleMap::new(&p, &m, from_p)?)?;
        let x_id = MorE::identity_on(ctx, self.x())?;
        let into = MorMap::new(&x_id, self, ModuleMap::identity(self.x()), self.alpha.clone())?;
        let onto = MorMap::new(self, &tau, s, ModuleMap::new(self.t(), &m, from_t)?)?;
        let pushout_part = (x_id, into, tau, onto);

        Ok(DecompositionTriangles { kernel_part, cover_part, pushout_part })
    }

    /// Reads off the three classes from the outer terms of the triangles:
    /// `(T = T)`, `(Ker α → 0)`, `(X → 0)` are stably trivial exactly when
    /// `T`, `Ker α`, `X` are projective.
    pub fn classify(&self) -> MorClasses {
        MorClasses {
            mor10: self.t().is_projective(),
            mor11: self.alpha.kernel().0.is_projective(),
            mor01: self.x().is_projective(),
        }
    }
}

impl MorM {
    pub fn new(ctx: &Arc<FrobeniusContext>, alpha: ModuleMap) -> Result<MorM> {
        if !crate::module::same_algebra(alpha.source().algebra(), ctx.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if !alpha.is_injective() {
            return Err(Error::NotInjective);
        }
        ctx.require_member(alpha.source(), "source Z")?;
        ctx.require_member(alpha.target(), "target X")?;
        ctx.require_member(&alpha.cokernel().0, "cokernel of the monomorphism")?;
        Ok(MorM { ctx: ctx.clone(), alpha })
    }

    pub fn z(&self) -> &Module {
        self.alpha.source()
    }

    pub fn x(&self) -> &Module {
        self.alpha.target()
    }

    pub fn alpha(&self) -> &ModuleMap {
        &self.alpha
    }

    /// `(X ↠ Cok α)`.
    pub fn cokernel_epi(&self) -> MorE {
        let (_, proj) = self.alpha.cokernel();
        MorE { ctx: self.ctx.clone(), alpha: proj }
    }

    /// The module over `T_2(A)`; needs a Gorenstein context.
    pub fn to_t2(&self) -> Result<Module> {
        if !matches!(self.ctx.mode(), ContextMode::Gorenstein { .. }) {
            return Err(Error::NotGorensteinContext);
        }
        Ok(arrow_to_t2(&self.ctx.triangular(), &self.alpha))
    }

    /// Validates the arrow read off a `T_2(A)`-module as a monomorphism object.
    pub fn from_t2(ctx: &Arc<FrobeniusContext>, m: &Module) -> Result<MorM> {
        if !matches!(ctx.mode(), ContextMode::Gorenstein { .. }) {
            return Err(Error::NotGorensteinContext);
        }
        MorM::new(ctx, arrow_from_t2(ctx.algebra(), m)?)
    }

    pub fn is_isomorphic(&self, other: &MorM) -> Result<bool> {
        arrows_isomorphic(&self.ctx.triangular(), &self.alpha, &other.alpha)
    }
}

impl MorMap {
    pub fn new(source: &MorE, target: &MorE, fx: ModuleMap, ft: ModuleMap) -> Result<MorMap> {
        source.check_context(target)?;
        let fx = ModuleMap::new(source.x(), target.x(), fx.matrix().clone())?;
        let ft = ModuleMap::new(source.t(), target.t(), ft.matrix().clone())?;
        if ft.compose(&source.alpha).matrix() != target.alpha.compose(&fx).matrix() {
            return Err(Error::NotAModuleMap("square does not commute".into()));
        }
        Ok(MorMap { source: source.clone(), target: target.clone(), fx, ft })
    }

    pub fn identity(a: &MorE) -> MorMap {
        MorMap { source: a.clone(), target: a.clone(), fx: ModuleMap::identity(a.x()), ft: ModuleMap::identity(a.t()) }
    }

    pub fn zero(a: &MorE, b: &MorE) -> MorMap {
        MorMap { source: a.clone(), target: b.clone(), fx: ModuleMap::zero(a.x(), b.x()), ft: ModuleMap::zero(a.t(), b.t()) }
    }

    pub fn source(&self) -> &MorE {
        &self.source
    }

    pub fn target(&self) -> &MorE {
        &self.target
    }

    pub fn fx(&self) -> &ModuleMap {
        &self.fx
    }

    pub fn ft(&self) -> &ModuleMap {
        &self.ft
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MorMap) -> MorMap {
        MorMap { source: other.source.clone(), target: self.target.clone(), fx: self.fx.compose(&other.fx), ft: self.ft.compose(&other.ft) }
    }

    pub fn add(&self, other: &MorMap) -> MorMap {
        MorMap { source: self.source.clone(), target: self.target.clone(), fx: self.fx.add(&other.fx), ft: self.ft.add(&other.ft) }
    }

    pub fn scale(&self, c: u32) -> MorMap {
        MorMap { source: self.source.clone(), target: self.target.clone(), fx: self.fx.scale(c), ft: self.ft.scale(c) }
    }

    fn flat(&self) -> Vec<u32> {
        flatten(&self.fx, &self.ft)
    }

    /// Whether the map factors through a projective object.
    pub fn is_stably_zero(&self) -> Result<bool> {
        let sub = self.source.factoring_vectors(&self.target)?;
        let v = self.flat();
        Ok(solve_combination(self.source.ctx.algebra().field(), v.len(), &sub, &v).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frobenius::ContextSpec;

    fn r2_ctx() -> Arc<FrobeniusContext> {
        FrobeniusContext::new(fixtures::r2(), ContextSpec::Gorenstein, 16).unwrap()
    }

    fn r2_onto_k(ctx: &Arc<FrobeniusContext>) -> MorE {
        let r = Module::regular(ctx.algebra());
        let k = fixtures::r2_k();
        let cover = k.projective_cover();
        MorE::new(ctx, cover.with_ends(&r, &k)).unwrap()
    }

    #[test]
    fn objects_and_homs() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let k0 = MorE::to_zero(&ctx, &k).unwrap();
        assert_eq!(k0.hom_basis(&k0).unwrap().len(), 1);
        assert_eq!(k0.stable_hom(&k0).unwrap().dim, 1);
        let r = Module::regular(ctx.algebra());
        let rr = MorE::identity_on(&ctx, &r).unwrap();
        assert!(rr.is_stably_trivial());
        assert!(MorE::to_zero(&ctx, &r).unwrap().is_stably_trivial());
        for m in k0.hom_basis(&rr).unwrap() {
            assert!(m.fx().is_zero());
        }
        let a = r2_onto_k(&ctx);
        assert!(!a.is_stably_trivial());
        assert_eq!(a.stable_hom(&a).unwrap().dim, 1);
        assert_eq!(a.stable_hom(&rr).unwrap().dim, 0);
        assert!(MorE::new(&ctx, ModuleMap::zero(&k, &k)).is_err());
    }

    #[test]
    fn classification() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let k0 = MorE::to_zero(&ctx, &k).unwrap().classify();
        assert_eq!(k0, MorClasses { mor10: true, mor11: false, mor01: false });
        let kk = MorE::identity_on(&ctx, &k).unwrap().classify();
        assert_eq!(kk, MorClasses { mor10: false, mor11: true, mor01: false });
        assert_eq!(r2_onto_k(&ctx).classify(), MorClasses { mor10: false, mor11: false, mor01: true });
    }

    #[test]
    fn suspension_preserves_stable_homs() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let objs = [MorE::to_zero(&ctx, &k).unwrap(), MorE::identity_on(&ctx, &k).unwrap(), r2_onto_k(&ctx)];
        for a in &objs {
            let s = a.suspension().unwrap();
            assert!(s.q.is_stably_trivial());
            assert!(s.embed.fx().is_injective() && s.embed.ft().is_injective());
            let back = s.sigma.cosuspension().unwrap();
            assert!(back.is_stably_isomorphic(a).unwrap());
            for b in &objs {
                let sb = b.suspension().unwrap().sigma;
                assert_eq!(a.stable_hom(b).unwrap().dim, s.sigma.stable_hom(&sb).unwrap().dim);
            }
        }
        let kk = MorE::identity_on(&ctx, &k).unwrap();
        let sk = ctx.cosyzygy(&k).unwrap().cokernel().clone();
        let skk = MorE::identity_on(&ctx, &sk).unwrap();
        assert!(kk.suspension().unwrap().sigma.is_stably_isomorphic(&skk).unwrap());
    }

    #[test]
    fn triangles_land_in_their_classes() {
        let ctx = r2_ctx();
        let a = r2_onto_k(&ctx);
        let t = a.decomposition_triangles().unwrap();
        assert!(t.kernel_part.0.classify().mor10);
        assert!(t.kernel_part.2.classify().mor11);
        assert!(t.cover_part.0.classify().mor01);
        assert!(t.cover_part.2.classify().mor10);
        assert!(t.pushout_part.0.classify().mor11);
        assert!(t.pushout_part.2.classify().mor01);
        assert!(t.cover_part.2.is_stably_trivial());
    }

    #[test]
    fn kernels_cokernels_and_t2() {
        let ctx = r2_ctx();
        let r2 = ctx.algebra().clone();
        let a = r2_onto_k(&ctx);
        let m = a.kernel_mono();
        assert_eq!((m.z().dim(), m.x().dim()), (1, 2));
        let back = m.cokernel_epi();
        assert!(back.stable_isomorphism(&a).unwrap().is_some());
        let t2 = m.to_t2().unwrap();
        assert_eq!(t2.dim(), 3);
        assert!(!t2.is_projective());
        let tctx = ctx.triangular_context(16).unwrap();
        assert!(tctx.is_member(&t2).unwrap());
        let again = MorM::from_t2(&ctx, &t2).unwrap();
        assert!(again.is_isomorphic(&m).unwrap());
        let r = Module::regular(&r2);
        let zero = Module::zero(&r2);
        let p = MorM::new(&ctx, ModuleMap::zero(&zero, &r)).unwrap().to_t2().unwrap();
        assert!(p.is_projective() && p.dim() == 2);
        let id = MorM::new(&ctx, ModuleMap::identity(&r)).unwrap().to_t2().unwrap();
        assert!(id.is_projective() && id.dim() == 4);
    }
}
