//! Complexes of projectives with bounded homology, stored as a finite window
//! plus the two cocycles where the tails attach.
//!
//! Left of the window sits the minimal projective resolution of `L`, glued in
//! through `L ↪ X^lo`. Right of it sits the projective coresolution of the
//! context member `C`, glued in through `X^hi ↠ C`. Extending the window
//! materializes one more tail term on either side.

use std::sync::Arc;

use crate::complex::{BoundedComplex, ChainMap};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusContext;
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap};

#[derive(Clone, Debug)]
pub struct SplicedComplex {
    ctx: Arc<FrobeniusContext>,
    window: BoundedComplex,
    left: ModuleMap,
    right: ModuleMap,
}

fn check_projective_components(x: &BoundedComplex) -> Result<()> {
    for i in x.lo()..=x.hi() {
        if x.component(i).projective_summands().is_none() {
            return Err(Error::InvalidComplex(format!("component {i} is not a canonical projective")));
        }
    }
    Ok(())
}

impl SplicedComplex {
    /// `left: L ↪ X^lo` with `d^lo ∘ left = 0`, `right: X^hi ↠ C` with
    /// `right ∘ d^{hi-1} = 0` and `C` a member of `ctx`.
    pub fn new(ctx: &Arc<FrobeniusContext>, window: BoundedComplex, left: ModuleMap, right: ModuleMap) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::InvalidComplex("window must contain at least one degree".into()));
        }
        if !crate::module::same_algebra(window.algebra(), ctx.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        check_projective_components(&window)?;
        let (lo, hi) = (window.lo(), window.hi());
        if left.target().dim() != window.component(lo).dim() || !left.is_injective() {
            return Err(Error::InvalidComplex("left tail must embed into the lowest component".into()));
        }
        if !window.differential(lo).compose(&left).is_zero() {
            return Err(Error::InvalidComplex("left tail is not inside the kernel of the lowest differential".into()));
        }
        if right.source().dim() != window.component(hi).dim() || !right.is_surjective() {
            return Err(Error::InvalidComplex("right tail must be a quotient of the highest component".into()));
        }
        if !right.compose(&window.differential(hi - 1)).is_zero() {
            return Err(Error::InvalidComplex("right tail does not kill the incoming boundaries".into()));
        }
        ctx.require_member(right.target(), "right tail cocycle")?;
        Ok(SplicedComplex { ctx: ctx.clone(), window, left, right })
    }

    /// A bounded complex of canonical projectives, both tails zero.
    pub fn bounded(ctx: &Arc<FrobeniusContext>, x: &BoundedComplex) -> Result<Self> {
        let x = if x.is_empty() { x.over(0, 0) } else { x.clone() };
        let zero = Module::zero(ctx.algebra());
        let left = ModuleMap::zero(&zero, &x.component(x.lo()));
        let right = ModuleMap::zero(&x.component(x.hi()), &zero);
        SplicedComplex::new(ctx, x, left, right)
    }

    /// Tails read off the window itself: `L = ker d^lo` and `C = cok d^{hi-1}`.
    pub fn from_window(ctx: &Arc<FrobeniusContext>, x: &BoundedComplex) -> Result<Self> {
        let (_, left) = x.differential(x.lo()).kernel();
        let (_, right) = x.differential(x.hi() - 1).cokernel();
        SplicedComplex::new(ctx, x.clone(), left, right)
    }

    /// The complete resolution of a member `m` with `Z^degree = m`: the window
    /// is `P(m) → Q(m)` in degrees `degree-1, degree`.
    pub fn complete_resolution_at(ctx: &Arc<FrobeniusContext>, m: &Module, degree: i64) -> Result<Self> {
        ctx.require_member(m, "cocycle of a complete resolution")?;
        let cover = m.projective_cover();
        let cos = ctx.cosyzygy(m)?;
        let (_, left) = cover.kernel();
        let d = cos.mono.compose(&cover);
        let window = BoundedComplex::new_unchecked(
            ctx.algebra(),
            degree - 1,
            vec![cover.source().clone(), cos.projective().clone()],
            vec![d],
        );
        SplicedComplex::new(ctx, window, left, cos.projection)
    }

    pub fn context(&self) -> &Arc<FrobeniusContext> {
        &self.ctx
    }

    pub fn window(&self) -> &BoundedComplex {
        &self.window
    }

    pub fn lo(&self) -> i64 {
        self.window.lo()
    }

    pub fn hi(&self) -> i64 {
        self.window.hi()
    }

    /// `L ↪ X^lo`.
    pub fn left(&self) -> &ModuleMap {
        &self.left
    }

    /// `X^hi ↠ C`.
    pub fn right(&self) -> &ModuleMap {
        &self.right
    }

    pub fn left_module(&self) -> &Module {
        self.left.source()
    }

    pub fn right_module(&self) -> &Module {
        self.right.target()
    }

    pub fn component(&self, i: i64) -> Module {
        self.window.component(i)
    }

    pub fn differential(&self, i: i64) -> ModuleMap {
        self.window.differential(i)
    }

    /// One more resolution step of `L`: `P(L)` joins the window in degree `lo-1`.
    pub fn extend_left(&self) -> Self {
        let alg = self.ctx.algebra();
        let cover = self.left_module().projective_cover();
        let (_, kernel) = cover.kernel();
        let d = self.left.compose(&cover);
        let lo = self.lo();
        let mut components = vec![cover.source().clone()];
        let mut differentials = vec![d];
        for i in lo..=self.hi() {
            components.push(self.component(i));
            if i < self.hi() {
                differentials.push(self.differential(i));
            }
        }
        let window = BoundedComplex::new_unchecked(alg, lo - 1, components, differentials);
        SplicedComplex { ctx: self.ctx.clone(), window, left: kernel, right: self.right.clone() }
    }

    /// One more coresolution step of `C`: `Q(C)` joins the window in degree `hi+1`.
    pub fn extend_right(&self) -> Result<Self> {
        let alg = self.ctx.algebra();
        let cos = self.ctx.cosyzygy(self.right_module())?;
        let d = cos.mono.compose(&self.right);
        let mut components: Vec<Module> = (self.lo()..=self.hi()).map(|i| self.component(i)).collect();
        let mut differentials: Vec<ModuleMap> = (self.lo()..self.hi()).map(|i| self.differential(i)).collect();
        components.push(cos.projective().clone());
        differentials.push(d);
        let window = BoundedComplex::new_unchecked(alg, self.lo(), components, differentials);
        Ok(SplicedComplex { ctx: self.ctx.clone(), window, left: self.left.clone(), right: cos.projection })
    }

    /// The same object with its window grown to contain `[lo, hi]`.
    pub fn extend_to(&self, lo: i64, hi: i64) -> Result<Self> {
        let mut s = self.clone();
        while s.lo() > lo {
            s = s.extend_left();
        }
        while s.hi() < hi {
            s = s.extend_right()?;
        }
        Ok(s)
    }

    /// The window restricted to `[lo, hi]` after materializing enough tail.
    pub fn materialize(&self, lo: i64, hi: i64) -> Result<BoundedComplex> {
        Ok(self.extend_to(lo, hi)?.window.over(lo, hi))
    }

    /// `dim H^i`; the tails are exact, so only window degrees can contribute.
    pub fn homology_dim(&self, i: i64) -> usize {
        if i < self.lo() || i > self.hi() {
            return 0;
        }
        let cycles = if i == self.hi() {
            self.right.kernel().0.dim()
        } else {
            self.component(i).dim() - self.differential(i).matrix().rank()
        };
        let boundaries = if i == self.lo() { self.left_module().dim() } else { self.differential(i - 1).matrix().rank() };
        cycles - boundaries
    }

    pub fn is_exact(&self) -> bool {
        (self.lo()..=self.hi()).all(|i| self.homology_dim(i) == 0)
    }

    /// Homotopy equivalent to a complex vanishing in low degrees.
    pub fn is_bounded_below(&self) -> bool {
        self.left_module().is_projective()
    }

    /// Homotopy equivalent to a complex vanishing in high degrees.
    pub fn is_bounded_above(&self) -> bool {
        self.right_module().is_projective()
    }

    /// Zero in the homotopy category: exact with a finite left tail, so every
    /// cocycle is projective and the complex splits.
    pub fn is_contractible(&self) -> bool {
        self.is_exact() && self.is_bounded_below() && self.is_bounded_above()
    }

    /// `X[k]^i = X^{i+k}`, differentials negated for odd `k`.
    pub fn shift(&self, k: i64) -> Self {
        SplicedComplex { ctx: self.ctx.clone(), window: self.window.shift(k), left: self.left.clone(), right: self.right.clone() }
    }

    /// Brutal truncation `τ_{≥n}`; the left tail becomes zero.
    pub fn truncate_ge(&self, n: i64) -> Result<Self> {
        let s = self.extend_to(n, n)?;
        let window = s.window.over(n, s.hi());
        let zero = Module::zero(self.ctx.algebra());
        let left = ModuleMap::zero(&zero, &window.component(n));
        Ok(SplicedComplex { ctx: self.ctx.clone(), window, left, right: s.right })
    }

    /// Brutal truncation `τ_{≤n}`; the right tail becomes zero.
    pub fn truncate_le(&self, n: i64) -> Result<Self> {
        let s = self.extend_to(n, n)?;
        let window = s.window.over(s.lo(), n);
        let zero = Module::zero(self.ctx.algebra());
        let right = ModuleMap::zero(&window.component(n), &zero);
        Ok(SplicedComplex { ctx: self.ctx.clone(), window, left: s.left, right })
    }

    /// The short exact sequence `τ_{≥n+1}X ↪ X ↠ τ_{≤n}X`.
    pub fn truncation_triangle(&self, n: i64) -> Result<TruncationTriangle> {
        let whole = self.extend_to(n, n + 1)?;
        let upper = whole.truncate_ge(n + 1)?.extend_to(whole.lo(), whole.hi())?;
        let lower = whole.truncate_le(n)?.extend_to(whole.lo(), whole.hi())?;
        let (lo, hi) = (whole.lo(), whole.hi());
        let pick = |src: &SplicedComplex, dst: &SplicedComplex, keep: &dyn Fn(i64) -> bool| -> Vec<ModuleMap> {
            (lo..=hi)
                .map(|i| if keep(i) { ModuleMap::identity(&src.component(i)).with_ends(&src.component(i), &dst.component(i)) } else { ModuleMap::zero(&src.component(i), &dst.component(i)) })
                .collect()
        };
        let inclusion = SplicedMap::new(&upper, &whole, pick(&upper, &whole, &|i| i > n))?;
        let projection = SplicedMap::new(&whole, &lower, pick(&whole, &lower, &|i| i <= n))?;
        Ok(TruncationTriangle { upper, whole, lower, inclusion, projection, n })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let (lo, hi) = (self.lo().min(other.lo()), self.hi().max(other.hi()));
        let a = self.extend_to(lo, hi)?;
        let b = other.extend_to(lo, hi)?;
        let window = a.window.direct_sum(&b.window);
        let alg = self.ctx.algebra();
        let (l, _, _) = Module::direct_sum(alg, &[a.left_module().clone(), b.left_module().clone()]);
        let (c, _, _) = Module::direct_sum(alg, &[a.right_module().clone(), b.right_module().clone()]);
        let left = ModuleMap::new_unchecked(l, window.component(lo), a.left.matrix().block_diag(b.left.matrix()));
        let right = ModuleMap::new_unchecked(window.component(hi), c, a.right.matrix().block_diag(b.right.matrix()));
        SplicedComplex::new(&self.ctx, window, left, right)
    }
}

/// `τ_{≥n+1}X → X → τ_{≤n}X`, all three on the same window.
#[derive(Clone, Debug)]
pub struct TruncationTriangle {
    pub upper: SplicedComplex,
    pub whole: SplicedComplex,
    pub lower: SplicedComplex,
    pub inclusion: SplicedMap,
    pub projection: SplicedMap,
    pub n: i64,
}

impl TruncationTriangle {
    /// The map `cone(inclusion) → lower`, `(u, x) ↦ projection(x)`. The
    /// sequence is degreewise split, so this is a homotopy equivalence.
    pub fn cone_comparison(&self) -> Result<SplicedMap> {
        let cone = self.inclusion.cone()?;
        let lower = self.lower.extend_to(cone.lo(), cone.hi())?;
        let upper = self.upper.extend_to(cone.lo() - 1, cone.hi() + 2)?;
        let whole = self.whole.extend_to(cone.lo() - 1, cone.hi() + 2)?;
        let field = cone.ctx.algebra().field();
        let mut maps = Vec::new();
        for i in cone.lo()..=cone.hi() {
            let u = upper.component(i + 1).dim();
            let x = whole.component(i).dim();
            let target = lower.component(i);
            let mut m = Matrix::zeros(field, target.dim(), u + x);
            if i <= self.n {
                m.paste(0, u, &Matrix::identity(field, x));
            }
            maps.push(ModuleMap::new(&cone.component(i), &target, m)?);
        }
        SplicedMap::new(&cone, &lower, maps)
    }
}

/// A chain map between spliced complexes given on a common window, together
/// with the induced maps of the tail cocycles.
#[derive(Clone, Debug)]
pub struct SplicedMap {
    source: SplicedComplex,
    target: SplicedComplex,
    maps: Vec<ModuleMap>,
    left: ModuleMap,
    right: ModuleMap,
}

impl SplicedMap {
    /// `maps[k]` is the component in degree `lo + k`; both windows must agree.
    pub fn new(source: &SplicedComplex, target: &SplicedComplex, maps: Vec<ModuleMap>) -> Result<Self> {
        if !source.ctx.same_as(&target.ctx) {
            return Err(Error::ContextMismatch);
        }
        let (lo, hi) = (source.lo(), source.hi());
        if (lo, hi) != (target.lo(), target.hi()) || maps.len() as i64 != hi - lo + 1 {
            return Err(Error::InvalidComplex("chain map needs one component per degree of a shared window".into()));
        }
        ChainMap::new(&source.window, &target.window, lo, maps.clone())?;
        let fa = &maps[0];
        let image = fa.compose(&source.left);
        let inv = target
            .left
            .matrix()
            .left_inverse()
            .ok_or_else(|| Error::InvalidComplex("left tail inclusion is not injective".into()))?;
        let l = Matrix::mul(&inv, image.matrix());
        if target.left.matrix().mul(&l) != *image.matrix() {
            return Err(Error::InvalidComplex("chain map does not preserve the left tail cocycle".into()));
        }
        let left = ModuleMap::new(source.left_module(), target.left_module(), l)?;
        let fb = &maps[maps.len() - 1];
        let section = source
            .right
            .matrix()
            .right_inverse()
            .ok_or_else(|| Error::InvalidComplex("right tail projection is not surjective".into()))?;
        let pushed = target.right.compose(fb);
        let c = pushed.matrix().mul(&section);
        if c.mul(source.right.matrix()) != *pushed.matrix() {
            return Err(Error::InvalidComplex("chain map does not descend to the right tail cocycle".into()));
        }
        let right = ModuleMap::new(source.right_module(), target.right_module(), c)?;
        Ok(SplicedMap { source: source.clone(), target: target.clone(), maps, left, right })
    }

    pub fn identity(x: &SplicedComplex) -> Self {
        let maps = (x.lo()..=x.hi()).map(|i| ModuleMap::identity(&x.component(i))).collect();
        SplicedMap {
            source: x.clone(),
            target: x.clone(),
            maps,
            left: ModuleMap::identity(x.left_module()),
            right: ModuleMap::identity(x.right_module()),
        }
    }

    pub fn source(&self) -> &SplicedComplex {
        &self.source
    }

    pub fn target(&self) -> &SplicedComplex {
        &self.target
    }

    pub fn lo(&self) -> i64 {
        self.source.lo()
    }

    pub fn hi(&self) -> i64 {
        self.source.hi()
    }

    pub fn map(&self, i: i64) -> &ModuleMap {
        &self.maps[(i - self.lo()) as usize]
    }

    /// Induced map `L_source → L_target`.
    pub fn left_map(&self) -> &ModuleMap {
        &self.left
    }

    /// Induced map `C_source → C_target`.
    pub fn right_map(&self) -> &ModuleMap {
        &self.right
    }

    /// Lifts `left ∘ ε_source` through the target's cover `ε_target`; identical
    /// tails stay identical.
    pub fn extend_left(&self) -> Result<Self> {
        let source = self.source.extend_left();
        let target = self.target.extend_left();
        let eps_s = self.source.left_module().projective_cover();
        let eps_t = self.target.left_module().projective_cover();
        let g = if self.left.matrix().is_identity() && eps_s == eps_t {
            ModuleMap::identity(eps_s.source())
        } else {
            self.left
                .compose(&eps_s)
                .lift_through(&eps_t)
                .ok_or_else(|| Error::Unsolvable("lifting a chain map through a projective cover".into()))?
        };
        let mut maps = vec![g];
        maps.extend(self.maps.iter().cloned());
        SplicedMap::new(&source, &target, maps)
    }

    /// Extends `mono_target ∘ right` along `mono_source`; possible because
    /// projectives are injective among members.
    pub fn extend_right(&self) -> Result<Self> {
        let ctx = &self.source.ctx;
        let source = self.source.extend_right()?;
        let target = self.target.extend_right()?;
        let mono_s = ctx.cosyzygy(self.source.right_module())?.mono;
        let mono_t = ctx.cosyzygy(self.target.right_module())?.mono;
        let g = if self.right.matrix().is_identity() && mono_s == mono_t {
            ModuleMap::identity(mono_s.target())
        } else {
            mono_t
                .compose(&self.right)
                .extend_along(&mono_s)
                .ok_or_else(|| Error::Unsolvable("extending a chain map along a cosyzygy".into()))?
        };
        let mut maps = self.maps.clone();
        maps.push(g);
        SplicedMap::new(&source, &target, maps)
    }

    pub fn extend_to(&self, lo: i64, hi: i64) -> Result<Self> {
        let mut f = self.clone();
        while f.lo() > lo {
            f = f.extend_left()?;
        }
        while f.hi() < hi {
            f = f.extend_right()?;
        }
        Ok(f)
    }

    /// `self ∘ other`, over the union of the two windows.
    pub fn compose(&self, other: &SplicedMap) -> Result<Self> {
        let (lo, hi) = (self.lo().min(other.lo()), self.hi().max(other.hi()));
        let f = self.extend_to(lo, hi)?;
        let g = other.extend_to(lo, hi)?;
        let maps = (lo..=hi).map(|i| f.map(i).compose(g.map(i))).collect();
        SplicedMap::new(&g.source, &f.target, maps)
    }

    /// The mapping cone `C^i = X^{i+1} ⊕ Y^i`, with tails read off two degrees
    /// beyond the shared window where both tails are exact.
    pub fn cone(&self) -> Result<SplicedComplex> {
        let (a, b) = (self.lo(), self.hi());
        let f = self.extend_to(a - 2, b + 2)?;
        let chain = ChainMap::new(&f.source.window, &f.target.window, a - 2, f.maps.clone())?;
        let full = chain.cone();
        let window = full.over(a - 1, b);
        let (_, _, left) = full.differential(a - 2).image();
        let (_, right, _) = full.differential(b).image();
        SplicedComplex::new(&self.source.ctx, window, left, right)
    }

    pub fn is_homotopy_equivalence(&self) -> Result<bool> {
        Ok(self.cone()?.is_contractible())
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

    #[test]
    fn complete_resolution_of_k() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let x = SplicedComplex::complete_resolution_at(&ctx, &k, 1).unwrap();
        assert!(x.is_exact());
        assert!(!x.is_contractible());
        let wide = x.extend_to(-3, 4).unwrap();
        assert!(wide.is_exact());
        for i in -3..=4 {
            assert_eq!(wide.component(i).dim(), 2);
        }
        let le = x.truncate_le(0).unwrap();
        assert!(le.is_bounded_above());
        assert_eq!(le.homology_dim(0), 1);
        assert!(x.truncate_le(0).unwrap().truncate_ge(1).unwrap().is_exact());
        let p = Module::regular(&fixtures::r2());
        let y = SplicedComplex::complete_resolution_at(&ctx, &p, 0).unwrap();
        assert!(y.is_contractible());
    }

    #[test]
    fn extension_keeps_homology() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let x = SplicedComplex::complete_resolution_at(&ctx, &k, 1).unwrap().truncate_ge(1).unwrap();
        assert_eq!(x.homology_dim(1), 1);
        let wide = x.extend_to(-2, 3).unwrap();
        for i in -2..=3 {
            assert_eq!(wide.homology_dim(i), x.homology_dim(i));
        }
        assert_eq!(x.extend_to(x.lo(), x.hi()).unwrap().window().total_dim(), x.window().total_dim());
    }

    #[test]
    fn truncation_triangles() {
        let ctx = r2_ctx();
        let x = SplicedComplex::complete_resolution_at(&ctx, &fixtures::r2_k(), 1).unwrap();
        for n in -2..=3 {
            let t = x.truncation_triangle(n).unwrap();
            assert!(t.upper.is_bounded_below());
            assert!(t.lower.is_bounded_above());
            assert!(t.cone_comparison().unwrap().is_homotopy_equivalence().unwrap());
        }
    }

    #[test]
    fn identity_cone_is_contractible() {
        let ctx = r2_ctx();
        let x = SplicedComplex::complete_resolution_at(&ctx, &fixtures::r2_k(), 1).unwrap();
        let id = SplicedMap::identity(&x);
        assert!(id.is_homotopy_equivalence().unwrap());
        let zero_maps = (x.lo()..=x.hi()).map(|i| ModuleMap::zero(&x.component(i), &x.component(i))).collect();
        let zero = SplicedMap::new(&x, &x, zero_maps).unwrap();
        assert!(!zero.is_homotopy_equivalence().unwrap());
    }

    #[test]
    fn a9_complete_resolutions() {
        let a9 = fixtures::a9();
        let ctx = FrobeniusContext::new(a9, ContextSpec::Gorenstein, 16).unwrap();
        let x = SplicedComplex::complete_resolution_at(&ctx, &fixtures::a9_m1(), 1).unwrap();
        let wide = x.extend_to(-4, 5).unwrap();
        assert!(wide.is_exact());
        let shifted = x.shift(3);
        assert_eq!((shifted.lo(), shifted.hi()), (-3, -2));
        assert!(shifted.is_exact());
    }
}
