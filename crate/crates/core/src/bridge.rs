//! The functor `F` from epimorphism objects to complexes with bounded
//! homology, its quasi-inverse `Z¹λ`, and the three decompositions of a
//! complex along bounded-below, bounded-above and acyclic parts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::BoundedComplex;
use crate::error::{Error, Result};
use crate::frobenius::{ContextMode, FrobeniusContext};
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap};
use crate::mor::{MorClasses, MorE, MorMap};
use crate::spliced::{SplicedComplex, SplicedMap};

/// Syzygy steps tried in list mode before giving up on a left cocycle.
pub const STABILIZATION_CAP: usize = 32;

/// `F_a`: `P(X) → Q(T)` in degrees 0, 1 with differential `ε_T α ρ_X`,
/// left tail `ΩX` and right tail `ΣT`.
pub fn functor_f(a: &MorE) -> Result<SplicedComplex> {
    let ctx = a.context();
    let rho = a.x().projective_cover();
    let cos = ctx.cosyzygy(a.t())?;
    let d = cos.mono.compose(a.alpha()).compose(&rho);
    let (_, left) = rho.kernel();
    let window = BoundedComplex::new(ctx.algebra(), 0, vec![rho.source().clone(), cos.projective().clone()], vec![d])?;
    SplicedComplex::new(ctx, window, left, cos.projection)
}

/// `F_f`: lift `f_X` through the covers in degree 0, extend `f_T` along the
/// cosyzygies in degree 1.
pub fn functor_f_map(f: &MorMap) -> Result<SplicedMap> {
    let (a, b) = (f.source(), f.target());
    let ctx = a.context();
    let (rho_a, rho_b) = (a.x().projective_cover(), b.x().projective_cover());
    let (eps_a, eps_b) = (ctx.cosyzygy(a.t())?.mono, ctx.cosyzygy(b.t())?.mono);
    let g0 = f
        .fx()
        .compose(&rho_a)
        .lift_through(&rho_b)
        .ok_or_else(|| Error::Unsolvable("lifting through a projective cover".into()))?;
    let g1 = eps_b
        .compose(f.ft())
        .extend_along(&eps_a)
        .ok_or_else(|| Error::Unsolvable("extending along a cosyzygy".into()))?;
    SplicedMap::new(&functor_f(a)?, &functor_f(b)?, vec![g0, g1])
}

/// Everything built on the way to `Z¹λ`: `X_S` is the complete resolution of
/// the stabilized left cocycle, `T_S` that of the right cocycle, with
/// `ξ: X_S → S` and `ζ: S → T_S` on a shared window containing degrees 0, 1.
#[derive(Clone, Debug)]
pub struct Z1Lambda {
    pub object: MorE,
    pub left_resolution: SplicedComplex,
    pub right_resolution: SplicedComplex,
    pub xi: SplicedMap,
    pub zeta: SplicedMap,
    /// whether a contractible `T⁰ = T⁰` summand was needed for surjectivity
    pub padded: bool,
}

fn identity_between(a: &Module, b: &Module) -> Result<ModuleMap> {
    if a != b {
        return Err(Error::Unsolvable("tails of the two resolutions disagree".into()));
    }
    Ok(ModuleMap::identity(a))
}

/// Extends the left tail until its cocycle is a member.
fn stabilize_left(s: &SplicedComplex) -> Result<SplicedComplex> {
    let ctx = s.context();
    let limit = match ctx.mode() {
        ContextMode::Gorenstein { d } => *d,
        ContextMode::ExplicitList => STABILIZATION_CAP,
    };
    let mut s = s.clone();
    let mut steps = 0;
    while !ctx.is_member(s.left_module())? {
        if steps == limit {
            return Err(Error::StabilizationFailed { steps });
        }
        s = s.extend_left();
        steps += 1;
    }
    Ok(s)
}

pub fn z1_lambda_full(s: &SplicedComplex) -> Result<Z1Lambda> {
    let ctx = s.context().clone();
    let s = stabilize_left(s)?;
    let (m, n) = (s.lo(), s.hi());
    let (w0, w1) = ((m - 1).min(0), (n + 1).max(1));
    let sw = s.extend_to(w0, w1)?;
    let xw = SplicedComplex::complete_resolution_at(&ctx, s.left_module(), m)?.extend_to(w0, w1)?;
    let tw = SplicedComplex::complete_resolution_at(&ctx, s.right_module(), n + 1)?.extend_to(w0, w1)?;

    let mut xi: Vec<ModuleMap> = Vec::new();
    for i in w0..=w1 {
        let f = if i < m {
            identity_between(&xw.component(i), &sw.component(i))?
        } else {
            let rhs = sw.differential(i - 1).compose(&xi[(i - 1 - w0) as usize]);
            rhs.extend_along(&xw.differential(i - 1))
                .ok_or_else(|| Error::Unsolvable(format!("extending ξ to degree {i}")))?
        };
        xi.push(f);
    }
    let xi = SplicedMap::new(&xw, &sw, xi)?;

    let mut zeta: Vec<ModuleMap> = Vec::new();
    for i in (w0..=w1).rev() {
        let f = if i > n {
            identity_between(&sw.component(i), &tw.component(i))?
        } else {
            let rhs = zeta.last().expect("degree above is done").compose(&sw.differential(i));
            rhs.lift_through(&tw.differential(i)).ok_or_else(|| Error::Unsolvable(format!("lifting ζ to degree {i}")))?
        };
        zeta.push(f);
    }
    zeta.reverse();
    let zeta = SplicedMap::new(&sw, &tw, zeta)?;

    let lambda1 = zeta.map(1).compose(xi.map(1));
    let (zx, _, incl_x) = xw.differential(0).image();
    let (zt, onto_t, incl_t) = tw.differential(0).image();
    let inv = incl_t.matrix().left_inverse().expect("image inclusion is injective");
    let restricted = inv.mul(lambda1.matrix()).mul(incl_x.matrix());
    let mut alpha = ModuleMap::new(&zx, &zt, restricted)?;
    let padded = !alpha.is_surjective();
    if padded {
        let (sum, _, _) = Module::direct_sum(ctx.algebra(), &[zx.clone(), tw.component(0)]);
        alpha = ModuleMap::new(&sum, &zt, alpha.matrix().hstack(onto_t.matrix()))?;
    }
    let object = MorE::new(&ctx, alpha)?;
    Ok(Z1Lambda { object, left_resolution: xw, right_resolution: tw, xi, zeta, padded })
}

/// The epimorphism object `Z¹λ_S: Z¹X_S ↠ Z¹T_S`.
pub fn z1_lambda(s: &SplicedComplex) -> Result<MorE> {
    Ok(z1_lambda_full(s)?.object)
}

/// Hom in the quotient of complexes with bounded homology by bounded
/// complexes, computed as stable Hom between the `Z¹λ` images.
pub fn quotient_hom_dim(s: &SplicedComplex, t: &SplicedComplex) -> Result<usize> {
    Ok(z1_lambda(s)?.stable_hom(&z1_lambda(t)?)?.dim)
}

/// The three stable t-structures, named by their (aisle, coaisle) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TStructurePair {
    /// (bounded below, bounded above)
    PlusMinus,
    /// (bounded above, acyclic)
    MinusAcyclic,
    /// (acyclic, bounded below)
    AcyclicPlus,
}

impl TStructurePair {
    pub const ALL: [TStructurePair; 3] = [TStructurePair::PlusMinus, TStructurePair::MinusAcyclic, TStructurePair::AcyclicPlus];

    pub fn classes(self) -> (Shape, Shape) {
        match self {
            TStructurePair::PlusMinus => (Shape::BoundedBelow, Shape::BoundedAbove),
            TStructurePair::MinusAcyclic => (Shape::BoundedAbove, Shape::Acyclic),
            TStructurePair::AcyclicPlus => (Shape::Acyclic, Shape::BoundedBelow),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TStructurePair::PlusMinus => "plus-minus",
            TStructurePair::MinusAcyclic => "minus-acyclic",
            TStructurePair::AcyclicPlus => "acyclic-plus",
        }
    }
}

/// The three subcategories of complexes with bounded homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    BoundedBelow,
    BoundedAbove,
    Acyclic,
}

impl Shape {
    /// Structural certificate on the complex itself.
    pub fn contains(self, s: &SplicedComplex) -> bool {
        match self {
            Shape::BoundedBelow => s.is_bounded_below(),
            Shape::BoundedAbove => s.is_bounded_above(),
            Shape::Acyclic => s.is_exact(),
        }
    }

    /// The matching class on the morphism side.
    pub fn mor_class(self, c: MorClasses) -> bool {
        match self {
            Shape::BoundedBelow => c.mor01,
            Shape::BoundedAbove => c.mor10,
            Shape::Acyclic => c.mor11,
        }
    }
}

/// A triangle `U → S → V → ΣU` for one of the three pairs.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pair: TStructurePair,
    pub u: SplicedComplex,
    pub u_map: SplicedMap,
    pub v: SplicedComplex,
    pub v_map: SplicedMap,
}

pub fn decompose_tstructure(s: &SplicedComplex, pair: TStructurePair) -> Result<Decomposition> {
    match pair {
        TStructurePair::PlusMinus => {
            let t = s.truncation_triangle(s.hi())?;
            Ok(Decomposition { pair, u: t.upper, u_map: t.inclusion, v: t.lower, v_map: t.projection })
        }
        TStructurePair::MinusAcyclic => {
            // Σ⁻¹cone(ζ) → S → T_S
            let full = z1_lambda_full(s)?;
            let zeta = full.zeta;
            let u = zeta.cone()?.shift(-1);
            let target = zeta.source().extend_to(u.lo(), u.hi())?;
            let field = s.context().algebra().field();
            let mut maps = Vec::new();
            for i in u.lo()..=u.hi() {
                let (src, dst) = (u.component(i), target.component(i));
                let mut m = Matrix::zeros(field, dst.dim(), src.dim());
                m.paste(0, 0, &Matrix::identity(field, dst.dim()));
                maps.push(ModuleMap::new(&src, &dst, m)?);
            }
            let u_map = SplicedMap::new(&u, &target, maps)?;
            Ok(Decomposition { pair, u, u_map, v: zeta.target().clone(), v_map: zeta })
        }
        TStructurePair::AcyclicPlus => {
            // X_S → S → cone(ξ)
            let full = z1_lambda_full(s)?;
            let xi = full.xi;
            let v = xi.cone()?;
            let source = xi.target().extend_to(v.lo(), v.hi())?;
            let field = s.context().algebra().field();
            let mut maps = Vec::new();
            for i in v.lo()..=v.hi() {
                let (src, dst) = (source.component(i), v.component(i));
                let mut m = Matrix::zeros(field, dst.dim(), src.dim());
                m.paste(dst.dim() - src.dim(), 0, &Matrix::identity(field, src.dim()));
                maps.push(ModuleMap::new(&src, &dst, m)?);
            }
            let v_map = SplicedMap::new(&source, &v, maps)?;
            Ok(Decomposition { pair, u: xi.source().clone(), u_map: xi, v, v_map })
        }
    }
}

/// The Cohen-Macaulay `T_2(A)`-module of `Ker(Z¹λ_S) ↪ Z¹X_S`.
pub fn stable_cm_of_t2(s: &SplicedComplex) -> Result<Module> {
    z1_lambda(s)?.kernel_mono().to_t2()
}

pub fn require_gorenstein(ctx: &Arc<FrobeniusContext>) -> Result<()> {
    match ctx.mode() {
        ContextMode::Gorenstein { .. } => Ok(()),
        ContextMode::ExplicitList => Err(Error::NotGorensteinContext),
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
        MorE::new(ctx, k.projective_cover().with_ends(&r, &k)).unwrap()
    }

    #[test]
    fn f_of_r2_onto_k() {
        let ctx = r2_ctx();
        let f = functor_f(&r2_onto_k(&ctx)).unwrap();
        assert!(f.left_module().is_zero());
        assert_eq!(f.extend_left().component(-1).dim(), 0);
        let x = fixtures::r2().label_index("x").unwrap();
        let wide = f.extend_to(0, 3).unwrap();
        for i in 0..3 {
            assert_eq!(wide.differential(i).matrix(), Module::regular(ctx.algebra()).action(x));
        }
        let p = Module::regular(ctx.algebra());
        let stalk = functor_f(&MorE::to_zero(&ctx, &p).unwrap()).unwrap();
        assert!(stalk.is_bounded_below() && stalk.is_bounded_above());
    }

    #[test]
    fn roundtrips() {
        let ctx = r2_ctx();
        let k = fixtures::r2_k();
        let objs = [r2_onto_k(&ctx), MorE::to_zero(&ctx, &k).unwrap(), MorE::identity_on(&ctx, &k).unwrap()];
        for a in &objs {
            let back = z1_lambda(&functor_f(a).unwrap()).unwrap();
            assert!(back.is_stably_isomorphic(a).unwrap(), "{a:?} came back as {back:?}");
        }
        let s = SplicedComplex::complete_resolution_at(&ctx, &k, 1).unwrap();
        let kk = MorE::identity_on(&ctx, &k).unwrap();
        assert!(z1_lambda(&s).unwrap().is_stably_isomorphic(&kk).unwrap());
        let p = Module::regular(ctx.algebra());
        let bounded = SplicedComplex::bounded(&ctx, &BoundedComplex::stalk(&p, 0)).unwrap();
        assert!(z1_lambda(&bounded).unwrap().is_stably_trivial());
        let fa = functor_f(&objs[0]).unwrap();
        assert_eq!(quotient_hom_dim(&fa, &fa).unwrap(), 1);
        assert_eq!(quotient_hom_dim(&bounded, &fa).unwrap(), 0);
    }

    #[test]
    fn f_on_maps() {
        let ctx = r2_ctx();
        let a = r2_onto_k(&ctx);
        let id = functor_f_map(&MorMap::identity(&a)).unwrap();
        for i in 0..=1 {
            assert!(id.map(i).matrix().is_identity());
        }
        let zero = functor_f_map(&MorMap::zero(&a, &a)).unwrap();
        assert!(zero.map(0).is_zero());
    }

    #[test]
    fn decompositions_of_f() {
        let ctx = r2_ctx();
        let s = functor_f(&r2_onto_k(&ctx)).unwrap();
        for pair in TStructurePair::ALL {
            let d = decompose_tstructure(&s, pair).unwrap();
            let (cu, cv) = pair.classes();
            assert!(cu.contains(&d.u), "{pair:?} aisle");
            assert!(cv.contains(&d.v), "{pair:?} coaisle");
            assert!(cu.mor_class(z1_lambda(&d.u).unwrap().classify()));
            assert!(cv.mor_class(z1_lambda(&d.v).unwrap().classify()));
            assert_eq!(quotient_hom_dim(&d.u, &d.v).unwrap(), 0);
        }
        let t2 = stable_cm_of_t2(&s).unwrap();
        assert_eq!(t2.dim(), 3);
    }
}
