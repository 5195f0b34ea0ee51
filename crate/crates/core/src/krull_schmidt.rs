//! Direct-sum decompositions by Fitting splitting, and isomorphism tests.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::module::{Module, ModuleMap};

/// Search budget for exhaustive enumeration of endomorphisms or Hom elements.
pub const SEARCH_BUDGET: u64 = 1 << 16;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

fn power(m: &Matrix, mut e: usize) -> Matrix {
    let mut base = m.clone();
    let mut acc = Matrix::identity(m.field(), m.rows());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

fn is_nilpotent(m: &Matrix) -> bool {
    power(m, m.rows()).is_zero()
}

fn is_splitter(m: &Matrix) -> bool {
    m.rank() < m.rows() && !is_nilpotent(m)
}

/// Every element of `F_p^len` in lexicographic order, if there are at most `budget`.
pub(crate) fn all_vectors(p: u32, len: usize, budget: u64) -> Option<Vec<Vec<u32>>> {
    let total = (p as u64).checked_pow(len as u32).filter(|&t| t <= budget)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![0u32; len];
    for _ in 0..total {
        out.push(v.clone());
        for x in v.iter_mut().rev() {
            *x += 1;
            if *x < p {
                break;
            }
            *x = 0;
        }
    }
    Some(out)
}

/// Scalars to try as eigenvalue shifts.
fn shift_candidates(m: &Matrix) -> Vec<u32> {
    let p = m.field().p();
    if p <= 4096 {
        (0..p).collect()
    } else {
        let mut c: Vec<u32> = (0..m.rows()).map(|i| m.get(i, i)).collect();
        c.push(0);
        c.sort();
        c.dedup();
        c
    }
}

/// A non-nilpotent, non-invertible endomorphism, or `None` when `End(M)` is
/// certified local.
fn find_splitter(m: &Module, end: &[Matrix]) -> Result<Option<Matrix>> {
    let n = m.dim();
    let field = m.field();
    let id = Matrix::identity(field, n);
    let mut nilpotent_parts = Vec::with_capacity(end.len());
    let mut all_shifted = true;
    for b in end {
        let mut found = None;
        for c in shift_candidates(b) {
            let shifted = b.sub(&id.scale(c));
            if shifted.rank() < n {
                if !is_nilpotent(&shifted) {
                    return Ok(Some(shifted));
                }
                found = Some(shifted);
                break;
            }
        }
        match found {
            Some(s) => nilpotent_parts.push(s),
            None => all_shifted = false,
        }
    }
    if all_shifted && spans_nilpotent_ideal(field, n, &nilpotent_parts) {
        return Ok(None);
    }
    // fall back to every element of End(M)
    let Some(coeffs) = all_vectors(field.p(), end.len(), SEARCH_BUDGET) else {
        return Err(Error::FieldTooSmallForSplit { dim: n });
    };
    for c in coeffs {
        let mut x = Matrix::zeros(field, n, n);
        for (b, &k) in end.iter().zip(&c) {
            if k != 0 {
                x = x.add(&b.scale(k));
            }
        }
        if is_splitter(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Whether `span(parts)` is closed under multiplication and nilpotent.
fn spans_nilpotent_ideal(field: crate::linalg::Fp, n: usize, parts: &[Matrix]) -> bool {
    let mut span = RowSpace::new(field, n * n);
    for p in parts {
        span.insert(p.data().to_vec());
    }
    let basis: Vec<Matrix> = span.basis().iter().map(|v| Matrix::from_fn(field, n, n, |i, j| v[i * n + j])).collect();
    for a in &basis {
        for b in &basis {
            if !span.contains(a.mul(b).data()) {
                return false;
            }
        }
    }
    let mut layer = basis.clone();
    for _ in 0..=n {
        if layer.is_empty() {
            return true;
        }
        let mut next = RowSpace::new(field, n * n);
        for x in &layer {
            for b in &basis {
                next.insert(x.mul(b).data().to_vec());
            }
        }
        layer = next.basis().iter().map(|v| Matrix::from_fn(field, n, n, |i, j| v[i * n + j])).collect();
    }
    layer.is_empty()
}

/// Decomposes `m` into indecomposable summands.
pub fn decompose(m: &Module) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    split_into(m, &ModuleMap::identity(m), &ModuleMap::identity(m), &mut out)?;
    Ok(out)
}

fn split_into(m: &Module, incl: &ModuleMap, proj: &ModuleMap, out: &mut Vec<Summand>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let end: Vec<Matrix> = m.hom_basis(m)?.iter().map(|f| f.matrix().clone()).collect();
    let Some(phi) = find_splitter(m, &end)? else {
        out.push(Summand { module: m.clone(), inclusion: incl.clone(), projection: proj.clone() });
        return Ok(());
    };
    // Fitting: M = im φ^n ⊕ ker φ^n
    let psi = power(&phi, m.dim());
    let (image, i_incl) = m.submodule(&psi.columns());
    let (kernel, k_incl) = m.submodule(&psi.kernel_basis());
    let basis = i_incl.matrix().hstack(k_incl.matrix());
    let inv = basis.inverse().expect("Fitting decomposition is a direct sum");
    let ip = inv.block(0, 0, image.dim(), m.dim());
    let kp = inv.block(image.dim(), 0, kernel.dim(), m.dim());
    let i_proj = ModuleMap::new(m, &image, ip).expect("Fitting projection is a module map");
    let k_proj = ModuleMap::new(m, &kernel, kp).expect("Fitting projection is a module map");
    split_into(&image, &incl.compose(&i_incl), &i_proj.compose(proj), out)?;
    split_into(&kernel, &incl.compose(&k_incl), &k_proj.compose(proj), out)
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    Ok(!m.is_zero() && decompose(m)?.len() == 1)
}

/// An isomorphism between indecomposable modules, if one exists. Some product
/// `g f` of Hom basis elements is invertible exactly when they are isomorphic,
/// because the non-units of the local ring `End(a)` form an ideal.
pub fn isomorphism_of_indecomposables(a: &Module, b: &Module) -> Result<Option<ModuleMap>> {
    a.check_same_algebra(b)?;
    if a.dimension_vector() != b.dimension_vector() {
        return Ok(None);
    }
    let fs = a.hom_basis(b)?;
    let gs = b.hom_basis(a)?;
    for f in &fs {
        for g in &gs {
            if g.compose(f).matrix().rank() == a.dim() {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

fn match_summands(left: &[Module], right: &[Module]) -> Result<bool> {
    if left.len() != right.len() {
        return Ok(false);
    }
    let mut used = vec![false; right.len()];
    'outer: for l in left {
        for (k, r) in right.iter().enumerate() {
            if !used[k] && isomorphism_of_indecomposables(l, r)?.is_some() {
                used[k] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

pub fn is_isomorphic(a: &Module, b: &Module) -> Result<bool> {
    a.check_same_algebra(b)?;
    if a.dimension_vector() != b.dimension_vector() {
        return Ok(false);
    }
    let l: Vec<Module> = decompose(a)?.into_iter().map(|s| s.module).collect();
    let r: Vec<Module> = decompose(b)?.into_iter().map(|s| s.module).collect();
    match_summands(&l, &r)
}

/// Indecomposable summands of `generators`, one per isomorphism class.
pub fn distinct_indecomposables(generators: &[Module]) -> Result<Vec<Module>> {
    let mut out: Vec<Module> = Vec::new();
    for g in generators {
        for s in decompose(g)? {
            let mut seen = false;
            for o in &out {
                if isomorphism_of_indecomposables(o, &s.module)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(s.module);
            }
        }
    }
    Ok(out)
}

/// Whether every indecomposable summand of `m` is isomorphic to one of `indecomposables`.
pub fn in_additive_closure_of(m: &Module, indecomposables: &[Module]) -> Result<bool> {
    'outer: for s in decompose(m)? {
        for g in indecomposables {
            if isomorphism_of_indecomposables(&s.module, g)?.is_some() {
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

pub fn in_additive_closure(m: &Module, generators: &[Module]) -> Result<bool> {
    in_additive_closure_of(m, &distinct_indecomposables(generators)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn projectives_split_into_indecomposables() {
        let a9 = fixtures::a9();
        let p = Module::projective(&a9, &[0, 1, 1, 2]);
        let parts = decompose(&p).unwrap();
        assert_eq!(parts.len(), 4);
        let total: usize = parts.iter().map(|s| s.module.dim()).sum();
        assert_eq!(total, p.dim());
        for s in &parts {
            assert!(s.projection.compose(&s.inclusion).matrix().is_identity());
        }
    }

    #[test]
    fn indecomposables_stay_whole() {
        for m in [fixtures::a9_m1(), fixtures::a9_m2(), fixtures::r2_k(), Module::regular(&fixtures::r2())] {
            assert!(is_indecomposable(&m).unwrap());
        }
    }

    #[test]
    fn closure_examples() {
        let a9 = fixtures::a9();
        let (m1, m2) = (fixtures::a9_m1(), fixtures::a9_m2());
        let ps: Vec<Module> = (0..3).map(|v| Module::indecomposable_projective(&a9, v)).collect();
        let mut gens = ps.clone();
        gens.extend([m1.clone(), m2.clone()]);
        assert!(!in_additive_closure(&Module::simple(&a9, 1), &gens).unwrap());
        let sum = ps[0].sum(&m1);
        assert!(in_additive_closure(&sum, &[ps[0].clone(), m1.clone()]).unwrap());
        assert!(in_additive_closure(&m2, std::slice::from_ref(&m2)).unwrap());
        assert!(!in_additive_closure(&m2, std::slice::from_ref(&m1)).unwrap());
    }

    #[test]
    fn syzygy_of_m1_is_m2() {
        let (omega, _) = fixtures::a9_m1().syzygy();
        assert!(is_isomorphic(&omega, &fixtures::a9_m2()).unwrap());
    }

    #[test]
    fn isomorphism_respects_order_of_summands() {
        let a9 = fixtures::a9();
        let (m1, m2) = (fixtures::a9_m1(), fixtures::a9_m2());
        let p = Module::indecomposable_projective(&a9, 2);
        let x = Module::direct_sum(&a9, &[m1.clone(), p.clone(), m2.clone()]).0;
        let y = Module::direct_sum(&a9, &[m2.clone(), m1.clone(), p.clone()]).0;
        assert!(is_isomorphic(&x, &y).unwrap());
        let z = Module::direct_sum(&a9, &[m2.clone(), m2, p]).0;
        assert!(!is_isomorphic(&x, &z).unwrap());
    }
}
