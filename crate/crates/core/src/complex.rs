//! Bounded cochain complexes of modules, chain maps, cones and homotopies.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap};

/// A complex `X^lo → ... → X^hi`, zero outside that range. The differential
/// `d^i: X^i → X^{i+1}` is stored for `lo ≤ i < hi`.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    algebra: Arc<Algebra>,
    lo: i64,
    components: Vec<Module>,
    differentials: Vec<ModuleMap>,
}

fn sign(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

impl BoundedComplex {
    pub fn new(algebra: &Arc<Algebra>, lo: i64, components: Vec<Module>, differentials: Vec<ModuleMap>) -> Result<Self> {
        if differentials.len() + 1 != components.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} components need {} differentials, got {}",
                components.len(),
                components.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for c in &components {
            if !crate::module::same_algebra(c.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source().dim() != components[k].dim() || d.target().dim() != components[k + 1].dim() {
                return Err(Error::InvalidComplex(format!("differential {} has the wrong shape", lo + k as i64)));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].compose(&differentials[k - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {}", lo + k as i64 - 1)));
            }
        }
        Ok(BoundedComplex { algebra: algebra.clone(), lo, components, differentials })
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, lo: i64, components: Vec<Module>, differentials: Vec<ModuleMap>) -> Self {
        debug_assert!(Self::new(algebra, lo, components.clone(), differentials.clone()).is_ok());
        BoundedComplex { algebra: algebra.clone(), lo, components, differentials }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        BoundedComplex { algebra: algebra.clone(), lo: 0, components: Vec::new(), differentials: Vec::new() }
    }

    /// The module `m` placed in degree `degree`.
    pub fn stalk(m: &Module, degree: i64) -> Self {
        BoundedComplex { algebra: m.algebra().clone(), lo: degree, components: vec![m.clone()], differentials: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last stored degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: i64) -> Module {
        if i < self.lo || i > self.hi() {
            return Module::zero(&self.algebra);
        }
        self.components[(i - self.lo) as usize].clone()
    }

    pub fn differential(&self, i: i64) -> ModuleMap {
        if i >= self.lo && i < self.hi() {
            return self.differentials[(i - self.lo) as usize].clone();
        }
        ModuleMap::zero(&self.component(i), &self.component(i + 1))
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(Module::dim).sum()
    }

    pub fn homology_dim(&self, i: i64) -> usize {
        let d_out = self.differential(i);
        let d_in = self.differential(i - 1);
        self.component(i).dim() - d_out.matrix().rank() - d_in.matrix().rank()
    }

    pub fn is_exact(&self) -> bool {
        (self.lo..=self.hi()).all(|i| self.homology_dim(i) == 0)
    }

    /// `X[k]^i = X^{i+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let differentials = self.differentials.iter().map(|d| if sign(k) { d.neg() } else { d.clone() }).collect();
        BoundedComplex { algebra: self.algebra.clone(), lo: self.lo - k, components: self.components.clone(), differentials }
    }

    /// The same complex over the explicit degree range `[lo, hi]`, padding with zeros.
    pub fn over(&self, lo: i64, hi: i64) -> Self {
        let components: Vec<Module> = (lo..=hi).map(|i| self.component(i)).collect();
        let differentials = (lo..hi).map(|i| self.differential(i)).collect();
        BoundedComplex { algebra: self.algebra.clone(), lo, components, differentials }
    }

    /// Brutal truncation `τ_{≥n}`: the components in degrees `≥ n`.
    pub fn truncate_ge(&self, n: i64) -> Self {
        if n > self.hi() {
            return BoundedComplex::zero(&self.algebra);
        }
        self.over(n.max(self.lo), self.hi())
    }

    /// Brutal truncation `τ_{≤n}`: the components in degrees `≤ n`.
    pub fn truncate_le(&self, n: i64) -> Self {
        if n < self.lo {
            return BoundedComplex::zero(&self.algebra);
        }
        self.over(self.lo, n.min(self.hi()))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (lo, hi) = union_range(self, other);
        let mut components = Vec::new();
        for i in lo..=hi {
            components.push(Module::direct_sum(&self.algebra, &[self.component(i), other.component(i)]).0);
        }
        let differentials = (lo..hi)
            .map(|i| {
                let m = self.differential(i).matrix().block_diag(other.differential(i).matrix());
                ModuleMap::new_unchecked(components[(i - lo) as usize].clone(), components[(i - lo + 1) as usize].clone(), m)
            })
            .collect();
        BoundedComplex::new_unchecked(&self.algebra, lo, components, differentials)
    }

    /// Degreewise dual `Hom_A(-, A)` over the opposite algebra `op`; components
    /// must be canonical projectives, and `e_v A` dualizes to `e_v A^op`.
    pub fn dualize(&self, op: &Arc<Algebra>) -> Result<Self> {
        for c in &self.components {
            if c.projective_summands().is_none() {
                return Err(Error::InvalidComplex("dualizing needs canonical projective components".into()));
            }
        }
        let components: Vec<Module> =
            (0..self.components.len()).rev().map(|k| Module::projective(op, self.components[k].projective_summands().unwrap())).collect();
        let n = self.components.len();
        let differentials = (0..self.differentials.len())
            .rev()
            .map(|k| {
                // d^k: X^k → X^{k+1} dualizes to (X^{k+1})* → (X^k)*
                let src = &components[n - 2 - k];
                let dst = &components[n - 1 - k];
                dual_map(&self.differentials[k], src, dst)
            })
            .collect();
        Ok(BoundedComplex::new_unchecked(op, -self.hi(), components, differentials))
    }
}

/// Dual of `f: P → Q` between canonical projectives, as the map
/// `Q* → P*`, `ψ ↦ ψ ∘ f`, with `(⊕ e_w A)* = ⊕ e_w A^op`.
pub fn dual_map(f: &ModuleMap, q_dual: &Module, p_dual: &Module) -> ModuleMap {
    let alg = f.source().algebra();
    let field = alg.field();
    let ps = f.source().projective_summands().expect("canonical projective");
    let qs = f.target().projective_summands().expect("canonical projective");
    let offsets = |summands: &[usize]| -> Vec<usize> {
        let mut o = Vec::new();
        let mut acc = 0;
        for &v in summands {
            o.push(acc);
            acc += alg.right_ideal_basis(v).len();
        }
        o
    };
    let (p_off, q_off) = (offsets(ps), offsets(qs));
    // P*'s summand for vertex v has basis: elements a with right vertex v (A e_v)
    let dual_basis = |v: usize| -> Vec<usize> { (0..alg.dim()).filter(|&b| alg.right_vertex(b) == v).collect() };
    let p_dual_off = {
        let mut o = Vec::new();
        let mut acc = 0;
        for &v in ps {
            o.push(acc);
            acc += dual_basis(v).len();
        }
        o
    };
    let q_dual_off = {
        let mut o = Vec::new();
        let mut acc = 0;
        for &w in qs {
            o.push(acc);
            acc += dual_basis(w).len();
        }
        o
    };
    let mut m = Matrix::zeros(field, p_dual.dim(), q_dual.dim());
    for (i, &v) in ps.iter().enumerate() {
        let gen = p_off[i] + alg.right_ideal_basis(v).iter().position(|&c| c == alg.idempotent(v)).unwrap();
        let image = f.matrix().col(gen);
        let pd = dual_basis(v);
        for (j, &w) in qs.iter().enumerate() {
            // component of f(gen_i) in the j-th summand: c ∈ e_w A e_v
            let block = alg.right_ideal_basis(w);
            let qd = dual_basis(w);
            for (r, &c) in block.iter().enumerate() {
                let coeff = image[q_off[j] + r];
                if coeff == 0 {
                    continue;
                }
                for (s, &a) in qd.iter().enumerate() {
                    // ψ with ψ(gen_j) = a sends gen_i to a c
                    for &(k, t) in alg.product(a, c) {
                        let row = p_dual_off[i] + pd.iter().position(|&x| x == k).expect("a c lies in A e_v");
                        let col = q_dual_off[j] + s;
                        let val = field.add(m.get(row, col), field.mul(coeff, t));
                        m.set(row, col, val);
                    }
                }
            }
        }
    }
    ModuleMap::new_unchecked(q_dual.clone(), p_dual.clone(), m)
}

fn union_range(a: &BoundedComplex, b: &BoundedComplex) -> (i64, i64) {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo, b.hi()),
        (false, true) => (a.lo, a.hi()),
        (false, false) => (a.lo.min(b.lo), a.hi().max(b.hi())),
    }
}

/// Degreewise maps `f^i: X^i → Y^i` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: BoundedComplex,
    target: BoundedComplex,
    lo: i64,
    maps: Vec<ModuleMap>,
}

/// Maps `h^i: X^i → Y^{i-1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub lo: i64,
    pub maps: Vec<ModuleMap>,
}

impl ChainMap {
    /// `maps[k]` is the component in degree `lo + k`; degrees outside are zero.
    pub fn new(source: &BoundedComplex, target: &BoundedComplex, lo: i64, maps: Vec<ModuleMap>) -> Result<Self> {
        let f = ChainMap { source: source.clone(), target: target.clone(), lo, maps };
        let (a, b) = f.range();
        for i in a..=b {
            let fi = f.map(i);
            if fi.source().dim() != source.component(i).dim() || fi.target().dim() != target.component(i).dim() {
                return Err(Error::InvalidComplex(format!("chain map component {i} has the wrong shape")));
            }
        }
        for i in a - 1..=b {
            let lhs = f.map(i + 1).compose(&source.differential(i));
            let rhs = target.differential(i).compose(&f.map(i));
            if lhs.matrix() != rhs.matrix() {
                return Err(Error::InvalidComplex(format!("chain map does not commute at degree {i}")));
            }
        }
        Ok(f)
    }

    pub fn identity(x: &BoundedComplex) -> Self {
        let maps = (x.lo..=x.hi()).map(|i| ModuleMap::identity(&x.component(i))).collect();
        ChainMap { source: x.clone(), target: x.clone(), lo: x.lo, maps }
    }

    pub fn zero(x: &BoundedComplex, y: &BoundedComplex) -> Self {
        ChainMap { source: x.clone(), target: y.clone(), lo: 0, maps: Vec::new() }
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.source
    }

    pub fn target(&self) -> &BoundedComplex {
        &self.target
    }

    fn range(&self) -> (i64, i64) {
        union_range(&self.source, &self.target)
    }

    pub fn map(&self, i: i64) -> ModuleMap {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            return self.maps[k as usize].clone();
        }
        ModuleMap::zero(&self.source.component(i), &self.target.component(i))
    }

    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let (a, b) = union_range(&other.source, &self.target);
        let maps = (a..=b).map(|i| self.map(i).compose(&other.map(i))).collect();
        ChainMap { source: other.source.clone(), target: self.target.clone(), lo: a, maps }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        let (a, b) = self.range();
        let maps = (a..=b).map(|i| self.map(i).sub(&other.map(i))).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), lo: a, maps }
    }

    /// The mapping cone: `C^i = X^{i+1} ⊕ Y^i` with `d(x, y) = (-d x, f x + d y)`.
    pub fn cone(&self) -> BoundedComplex {
        let (x, y) = (&self.source, &self.target);
        let alg = x.algebra().clone();
        let (a, b) = union_range(&x.shift(1), y);
        if a > b {
            return BoundedComplex::zero(&alg);
        }
        let components: Vec<Module> = (a..=b).map(|i| Module::direct_sum(&alg, &[x.component(i + 1), y.component(i)]).0).collect();
        let differentials = (a..b)
            .map(|i| {
                let (x1, y0) = (x.component(i + 1).dim(), y.component(i).dim());
                let (x2, y1) = (x.component(i + 2).dim(), y.component(i + 1).dim());
                let mut m = Matrix::zeros(alg.field(), x2 + y1, x1 + y0);
                m.paste(0, 0, &x.differential(i + 1).matrix().neg());
                m.paste(x2, 0, self.map(i + 1).matrix());
                m.paste(x2, x1, y.differential(i).matrix());
                ModuleMap::new_unchecked(components[(i - a) as usize].clone(), components[(i - a + 1) as usize].clone(), m)
            })
            .collect();
        BoundedComplex::new_unchecked(&alg, a, components, differentials)
    }

    /// A homotopy `h` with `f = d h + h d`, if one exists.
    pub fn null_homotopy(&self) -> Option<Homotopy> {
        let (x, y) = (&self.source, &self.target);
        let field = x.algebra().field();
        let (a, b) = self.range();
        if a > b {
            return Some(Homotopy { lo: 0, maps: Vec::new() });
        }
        // equations live in ⊕_i Hom_k(X^i, Y^i), flattened degree by degree
        let mut offsets = Vec::new();
        let mut len = 0;
        for i in a..=b {
            offsets.push(len);
            len += x.component(i).dim() * y.component(i).dim();
        }
        let mut columns = Vec::new();
        let mut unknowns: Vec<(i64, ModuleMap)> = Vec::new();
        for i in a..=b {
            let (xi, yi) = (x.component(i), y.component(i - 1));
            if xi.is_zero() || yi.is_zero() {
                continue;
            }
            for h in xi.hom_basis(&yi).expect("same algebra") {
                let mut col = vec![0; len];
                // degree i: d_Y^{i-1} h
                let top = y.differential(i - 1).compose(&h);
                let o = offsets[(i - a) as usize];
                col[o..o + top.matrix().data().len()].copy_from_slice(top.matrix().data());
                // degree i-1: h d_X^{i-1}
                if i > a {
                    let bottom = h.compose(&x.differential(i - 1));
                    let o = offsets[(i - 1 - a) as usize];
                    col[o..o + bottom.matrix().data().len()].copy_from_slice(bottom.matrix().data());
                }
                columns.push(col);
                unknowns.push((i, h));
            }
        }
        let mut target = vec![0; len];
        for i in a..=b {
            let f = self.map(i);
            let o = offsets[(i - a) as usize];
            target[o..o + f.matrix().data().len()].copy_from_slice(f.matrix().data());
        }
        let coeffs = crate::module::solve_combination(field, len, &columns, &target)?;
        let mut maps: Vec<ModuleMap> = (a..=b).map(|i| ModuleMap::zero(&x.component(i), &y.component(i - 1))).collect();
        for ((i, h), c) in unknowns.iter().zip(coeffs) {
            if c != 0 {
                let k = (i - a) as usize;
                maps[k] = maps[k].add(&h.scale(c));
            }
        }
        Some(Homotopy { lo: a, maps })
    }

    pub fn is_null_homotopic(&self) -> bool {
        self.null_homotopy().is_some()
    }
}

impl BoundedComplex {
    pub fn is_contractible(&self) -> bool {
        ChainMap::identity(self).is_null_homotopic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn x_map() -> (Module, ModuleMap) {
        let r2 = fixtures::r2();
        let p = Module::regular(&r2);
        let x = r2.label_index("x").unwrap();
        let f = ModuleMap::new(&p, &p, p.action(x).clone()).unwrap();
        (p, f)
    }

    fn periodic(lo: i64, hi: i64) -> BoundedComplex {
        let (p, f) = x_map();
        let n = (hi - lo + 1) as usize;
        BoundedComplex::new(&fixtures::r2(), lo, vec![p; n], vec![f; n - 1]).unwrap()
    }

    #[test]
    fn truncations() {
        let x = periodic(-2, 2);
        assert!(x.truncate_ge(3).is_empty());
        assert!(x.truncate_ge(1).truncate_le(0).is_empty());
        assert_eq!(x.truncate_le(0).hi(), 0);
        assert_eq!(x.homology_dim(0), 0);
        assert_eq!(x.homology_dim(-2), 1);
        assert_eq!(x.homology_dim(2), 1);
    }

    #[test]
    fn cones() {
        let x = periodic(0, 1);
        let c = ChainMap::identity(&x).cone();
        assert!(c.is_contractible());
        let (p, f) = x_map();
        let stalk = BoundedComplex::stalk(&p, 0);
        let g = ChainMap::new(&stalk, &stalk, 0, vec![f.clone()]).unwrap();
        let c = g.cone();
        assert_eq!(c.homology_dim(-1), 1);
        assert_eq!(c.homology_dim(0), 1);
        let z = ChainMap::zero(&x, &x).cone();
        let sum = x.shift(1).direct_sum(&x);
        assert_eq!(z.total_dim(), sum.total_dim());
    }

    #[test]
    fn null_homotopies() {
        let (p, f) = x_map();
        let stalk = BoundedComplex::stalk(&p, 0);
        let g = ChainMap::new(&stalk, &stalk, 0, vec![f]).unwrap();
        assert!(!g.is_null_homotopic());
        assert!(ChainMap::zero(&stalk, &stalk).is_null_homotopic());
        let id = ModuleMap::identity(&p);
        let contractible = BoundedComplex::new(&fixtures::r2(), 0, vec![p.clone(), p.clone()], vec![id]).unwrap();
        assert!(contractible.is_contractible());
        assert!(!periodic(0, 2).is_contractible());
    }

    #[test]
    fn rejects_non_complexes() {
        let r2 = fixtures::r2();
        let p = Module::regular(&r2);
        let id = ModuleMap::identity(&p);
        assert!(BoundedComplex::new(&r2, 0, vec![p.clone(), p.clone(), p], vec![id.clone(), id]).is_err());
    }

    #[test]
    fn duals() {
        let x = periodic(-2, 2);
        let op = std::sync::Arc::new(fixtures::r2().opposite());
        let d = x.dualize(&op).unwrap();
        assert_eq!((d.lo(), d.hi()), (-2, 2));
        for i in -1..=1 {
            assert_eq!(d.homology_dim(i), 0);
        }
        let back = std::sync::Arc::new(op.opposite());
        let dd = d.dualize(&back).unwrap();
        for i in -2..2 {
            assert_eq!(dd.differential(i).matrix(), x.differential(i).matrix());
        }
        let c = BoundedComplex::new(&fixtures::r2(), 0, vec![x.component(0), x.component(0)], vec![ModuleMap::identity(&x.component(0))]).unwrap();
        assert!(c.dualize(&op).unwrap().is_contractible());
    }
}
