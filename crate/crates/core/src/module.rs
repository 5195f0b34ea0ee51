//! Finite-dimensional right modules given by action matrices.
//!
//! Elements are column vectors and `m·b` is `action(b) * m`, so
//! `action(a b) = action(b) * action(a)`. Every module basis is adapted to the
//! vertex idempotents: each basis vector lies in exactly one `M e_v`. All
//! constructions below preserve this, which keeps Hom spaces block-diagonal.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Dimension};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix, RowSpace};

#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    action: Arc<Vec<Matrix>>,
    vertex: Arc<Vec<usize>>,
    /// Set on the canonical projectives `e_{v_1}A ⊕ ... ⊕ e_{v_r}A`, listing `v_1..v_r`.
    summands: Option<Arc<Vec<usize>>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, dimvec {:?}", self.dim(), self.dimension_vector())?;
        if let Some(s) = &self.summands {
            write!(f, ", projective {:?}", s)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn vertices_of(algebra: &Algebra, dim: usize, action: &[Matrix]) -> Result<Vec<usize>> {
    let mut vertex = vec![usize::MAX; dim];
    for (v, &e) in algebra.idempotents().iter().enumerate() {
        let m = &action[e];
        for i in 0..dim {
            for j in 0..dim {
                let x = m.get(i, j);
                let ok = if i == j { x <= 1 } else { x == 0 };
                if !ok {
                    return Err(Error::InvalidModule("basis is not adapted to the vertex idempotents".into()));
                }
            }
            if m.get(i, i) == 1 {
                if vertex[i] != usize::MAX {
                    return Err(Error::InvalidModule("vertex idempotents are not orthogonal".into()));
                }
                vertex[i] = v;
            }
        }
    }
    if vertex.contains(&usize::MAX) {
        return Err(Error::InvalidModule("idempotents do not sum to the identity".into()));
    }
    Ok(vertex)
}

impl Module {
    /// Validated module from one action matrix per basis element of the algebra.
    pub fn from_action(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        if action.len() != algebra.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("action matrices have the wrong shape".into()));
        }
        let vertex = vertices_of(&algebra, dim, &action)?;
        let m = Module { algebra, action: Arc::new(action), vertex: Arc::new(vertex), summands: None };
        m.check_action()?;
        Ok(m)
    }

    /// Module from actions of the idempotents and radical generators only; the
    /// remaining basis elements act through their words.
    pub fn from_generator_action(algebra: Arc<Algebra>, dim: usize, given: &[(usize, Matrix)]) -> Result<Module> {
        let field = algebra.field();
        let mut known: Vec<Option<Matrix>> = vec![None; algebra.dim()];
        for (b, m) in given {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("action of {} has the wrong shape", algebra.labels()[*b])));
            }
            known[*b] = Some(m.clone());
        }
        for g in algebra.generating_set() {
            if known[g].is_none() {
                known[g] = Some(Matrix::zeros(field, dim, dim));
            }
        }
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            // action(g_1 g_2 ... g_k) = action(g_k) ... action(g_1)
            let mut acc = Matrix::identity(field, dim);
            for &g in algebra.word(b) {
                acc = known[g].as_ref().unwrap().mul(&acc);
            }
            if let Some(m) = &known[b] {
                if *m != acc {
                    return Err(Error::InvalidModule(format!("action of {} disagrees with its word", algebra.labels()[b])));
                }
            }
            action.push(acc);
        }
        Module::from_action(algebra, dim, action)
    }

    pub(crate) fn from_action_unchecked(algebra: Arc<Algebra>, action: Vec<Matrix>, vertex: Vec<usize>) -> Module {
        let m = Module { algebra, action: Arc::new(action), vertex: Arc::new(vertex), summands: None };
        debug_assert!(m.check_action().is_ok(), "constructed action is not a module");
        m
    }

    fn check_action(&self) -> Result<()> {
        let a = &self.algebra;
        let n = self.dim();
        let field = a.field();
        let mut unit = Matrix::zeros(field, n, n);
        for (b, &c) in a.unit().iter().enumerate() {
            if c != 0 {
                unit = unit.add(&self.action[b].scale(c));
            }
        }
        if !unit.is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut lhs = Matrix::zeros(field, n, n);
                for &(k, c) in a.product(i, j) {
                    lhs = lhs.add(&self.action[k].scale(c));
                }
                if lhs != self.action[j].mul(&self.action[i]) {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let field = algebra.field();
        Module {
            algebra: algebra.clone(),
            action: Arc::new(vec![Matrix::zeros(field, 0, 0); algebra.dim()]),
            vertex: Arc::new(Vec::new()),
            summands: Some(Arc::new(Vec::new())),
        }
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: &Arc<Algebra>, v: usize) -> Module {
        let field = algebra.field();
        let action = (0..algebra.dim())
            .map(|b| {
                let c = u32::from(b == algebra.idempotent(v));
                Matrix::from_fn(field, 1, 1, |_, _| c)
            })
            .collect();
        Module::from_action_unchecked(algebra.clone(), action, vec![v])
    }

    /// The indecomposable projective `e_v A`, with basis the paths ending at `v`.
    pub fn indecomposable_projective(algebra: &Arc<Algebra>, v: usize) -> Module {
        Module::projective(algebra, &[v])
    }

    /// The canonical projective `e_{v_1}A ⊕ ... ⊕ e_{v_r}A`.
    pub fn projective(algebra: &Arc<Algebra>, summands: &[usize]) -> Module {
        let field = algebra.field();
        let blocks: Vec<Vec<usize>> = summands.iter().map(|&v| algebra.right_ideal_basis(v)).collect();
        let dim: usize = blocks.iter().map(Vec::len).sum();
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let mut m = Matrix::zeros(field, dim, dim);
            let mut off = 0;
            for block in &blocks {
                for (j, &c) in block.iter().enumerate() {
                    for &(k, s) in algebra.product(c, b) {
                        let i = block.iter().position(|&x| x == k).expect("right ideal is closed");
                        m.set(off + i, off + j, s);
                    }
                }
                off += block.len();
            }
            action.push(m);
        }
        let vertex = blocks.iter().flat_map(|block| block.iter().map(|&c| algebra.right_vertex(c))).collect();
        let mut m = Module::from_action_unchecked(algebra.clone(), action, vertex);
        m.summands = Some(Arc::new(summands.to_vec()));
        m
    }

    /// `A_A` as the canonical projective over all vertices.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let all: Vec<usize> = (0..algebra.num_vertices()).collect();
        Module::projective(algebra, &all)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Vertex of each basis vector.
    pub fn vertices(&self) -> &[usize] {
        &self.vertex
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.algebra.num_vertices()];
        for &v in self.vertex.iter() {
            d[v] += 1;
        }
        d
    }

    /// Summand vertices when this is a canonical projective.
    pub fn projective_summands(&self) -> Option<&[usize]> {
        self.summands.as_deref().map(Vec::as_slice)
    }

    /// Offsets of the summand generators `e_{v_k}` inside a canonical projective.
    fn generator_positions(&self) -> Option<Vec<usize>> {
        let summands = self.projective_summands()?;
        let mut out = Vec::with_capacity(summands.len());
        let mut off = 0;
        for &v in summands {
            let block = self.algebra.right_ideal_basis(v);
            out.push(off + block.iter().position(|&c| c == self.algebra.idempotent(v)).unwrap());
            off += block.len();
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Direct sum with inclusions and projections of the summands.
    pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> (Module, Vec<ModuleMap>, Vec<ModuleMap>) {
        let field = algebra.field();
        let dim: usize = parts.iter().map(Module::dim).sum();
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let mut m = Matrix::zeros(field, dim, dim);
            let mut off = 0;
            for p in parts {
                m.paste(off, off, p.action(b));
                off += p.dim();
            }
            action.push(m);
        }
        let vertex = parts.iter().flat_map(|p| p.vertices().iter().copied()).collect();
        let mut sum = Module::from_action_unchecked(algebra.clone(), action, vertex);
        if parts.iter().all(|p| p.summands.is_some()) {
            sum.summands = Some(Arc::new(parts.iter().flat_map(|p| p.projective_summands().unwrap().iter().copied()).collect()));
        }
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut off = 0;
        for p in parts {
            let i = Matrix::from_fn(field, dim, p.dim(), |r, c| u32::from(r == off + c));
            proj.push(ModuleMap::new_unchecked(sum.clone(), p.clone(), i.transpose()));
            incl.push(ModuleMap::new_unchecked(p.clone(), sum.clone(), i));
            off += p.dim();
        }
        (sum, incl, proj)
    }

    pub fn sum(&self, other: &Module) -> Module {
        Module::direct_sum(&self.algebra, &[self.clone(), other.clone()]).0
    }

    /// Submodule spanned by `vectors` (which must span a submodule), with its inclusion.
    pub fn submodule(&self, vectors: &[Vec<u32>]) -> (Module, ModuleMap) {
        let field = self.field();
        let mut space = RowSpace::new(field, self.dim());
        for v in vectors {
            // split into vertex components; a submodule contains them all
            for u in 0..self.algebra.num_vertices() {
                let comp: Vec<u32> = v.iter().enumerate().map(|(i, &x)| if self.vertex[i] == u { x } else { 0 }).collect();
                if comp.iter().any(|&x| x != 0) {
                    space.insert(comp);
                }
            }
        }
        let basis = space.basis().to_vec();
        let pivots = space.pivots().to_vec();
        let incl = Matrix::from_columns(field, self.dim(), &basis);
        let action = self
            .action
            .iter()
            .map(|m| {
                let image = m.mul(&incl);
                let coords = image.select_rows(&pivots);
                debug_assert_eq!(incl.mul(&coords), image, "span is not a submodule");
                coords
            })
            .collect();
        let vertex = pivots.iter().map(|&p| self.vertex[p]).collect();
        let sub = Module::from_action_unchecked(self.algebra.clone(), action, vertex);
        let map = ModuleMap::new_unchecked(sub.clone(), self.clone(), incl);
        (sub, map)
    }

    /// Quotient by the submodule spanned by `vectors`, with the projection.
    pub fn quotient(&self, vectors: &[Vec<u32>]) -> (Module, ModuleMap) {
        let field = self.field();
        let mut space = RowSpace::new(field, self.dim());
        for v in vectors {
            space.insert(v.clone());
        }
        let mut is_pivot = vec![false; self.dim()];
        for &p in space.pivots() {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| !is_pivot[i]).collect();
        // column j of the projection: e_j reduced modulo the submodule, read at `keep`
        let mut proj = Matrix::zeros(field, keep.len(), self.dim());
        for j in 0..self.dim() {
            let mut e = vec![0; self.dim()];
            e[j] = 1;
            space.reduce(&mut e);
            for (r, &i) in keep.iter().enumerate() {
                proj.set(r, j, e[i]);
            }
        }
        let section = Matrix::from_fn(field, self.dim(), keep.len(), |i, c| u32::from(keep[c] == i));
        let action = self.action.iter().map(|m| proj.mul(&m.mul(&section))).collect();
        let vertex = keep.iter().map(|&i| self.vertex[i]).collect();
        let q = Module::from_action_unchecked(self.algebra.clone(), action, vertex);
        let map = ModuleMap::new_unchecked(self.clone(), q.clone(), proj);
        (q, map)
    }

    /// `M·rad A`, spanned by the images of the radical generators.
    pub fn radical_vectors(&self) -> Vec<Vec<u32>> {
        let mut space = RowSpace::new(self.field(), self.dim());
        for &g in self.algebra.generators() {
            for col in self.action[g].columns() {
                space.insert(col);
            }
        }
        space.basis().to_vec()
    }

    /// Minimal projective cover `P(M) ↠ M`. The generators are the standard basis
    /// vectors outside the leading positions of `M·rad`.
    pub fn projective_cover(&self) -> ModuleMap {
        if self.summands.is_some() {
            return ModuleMap::identity(self);
        }
        let rad = self.radical_vectors();
        let mut space = RowSpace::new(self.field(), self.dim());
        for r in rad {
            space.insert(r);
        }
        let mut is_pivot = vec![false; self.dim()];
        for &p in space.pivots() {
            is_pivot[p] = true;
        }
        let tops: Vec<usize> = (0..self.dim()).filter(|&i| !is_pivot[i]).collect();
        let summands: Vec<usize> = tops.iter().map(|&i| self.vertex[i]).collect();
        let cover = Module::projective(&self.algebra, &summands);
        let images: Vec<Vec<u32>> = tops
            .iter()
            .map(|&i| {
                let mut e = vec![0; self.dim()];
                e[i] = 1;
                e
            })
            .collect();
        ModuleMap::from_generator_images(&cover, self, &images)
    }

    /// Kernel of the projective cover, with its inclusion into the cover.
    pub fn syzygy(&self) -> (Module, ModuleMap) {
        self.projective_cover().kernel()
    }

    pub fn is_projective(&self) -> bool {
        self.summands.is_some() || self.projective_cover().source().dim() == self.dim()
    }

    pub fn projective_dimension(&self, cap: usize) -> Dimension {
        let mut m = self.clone();
        for i in 0..=cap {
            if m.is_projective() {
                return Dimension::Finite(i);
            }
            m = m.syzygy().0;
        }
        Dimension::Exceeded
    }

    /// Basis of `Hom_A(self, target)`.
    pub fn hom_basis(&self, target: &Module) -> Result<Vec<ModuleMap>> {
        self.check_same_algebra(target)?;
        Ok(hom_basis_unchecked(self, target))
    }

    pub fn hom_dim(&self, target: &Module) -> Result<usize> {
        Ok(self.hom_basis(target)?.len())
    }

    /// `Hom(M, N)` modulo maps factoring through a projective.
    pub fn stable_hom(&self, target: &Module) -> Result<StableHom> {
        self.check_same_algebra(target)?;
        let all = hom_basis_unchecked(self, target);
        let cover = target.projective_cover();
        let through: Vec<Vec<u32>> = hom_basis_unchecked(self, cover.source())
            .iter()
            .map(|h| cover.compose(h).matrix.data().to_vec())
            .collect();
        let keep = quotient_basis(self.field(), &through, &all.iter().map(|f| f.matrix.data().to_vec()).collect::<Vec<_>>());
        let representatives = keep.into_iter().map(|i| all[i].clone()).collect::<Vec<_>>();
        Ok(StableHom { dim: representatives.len(), representatives })
    }

    /// `Hom_A(M, A_A)` as a right module over the opposite algebra `op`, with
    /// `(φ·a)(m) = a φ(m)`. Returns the module and, for each of its basis
    /// vectors, the corresponding map `M → A_A`.
    pub fn star_dual(&self, op: &Arc<Algebra>) -> (Module, Vec<ModuleMap>) {
        let a = &self.algebra;
        let regular = Module::regular(a);
        let field = self.field();
        let mut maps = Vec::new();
        let mut vertex = Vec::new();
        // Hom(M, A) = ⊕_v Hom(M, e_v A), and e_v Hom(M, A) is the v-th piece
        let (_, incl, _) = Module::direct_sum(a, &(0..a.num_vertices()).map(|v| Module::projective(a, &[v])).collect::<Vec<_>>());
        for v in 0..a.num_vertices() {
            for h in hom_basis_unchecked(self, incl[v].source()) {
                maps.push(ModuleMap::new_unchecked(self.clone(), regular.clone(), incl[v].matrix.mul(&h.matrix)));
                vertex.push(v);
            }
        }
        let vecs: Vec<Vec<u32>> = maps.iter().map(|m| m.matrix.data().to_vec()).collect();
        let width = regular.dim() * self.dim();
        let coords = crate::linalg::Coordinates::new(Matrix::from_columns(field, width, &vecs));
        let action = (0..a.dim())
            .map(|b| {
                // left multiplication by b on A_A, in the regular module basis
                let lm = left_mult_on(&regular, b);
                let cols: Vec<Vec<u32>> = maps
                    .iter()
                    .map(|m| coords.of(lm.mul(&m.matrix).data()).expect("Hom(M, A) is a left A-module"))
                    .collect();
                Matrix::from_columns(field, maps.len(), &cols)
            })
            .collect();
        (Module::from_action_unchecked(op.clone(), action, vertex), maps)
    }
}

/// Matrix of left multiplication by the basis element `b` on the canonical
/// regular module.
fn left_mult_on(regular: &Module, b: usize) -> Matrix {
    let a = regular.algebra();
    let positions: Vec<usize> = (0..a.num_vertices()).flat_map(|v| a.right_ideal_basis(v)).collect();
    let mut index = vec![0; a.dim()];
    for (i, &c) in positions.iter().enumerate() {
        index[c] = i;
    }
    let mut m = Matrix::zeros(a.field(), a.dim(), a.dim());
    for (j, &c) in positions.iter().enumerate() {
        for &(k, s) in a.product(b, c) {
            m.set(index[k], j, s);
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct StableHom {
    pub dim: usize,
    pub representatives: Vec<ModuleMap>,
}

/// Indices of `vectors` that extend `sub` to a basis of `span(sub ∪ vectors)`.
pub(crate) fn quotient_basis(field: Fp, sub: &[Vec<u32>], vectors: &[Vec<u32>]) -> Vec<usize> {
    let Some(width) = vectors.first().or(sub.first()).map(Vec::len) else {
        return Vec::new();
    };
    let mut space = RowSpace::new(field, width);
    for s in sub {
        space.insert(s.clone());
    }
    (0..vectors.len()).filter(|&i| space.insert(vectors[i].clone())).collect()
}

fn hom_basis_unchecked(source: &Module, target: &Module) -> Vec<ModuleMap> {
    let field = source.field();
    if let Some(gens) = source.generator_positions() {
        let summands = source.projective_summands().unwrap().to_vec();
        let mut out = Vec::new();
        for (k, &v) in summands.iter().enumerate() {
            for (i, &u) in target.vertices().iter().enumerate() {
                if u == v {
                    let mut images = vec![vec![0; target.dim()]; gens.len()];
                    images[k][i] = 1;
                    out.push(ModuleMap::from_generator_images(source, target, &images));
                }
            }
        }
        return out;
    }
    let (n, m) = (target.dim(), source.dim());
    let mut var = vec![usize::MAX; n * m];
    let mut nvars = 0;
    for i in 0..n {
        for j in 0..m {
            if target.vertices()[i] == source.vertices()[j] {
                var[i * m + j] = nvars;
                nvars += 1;
            }
        }
    }
    let alg = source.algebra();
    let mut eqs = RowSpace::new(field, nvars);
    for &g in alg.generators() {
        let (ms, ns) = (source.action(g), target.action(g));
        for i in 0..n {
            for j in 0..m {
                // (X ρ_M(g) − ρ_N(g) X)[i][j]
                let mut row = vec![0u32; nvars];
                let mut nonzero = false;
                for k in 0..m {
                    let c = ms.get(k, j);
                    if c != 0 && var[i * m + k] != usize::MAX {
                        let x = var[i * m + k];
                        row[x] = field.add(row[x], c);
                        nonzero = true;
                    }
                }
                for k in 0..n {
                    let c = ns.get(i, k);
                    if c != 0 && var[k * m + j] != usize::MAX {
                        let x = var[k * m + j];
                        row[x] = field.sub(row[x], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    eqs.insert(row);
                }
            }
        }
    }
    eqs.null_space()
        .into_iter()
        .map(|sol| {
            let mut x = Matrix::zeros(field, n, m);
            for i in 0..n {
                for j in 0..m {
                    if var[i * m + j] != usize::MAX {
                        x.set(i, j, sol[var[i * m + j]]);
                    }
                }
            }
            ModuleMap::new_unchecked(source.clone(), target.clone(), x)
        })
        .collect()
}

/// A module homomorphism, stored as a `target.dim × source.dim` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}, {:?})", self.source, self.target, self.matrix)
    }
}

impl ModuleMap {
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleMap> {
        source.check_same_algebra(target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let alg = source.algebra();
        for b in alg.generating_set() {
            if matrix.mul(source.action(b)) != target.action(b).mul(&matrix) {
                return Err(Error::NotAModuleMap(format!("fails to commute with {}", alg.labels()[b])));
            }
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        let m = ModuleMap { source, target, matrix };
        debug_assert!(m.is_intertwining(), "matrix does not intertwine the actions");
        m
    }

    fn is_intertwining(&self) -> bool {
        self.matrix.rows() == self.target.dim()
            && self.matrix.cols() == self.source.dim()
            && self
                .source
                .algebra()
                .generating_set()
                .into_iter()
                .all(|b| self.matrix.mul(self.source.action(b)) == self.target.action(b).mul(&self.matrix))
    }

    /// The map out of a canonical projective sending the k-th summand generator to `images[k]`.
    pub fn from_generator_images(source: &Module, target: &Module, images: &[Vec<u32>]) -> ModuleMap {
        let alg = source.algebra();
        let summands = source.projective_summands().expect("source must be a canonical projective");
        assert_eq!(summands.len(), images.len());
        let mut m = Matrix::zeros(source.field(), target.dim(), source.dim());
        let mut off = 0;
        for (&v, y) in summands.iter().zip(images) {
            for (j, c) in alg.right_ideal_basis(v).into_iter().enumerate() {
                let col = target.action(c).mul_vec(y);
                for (i, &x) in col.iter().enumerate() {
                    m.set(i, off + j, x);
                }
            }
            off += alg.right_ideal_basis(v).len();
        }
        ModuleMap::new_unchecked(source.clone(), target.clone(), m)
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.field(), m.dim()) }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        ModuleMap { source: source.clone(), target: target.clone(), matrix: Matrix::zeros(source.field(), target.dim(), source.dim()) }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(other.target.dim(), self.source.dim(), "composing maps with mismatched modules");
        ModuleMap { source: other.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.neg() }
    }

    /// Same matrix, reinterpreted between modules with identical actions.
    pub fn with_ends(&self, source: &Module, target: &Module) -> ModuleMap {
        debug_assert_eq!(source.dim(), self.source.dim());
        debug_assert_eq!(target.dim(), self.target.dim());
        ModuleMap::new_unchecked(source.clone(), target.clone(), self.matrix.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let inv = self.matrix.inverse()?;
        Some(ModuleMap::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        self.source.submodule(&self.matrix.kernel_basis())
    }

    /// Image, with the corestriction `source ↠ image` and the inclusion `image ↪ target`.
    pub fn image(&self) -> (Module, ModuleMap, ModuleMap) {
        let (im, incl) = self.target.submodule(&self.matrix.columns());
        let coords = crate::linalg::Coordinates::new(incl.matrix.clone());
        let onto = ModuleMap::new_unchecked(self.source.clone(), im.clone(), coords.of_columns(&self.matrix));
        (im, onto, incl)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        self.target.quotient(&self.matrix.columns())
    }

    /// Some `h: source → via.source` with `via ∘ h = self`.
    pub fn lift_through(&self, via: &ModuleMap) -> Option<ModuleMap> {
        let field = self.source.field();
        let e = via.source();
        if let (Some(gens), Some(summands)) = (self.source.generator_positions(), self.source.projective_summands()) {
            let mut images = Vec::with_capacity(gens.len());
            for (&g, &v) in gens.iter().zip(summands) {
                let y = self.matrix.col(g);
                let cols: Vec<usize> = (0..e.dim()).filter(|&i| e.vertices()[i] == v).collect();
                let restricted = via.matrix.select_cols(&cols);
                let z = restricted.solve(&y)?;
                let mut full = vec![0; e.dim()];
                for (k, &i) in cols.iter().enumerate() {
                    full[i] = z[k];
                }
                images.push(full);
            }
            return Some(ModuleMap::from_generator_images(&self.source, e, &images));
        }
        let basis = hom_basis_unchecked(&self.source, e);
        let vecs: Vec<Vec<u32>> = basis.iter().map(|h| via.matrix.mul(&h.matrix).data().to_vec()).collect();
        let c = solve_combination(field, self.matrix.data().len(), &vecs, self.matrix.data())?;
        Some(combine(&self.source, e, &basis, &c))
    }

    /// Some `h: along.target → self.target` with `h ∘ along = self`.
    pub fn extend_along(&self, along: &ModuleMap) -> Option<ModuleMap> {
        let field = self.source.field();
        let e = along.target();
        let basis = hom_basis_unchecked(e, &self.target);
        let vecs: Vec<Vec<u32>> = basis.iter().map(|h| h.matrix.mul(&along.matrix).data().to_vec()).collect();
        let c = solve_combination(field, self.matrix.data().len(), &vecs, self.matrix.data())?;
        Some(combine(e, &self.target, &basis, &c))
    }

    /// Whether the map factors through some projective module.
    pub fn factors_through_projective(&self) -> bool {
        self.lift_through(&self.target.projective_cover()).is_some()
    }
}

/// Coefficients `c` with `Σ c_k vectors[k] = target`.
pub(crate) fn solve_combination(field: Fp, len: usize, vectors: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    if vectors.is_empty() {
        return target.iter().all(|&x| x == 0).then(Vec::new);
    }
    Matrix::from_columns(field, len, vectors).solve(target)
}

pub(crate) fn combine(source: &Module, target: &Module, basis: &[ModuleMap], coeffs: &[u32]) -> ModuleMap {
    let mut m = Matrix::zeros(source.field(), target.dim(), source.dim());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            m = m.add(&b.matrix.scale(c));
        }
    }
    ModuleMap::new_unchecked(source.clone(), target.clone(), m)
}

/// Minimal projective resolution `P_len → ... → P_0 ↠ M`: the returned maps are
/// the cover `P_0 → M` followed by the differentials `P_{k+1} → P_k`.
pub fn projective_resolution(m: &Module, len: usize) -> Vec<ModuleMap> {
    let mut out = Vec::with_capacity(len + 1);
    let cover = m.projective_cover();
    let (mut kernel, mut incl) = cover.kernel();
    out.push(cover);
    for _ in 0..len {
        let c = kernel.projective_cover();
        out.push(incl.compose(&c));
        let (k, i) = c.kernel();
        kernel = k;
        incl = i;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn projective_dimensions_of_fixtures() {
        let r2 = fixtures::r2();
        assert_eq!(Module::indecomposable_projective(&r2, 0).dim(), 2);
        let a9 = fixtures::a9();
        assert_eq!(Module::indecomposable_projective(&a9, 0).dim(), 3);
        let b4 = fixtures::b4();
        assert_eq!(Module::indecomposable_projective(&b4, 1).dim(), 2);
    }

    #[test]
    fn hom_examples() {
        let a9 = fixtures::a9();
        let s1 = Module::simple(&a9, 0);
        let s2 = Module::simple(&a9, 1);
        assert_eq!(s1.hom_dim(&s2).unwrap(), 0);
        let p1 = Module::indecomposable_projective(&a9, 0);
        // End(e_1 A) = e_1 A e_1 is spanned by e_1 alone: the only cycles have length 3
        assert_eq!(p1.hom_dim(&p1).unwrap(), 1);
        for m in [s1, s2, p1] {
            let id = ModuleMap::identity(&m);
            assert!(ModuleMap::new(&m, &m, id.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn hom_of_projective_matches_generic_solver() {
        let a9 = fixtures::a9();
        let p = Module::projective(&a9, &[0, 1]);
        let mut untagged = p.clone();
        untagged.summands = None;
        for target in [Module::simple(&a9, 1), fixtures::a9_m2(), p.clone()] {
            assert_eq!(p.hom_dim(&target).unwrap(), untagged.hom_dim(&target).unwrap());
        }
    }

    #[test]
    fn multiplication_by_x_factorizes() {
        let r2 = fixtures::r2();
        let p = Module::regular(&r2);
        let x = r2.label_index("x").unwrap();
        let f = ModuleMap::new(&p, &p, p.action(x).clone()).unwrap();
        assert_eq!(f.kernel().0.dim(), 1);
        assert_eq!(f.cokernel().0.dim(), 1);
        assert_eq!(f.image().0.dim(), 1);
        let id = ModuleMap::identity(&p);
        assert_eq!(id.kernel().0.dim(), 0);
        assert_eq!(id.cokernel().0.dim(), 0);
    }

    #[test]
    fn covers_and_syzygies() {
        let r2 = fixtures::r2();
        let k = Module::simple(&r2, 0);
        let cover = k.projective_cover();
        assert_eq!(cover.source().dim(), 2);
        let (omega, _) = k.syzygy();
        assert_eq!(omega.dim(), 1);
        assert!(!k.is_projective());
        assert!(Module::zero(&r2).is_projective());

        let a9 = fixtures::a9();
        let m1 = fixtures::a9_m1();
        assert_eq!(m1.projective_cover().source().projective_summands(), Some(&[0][..]));
        let (omega, _) = m1.syzygy();
        assert_eq!(omega.dimension_vector(), fixtures::a9_m2().dimension_vector());
        assert!(Module::indecomposable_projective(&a9, 2).syzygy().0.is_zero());
    }

    #[test]
    fn duals() {
        for a in [fixtures::r2(), fixtures::a9(), fixtures::b4()] {
            let op = Arc::new(a.opposite());
            for v in 0..a.num_vertices() {
                let p = Module::indecomposable_projective(&a, v);
                let (dual, _) = p.star_dual(&op);
                assert!(dual.is_projective());
                assert_eq!(dual.dim(), Module::indecomposable_projective(&op, v).dim());
                let back = Arc::new(op.opposite());
                let (dd, _) = dual.star_dual(&back);
                assert_eq!(dd.dimension_vector(), p.dimension_vector());
            }
        }
        let r2 = fixtures::r2();
        let op = Arc::new(r2.opposite());
        assert_eq!(Module::simple(&r2, 0).star_dual(&op).0.dim(), 1);
    }

    #[test]
    fn stable_hom_examples() {
        let r2 = fixtures::r2();
        let k = Module::simple(&r2, 0);
        assert_eq!(k.stable_hom(&k).unwrap().dim, 1);
        let p = Module::regular(&r2);
        assert_eq!(p.stable_hom(&k).unwrap().dim, 0);
        assert_eq!(k.stable_hom(&p).unwrap().dim, 0);
        assert_eq!(fixtures::a9_m1().stable_hom(&fixtures::a9_m2()).unwrap().dim, 0);
    }

    #[test]
    fn malformed_modules_are_rejected() {
        let r2 = fixtures::r2();
        let f = r2.field();
        let x = r2.label_index("x").unwrap();
        // x acting invertibly is not nilpotent, so x² = 0 fails
        let bad = Module::from_generator_action(r2.clone(), 1, &[(x, Matrix::identity(f, 1))]);
        assert!(bad.is_err());
        let zero_unit = Module::from_generator_action(r2.clone(), 1, &[(r2.idempotent(0), Matrix::zeros(f, 1, 1))]);
        assert!(zero_unit.is_err());
    }
}
