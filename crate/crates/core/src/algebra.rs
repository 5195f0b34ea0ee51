//! Finite-dimensional algebras given by quivers with relations, their opposites,
//! and 2×2 upper triangular matrix algebras over them.
//!
//! Paths compose like functions: the path `p q` runs along `q` first and then
//! along `p`. A path from `s` to `t` satisfies `e_t p = p = p e_s`, so the right
//! ideal `e_v A` is spanned by the paths ending at `v`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};
use crate::module::Module;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coeff: i64,
    /// Arrow names, written left to right as a product.
    pub path: Vec<String>,
}

/// A quiver with relations and a bound `N` such that every path of length `N`
/// vanishes in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub p: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
    pub nilpotency_bound: usize,
}

/// A finite-dimensional associative unital algebra over `F_p`, with a basis in
/// which every element is homogeneous for the vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Fp,
    labels: Vec<String>,
    /// `products[i * dim + j]` is the sparse coordinate vector of `b_i b_j`.
    products: Vec<Vec<(usize, u32)>>,
    unit: Vec<u32>,
    vertices: Vec<String>,
    idempotents: Vec<usize>,
    left_vertex: Vec<usize>,
    right_vertex: Vec<usize>,
    radical: Vec<usize>,
    /// Radical generators; together with the idempotents they generate the algebra.
    generators: Vec<usize>,
    /// Each basis element as a product of idempotents and generators.
    words: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Outcome of a bounded resolution search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Exceeded,
}

type Path = Vec<usize>;

struct Quiver {
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

impl Quiver {
    fn path_source(&self, path: &[usize], trivial: usize) -> usize {
        path.last().map_or(trivial, |&a| self.src[a])
    }
    fn path_target(&self, path: &[usize], trivial: usize) -> usize {
        path.first().map_or(trivial, |&a| self.tgt[a])
    }
    fn composable(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.src[w[0]] == self.tgt[w[1]])
    }
}

/// A path together with its endpoint vertex when it is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PathKey {
    arrows: Path,
    vertex: usize,
}

/// Builds the algebra `kQ / (I + J^N)` after checking that every path of length
/// `N` lies in `I + J^{N+1}`.
pub fn build_algebra(pres: &QuiverPresentation) -> Result<Algebra> {
    let field = Fp::new(pres.p)?;
    let n_bound = pres.nilpotency_bound;
    if n_bound < 2 {
        return Err(Error::InvalidPresentation("nilpotency bound must be at least 2".into()));
    }
    let vidx: HashMap<&str, usize> = pres.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vidx.len() != pres.vertices.len() {
        return Err(Error::InvalidPresentation("duplicate vertex name".into()));
    }
    let mut quiver = Quiver {
        vertex_names: pres.vertices.clone(),
        arrow_names: Vec::new(),
        src: Vec::new(),
        tgt: Vec::new(),
    };
    let mut aidx = HashMap::new();
    for a in &pres.arrows {
        let s = *vidx.get(a.src.as_str()).ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex {}", a.src)))?;
        let t = *vidx.get(a.tgt.as_str()).ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex {}", a.tgt)))?;
        if aidx.insert(a.name.as_str(), quiver.arrow_names.len()).is_some() || vidx.contains_key(a.name.as_str()) {
            return Err(Error::InvalidPresentation(format!("duplicate name {}", a.name)));
        }
        quiver.arrow_names.push(a.name.clone());
        quiver.src.push(s);
        quiver.tgt.push(t);
    }

    // Relations, split into vertex-homogeneous components.
    let mut relations: Vec<Vec<(Path, u32)>> = Vec::new();
    for (ri, rel) in pres.relations.iter().enumerate() {
        let mut by_ends: HashMap<(usize, usize), Vec<(Path, u32)>> = HashMap::new();
        for term in rel {
            let path: Path = term
                .path
                .iter()
                .map(|n| aidx.get(n.as_str()).copied().ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow {n}"))))
                .collect::<Result<_>>()?;
            if path.len() < 2 {
                return Err(Error::NonAdmissibleRelations(ri));
            }
            if !quiver.composable(&path) {
                return Err(Error::InvalidPresentation(format!("relation {ri}: path {} is not composable", term.path.join("*"))));
            }
            let c = field.reduce(term.coeff);
            if c != 0 {
                let key = (quiver.path_target(&path, 0), quiver.path_source(&path, 0));
                by_ends.entry(key).or_default().push((path, c));
            }
        }
        let mut keys: Vec<_> = by_ends.keys().copied().collect();
        keys.sort();
        for k in keys {
            relations.push(by_ends.remove(&k).unwrap());
        }
    }

    // All paths of length <= N.
    let nv = pres.vertices.len();
    let mut all: Vec<PathKey> = (0..nv).map(|v| PathKey { arrows: vec![], vertex: v }).collect();
    let mut frontier: Vec<Path> = (0..quiver.arrow_names.len()).map(|a| vec![a]).collect();
    for len in 1..=n_bound {
        for p in &frontier {
            all.push(PathKey { arrows: p.clone(), vertex: quiver.path_target(p, 0) });
        }
        if len < n_bound {
            let mut next = Vec::new();
            for p in &frontier {
                for a in 0..quiver.arrow_names.len() {
                    if quiver.src[a] == quiver.tgt[p[0]] {
                        let mut q = vec![a];
                        q.extend_from_slice(p);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
    }
    let index: HashMap<PathKey, usize> = all.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let key_of = |arrows: &[usize], vertex: usize| -> PathKey {
        let vertex = if arrows.is_empty() { vertex } else { quiver.path_target(arrows, 0) };
        PathKey { arrows: arrows.to_vec(), vertex }
    };

    // Column order for elimination: longest paths first.
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(all[i].arrows.len()), i));
    let mut col_of = vec![0; all.len()];
    for (c, &i) in order.iter().enumerate() {
        col_of[i] = c;
    }

    // Ideal elements u r v, truncated above length N.
    let max_len = |k: &PathKey| k.arrows.len();
    let mut ideal = crate::linalg::RowSpace::new(field, all.len());
    let paths_from = |v: usize| -> Vec<&PathKey> { all.iter().filter(|k| quiver.path_source(&k.arrows, k.vertex) == v).collect() };
    let paths_to = |v: usize| -> Vec<&PathKey> { all.iter().filter(|k| quiver.path_target(&k.arrows, k.vertex) == v).collect() };
    for rel in &relations {
        let t = quiver.path_target(&rel[0].0, 0);
        let s = quiver.path_source(&rel[0].0, 0);
        let min_len = rel.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
        for u in paths_from(t) {
            if u.arrows.len() + min_len > n_bound {
                continue;
            }
            for v in paths_to(s) {
                if u.arrows.len() + v.arrows.len() + min_len > n_bound {
                    continue;
                }
                let mut row = vec![0u32; all.len()];
                for (p, c) in rel {
                    let mut w = u.arrows.clone();
                    w.extend_from_slice(p);
                    w.extend_from_slice(&v.arrows);
                    if w.len() > n_bound {
                        continue;
                    }
                    let i = index[&key_of(&w, 0)];
                    row[col_of[i]] = field.add(row[col_of[i]], *c);
                }
                ideal.insert(row);
            }
        }
    }
    let _ = max_len;

    // Every path of length N must vanish.
    for (i, k) in all.iter().enumerate() {
        if k.arrows.len() == n_bound {
            let mut e = vec![0u32; all.len()];
            e[col_of[i]] = 1;
            if !ideal.contains(&e) {
                let path = k.arrows.iter().map(|&a| quiver.arrow_names[a].as_str()).collect::<Vec<_>>().join("*");
                return Err(Error::BoundTooSmall { bound: n_bound, path });
            }
        }
    }

    // Quotient by ideal + J^N: restrict to paths shorter than N.
    let short: Vec<usize> = (0..all.len()).filter(|&i| all[i].arrows.len() < n_bound).collect();
    let mut truncated = crate::linalg::RowSpace::new(field, all.len());
    for row in ideal.basis() {
        let mut r = row.clone();
        for (i, k) in all.iter().enumerate() {
            if k.arrows.len() >= n_bound {
                r[col_of[i]] = 0;
            }
        }
        truncated.insert(r);
    }
    let pivot_cols: std::collections::HashSet<usize> = truncated.pivots().iter().copied().collect();
    let mut basis_paths: Vec<usize> = short.iter().copied().filter(|&i| !pivot_cols.contains(&col_of[i])).collect();
    basis_paths.sort_by_key(|&i| (all[i].arrows.len(), i));
    let dim = basis_paths.len();
    let mut basis_pos = HashMap::new();
    for (b, &i) in basis_paths.iter().enumerate() {
        basis_pos.insert(i, b);
    }
    // Normal form of every short path.
    let normal_form = |i: usize| -> Vec<(usize, u32)> {
        if let Some(&b) = basis_pos.get(&i) {
            return vec![(b, 1)];
        }
        if all[i].arrows.len() >= n_bound {
            return vec![];
        }
        let c = col_of[i];
        let (r, _) = truncated.pivots().iter().enumerate().find(|(_, &pc)| pc == c).expect("pivot path");
        let row = &truncated.basis()[r];
        let mut out = Vec::new();
        for (b, &j) in basis_paths.iter().enumerate() {
            let x = row[col_of[j]];
            if x != 0 {
                out.push((b, field.neg(x)));
            }
        }
        out
    };

    let labels: Vec<String> = basis_paths
        .iter()
        .map(|&i| {
            let k = &all[i];
            if k.arrows.is_empty() {
                format!("e_{}", quiver.vertex_names[k.vertex])
            } else {
                k.arrows.iter().map(|&a| quiver.arrow_names[a].as_str()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();

    let mut products = Vec::with_capacity(dim * dim);
    for &i in &basis_paths {
        for &j in &basis_paths {
            let (pi, pj) = (&all[i], &all[j]);
            let si = quiver.path_source(&pi.arrows, pi.vertex);
            let tj = quiver.path_target(&pj.arrows, pj.vertex);
            if si != tj {
                products.push(vec![]);
                continue;
            }
            let mut w = pi.arrows.clone();
            w.extend_from_slice(&pj.arrows);
            if w.len() >= n_bound {
                products.push(vec![]);
                continue;
            }
            products.push(normal_form(index[&key_of(&w, si)]));
        }
    }

    let idempotents: Vec<usize> = (0..nv).map(|v| basis_pos[&index[&PathKey { arrows: vec![], vertex: v }]]).collect();
    let mut unit = vec![0; dim];
    for &e in &idempotents {
        unit[e] = 1;
    }
    let left_vertex = basis_paths.iter().map(|&i| quiver.path_target(&all[i].arrows, all[i].vertex)).collect();
    let right_vertex = basis_paths.iter().map(|&i| quiver.path_source(&all[i].arrows, all[i].vertex)).collect();
    let radical = (0..dim).filter(|&b| !all[basis_paths[b]].arrows.is_empty()).collect();
    let mut generators = Vec::new();
    for a in 0..quiver.arrow_names.len() {
        if let Some(&b) = index.get(&PathKey { arrows: vec![a], vertex: quiver.tgt[a] }).and_then(|i| basis_pos.get(i)) {
            generators.push(b);
        }
    }
    let mut words = Vec::with_capacity(dim);
    for &i in &basis_paths {
        let k = &all[i];
        if k.arrows.is_empty() {
            words.push(vec![basis_pos[&i]]);
        } else {
            let mut w = Vec::new();
            for &a in &k.arrows {
                match index.get(&PathKey { arrows: vec![a], vertex: quiver.tgt[a] }).and_then(|i| basis_pos.get(i)) {
                    Some(&b) => w.push(b),
                    None => return Err(Error::InvalidPresentation(format!("arrow {} vanishes", quiver.arrow_names[a]))),
                }
            }
            words.push(w);
        }
    }

    let alg = Algebra {
        field,
        labels,
        products,
        unit,
        vertices: quiver.vertex_names.clone(),
        idempotents,
        left_vertex,
        right_vertex,
        radical,
        generators,
        words,
    };
    alg.validate()?;
    Ok(alg)
}

impl Algebra {
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Idempotents followed by radical generators.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut g = self.idempotents.clone();
        g.extend_from_slice(&self.generators);
        g
    }

    pub fn word(&self, b: usize) -> &[usize] {
        &self.words[b]
    }

    /// Vertex `v` with `e_v b = b`.
    pub fn left_vertex(&self, b: usize) -> usize {
        self.left_vertex[b]
    }

    /// Vertex `v` with `b e_v = b`.
    pub fn right_vertex(&self, b: usize) -> usize {
        self.right_vertex[b]
    }

    /// Basis indices spanning `e_v A`.
    pub fn right_ideal_basis(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.left_vertex[b] == v).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.dim() + j]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = f.mul(a, b);
                for &(k, s) in self.product(i, j) {
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, b: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[b] = 1;
        v
    }

    /// Matrix of `x ↦ a x` on the basis.
    pub fn left_mult(&self, b: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            for &(k, s) in self.product(b, j) {
                m.set(k, j, s);
            }
        }
        m
    }

    /// Matrix of `x ↦ x a` on the basis.
    pub fn right_mult(&self, b: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            for &(k, s) in self.product(j, b) {
                m.set(k, j, s);
            }
        }
        m
    }

    /// Checks associativity, the unit, orthogonal idempotents, vertex
    /// homogeneity of the basis and nilpotency of the radical.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::InvalidAlgebra(format!("unit fails on {}", self.labels[i])));
            }
            let l = self.idempotents[self.left_vertex[i]];
            let r = self.idempotents[self.right_vertex[i]];
            if self.product(l, i) != [(i, 1)] || self.product(i, r) != [(i, 1)] {
                return Err(Error::InvalidAlgebra(format!("{} is not vertex homogeneous", self.labels[i])));
            }
        }
        for (a, &ea) in self.idempotents.iter().enumerate() {
            for (b, &eb) in self.idempotents.iter().enumerate() {
                let expect: &[(usize, u32)] = if a == b { &[(ea, 1)] } else { &[] };
                if self.product(ea, eb) != expect {
                    return Err(Error::InvalidAlgebra("idempotents are not orthogonal".into()));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = {
                    let mut v = vec![0; d];
                    for &(k, s) in self.product(i, j) {
                        v[k] = s;
                    }
                    v
                };
                for k in 0..d {
                    let bk = self.basis_vector(k);
                    let lhs = self.mul(&ij, &bk);
                    let jk = self.mul(&self.basis_vector(j), &bk);
                    let rhs = self.mul(&self.basis_vector(i), &jk);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        // radical: nilpotent span
        let mut power: Vec<Vec<u32>> = self.radical.iter().map(|&r| self.basis_vector(r)).collect();
        let mut steps = 0;
        while !power.is_empty() {
            steps += 1;
            if steps > d + 1 {
                return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
            }
            let mut next = crate::linalg::RowSpace::new(f, d);
            for x in &power {
                for &r in &self.radical {
                    next.insert(self.mul(x, &self.basis_vector(r)));
                }
            }
            power = next.basis().to_vec();
        }
        for (b, w) in self.words.iter().enumerate() {
            let mut acc = self.unit.clone();
            for &g in w {
                acc = self.mul(&acc, &self.basis_vector(g));
            }
            if acc != self.basis_vector(b) {
                return Err(Error::InvalidAlgebra(format!("word for {} does not multiply out", self.labels[b])));
            }
        }
        Ok(())
    }

    /// `A^op`: same basis, `b_i ·op b_j := b_j b_i`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                products.push(self.product(j, i).to_vec());
            }
        }
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            products,
            unit: self.unit.clone(),
            vertices: self.vertices.clone(),
            idempotents: self.idempotents.clone(),
            left_vertex: self.right_vertex.clone(),
            right_vertex: self.left_vertex.clone(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
            words: self.words.iter().map(|w| w.iter().rev().copied().collect()).collect(),
        }
    }

    /// The upper triangular algebra `T_2(A)` with basis `E11⊗b`, `E12⊗b`,
    /// `E22⊗b` in that order.
    pub fn triangular2(&self) -> Algebra {
        let d = self.dim();
        let nv = self.num_vertices();
        let slot = |s: usize, b: usize| s * d + b; // 0 = E11, 1 = E12, 2 = E22
        let mut products = vec![Vec::new(); 9 * d * d];
        let td = 3 * d;
        for s in 0..3 {
            for t in 0..3 {
                // E_{ab} E_{cd} = δ_{bc} E_{ad}
                let (r1, c1) = [(1, 1), (1, 2), (2, 2)][s];
                let (r2, c2) = [(1, 1), (1, 2), (2, 2)][t];
                if c1 != r2 {
                    continue;
                }
                let out = match (r1, c2) {
                    (1, 1) => 0,
                    (1, 2) => 1,
                    _ => 2,
                };
                for i in 0..d {
                    for j in 0..d {
                        products[slot(s, i) * td + slot(t, j)] =
                            self.product(i, j).iter().map(|&(k, c)| (slot(out, k), c)).collect();
                    }
                }
            }
        }
        let labels = ["E11", "E12", "E22"]
            .iter()
            .flat_map(|e| self.labels.iter().map(move |l| format!("{e}({l})")))
            .collect();
        let mut unit = vec![0; td];
        for &e in &self.idempotents {
            unit[slot(0, e)] = 1;
            unit[slot(2, e)] = 1;
        }
        let vertices = (1..=2).flat_map(|s| self.vertices.iter().map(move |v| format!("{s}:{v}"))).collect();
        let mut idempotents: Vec<usize> = self.idempotents.iter().map(|&e| slot(0, e)).collect();
        idempotents.extend(self.idempotents.iter().map(|&e| slot(2, e)));
        let mut left_vertex = vec![0; td];
        let mut right_vertex = vec![0; td];
        for b in 0..d {
            left_vertex[slot(0, b)] = self.left_vertex[b];
            right_vertex[slot(0, b)] = self.right_vertex[b];
            left_vertex[slot(1, b)] = self.left_vertex[b];
            right_vertex[slot(1, b)] = nv + self.right_vertex[b];
            left_vertex[slot(2, b)] = nv + self.left_vertex[b];
            right_vertex[slot(2, b)] = nv + self.right_vertex[b];
        }
        let mut radical: Vec<usize> = self.radical.iter().map(|&r| slot(0, r)).collect();
        radical.extend((0..d).map(|b| slot(1, b)));
        radical.extend(self.radical.iter().map(|&r| slot(2, r)));
        radical.sort();
        let mut generators: Vec<usize> = self.generators.iter().map(|&g| slot(0, g)).collect();
        generators.extend(self.generators.iter().map(|&g| slot(2, g)));
        generators.extend(self.idempotents.iter().map(|&e| slot(1, e)));
        let mut words = vec![Vec::new(); td];
        for b in 0..d {
            words[slot(0, b)] = self.words[b].iter().map(|&g| slot(0, g)).collect();
            words[slot(2, b)] = self.words[b].iter().map(|&g| slot(2, g)).collect();
            // E12⊗b = (E11⊗b)(E12⊗e_s) with s the right vertex of b
            let mut w: Vec<usize> = self.words[b].iter().map(|&g| slot(0, g)).collect();
            let e12 = slot(1, self.idempotents[self.right_vertex[b]]);
            if self.idempotents.contains(&b) {
                w = vec![e12];
            } else {
                w.push(e12);
            }
            words[slot(1, b)] = w;
        }
        Algebra {
            field: self.field,
            labels,
            products,
            unit,
            vertices,
            idempotents,
            left_vertex,
            right_vertex,
            radical,
            generators,
            words,
        }
    }

    /// Injective dimension of the regular module on `side`, found as the
    /// projective dimension of the vector-space dual `D(A)` over the opposite
    /// side. Returns `Exceeded` when no resolution terminates within `cap` steps.
    pub fn injective_dimension(self: &Arc<Self>, side: Side, cap: usize) -> Dimension {
        let dual = match side {
            // D(A_A) is a right A^op-module: f·a = f(- a)
            Side::Right => {
                let op = Arc::new(self.opposite());
                let action = (0..self.dim()).map(|b| self.right_mult(b).transpose()).collect();
                Module::from_action(op, self.dim(), action)
            }
            // D(_A A) is a right A-module: f·a = f(a -)
            Side::Left => {
                let action = (0..self.dim()).map(|b| self.left_mult(b).transpose()).collect();
                Module::from_action(self.clone(), self.dim(), action)
            }
        };
        let dual = dual.expect("dual of the regular module is a module");
        dual.projective_dimension(cap)
    }

    /// `(true, d)` when both one-sided injective dimensions are finite within
    /// `cap`, with `d` their maximum.
    pub fn is_iwanaga_gorenstein(self: &Arc<Self>, cap: usize) -> (bool, usize) {
        match (self.injective_dimension(Side::Left, cap), self.injective_dimension(Side::Right, cap)) {
            (Dimension::Finite(l), Dimension::Finite(r)) => (true, l.max(r)),
            _ => (false, 0),
        }
    }
}
