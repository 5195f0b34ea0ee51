//! Brute-force oracles over F_2 shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use recollement::complex::{BoundedComplex, ChainMap};
use recollement::krull_schmidt::is_isomorphic;
use recollement::{Algebra, Matrix, Module, ModuleMap};

/// Every `rows × cols` matrix over F_2 with entries allowed only where `mask` is true.
pub fn masked_matrices(a: &Algebra, rows: usize, cols: usize, mask: impl Fn(usize, usize) -> bool) -> Vec<Matrix> {
    assert_eq!(a.field().p(), 2, "brute-force oracles enumerate over F_2");
    let free: Vec<(usize, usize)> = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).filter(|&(i, j)| mask(i, j)).collect();
    assert!(free.len() <= 20, "too many free entries for enumeration");
    (0u32..1 << free.len())
        .map(|bits| {
            let mut m = Matrix::zeros(a.field(), rows, cols);
            for (k, &(i, j)) in free.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    m.set(i, j, 1);
                }
            }
            m
        })
        .collect()
}

pub fn all_matrices(a: &Algebra, rows: usize, cols: usize) -> Vec<Matrix> {
    masked_matrices(a, rows, cols, |_, _| true)
}

/// Linear maps `m → n` commuting with every generator, found by enumeration.
pub fn brute_homs(m: &Module, n: &Module) -> Vec<Matrix> {
    let a = m.algebra();
    let gens = a.generating_set();
    all_matrices(a, n.dim(), m.dim())
        .into_iter()
        .filter(|f| gens.iter().all(|&g| f.mul(m.action(g)) == n.action(g).mul(f)))
        .collect()
}

/// `log_2` of an exact power of two.
pub fn log2(count: usize) -> usize {
    assert!(count.is_power_of_two());
    count.trailing_zeros() as usize
}

/// Dimension of the space of maps `m → n` factoring through the projective
/// cover of `n`, by enumerating every map into that cover.
pub fn brute_projective_homs_dim(m: &Module, n: &Module) -> usize {
    let cover = n.projective_cover();
    let mut images: Vec<Matrix> = brute_homs(m, cover.source()).into_iter().map(|g| cover.matrix().mul(&g)).collect();
    images.sort_by(|x, y| x.data().cmp(y.data()));
    images.dedup();
    log2(images.len())
}

/// One module per isomorphism class, of each dimension in `1..=max_dim`.
pub fn enumerate_modules(a: &Arc<Algebra>, max_dim: usize) -> Vec<Module> {
    let nv = a.num_vertices();
    let mut out = Vec::new();
    for total in 1..=max_dim {
        for dv in dimension_vectors(nv, total) {
            let vertex: Vec<usize> = dv.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
            let idempotents: Vec<(usize, Matrix)> = (0..nv)
                .map(|v| (a.idempotent(v), Matrix::from_fn(a.field(), total, total, |i, j| u32::from(i == j && vertex[i] == v))))
                .collect();
            let choices: Vec<Vec<Matrix>> = a
                .generators()
                .iter()
                .map(|&g| masked_matrices(a, total, total, |i, j| vertex[i] == a.right_vertex(g) && vertex[j] == a.left_vertex(g)))
                .collect();
            let mut buckets: BTreeMap<Vec<usize>, Vec<Module>> = BTreeMap::new();
            for pick in product(&choices.iter().map(Vec::len).collect::<Vec<_>>()) {
                let mut given = idempotents.clone();
                given.extend(a.generators().iter().zip(&pick).enumerate().map(|(k, (&g, &c))| (g, choices[k][c].clone())));
                let Ok(m) = Module::from_generator_action(a.clone(), total, &given) else { continue };
                let key: Vec<usize> = m.actions().iter().map(Matrix::rank).collect();
                let bucket = buckets.entry(key).or_default();
                if !bucket.iter().any(|b| is_isomorphic(b, &m).unwrap()) {
                    bucket.push(m);
                }
            }
            out.extend(buckets.into_values().flatten());
        }
    }
    out
}

fn dimension_vectors(nv: usize, total: usize) -> Vec<Vec<usize>> {
    if nv == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|d| dimension_vectors(nv - 1, total - d).into_iter().map(move |mut rest| {
            rest.insert(0, d);
            rest
        }))
        .collect()
}

/// Every index tuple below `sizes`.
pub fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out.into_iter().flat_map(|p| (0..s).map(move |i| {
            let mut q = p.clone();
            q.push(i);
            q
        })).collect();
    }
    out
}

/// Every tuple of module maps `X^i → Y^{i+shift}` over the degrees of `x`.
fn brute_degreewise(x: &BoundedComplex, y: &BoundedComplex, shift: i64) -> Vec<Vec<ModuleMap>> {
    let degrees: Vec<i64> = (x.lo()..=x.hi()).collect();
    let options: Vec<Vec<ModuleMap>> = degrees
        .iter()
        .map(|&i| {
            let (s, t) = (x.component(i), y.component(i + shift));
            brute_homs(&s, &t).into_iter().map(|m| ModuleMap::new(&s, &t, m).unwrap()).collect()
        })
        .collect();
    product(&options.iter().map(Vec::len).collect::<Vec<_>>())
        .into_iter()
        .map(|pick| pick.iter().enumerate().map(|(k, &c)| options[k][c].clone()).collect())
        .collect()
}

/// All chain maps `x → y` (same window start), by enumeration.
pub fn brute_chain_maps(x: &BoundedComplex, y: &BoundedComplex) -> Vec<ChainMap> {
    brute_degreewise(x, y, 0).into_iter().filter_map(|maps| ChainMap::new(x, y, x.lo(), maps).ok()).collect()
}

/// Whether some `h^i: X^i → Y^{i-1}` has `f = dh + hd`, by enumeration.
pub fn brute_null_homotopic(f: &ChainMap) -> bool {
    let (x, y) = (f.source(), f.target());
    let zero = |i: i64| ModuleMap::zero(&x.component(i), &y.component(i - 1));
    brute_degreewise(x, y, -1).into_iter().any(|h| {
        let at = |i: i64| if i >= x.lo() && i <= x.hi() { h[(i - x.lo()) as usize].clone() } else { zero(i) };
        (x.lo()..=x.hi()).all(|i| {
            let sum = y.differential(i - 1).compose(&at(i)).add(&at(i + 1).compose(&x.differential(i)));
            sum.matrix() == f.map(i).matrix()
        })
    })
}
