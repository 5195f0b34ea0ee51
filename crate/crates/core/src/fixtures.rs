//! The bundled example algebras and modules.

use std::sync::{Arc, OnceLock};

use crate::algebra::{build_algebra, Algebra, ArrowSpec, QuiverPresentation, RelationTerm};
use crate::module::Module;

fn arrow(name: &str, src: &str, tgt: &str) -> ArrowSpec {
    ArrowSpec { name: name.into(), src: src.into(), tgt: tgt.into() }
}

fn monomial(path: &[&str]) -> Vec<RelationTerm> {
    vec![RelationTerm { coeff: 1, path: path.iter().map(|s| s.to_string()).collect() }]
}

/// `F_2[x]/(x^2)`.
pub fn r2_presentation() -> QuiverPresentation {
    QuiverPresentation {
        p: 2,
        vertices: vec!["1".into()],
        arrows: vec![arrow("x", "1", "1")],
        relations: vec![monomial(&["x", "x"])],
        nilpotency_bound: 2,
    }
}

/// The 3-cycle `gamma: 1→3`, `beta: 3→2`, `alpha: 2→1` with all paths of length 3 zero.
pub fn a9_presentation() -> QuiverPresentation {
    QuiverPresentation {
        p: 2,
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows: vec![arrow("gamma", "1", "3"), arrow("beta", "3", "2"), arrow("alpha", "2", "1")],
        relations: vec![
            monomial(&["alpha", "beta", "gamma"]),
            monomial(&["beta", "gamma", "alpha"]),
            monomial(&["gamma", "alpha", "beta"]),
        ],
        nilpotency_bound: 3,
    }
}

/// The 2-cycle `delta: 1→2`, `alpha: 2→1` with both paths of length 2 zero.
pub fn b4_presentation() -> QuiverPresentation {
    QuiverPresentation {
        p: 2,
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![arrow("delta", "1", "2"), arrow("alpha", "2", "1")],
        relations: vec![monomial(&["alpha", "delta"]), monomial(&["delta", "alpha"])],
        nilpotency_bound: 2,
    }
}

fn cached(cell: &'static OnceLock<Arc<Algebra>>, make: impl FnOnce() -> Algebra) -> Arc<Algebra> {
    cell.get_or_init(|| Arc::new(make())).clone()
}

pub fn r2() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || build_algebra(&r2_presentation()).expect("r2 fixture"))
}

pub fn a9() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || build_algebra(&a9_presentation()).expect("a9 fixture"))
}

pub fn b4() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || build_algebra(&b4_presentation()).expect("b4 fixture"))
}

/// Upper triangular 2×2 matrices over `r2`, derived rather than stored.
pub fn t6() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || r2().triangular2())
}

/// The simple module at vertex 1 of `a9`.
pub fn a9_m1() -> Module {
    Module::simple(&a9(), 0)
}

/// `e_2 A / soc(e_2 A)` over `a9`; isomorphic to the radical of `e_1 A`.
pub fn a9_m2() -> Module {
    let a = a9();
    let p = Module::indecomposable_projective(&a, 1);
    let socle = a.label_index("beta*gamma").expect("beta*gamma is a basis path");
    let pos = a.right_ideal_basis(1).iter().position(|&c| c == socle).unwrap();
    let mut v = vec![0; p.dim()];
    v[pos] = 1;
    p.quotient(&[v]).0
}

/// `k = R2/(x)`.
pub fn r2_k() -> Module {
    Module::simple(&r2(), 0)
}

/// Projectives of `a9` together with `a9_m1` and `a9_m2`.
pub fn a9_list_generators() -> Vec<Module> {
    let a = a9();
    let mut g: Vec<Module> = (0..a.num_vertices()).map(|v| Module::indecomposable_projective(&a, v)).collect();
    g.push(a9_m1());
    g.push(a9_m2());
    g
}
