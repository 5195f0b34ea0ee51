//! The eight acceptance criteria, one line each on stderr, all required to pass.

mod common;

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use common::{brute_chain_maps, brute_homs, brute_null_homotopic, brute_projective_homs_dim, enumerate_modules, log2};
use recollement::algebra::Side;
use recollement::bridge::{functor_f, TStructurePair};
use recollement::complex::BoundedComplex;
use recollement::fixtures;
use recollement::frobenius::{ContextSpec, FrobeniusContext};
use recollement::krull_schmidt::is_isomorphic;
use recollement::mor::MorM;
use recollement::verify::{
    example_list_context, roundtrip_report, sample_closure, seed_complexes, seed_objects, truncation_report, verify_mor_side,
    verify_stable_tstructure, verify_triangle_of_recollements, PairOrder, VerificationReport, SAMPLE_CAP,
};
use recollement::{Algebra, Dimension, Module, ModuleMap};

const CAP: usize = 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gorenstein(alg: Arc<Algebra>) -> Arc<FrobeniusContext> {
    FrobeniusContext::new(alg, ContextSpec::Gorenstein, CAP).unwrap()
}

fn list_context() -> Arc<FrobeniusContext> {
    FrobeniusContext::new(fixtures::a9(), ContextSpec::ExplicitList(fixtures::a9_list_generators()), CAP).unwrap()
}

fn contexts() -> Vec<(&'static str, Arc<FrobeniusContext>)> {
    vec![("CM(R2)", gorenstein(fixtures::r2())), ("CM(A9)", gorenstein(fixtures::a9())), ("A9 list", list_context())]
}

fn require(report: &VerificationReport, what: &str) -> Result<(), String> {
    if report.vacuous {
        return Err(format!("{what}: nothing was checked"));
    }
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} failed: {}", c.check, c.witness.clone().unwrap_or_default())),
    }
}

fn gorenstein_verdicts() -> Outcome {
    for (name, alg, want) in [("R2", fixtures::r2(), (true, 0)), ("A9", fixtures::a9(), (true, 0)), ("B4", fixtures::b4(), (true, 0)), ("T6", fixtures::t6(), (true, 1))] {
        let got = alg.is_iwanaga_gorenstein(CAP);
        if got != want {
            return Err(format!("{name}: got {got:?}, expected {want:?}"));
        }
    }
    let (r2, t6) = (fixtures::r2(), fixtures::t6());
    for side in [Side::Left, Side::Right] {
        match (r2.injective_dimension(side, CAP), t6.injective_dimension(side, CAP)) {
            (Dimension::Finite(r), Dimension::Finite(t)) if t <= r + 1 => {}
            other => return Err(format!("injective dimension bound fails on {side:?}: {other:?}")),
        }
    }
    Ok("R2, A9, B4 at 0, T6 at 1".into())
}

fn truncation_triangles() -> Outcome {
    let mut complexes = 0;
    let mut triangles = 0;
    for ctx in [gorenstein(fixtures::r2()), gorenstein(fixtures::a9())] {
        let samples = sample_closure(&seed_objects(&ctx).map_err(|e| e.to_string())?, SAMPLE_CAP, None).map_err(|e| e.to_string())?;
        let xs = seed_complexes(&ctx, &samples).map_err(|e| e.to_string())?;
        let report = truncation_report(&xs);
        require(&report, "truncation")?;
        complexes += xs.len();
        triangles += report.checks.len();
    }
    if complexes < 20 {
        return Err(format!("only {complexes} complexes"));
    }
    Ok(format!("{triangles} triangles over {complexes} complexes"))
}

fn recollement_suite() -> Outcome {
    let mut total = 0;
    for (name, ctx) in contexts() {
        let samples = sample_closure(&seed_objects(&ctx).map_err(|e| e.to_string())?, SAMPLE_CAP, None).map_err(|e| e.to_string())?;
        let report = verify_triangle_of_recollements(&samples);
        require(&report, name)?;
        total += report.checks.len();
        let complexes: Vec<_> = samples.iter().map(functor_f).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for pair in TStructurePair::ALL {
            let control = verify_stable_tstructure(pair, &complexes, PairOrder::Swapped);
            if control.passed() {
                return Err(format!("{name}: swapped {} control passed", pair.name()));
            }
            if control.failures().any(|c| c.witness.is_none()) {
                return Err(format!("{name}: swapped control failed without a witness"));
            }
        }
    }
    Ok(format!("{total} checks, swapped controls all fail with witnesses"))
}

fn t2_oracle() -> Outcome {
    let ctx = gorenstein(fixtures::r2());
    let t2ctx = ctx.triangular_context(CAP).map_err(|e| e.to_string())?;
    let t2 = ctx.triangular();
    let r2 = ctx.algebra();
    let mut r2_modules = vec![Module::zero(r2)];
    r2_modules.extend(enumerate_modules(r2, 4));
    let mut monos: Vec<MorM> = Vec::new();
    for z in &r2_modules {
        for x in &r2_modules {
            if z.dim() + x.dim() == 0 || z.dim() + x.dim() > 4 {
                continue;
            }
            for f in brute_homs(z, x) {
                let Ok(m) = MorM::new(&ctx, ModuleMap::new(z, x, f).unwrap()) else { continue };
                if !monos.iter().any(|n| n.is_isomorphic(&m).unwrap()) {
                    monos.push(m);
                }
            }
        }
    }
    let images: Vec<Module> = monos.iter().map(|m| m.to_t2()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let t6_modules = enumerate_modules(&t2, 4);
    let mut cm = Vec::new();
    for m in &t6_modules {
        let member = t2ctx.is_member(m).map_err(|e| e.to_string())?;
        let back = MorM::from_t2(&ctx, m);
        if member != back.is_ok() {
            return Err(format!("T6-module {:?}: CM {member} but monomorphism object {}", m.dimension_vector(), back.is_ok()));
        }
        if let Ok(b) = back {
            if !is_isomorphic(&b.to_t2().unwrap(), m).unwrap() {
                return Err(format!("T6-module {:?} does not come back", m.dimension_vector()));
            }
            cm.push(m.clone());
        }
    }
    for (i, img) in images.iter().enumerate() {
        let hits = cm.iter().filter(|m| is_isomorphic(m, img).unwrap()).count();
        if hits != 1 {
            return Err(format!("{:?} lands on {hits} CM classes", monos[i]));
        }
    }
    if images.len() != cm.len() {
        return Err(format!("{} monomorphism classes but {} CM T6 classes", images.len(), cm.len()));
    }
    Ok(format!("{} classes on each side, {} T6-modules checked", cm.len(), t6_modules.len()))
}

fn mor_triangles() -> Outcome {
    let mut total = 0;
    for (name, ctx) in contexts() {
        let samples = sample_closure(&seed_objects(&ctx).map_err(|e| e.to_string())?, SAMPLE_CAP, None).map_err(|e| e.to_string())?;
        let report = verify_mor_side(&samples);
        require(&report, name)?;
        total += samples.len();
    }
    Ok(format!("{total} sampled objects"))
}

fn roundtrip() -> Outcome {
    let mut total = 0;
    for (name, ctx) in contexts() {
        let samples = sample_closure(&seed_objects(&ctx).map_err(|e| e.to_string())?, SAMPLE_CAP, None).map_err(|e| e.to_string())?;
        require(&roundtrip_report(&ctx, &samples), name)?;
        total += samples.len();
    }
    Ok(format!("{total} sampled objects"))
}

fn list_example() -> Outcome {
    let a9 = fixtures::a9();
    let simple = Module::simple(&a9, a9.vertex_index("2").unwrap());
    let report = example_list_context(&list_context(), &gorenstein(a9), &fixtures::b4(), &simple);
    require(&report, "example")?;
    Ok("stable table [[1, 0], [0, 1]], simple at 2 separates".into())
}

fn linear_algebra_oracles() -> Outcome {
    let r2 = fixtures::r2();
    let modules = enumerate_modules(&r2, 3);
    for m in &modules {
        for n in &modules {
            let hom = m.hom_dim(n).unwrap();
            let brute = log2(brute_homs(m, n).len());
            if hom != brute {
                return Err(format!("Hom({:?}, {:?}): {hom} vs brute {brute}", m.dim(), n.dim()));
            }
            let stable = m.stable_hom(n).unwrap().dim;
            if stable != hom - brute_projective_homs_dim(m, n) {
                return Err(format!("stable Hom({:?}, {:?}) disagrees", m.dim(), n.dim()));
            }
        }
    }
    let complexes = small_complexes(&r2);
    let mut maps = 0;
    for x in &complexes {
        for y in &complexes {
            if x.hi() != y.hi() {
                continue;
            }
            for f in brute_chain_maps(x, y) {
                let fast = f.null_homotopy();
                if fast.is_some() != brute_null_homotopic(&f) {
                    return Err("null-homotopy test disagrees with enumeration".into());
                }
                maps += 1;
            }
        }
    }
    Ok(format!("{} modules, {} complexes, {maps} chain maps", modules.len(), complexes.len()))
}

/// Complexes in degrees `0..len` with components `k` or `R2`, every
/// differential with `d∘d = 0`.
fn small_complexes(r2: &Arc<Algebra>) -> Vec<BoundedComplex> {
    let k = Module::simple(r2, 0);
    let free = Module::indecomposable_projective(r2, 0);
    let mut out = Vec::new();
    for len in 1..=3usize {
        for shape in common::product(&vec![2; len]) {
            let comps: Vec<Module> = shape.iter().map(|&c| if c == 0 { k.clone() } else { free.clone() }).collect();
            let options: Vec<Vec<ModuleMap>> =
                comps.windows(2).map(|w| brute_homs(&w[0], &w[1]).into_iter().map(|f| ModuleMap::new(&w[0], &w[1], f).unwrap()).collect()).collect();
            for pick in common::product(&options.iter().map(Vec::len).collect::<Vec<_>>()) {
                let ds: Vec<ModuleMap> = pick.iter().enumerate().map(|(i, &c)| options[i][c].clone()).collect();
                if let Ok(x) = BoundedComplex::new(r2, 0, comps.clone(), ds) {
                    out.push(x);
                }
            }
        }
    }
    out
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 Gorenstein verdicts", gorenstein_verdicts),
        ("2 truncation triangles", truncation_triangles),
        ("3 triangle of recollements", recollement_suite),
        ("4 morphism objects vs T2-modules", t2_oracle),
        ("5 decomposition triangles", mor_triangles),
        ("6 F / Z1-lambda roundtrip", roundtrip),
        ("7 list-context example", list_example),
        ("8 linear-algebra oracles", linear_algebra_oracles),
    ];
    let results: Vec<(&str, Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(name, run)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
                        Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
                    });
                    (name, outcome, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut err = std::io::stderr().lock();
    for (name, outcome, secs) in &results {
        let line = match outcome {
            Ok(detail) => format!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(why) => format!("FAIL criterion {name}: {why} ({secs:.1}s)"),
        };
        writeln!(err, "{line}").unwrap();
    }
    let failed: Vec<&str> = results.iter().filter(|r| r.1.is_err()).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
