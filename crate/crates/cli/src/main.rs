use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use recollement::algebra::Side;
use recollement::bridge::{functor_f, quotient_hom_dim, z1_lambda, TStructurePair};
use recollement::frobenius::{ext_dim, ContextSpec, FrobeniusContext};
use recollement::io::{load_algebra_file, Workspace};
use recollement::mor::MorE;
use recollement::spliced::SplicedComplex;
use recollement::verify::{
    example_list_context, module_stable_table, roundtrip_report, sample_closure, seed_complexes, seed_objects, truncation_report,
    verify_stable_tstructure, verify_triangle_of_recollements, PairOrder, VerificationReport, SAMPLE_CAP,
};
use recollement::{fixtures, Dimension, Module};

#[derive(Parser)]
#[command(name = "recollement", version, about = "Stable categories, morphism categories and complexes of projectives over Gorenstein algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the human-readable table.
    #[arg(long, global = true)]
    quiet: bool,
    /// Resolution length cap.
    #[arg(long, global = true, default_value_t = 64)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, injective dimensions and Gorenstein verdict of an algebra.
    AlgebraInfo { path: PathBuf },
    /// Evaluate one expression against a workspace.
    Compute {
        #[arg(long)]
        workspace: PathBuf,
        /// ext M N i | stablehom M N | cm M | F a | z1lambda S | qhom S T | t2 S
        #[arg(required = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        workspace: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Shuffle the sampling order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Test Hom-vanishing in the wrong direction; this is expected to fail.
        #[arg(long)]
        swap: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tstructure,
    Recollement,
    Roundtrip,
    #[value(alias = "example-atfr4")]
    ExampleListContext,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Tstructure => "tstructure",
            Suite::Recollement => "recollement",
            Suite::Roundtrip => "roundtrip",
            Suite::ExampleListContext => "example-list-context",
        }
    }
}

enum Failure {
    Input(String),
    Checks,
}

impl From<recollement::Error> for Failure {
    fn from(e: recollement::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::AlgebraInfo { path } => algebra_info(&cli, path),
        Command::Compute { workspace, expr } => compute(&cli, workspace, expr),
        Command::Verify { workspace, suite, seed, swap } => verify(&cli, workspace.as_deref(), *suite, *seed, *swap),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn dimension(d: Dimension) -> Option<usize> {
    match d {
        Dimension::Finite(n) => Some(n),
        Dimension::Exceeded => None,
    }
}

#[derive(Serialize)]
struct AlgebraInfo {
    dim: usize,
    vertices: usize,
    idim_left: Option<usize>,
    idim_right: Option<usize>,
    gorenstein: bool,
    gorenstein_dimension: Option<usize>,
}

fn algebra_info(cli: &Cli, path: &Path) -> CliResult<()> {
    let alg = load_algebra_file(path)?;
    let (left, right) = (dimension(alg.injective_dimension(Side::Left, cli.cap)), dimension(alg.injective_dimension(Side::Right, cli.cap)));
    let gorenstein = left.is_some() && right.is_some();
    let info = AlgebraInfo {
        dim: alg.dim(),
        vertices: alg.num_vertices(),
        idim_left: left,
        idim_right: right,
        gorenstein,
        gorenstein_dimension: left.zip(right).map(|(l, r)| l.max(r)),
    };
    if cli.json {
        print_json(&info);
    } else if !cli.quiet {
        let show = |d: Option<usize>| d.map_or_else(|| format!(">{}", cli.cap), |n| n.to_string());
        let verdict = match info.gorenstein_dimension {
            Some(d) => format!("Gorenstein d={d}"),
            None => "not Gorenstein within the cap".into(),
        };
        println!("dim {}, idim {}/{}, {verdict}", info.dim, show(left), show(right));
    }
    Ok(())
}

fn args<'a, const N: usize>(expr: &'a [String], usage: &str) -> CliResult<[&'a str; N]> {
    if expr.len() != N + 1 {
        return Err(Failure::Input(format!("usage: {usage}")));
    }
    Ok(std::array::from_fn(|i| expr[i + 1].as_str()))
}

#[derive(Serialize)]
struct ModuleView {
    dim: usize,
    dimension_vector: Vec<usize>,
    projective_summands: Option<Vec<String>>,
}

fn module_view(m: &Module) -> ModuleView {
    let names = m.algebra().vertices();
    ModuleView {
        dim: m.dim(),
        dimension_vector: m.dimension_vector(),
        projective_summands: m.projective_summands().map(|s| s.iter().map(|&v| names[v].clone()).collect()),
    }
}

#[derive(Serialize)]
struct ComplexView {
    lo: i64,
    hi: i64,
    components: Vec<ModuleView>,
    differentials: Vec<Vec<Vec<u32>>>,
    left_tail: ModuleView,
    right_tail: ModuleView,
}

fn complex_view(s: &SplicedComplex) -> ComplexView {
    ComplexView {
        lo: s.lo(),
        hi: s.hi(),
        components: (s.lo()..=s.hi()).map(|i| module_view(&s.component(i))).collect(),
        differentials: (s.lo()..s.hi()).map(|i| s.differential(i).matrix().to_rows()).collect(),
        left_tail: module_view(s.left_module()),
        right_tail: module_view(s.right_module()),
    }
}

#[derive(Serialize)]
struct ArrowView {
    x: ModuleView,
    t: ModuleView,
    alpha: Vec<Vec<u32>>,
}

fn arrow_view(a: &MorE) -> ArrowView {
    ArrowView { x: module_view(a.x()), t: module_view(a.t()), alpha: a.alpha().matrix().to_rows() }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Value {
    Number(usize),
    Flag(bool),
    Module(ModuleView),
    Complex(ComplexView),
    Arrow(ArrowView),
}

fn render(v: &Value) -> String {
    let rows = |m: &[Vec<u32>]| m.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(" ");
    let module = |m: &ModuleView| match &m.projective_summands {
        Some(s) => format!("dim {} {:?} projective {:?}", m.dim, m.dimension_vector, s),
        None => format!("dim {} {:?}", m.dim, m.dimension_vector),
    };
    match v {
        Value::Number(n) => n.to_string(),
        Value::Flag(b) => b.to_string(),
        Value::Module(m) => module(m),
        Value::Arrow(a) => format!("X: {}\nT: {}\nalpha: {}", module(&a.x), module(&a.t), rows(&a.alpha)),
        Value::Complex(c) => {
            let mut out = format!("window [{}, {}]\nleft tail: {}", c.lo, c.hi, module(&c.left_tail));
            for (k, comp) in c.components.iter().enumerate() {
                out.push_str(&format!("\ndegree {}: {}", c.lo + k as i64, module(comp)));
                if let Some(d) = c.differentials.get(k) {
                    out.push_str(&format!("\n  d: {}", rows(d)));
                }
            }
            out.push_str(&format!("\nright tail: {}", module(&c.right_tail)));
            out
        }
    }
}

fn compute(cli: &Cli, path: &Path, expr: &[String]) -> CliResult<()> {
    let ws = Workspace::load(path, cli.cap)?;
    let value = match expr[0].as_str() {
        "ext" => {
            let [m, n, i] = args(expr, "ext M N i")?;
            let i: usize = i.parse().map_err(|_| Failure::Input(format!("degree {i:?} is not a number")))?;
            Value::Number(ext_dim(ws.module(m)?, ws.module(n)?, i)?)
        }
        "stablehom" => {
            let [m, n] = args(expr, "stablehom M N")?;
            Value::Number(ws.module(m)?.stable_hom(ws.module(n)?)?.dim)
        }
        "cm" => {
            let [m] = args(expr, "cm M")?;
            Value::Flag(ws.context.is_member(ws.module(m)?)?)
        }
        "F" => {
            let [a] = args(expr, "F a")?;
            Value::Complex(complex_view(&functor_f(ws.object(a)?)?))
        }
        "z1lambda" => {
            let [s] = args(expr, "z1lambda S")?;
            Value::Arrow(arrow_view(&z1_lambda(&ws.complex(s)?)?))
        }
        "qhom" => {
            let [s, t] = args(expr, "qhom S T")?;
            Value::Number(quotient_hom_dim(&ws.complex(s)?, &ws.complex(t)?)?)
        }
        "t2" => {
            let [s] = args(expr, "t2 S")?;
            Value::Module(module_view(&z1_lambda(&ws.complex(s)?)?.kernel_mono().to_t2()?))
        }
        other => return Err(Failure::Input(format!("unknown expression {other:?}"))),
    };
    if cli.json {
        print_json(&value);
    } else if !cli.quiet {
        println!("{}", render(&value));
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    suite: &'a str,
    passed: bool,
    #[serde(flatten)]
    report: &'a VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable_table: Option<Vec<Vec<usize>>>,
}

fn samples(ctx: &Arc<FrobeniusContext>, ws: Option<&Workspace>, seed: Option<u64>) -> CliResult<Vec<MorE>> {
    let mut seeds: Vec<MorE> = ws.map(|w| w.objects.values().cloned().collect()).unwrap_or_default();
    seeds.extend(seed_objects(ctx)?);
    Ok(sample_closure(&seeds, SAMPLE_CAP, seed)?)
}

fn verify(cli: &Cli, path: Option<&Path>, suite: Suite, seed: Option<u64>, swap: bool) -> CliResult<()> {
    let ws = path.map(|p| Workspace::load(p, cli.cap)).transpose()?;
    let needs_workspace = || ws.as_ref().ok_or_else(|| Failure::Input(format!("suite {} needs --workspace", suite.name())));
    let order = if swap { PairOrder::Swapped } else { PairOrder::Standard };
    let mut stable_table = None;
    let report = match suite {
        Suite::Tstructure => {
            let w = needs_workspace()?;
            let objs = samples(&w.context, Some(w), seed)?;
            let mut complexes: Vec<SplicedComplex> = w.complexes.values().cloned().collect();
            complexes.extend(seed_complexes(&w.context, &objs)?);
            let mut r = truncation_report(&complexes);
            for pair in TStructurePair::ALL {
                r.merge(verify_stable_tstructure(pair, &complexes, order));
            }
            r
        }
        Suite::Recollement => {
            let w = needs_workspace()?;
            verify_triangle_of_recollements(&samples(&w.context, Some(w), seed)?)
        }
        Suite::Roundtrip => {
            let w = needs_workspace()?;
            roundtrip_report(&w.context, &samples(&w.context, Some(w), seed)?)
        }
        Suite::ExampleListContext => {
            let a9 = fixtures::a9();
            let list = FrobeniusContext::new(a9.clone(), ContextSpec::ExplicitList(fixtures::a9_list_generators()), cli.cap)?;
            let full = FrobeniusContext::new(a9.clone(), ContextSpec::Gorenstein, cli.cap)?;
            let stable: Vec<Module> = list.indecomposables().iter().filter(|m| !m.is_projective()).cloned().collect();
            stable_table = Some(module_stable_table(&stable)?);
            let simple = Module::simple(&a9, a9.vertex_index("2").expect("a9 has a vertex 2"));
            example_list_context(&list, &full, &fixtures::b4(), &simple)
        }
    };
    let out = SuiteReport { suite: suite.name(), passed: report.passed(), report: &report, stable_table };
    if cli.json {
        print_json(&out);
    } else {
        if !cli.quiet {
            if let Some(t) = &out.stable_table {
                println!("stable Hom table of the list context:");
                for row in t {
                    println!("  {row:?}");
                }
            }
            println!("{report}");
        }
        if !out.passed {
            let failures: Vec<_> = report.failures().collect();
            eprintln!("{}", serde_json::to_string_pretty(&failures).expect("checks serialize"));
        }
    }
    if out.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
