//! `aprtilt`: generate type-A quivers and cuts, mutate them, and verify
//! the homological properties of the resulting algebras.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use aprtilt::apr::{two_apr_cotilt_presentation, two_apr_tilt_presentation, tilted_algebra_homological};
use aprtilt::covering::{slice_of_cut, window};
use aprtilt::homalg::cluster::{is_napr_tiltable, is_self_injective, verify_nrf};
use aprtilt::homalg::module::simple;
use aprtilt::homalg::resolution::{ext_dim, global_dimension};
use aprtilt::homalg::{Algebra, Rational, DEFAULT_RESOLUTION_BOUND};
use aprtilt::suite::{check_walks, run_suite, SuiteOptions, DEFAULT_SEED};
use aprtilt::{dot, json as js, AlgebraPresentation, Cut, Dir, TypeA};

#[derive(Parser)]
#[command(name = "aprtilt", version, about = "n-APR tilting for type-A algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quivers Q^(n,s), cycles, cuts and cut mutation.
    #[command(subcommand)]
    Typea(TypeaCmd),
    /// Slices in the covering quiver and walk invariants.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Bases and homological invariants of a presented algebra.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// APR tilts of a presented algebra.
    #[command(subcommand)]
    Apr(AprCmd),
    /// Verification batteries.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Clone, Copy)]
struct Instance {
    n: usize,
    s: usize,
}

#[derive(Args)]
struct CutArg {
    /// JSON list of arrow ids; the standard cut if omitted.
    #[arg(long)]
    cut: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TypeaCmd {
    /// The preprojective presentation of Q^(n,s).
    Gen(Instance),
    /// The (n+1)-cycles of Q^(n,s).
    Cycles(Instance),
    /// All cuts, as sorted arrow-id lists.
    Cuts(Instance),
    /// Mutate a cut at a source (+) or sink (-) of Q_C.
    Mutate {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        cut: CutArg,
        #[arg(long)]
        vertex: String,
        #[arg(long, allow_hyphen_values = true)]
        dir: Dir,
    },
    /// The mutation graph of cuts as DOT.
    Graph {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Q^(n,s) as DOT with the cut drawn bold.
    Draw {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        cut: CutArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The presentation of the cut algebra.
    CutAlgebra {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        cut: CutArg,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// The slice of a cut, as vertex levels.
    SliceOfCut {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        cut: CutArg,
        /// Vertex placed at `--level`; the first vertex if omitted.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        level: i64,
    },
    /// A window of the covering quiver as DOT, slice of the cut in bold.
    Window {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        cut: CutArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the walk invariants on random cyclic walks of every cut.
    CheckPhi {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = 1000)]
        walks: usize,
        #[arg(long, default_value_t = 12)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Dimension, graded dimensions and Cartan matrix.
    Basis { file: PathBuf },
    /// Global dimension.
    Gldim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION_BOUND)]
        bound: usize,
    },
    /// Ext^i between two modules, or the table between simples.
    Ext {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Representation JSON of the first argument.
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
    },
    /// Whether every indecomposable projective is injective.
    Selfinj { file: PathBuf },
}

#[derive(Subcommand)]
enum AprCmd {
    /// The 2-APR tilt at a source.
    Tilt2 {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        /// Require the simple projective to admit a 2-APR tilt.
        #[arg(long)]
        check_tiltable: bool,
    },
    /// The 2-APR cotilt at a sink.
    Cotilt2 {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        check_tiltable: bool,
    },
    /// Quiver, dimension and Cartan matrix of End(T)^op for the n-APR tilting module T.
    Tilt {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// n-representation-finiteness of a presented algebra.
    Nrf {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Whether the simple projective at a vertex admits an n-APR tilt.
    Tiltable {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        n: usize,
    },
    /// Every check for one instance Q^(n,s).
    Suite {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 100)]
        walks: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Skip the per-cut homological checks.
        #[arg(long)]
        no_homological: bool,
    },
}

/// Output of a subcommand and whether its verification passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Outcome { text: pretty(&v), ok: true }
    }

    fn verdict(v: Value, ok: bool) -> Self {
        Outcome { text: pretty(&v), ok }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<(AlgebraPresentation, Algebra<Rational>)> {
    let p = js::presentation_from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let alg = Algebra::new(&p)?;
    Ok((p, alg))
}

fn vertex_of(p: &AlgebraPresentation, id: &str) -> Result<usize> {
    p.quiver.vertex_by_id(id).ok_or_else(|| anyhow!("unknown vertex {id}"))
}

fn type_a(inst: Instance) -> Result<TypeA> {
    Ok(TypeA::new(inst.n, inst.s)?)
}

fn load_cut(t: &TypeA, arg: &CutArg) -> Result<Cut> {
    let Some(path) = &arg.cut else { return Ok(t.standard_cut()) };
    let c = js::cut_from_json(t.quiver(), &read(path)?)?;
    if !t.is_cut(&c) {
        bail!("{} is not a cut of Q^({},{})", path.display(), t.n, t.s);
    }
    Ok(c)
}

/// DOT goes to `--dot` if given, else to standard output.
fn emit_dot(text: String, out: &Option<PathBuf>) -> Result<Outcome> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome { text: String::new(), ok: true })
        }
        None => Ok(Outcome { text, ok: true }),
    }
}

fn typea(cmd: TypeaCmd) -> Result<Outcome> {
    match cmd {
        TypeaCmd::Gen(inst) => {
            let t = type_a(inst)?;
            Ok(Outcome { text: js::presentation_to_json(&t.preprojective_presentation()) + "\n", ok: true })
        }
        TypeaCmd::Cycles(inst) => {
            let t = type_a(inst)?;
            let q = t.quiver();
            let cycles: Vec<Value> = t
                .cycles()
                .iter()
                .map(|c| {
                    json!({
                        "start": q.vertex(c.start).id,
                        "types": c.types,
                        "arrows": c.arrows.iter().map(|&a| q.arrow(a).id.clone()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::json(Value::from(cycles)))
        }
        TypeaCmd::Cuts(inst) => {
            let t = type_a(inst)?;
            Ok(Outcome::json(Value::from(t.enumerate_cuts().iter().map(|c| js::cut_to_json(t.quiver(), c)).collect::<Vec<_>>())))
        }
        TypeaCmd::Mutate { inst, cut, vertex, dir } => {
            let t = type_a(inst)?;
            let c = load_cut(&t, &cut)?;
            let x = t.vertex(&vertex)?;
            let m = t.mutate_cut(&c, x, dir)?;
            Ok(Outcome::json(js::cut_to_json(t.quiver(), &m)))
        }
        TypeaCmd::Graph { inst, dot: out } => {
            let t = type_a(inst)?;
            emit_dot(dot::mutation_graph_dot(t.quiver(), &t.mutation_graph()), &out)
        }
        TypeaCmd::Draw { inst, cut, dot: out } => {
            let t = type_a(inst)?;
            let c = load_cut(&t, &cut)?;
            emit_dot(dot::quiver_dot(t.quiver(), Some(&c)), &out)
        }
        TypeaCmd::CutAlgebra { inst, cut } => {
            let t = type_a(inst)?;
            let c = load_cut(&t, &cut)?;
            Ok(Outcome { text: js::presentation_to_json(&t.cut_algebra(&c)?) + "\n", ok: true })
        }
    }
}

fn cover(cmd: CoverCmd) -> Result<Outcome> {
    match cmd {
        CoverCmd::SliceOfCut { inst, cut, base, level } => {
            let t = type_a(inst)?;
            let c = load_cut(&t, &cut)?;
            let b = match base {
                Some(id) => t.vertex(&id)?,
                None => 0,
            };
            let slice = slice_of_cut(&t, &c, b, level)?;
            Ok(Outcome::json(js::slice_to_json(&t, &slice)))
        }
        CoverCmd::Window { inst, cut, lo, hi, dot: out } => {
            let t = type_a(inst)?;
            let c = load_cut(&t, &cut)?;
            let w = window(&t, lo, hi)?;
            let slice = slice_of_cut(&t, &c, 0, lo)?;
            emit_dot(dot::window_dot(&w, Some(&slice), Some(&c)), &out)
        }
        CoverCmd::CheckPhi { inst, walks, len, seed } => {
            let t = type_a(inst)?;
            let cuts = t.enumerate_cuts();
            let r = check_walks(&t, &cuts, walks, len, seed);
            Ok(Outcome::verdict(
                json!({
                    "n": t.n, "s": t.s, "seed": seed, "cuts": cuts.len(), "walks_per_cut": walks,
                    "phi_failures": r.phi_failures, "identity_failures": r.identity_failures, "ok": r.ok(),
                }),
                r.ok(),
            ))
        }
    }
}

fn alg(cmd: AlgCmd) -> Result<Outcome> {
    match cmd {
        AlgCmd::Basis { file } => {
            let (_, a) = load_algebra(&file)?;
            Ok(Outcome::json(json!({
                "dimension": a.dimension(),
                "degrees": a.basis().degree_dimensions(),
                "cartan": a.cartan(),
            })))
        }
        AlgCmd::Gldim { file, bound } => {
            let (_, a) = load_algebra(&file)?;
            Ok(Outcome::json(json!({ "gldim": global_dimension(&a, bound).to_string() })))
        }
        AlgCmd::Ext { file, degree, left, right } => {
            let (_, a) = load_algebra(&file)?;
            let q = a.quiver();
            if let (Some(l), Some(r)) = (left, right) {
                let m = js::representation_from_json(q, &read(&l)?)?;
                let n = js::representation_from_json(q, &read(&r)?)?;
                return Ok(Outcome::json(json!({ "degree": degree, "dim": ext_dim(&a, &m, &n, degree) })));
            }
            let simples: Vec<_> = (0..q.vertex_count()).map(|v| simple(q, v)).collect();
            let table: Vec<Vec<usize>> =
                simples.iter().map(|m| simples.iter().map(|n| ext_dim(&a, m, n, degree)).collect()).collect();
            let ids: Vec<&str> = q.vertices().iter().map(|v| v.id.as_str()).collect();
            Ok(Outcome::json(json!({ "degree": degree, "vertices": ids, "simples": table })))
        }
        AlgCmd::Selfinj { file } => {
            let (_, a) = load_algebra(&file)?;
            Ok(Outcome::json(json!({ "self_injective": is_self_injective(&a) })))
        }
    }
}

fn apr(cmd: AprCmd) -> Result<Outcome> {
    match cmd {
        AprCmd::Tilt2 { file, vertex, check_tiltable } => {
            let p = js::presentation_from_json(&read(&file)?)?;
            let t = two_apr_tilt_presentation(&p, vertex_of(&p, &vertex)?, check_tiltable)?;
            Ok(Outcome { text: js::presentation_to_json(&t) + "\n", ok: true })
        }
        AprCmd::Cotilt2 { file, vertex, check_tiltable } => {
            let p = js::presentation_from_json(&read(&file)?)?;
            let t = two_apr_cotilt_presentation(&p, vertex_of(&p, &vertex)?, check_tiltable)?;
            Ok(Outcome { text: js::presentation_to_json(&t) + "\n", ok: true })
        }
        AprCmd::Tilt { file, vertex, n } => {
            let (p, a) = load_algebra(&file)?;
            let e = tilted_algebra_homological(&a, vertex_of(&p, &vertex)?, n)?;
            Ok(Outcome::json(js::endomorphism_to_json(&e)))
        }
    }
}

fn verify(cmd: VerifyCmd) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Nrf { file, n } => {
            let (_, a) = load_algebra(&file)?;
            let report = verify_nrf(&a, n);
            Ok(Outcome::verdict(js::nrf_report_to_json(&report), report.is_nrf()))
        }
        VerifyCmd::Tiltable { file, vertex, n } => {
            let (p, a) = load_algebra(&file)?;
            let ok = is_napr_tiltable(&a, vertex_of(&p, &vertex)?, n);
            Ok(Outcome::verdict(json!({ "vertex": vertex, "n": n, "tiltable": ok }), ok))
        }
        VerifyCmd::Suite { inst, jobs, walks, seed, no_homological } => {
            let opts = SuiteOptions { walks, seed, jobs, homological: !no_homological, ..Default::default() };
            let report = run_suite(inst.n, inst.s, &opts)?;
            let ok = report.passed();
            Ok(Outcome::verdict(serde_json::to_value(&report)?, ok))
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Typea(c) => typea(c),
        Command::Cover(c) => cover(c),
        Command::Alg(c) => alg(c),
        Command::Apr(c) => apr(c),
        Command::Verify(c) => verify(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
