//! Command-line surface: argument types and the command implementations.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use decorated::constructions::{cyclic_cover, d2_2_2_example, d2_2_2_planted_fold, degree_one_cover};
use decorated::{
    adjoin_unfold, check_local_path_formulas, extract_almost_cover, induced_decorated_group, is_tame, local_graph, DecoratedError,
    DecoratedMorphism, SmallOrbGraph,
};
use fpc_words::{FpcGroup, FpcWord};
use gg_morphism::{FoldVerdict, GGMorphism};
use graph_of_groups::{GraphOfGroups, PathSpec};
use moves::{FreshNames, MoveError, UnfoldWitness};
use nielsen::{equivalent_bounded, NielsenMove, NielsenTuple, SearchBounds, SearchVerdict};
use orbifolds::{presentation, OrbifoldSpec};
use serde::{Deserialize, Serialize};

use crate::{parse_json, read_input, scenarios, to_json, CliError, Outcome};

/// Folding calculus for graph-of-groups morphisms and decorated morphisms
/// over small 2-orbifolds.
#[derive(Debug, Parser)]
#[command(name = "orbifold-folds", version, about)]
pub struct Cli {
    /// Input file (default: stdin).
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbifold presentations and the graph of groups of a small orbifold.
    #[command(subcommand)]
    Orbifold(OrbifoldCmd),
    /// Graphs of groups: validation, DOT export, path normal forms.
    #[command(subcommand)]
    Gog(GogCmd),
    /// Morphisms: the folded test and the moves.
    #[command(subcommand)]
    Fold(FoldCmd),
    /// Bounded search for Nielsen equivalence.
    #[command(subcommand)]
    Nielsen(NielsenCmd),
    /// Decorated morphisms over small orbifolds.
    #[command(subcommand)]
    Decorated(DecoratedCmd),
    /// Runs a named scenario (`list` prints the registry).
    Scenario { name: String },
}

#[derive(Debug, Subcommand)]
pub enum OrbifoldCmd {
    /// Prints the standard presentation.
    Present {
        /// Orbifold spec as inline JSON (default: read from the input).
        #[arg(long)]
        spec: Option<String>,
        /// Emit the presentation as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Exports the graph of groups of a small orbifold with the map θ.
    Graph {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum GogCmd {
    /// Validates a graph of groups and reports rank and torsion of π1.
    Check {
        /// Base vertex (default: the first vertex).
        #[arg(long)]
        base: Option<String>,
    },
    /// DOT export.
    Dot {
        #[arg(long, default_value = "gog")]
        name: String,
    },
    /// Reduces an A-path given as inline JSON and reports its normal form.
    Normalize {
        #[arg(long)]
        path: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MoveKind {
    A0,
    A1,
    A2,
    Ia,
    Iiia,
    Vertex,
    Fold,
    Unfold,
}

#[derive(Debug, Subcommand)]
pub enum FoldCmd {
    /// Runs the folded test and prints the verdict with all witnesses.
    Check,
    /// Applies one move and writes the resulting morphism.
    Apply(ApplyArgs),
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long = "move", value_enum)]
    pub kind: MoveKind,
    /// Source vertex (A0, vertex morphism).
    #[arg(long)]
    pub vertex: Option<String>,
    /// Source edge (A1, A2, unfold; first edge of a fold).
    #[arg(long)]
    pub edge: Option<String>,
    /// Second edge of a fold.
    #[arg(long)]
    pub edge2: Option<String>,
    /// Group element as JSON syllables `[[factor, exponent], …]`.
    #[arg(long)]
    pub elem: Option<String>,
    /// Integer parameter (A1 exponent, fold edge-group exponent).
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Base vertex protected by folds (default: the first vertex).
    #[arg(long)]
    pub base: Option<String>,
    /// Unfold witness file.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Also write σ to this file.
    #[arg(long)]
    pub sigma: Option<PathBuf>,
    /// Emit every intermediate morphism.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Subcommand)]
pub enum NielsenCmd {
    /// Searches for a trace of elementary moves taking tuple `a` to `b`.
    Search {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Cap on the total norm of intermediate tuples (default: input norm + 8).
        #[arg(long)]
        max_norm: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DecoratedCmd {
    /// Validates a decorated morphism and prints its decorated group.
    Check,
    /// The local graph at a vertex (default: the base vertex).
    LocalGraph {
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extracts the almost-cover descriptor with exceptional vertex `u`.
    ExtractCover {
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Adjoins a finite subgroup at `u` by an unfold.
    AdjoinUnfold {
        #[arg(long)]
        vertex: Option<String>,
    },
    /// The three tameness checks.
    Tame,
    /// Writes a built-in decorated morphism.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// `d2-2-2`, `d2-2-2-planted`, `degree-one` or `cyclic-cover`.
    pub name: String,
    /// Orbifold spec for `degree-one` (default: the disc with cone orders 2, 3).
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub p1: u64,
    #[arg(long, default_value_t = 4)]
    pub p2: u64,
    /// Number of sheets of a cyclic cover.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Divisor of `p1` fixing the finite factor of a cyclic cover.
    #[arg(long, default_value_t = 3)]
    pub d: u64,
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let input = cli.input.as_deref();
    match &cli.command {
        Command::Orbifold(cmd) => orbifold(cmd, input),
        Command::Gog(cmd) => gog(cmd, input),
        Command::Fold(cmd) => fold(cmd, input),
        Command::Nielsen(cmd) => nielsen(cmd),
        Command::Decorated(cmd) => decorated_cmd(cmd, input),
        Command::Scenario { name } => scenario(name),
    }
}

fn inline_or_input<T: serde::de::DeserializeOwned>(inline: Option<&str>, input: Option<&Path>) -> Result<T, CliError> {
    match inline {
        Some(s) => parse_json(s),
        None => parse_json(&read_input(input)?),
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

// ---------------------------------------------------------------- orbifold

#[derive(Serialize)]
struct PresentationOut {
    spec: OrbifoldSpec,
    generators: Vec<String>,
    text: String,
}

#[derive(Serialize)]
struct OrbGraphOut {
    graph: GraphOfGroups,
    theta: Vec<(String, String)>,
    relator_check: bool,
}

fn orbifold(cmd: &OrbifoldCmd, input: Option<&Path>) -> Result<Outcome, CliError> {
    match cmd {
        OrbifoldCmd::Present { spec, json } => {
            let spec: OrbifoldSpec = inline_or_input(spec.as_deref(), input)?;
            spec.validate().map_err(usage)?;
            let pres = presentation(&spec);
            let text = pres.to_string();
            Ok(Outcome::pass(if *json {
                to_json(&PresentationOut { spec, generators: pres.generators.clone(), text })
            } else {
                format!("{text}\n")
            }))
        }
        OrbifoldCmd::Graph { spec, format } => {
            let spec: OrbifoldSpec = inline_or_input(spec.as_deref(), input)?;
            let sg = SmallOrbGraph::build(&spec).map_err(usage)?;
            Ok(match format {
                Format::Dot => Outcome::pass(sg.gog().to_dot("small_orbifold")),
                Format::Json => {
                    let names = &sg.basis().names;
                    let theta = sg.theta().into_iter().map(|(g, w)| (g, format_word(&w, names))).collect();
                    let ok = sg.relator_check();
                    Outcome::verdict(to_json(&OrbGraphOut { graph: sg.gog().clone(), theta, relator_check: ok }), ok)
                }
            })
        }
    }
}

fn format_word(w: &FpcWord, names: &[String]) -> String {
    if w.is_identity() {
        "1".to_string()
    } else {
        w.format_with(names)
    }
}

// ---------------------------------------------------------------- gog

#[derive(Serialize)]
struct GogCheckOut {
    vertices: usize,
    edge_pairs: usize,
    connected: bool,
    trivial_edge_groups: bool,
    base: String,
    /// `None` when some nontrivial edge group could not be eliminated.
    rank: Option<usize>,
    torsion: Option<usize>,
}

#[derive(Serialize)]
struct NormalizeOut {
    input_reduced: bool,
    normal_form: PathSpec,
    text: String,
}

fn gog(cmd: &GogCmd, input: Option<&Path>) -> Result<Outcome, CliError> {
    let gog: GraphOfGroups = parse_json(&read_input(input)?)?;
    let g = gog.graph();
    match cmd {
        GogCmd::Check { base } => {
            if g.vertex_count() == 0 {
                return Err(usage("graph of groups has no vertices"));
            }
            let base = match base {
                Some(name) => g.vertex_by_name(name).map_err(usage)?,
                None => 0,
            };
            let rt = gog.rank_and_torsion(base);
            Ok(Outcome::pass(to_json(&GogCheckOut {
                vertices: g.vertex_count(),
                edge_pairs: g.pair_count(),
                connected: g.is_connected(),
                trivial_edge_groups: gog.has_trivial_edge_groups(),
                base: g.vertex_name(base).to_string(),
                rank: rt.map(|r| r.0),
                torsion: rt.map(|r| r.1),
            })))
        }
        GogCmd::Dot { name } => Ok(Outcome::pass(gog.to_dot(name))),
        GogCmd::Normalize { path } => {
            let spec: PathSpec = parse_json(path)?;
            let p = gog.path_from_spec(&spec).map_err(usage)?;
            let nf = gog.normalize(&p);
            Ok(Outcome::pass(to_json(&NormalizeOut {
                input_reduced: gog.is_reduced(&p),
                text: gog.format_path(&nf),
                normal_form: gog.path_to_spec(&nf),
            })))
        }
    }
}

// ---------------------------------------------------------------- fold

#[derive(Serialize)]
struct KernelOut {
    vertex: String,
    element: String,
}

#[derive(Serialize)]
struct F1Out {
    f1: String,
    f2: String,
    b: FpcWord,
    b_text: String,
    c_exp: i64,
}

#[derive(Serialize)]
struct F2Out {
    edge: String,
    b: FpcWord,
    b_text: String,
}

#[derive(Serialize)]
struct FoldCheckOut {
    verdict: FoldVerdict,
    violations: Vec<String>,
    f0: Vec<KernelOut>,
    f1: Vec<F1Out>,
    f2: Vec<F2Out>,
    undecided: Vec<String>,
}

#[derive(Serialize)]
struct TraceStep {
    step: String,
    morphism: GGMorphism,
}

#[derive(Serialize)]
struct TraceOut {
    steps: Vec<TraceStep>,
    morphism: GGMorphism,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<GGMorphism>,
}

fn fold(cmd: &FoldCmd, input: Option<&Path>) -> Result<Outcome, CliError> {
    let m: GGMorphism = parse_json(&read_input(input)?)?;
    match cmd {
        FoldCmd::Check => {
            let violations: Vec<String> = m.check().iter().map(|v| v.to_string()).collect();
            let report = m.is_folded();
            let src = &m.source;
            let g = src.graph();
            let out = FoldCheckOut {
                verdict: report.verdict(),
                violations,
                f0: report
                    .f0
                    .iter()
                    .map(|(v, w)| KernelOut { vertex: g.vertex_name(*v).to_string(), element: src.format_elem(*v, w) })
                    .collect(),
                f1: report
                    .f1
                    .iter()
                    .map(|w| F1Out {
                        f1: g.edge_name(w.f1).to_string(),
                        f2: g.edge_name(w.f2).to_string(),
                        b_text: src.format_elem(g.alpha(w.f1), &w.b),
                        b: w.b.clone(),
                        c_exp: w.c_exp,
                    })
                    .collect(),
                f2: report
                    .f2
                    .iter()
                    .map(|w| F2Out { edge: g.edge_name(w.f).to_string(), b_text: src.format_elem(g.alpha(w.f), &w.b), b: w.b.clone() })
                    .collect(),
                undecided: report.undecided.clone(),
            };
            let passed = out.verdict == FoldVerdict::Folded && out.violations.is_empty();
            Ok(Outcome::verdict(to_json(&out), passed))
        }
        FoldCmd::Apply(args) => apply(&m, args),
    }
}

fn apply(m: &GGMorphism, args: &ApplyArgs) -> Result<Outcome, CliError> {
    let src = &m.source;
    let g = src.graph();
    let vertex = |name: &Option<String>, what: &str| -> Result<usize, CliError> {
        let name = name.as_deref().ok_or_else(|| usage(format!("--{what} is required for this move")))?;
        g.vertex_by_name(name).map_err(usage)
    };
    let edge = |name: &Option<String>, what: &str| -> Result<usize, CliError> {
        let name = name.as_deref().ok_or_else(|| usage(format!("--{what} is required for this move")))?;
        g.edge_by_name(name).map_err(usage)
    };
    let elem = |group: &FpcGroup| -> Result<FpcWord, CliError> {
        let raw: FpcWord = match &args.elem {
            Some(s) => parse_json(s)?,
            None => return Err(usage("--elem is required for this move")),
        };
        group.normalize(raw.syllables()).map_err(usage)
    };
    let base = match &args.base {
        Some(name) => g.vertex_by_name(name).map_err(usage)?,
        None => 0,
    };
    let move_err = |e: MoveError| failed(e);
    let label = format!("{:?}", args.kind).to_uppercase();
    let (steps, result, sigma): (Vec<(String, GGMorphism)>, GGMorphism, Option<GGMorphism>) = match args.kind {
        MoveKind::A0 => {
            let u = vertex(&args.vertex, "vertex")?;
            let target_group = m.target.vertex_group(m.vertex_map[u]).clone();
            let r = moves::move_a0(m, u, &elem(&target_group)?).map_err(move_err)?;
            (vec![(label, r.clone())], r, None)
        }
        MoveKind::A1 => {
            let f = edge(&args.edge, "edge")?;
            let n = args.n.ok_or_else(|| usage("--n is required for A1"))?;
            let r = moves::move_a1(m, f, n).map_err(move_err)?;
            (vec![(label, r.clone())], r, None)
        }
        MoveKind::A2 => {
            let f = edge(&args.edge, "edge")?;
            let b = elem(src.vertex_group(g.alpha(f)))?;
            let r = moves::move_a2(m, f, &b).map_err(move_err)?;
            (vec![(label, r.morphism.clone())], r.morphism, Some(r.sigma))
        }
        MoveKind::Ia | MoveKind::Iiia => {
            let (f1, f2) = (edge(&args.edge, "edge")?, edge(&args.edge2, "edge2")?);
            let r = if args.kind == MoveKind::Ia {
                moves::elementary_fold_ia(m, f1, f2)
            } else {
                moves::elementary_fold_iiia(m, f1, f2, &mut FreshNames::new())
            }
            .map_err(move_err)?;
            (vec![(label, r.morphism.clone())], r.morphism, Some(r.sigma))
        }
        MoveKind::Vertex => {
            let u = vertex(&args.vertex, "vertex")?;
            let r = moves::vertex_morphism(m, u).map_err(move_err)?;
            (vec![(label, r.morphism.clone())], r.morphism, Some(r.sigma))
        }
        MoveKind::Fold => {
            let mut names = FreshNames::new();
            let out = if args.edge.is_none() && args.edge2.is_none() {
                moves::fold_first_violation(m, base, &mut names).map_err(move_err)?.ok_or_else(|| failed("morphism has no (F1) violation to fold"))?
            } else {
                let (f1, f2) = (edge(&args.edge, "edge")?, edge(&args.edge2, "edge2")?);
                let b = match &args.elem {
                    Some(_) => elem(src.vertex_group(g.alpha(f1)))?,
                    None => FpcWord::identity(),
                };
                moves::fold(m, f1, f2, &b, args.n.unwrap_or(0), base, &mut names).map_err(move_err)?
            };
            (out.steps, out.morphism, Some(out.sigma))
        }
        MoveKind::Unfold => {
            let f = edge(&args.edge, "edge")?;
            let path = args.witness.as_deref().ok_or_else(|| usage("--witness is required for unfold"))?;
            let witness: UnfoldWitness = parse_json(&read_input(Some(path))?)?;
            let r = moves::unfold(m, f, &witness).map_err(move_err)?;
            (vec![(label, r.morphism.clone())], r.morphism, Some(r.sigma))
        }
    };
    if let (Some(path), Some(s)) = (&args.sigma, &sigma) {
        crate::write_output(Some(path), &to_json(s))?;
    }
    let text = if args.trace {
        let steps = steps.into_iter().map(|(step, morphism)| TraceStep { step, morphism }).collect();
        to_json(&TraceOut { steps, morphism: result, sigma })
    } else {
        to_json(&result)
    };
    Ok(Outcome::pass(text))
}

// ---------------------------------------------------------------- nielsen

/// A tuple of elements of a free product of cyclic groups.
#[derive(Debug, Deserialize)]
struct TupleFile {
    group: FpcGroup,
    entries: Vec<FpcWord>,
}

#[derive(Serialize)]
struct SearchOut {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<NielsenMove>>,
    bounds: SearchBounds,
}

fn load_tuple(path: &Path) -> Result<(FpcGroup, NielsenTuple<FpcWord>), CliError> {
    let file: TupleFile = parse_json(&read_input(Some(path))?)?;
    let entries = file
        .entries
        .iter()
        .enumerate()
        .map(|(i, w)| {
            file.group.normalize(w.syllables()).map_err(|e| CliError::Schema { pointer: format!("/entries/{i}"), message: e.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((file.group, NielsenTuple::new(entries)))
}

fn nielsen(cmd: &NielsenCmd) -> Result<Outcome, CliError> {
    let NielsenCmd::Search { a, b, max_norm, max_states } = cmd;
    let (ga, ta) = load_tuple(a)?;
    let (gb, tb) = load_tuple(b)?;
    if ga != gb {
        return Err(usage("the two tuples live in different groups"));
    }
    let mut bounds = SearchBounds::for_tuples(&ga, &ta, &tb);
    if let Some(n) = max_norm {
        bounds.max_norm = *n;
    }
    bounds.max_states = *max_states;
    let verdict = equivalent_bounded(&ga, &ta, &tb, &bounds).map_err(usage)?;
    let (out, found) = match verdict {
        SearchVerdict::Equivalent(trace) => (SearchOut { verdict: "equivalent", length: Some(trace.len()), trace: Some(trace), bounds }, true),
        SearchVerdict::Unknown => (SearchOut { verdict: "unknown", length: None, trace: None, bounds }, false),
    };
    Ok(Outcome::verdict(to_json(&out), found))
}

// ---------------------------------------------------------------- decorated

#[derive(Serialize)]
struct DecoratedCheckOut {
    paths: Vec<String>,
    types: Vec<(String, usize, u64)>,
    group_rank: usize,
    decorated_group_valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct LocalGraphOut {
    vertex: String,
    edges: Vec<(String, String, usize, String)>,
    components: Vec<ComponentOut>,
}

#[derive(Serialize)]
struct ComponentOut {
    kind: decorated::ComponentKind,
    nodes: Vec<String>,
    formulas_hold: bool,
}

#[derive(Serialize)]
struct CoverFailure {
    almost_cover: bool,
    condition: String,
    reason: String,
}

#[derive(Serialize)]
struct TameOut {
    tame: bool,
    reasons: Vec<String>,
    report: decorated::TameReport,
}

fn load_dm(input: Option<&Path>) -> Result<(SmallOrbGraph, DecoratedMorphism), CliError> {
    let dm: DecoratedMorphism = parse_json(&read_input(input)?)?;
    let sg = SmallOrbGraph::build(&dm.orbifold).map_err(usage)?;
    Ok((sg, dm))
}

fn dm_vertex(dm: &DecoratedMorphism, name: &Option<String>) -> Result<usize, CliError> {
    match name {
        Some(n) => dm.source().graph().vertex_by_name(n).map_err(usage),
        None => Ok(dm.base),
    }
}

fn decorated_cmd(cmd: &DecoratedCmd, input: Option<&Path>) -> Result<Outcome, CliError> {
    if let DecoratedCmd::Example(args) = cmd {
        return example(args);
    }
    let (sg, dm) = load_dm(input)?;
    match cmd {
        DecoratedCmd::Check => {
            let violations: Vec<String> = dm.morphism.check().iter().map(|v| v.to_string()).collect();
            let dg = induced_decorated_group(&sg, &dm).map_err(failed)?;
            let check = dg.check(&sg);
            let out = DecoratedCheckOut {
                paths: dm.describe(&sg).lines().map(str::to_string).collect(),
                types: dg.types(&sg),
                group_rank: dg.group.rank(),
                decorated_group_valid: check.is_ok(),
                error: check.err().map(|e| e.to_string()),
                violations,
            };
            let passed = out.decorated_group_valid && out.violations.is_empty();
            Ok(Outcome::verdict(to_json(&out), passed))
        }
        DecoratedCmd::LocalGraph { vertex, format } => {
            let u = dm_vertex(&dm, vertex)?;
            let lg = local_graph(&dm, u).map_err(failed)?;
            match format {
                Format::Dot => Ok(Outcome::pass(lg.to_dot(&dm))),
                Format::Json => {
                    let g = dm.source().graph();
                    let components: Vec<ComponentOut> = lg
                        .components
                        .iter()
                        .enumerate()
                        .map(|(c, comp)| ComponentOut {
                            kind: comp.kind,
                            nodes: comp.nodes.iter().map(|&f| g.edge_name(f).to_string()).collect(),
                            formulas_hold: check_local_path_formulas(&sg, &dm, &lg, c).passed(),
                        })
                        .collect();
                    let passed = components.iter().all(|c| c.formulas_hold);
                    let out = LocalGraphOut { vertex: g.vertex_name(u).to_string(), edges: lg.edge_list(&dm), components };
                    Ok(Outcome::verdict(to_json(&out), passed))
                }
            }
        }
        DecoratedCmd::ExtractCover { vertex } => {
            let u = dm_vertex(&dm, vertex)?;
            match extract_almost_cover(&sg, &dm, u) {
                Ok(desc) => Ok(Outcome::pass(to_json(&desc))),
                Err(DecoratedError::AlmostCover { condition, reason }) => {
                    Ok(Outcome::verdict(to_json(&CoverFailure { almost_cover: false, condition, reason }), false))
                }
                Err(e) => Err(failed(e)),
            }
        }
        DecoratedCmd::AdjoinUnfold { vertex } => {
            let u = dm_vertex(&dm, vertex)?;
            let out = adjoin_unfold(&sg, &dm, u).map_err(failed)?;
            let passed = out.iiia_round_trip;
            Ok(Outcome::verdict(to_json(&out), passed))
        }
        DecoratedCmd::Tame => {
            let report = is_tame(&dm);
            let out = TameOut { tame: report.is_tame(), reasons: report.reasons(), report };
            let passed = out.tame;
            Ok(Outcome::verdict(to_json(&out), passed))
        }
        DecoratedCmd::Example(_) => unreachable!("handled above"),
    }
}

fn example(args: &ExampleArgs) -> Result<Outcome, CliError> {
    let built = match args.name.as_str() {
        "d2-2-2" => d2_2_2_example(),
        "d2-2-2-planted" => d2_2_2_planted_fold(),
        "degree-one" => {
            let spec = match &args.spec {
                Some(s) => parse_json(s)?,
                None => OrbifoldSpec::new(true, 0, 1, vec![2, 3]).map_err(usage)?,
            };
            degree_one_cover(&spec)
        }
        "cyclic-cover" => cyclic_cover(args.p1, args.p2, args.k, args.d),
        other => return Err(usage(format!("unknown example `{other}` (expected d2-2-2, d2-2-2-planted, degree-one, cyclic-cover)"))),
    };
    let (_, dm) = built.map_err(usage)?;
    Ok(Outcome::pass(to_json(&dm)))
}

// ---------------------------------------------------------------- scenario

fn scenario(name: &str) -> Result<Outcome, CliError> {
    if name == "list" {
        let mut text = String::new();
        for (n, about) in scenarios::REGISTRY {
            text.push_str(&format!("{n}\t{about}\n"));
        }
        return Ok(Outcome::pass(text));
    }
    let seed = crate::seed_from_env()?;
    let report = scenarios::run_scenario(name, seed)?;
    Ok(Outcome::verdict(report.render(), report.passed()))
}
