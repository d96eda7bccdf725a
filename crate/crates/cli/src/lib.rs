//! Batch front end: reads `.pg`, `.lst` and `.crit` files, runs the solver,
//! enumerator and audits, and renders plain-text reports.

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use girthfive_core::audit::{audit_bounds, exceptional_class, struct_config};
use girthfive_core::canon::canonical_code;
use girthfive_core::enumerate::{enumerate_critical, outer_subgraph, ClassifiedGraph};
use girthfive_core::lists::{
    check_cor2, check_thm1, check_thm3, is_valid, parse_lst, CheckResult, HypothesisError,
};
use girthfive_core::solver::{
    classify_ab, find_coloring, is_critical, is_strongly_critical, skeleton, ClassifyError,
    CriticalityReport, Verdict,
};
use girthfive_core::{
    CandidateFilter, Coloring, ListAssignment, PlaneGraph, PrecoloredPath, Subgraph, VERSION,
};
use rayon::prelude::*;
use thiserror::Error;

/// Exit status for a decided run.
pub const DECIDED: u8 = 0;
/// Exit status for unreadable or unsuitable input.
pub const INPUT_ERROR: u8 = 2;
/// Exit status when an enumeration ran out of budget.
pub const BUDGET_EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "girthfive",
    version,
    about = "List coloring of plane graphs of girth five"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

/// Options shared by all subcommands.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Interior vertex ceiling for `enumerate`.
    #[arg(long, global = true, value_name = "N")]
    pub max_interior: Option<NonZeroUsize>,
    /// Reject inputs using colors outside `0..P`.
    #[arg(long, global = true, value_name = "P")]
    pub palette: Option<NonZeroUsize>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, value_name = "J")]
    pub jobs: Option<NonZeroUsize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed recorded in report headers.
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Color a graph from lists (path colors are fixed), or report UNCOLORABLE.
    Color { graph: PathBuf, lists: PathBuf },
    /// Check hypotheses, criticality, classes or weight bounds.
    Verify {
        graph: PathBuf,
        lists: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Enumerate critical graphs with the given outer face length.
    Enumerate {
        outer: usize,
        /// Only graphs where every second outer vertex has degree two.
        #[arg(long)]
        pattern: bool,
        /// Prune graphs with a short cycle that does not bound a face.
        #[arg(long)]
        short_cycle_faces: bool,
        /// List assignments to sweep per candidate before giving up.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Audit weight bounds and configurations of `.crit` files or `.pg` graphs.
    Audit {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Reduce a graph to an S-critical subgraph with the same extendable
    /// precolorings; S is the path of the list file, or the outer face.
    Skeleton { graph: PathBuf, lists: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Thm1,
    Cor2,
    Thm3,
    Valid,
    Critical,
    StronglyCritical,
    Classify,
    Audit,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// Report text and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn decided(text: String) -> Self {
        Output {
            text,
            status: DECIDED,
        }
    }
}

/// Runs a parsed command line, inside a pool of `--jobs` workers when given.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match cli.config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.get())
            .build()
            .map_err(|e| CliError::Pool(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Color { graph, lists } => color(cfg, graph, lists),
        Command::Verify { graph, lists, mode } => verify(cfg, graph, lists.as_deref(), *mode),
        Command::Enumerate {
            outer,
            pattern,
            short_cycle_faces,
            budget,
        } => enumerate(cfg, *outer, *pattern, *short_cycle_faces, *budget),
        Command::Audit { inputs } => audit(cfg, inputs),
        Command::Skeleton { graph, lists } => skeleton_cmd(cfg, graph, lists),
    }
}

fn input_err(path: &Path, message: impl ToString) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_err(path, e))
}

fn read_graph(path: &Path) -> Result<PlaneGraph, CliError> {
    PlaneGraph::parse_pg(&read(path)?).map_err(|e| input_err(path, e))
}

fn read_lists(
    cfg: &RunConfig,
    path: &Path,
    n: usize,
) -> Result<(ListAssignment, PrecoloredPath), CliError> {
    let (l, p) = parse_lst(&read(path)?, n).map_err(|e| input_err(path, e))?;
    if let Some(bound) = cfg.palette {
        let path_colors = p.colors().unwrap_or(&[]).iter().copied();
        let list_colors = l.iter().flat_map(|(_, c)| c.iter());
        if let Some(c) = path_colors
            .chain(list_colors)
            .find(|&c| c as usize >= bound.get())
        {
            return Err(input_err(
                path,
                format!("color {c} is outside the palette 0..{bound}"),
            ));
        }
    }
    Ok((l, p))
}

/// The subgraph whose precolorings are extended: the path of the list file
/// when there is one, otherwise the outer face boundary.
fn s_of(g: &PlaneGraph, p: &PrecoloredPath) -> Subgraph {
    if p.is_empty() {
        outer_subgraph(g)
    } else {
        Subgraph::from_walk(p.vertices(), false)
    }
}

fn precondition(message: impl ToString) -> Output {
    Output {
        text: format!("PRECONDITION {}\n", message.to_string()),
        status: INPUT_ERROR,
    }
}

fn color(cfg: &RunConfig, graph: &Path, lists: &Path) -> Result<Output, CliError> {
    let g = read_graph(graph)?;
    let n = g.vertex_count();
    let (mut l, p) = read_lists(cfg, lists, n)?;
    let mut fixed = Coloring::new(n);
    if let Some(cs) = p.colors() {
        for (&v, &c) in p.vertices().iter().zip(cs) {
            fixed.set(v, c);
            l.clear(v);
        }
    }
    match find_coloring(&g.graph(), &l, &fixed).map_err(|e| input_err(lists, e))? {
        Some(c) => Ok(Output::decided(c.to_string())),
        None => Ok(Output::decided("UNCOLORABLE\n".into())),
    }
}

fn check_report(r: Result<CheckResult, HypothesisError>) -> Output {
    match r {
        Ok(r) => match r.witness {
            None => Output::decided("VALID\n".into()),
            Some(w) => Output::decided(format!("INVALID {}\n", join(&w))),
        },
        Err(e) => precondition(e),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `v:c` pairs of the colored vertices.
fn pairs(c: &Coloring) -> String {
    c.domain()
        .iter()
        .map(|&v| format!("{}:{}", v, c.get(v).unwrap()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn criticality_report(r: &CriticalityReport) -> String {
    let mut out = match (r.verdict, r.failing_edge, r.failing_vertex) {
        (Verdict::NotCritical, Some(e), _) => format!("{} edge {}\n", r.verdict, e),
        (Verdict::NotCritical, None, Some(v)) => format!("{} vertex {}\n", r.verdict, v),
        _ => format!("{}\n", r.verdict),
    };
    if let Some(psi) = &r.strong_witness {
        out.push_str(&format!("psi {}\n", pairs(psi)));
    } else {
        for w in &r.witnesses {
            out.push_str(&format!("edge {} psi {}\n", w.edge, pairs(&w.precoloring)));
        }
    }
    out
}

fn verify(
    cfg: &RunConfig,
    graph: &Path,
    lists: Option<&Path>,
    mode: Mode,
) -> Result<Output, CliError> {
    let g = read_graph(graph)?;
    if mode == Mode::Audit {
        return Ok(Output::decided(
            aud_line(&g).map_err(|e| input_err(graph, e))? + "\n",
        ));
    }
    let lists = lists.ok_or_else(|| CliError::Usage(format!("mode {mode:?} needs a list file")))?;
    let (l, p) = read_lists(cfg, lists, g.vertex_count())?;
    let face = g.outer_face();
    let solver_err = |e: girthfive_core::solver::SolverError| input_err(lists, e);
    Ok(match mode {
        Mode::Thm1 => check_report(check_thm1(&g, face, &p, &l)),
        Mode::Cor2 => check_report(check_cor2(&g, face, &l)),
        Mode::Thm3 => check_report(check_thm3(&g, face, &l)),
        Mode::Valid => check_report(Ok(is_valid(&g.graph(), &p, &l))),
        Mode::Critical => Output::decided(criticality_report(
            &is_critical(&g.graph(), &s_of(&g, &p), &l).map_err(solver_err)?,
        )),
        Mode::StronglyCritical => Output::decided(criticality_report(
            &is_strongly_critical(&g.graph(), &s_of(&g, &p), &l).map_err(solver_err)?,
        )),
        Mode::Classify => match classify_ab(&g, &p, &l) {
            Ok(v) => {
                let mut text = format!("{}\n", v.tag);
                if let Some(psi) = &v.witness {
                    text.push_str(&format!("psi {}\n", pairs(psi)));
                }
                text.push_str(&format!(
                    "class_a={} class_b={} non_extending={}\n",
                    v.class_a, v.class_b, v.non_extending
                ));
                Output::decided(text)
            }
            Err(ClassifyError::Solver(e)) => return Err(solver_err(e)),
            Err(e) => precondition(e),
        },
        Mode::Audit => unreachable!(),
    })
}

fn aud_line(g: &PlaneGraph) -> Result<String, String> {
    let code = canonical_code(g).map_err(|e| e.to_string())?;
    let configs = struct_config(g).map_err(|e| e.to_string())?;
    Ok(audit_bounds(g, exceptional_class(g)).aud_line(&code.to_string(), &configs.tag_string()))
}

fn header(cfg: &RunConfig) -> String {
    format!("# girthfive {VERSION}\n# seed={}\n", cfg.seed)
}

fn enumerate(
    cfg: &RunConfig,
    outer: usize,
    pattern: bool,
    short_cycle_faces: bool,
    budget: Option<u64>,
) -> Result<Output, CliError> {
    let mut filter = CandidateFilter::new(outer)
        .with_pattern(pattern)
        .with_short_cycle_faces(short_cycle_faces);
    if let Some(k) = cfg.max_interior {
        filter = filter.with_max_interior(k.get());
    }
    let e = enumerate_critical(&filter, budget).map_err(|e| CliError::Usage(e.to_string()))?;
    // The library header starts with the version line; the seed goes after it.
    let crit = e.to_crit();
    let rest = crit.split_once('\n').map_or("", |x| x.1);
    Ok(Output {
        text: header(cfg) + rest,
        status: if e.incomplete.is_some() {
            BUDGET_EXHAUSTED
        } else {
            DECIDED
        },
    })
}

fn audit(cfg: &RunConfig, inputs: &[PathBuf]) -> Result<Output, CliError> {
    let mut graphs: Vec<(PathBuf, PlaneGraph)> = Vec::new();
    for path in inputs {
        if path.extension().is_some_and(|x| x == "pg") {
            graphs.push((path.clone(), read_graph(path)?));
            continue;
        }
        for line in read(path)?.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let c = ClassifiedGraph::parse_crit_line(line).map_err(|e| input_err(path, e))?;
            graphs.push((path.clone(), c.graph));
        }
    }
    let lines: Vec<String> = graphs
        .par_iter()
        .map(|(path, g)| aud_line(g).map_err(|e| input_err(path, e)))
        .collect::<Result<_, _>>()?;
    let mut text = header(cfg);
    text.push_str("# code tag weight bound verdict vertices edges configs\n");
    for l in lines {
        text.push_str(&l);
        text.push('\n');
    }
    Ok(Output::decided(text))
}

fn skeleton_cmd(cfg: &RunConfig, graph: &Path, lists: &Path) -> Result<Output, CliError> {
    let g = read_graph(graph)?;
    let (l, p) = read_lists(cfg, lists, g.vertex_count())?;
    let sk = skeleton(&g, &s_of(&g, &p), &l).map_err(|e| input_err(lists, e))?;
    Ok(Output::decided(sk.to_pg()))
}
