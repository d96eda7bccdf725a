//! Enumeration of plane graphs of girth at least five with a fixed outer
//! cycle that are critical with respect to the outer face for some
//! assignment of 3-lists to the interior vertices.
//!
//! List assignments are swept up to renaming of colors. A color whose
//! vertices split into two groups that are not adjacent, share no outer
//! neighbor and have no adjacent outer neighbors can be split into two colors
//! without changing which precolorings of the outer face extend to which
//! subgraphs. Every assignment is therefore equivalent to one where each
//! color class is connected in that affinity graph, and only those are swept.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{self, CanonError, Code};
use crate::embed::PlaneGraph;
use crate::generate::{ear_closure, EarConfig, GenerationStats};
use crate::graph::{Graph, Subgraph, Vertex};
use crate::lists::{Color, ColorSet, ListAssignment};
use crate::solver::{find_coloring, is_critical, Coloring, SolverError};

/// Bounds for candidate generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFilter {
    pub outer: usize,
    pub max_interior: usize,
    pub girth: usize,
    pub min_interior_degree: usize,
    /// Every second outer vertex has degree two and lies on a 5-face.
    pub pattern: bool,
    /// Prune graphs with short cycles that do not bound faces (see
    /// [`crate::generate::short_cycles_bound_faces`]).
    pub short_cycle_faces: bool,
}

impl CandidateFilter {
    /// Outer length `outer`, at most `outer - 5` interior vertices.
    pub fn new(outer: usize) -> Self {
        CandidateFilter {
            outer,
            max_interior: outer.saturating_sub(5),
            girth: 5,
            min_interior_degree: 3,
            pattern: false,
            short_cycle_faces: false,
        }
    }

    pub fn with_max_interior(mut self, k: usize) -> Self {
        self.max_interior = k;
        self
    }

    pub fn with_pattern(mut self, on: bool) -> Self {
        self.pattern = on;
        self
    }

    pub fn with_short_cycle_faces(mut self, on: bool) -> Self {
        self.short_cycle_faces = on;
        self
    }

    fn ear_config(&self) -> EarConfig {
        EarConfig {
            outer: self.outer,
            max_interior: self.max_interior,
            girth: self.girth,
            alternating: self.pattern,
            short_cycle_faces: self.short_cycle_faces,
        }
    }
}

/// Whether every second vertex of the outer walk has degree two and lies on
/// an inner 5-face.
pub fn has_alternating_pattern(g: &PlaneGraph) -> bool {
    let ow = g.outer_walk();
    let vs = ow.vertices();
    let k = vs.len();
    if k % 2 == 1 {
        return false;
    }
    let on_five: BTreeSet<Vertex> = g
        .inner_faces()
        .into_iter()
        .filter(|f| f.length == 5)
        .flat_map(|f| g.faces()[f.index].clone())
        .collect();
    (0..2).any(|p| {
        (p..k)
            .step_by(2)
            .all(|i| g.degree(vs[i]) == 2 && on_five.contains(&vs[i]))
    })
}

fn outer_set(g: &PlaneGraph) -> BTreeSet<Vertex> {
    g.outer_walk().vertices().iter().copied().collect()
}

/// Candidate graphs for `filter` with their canonical codes, sorted by code,
/// and the per-level counts of the generation.
pub fn generate_candidates(filter: &CandidateFilter) -> (Vec<(Code, PlaneGraph)>, GenerationStats) {
    let cfg = filter.ear_config();
    let l = filter.outer;
    let min_deg = filter.min_interior_degree;
    let pattern = filter.pattern;
    let keep = move |g: &PlaneGraph| {
        (l..g.vertex_count()).all(|v| g.degree(v) >= min_deg)
            && (!pattern || has_alternating_pattern(g))
    };
    ear_closure(&cfg, &keep)
}

/// The outer face boundary as a subgraph.
pub fn outer_subgraph(g: &PlaneGraph) -> Subgraph {
    let w = g.outer_walk();
    Subgraph::from_walk(w.vertices(), true)
}

/// Affinity masks of the vertices outside `s`, indexed by position in
/// `free`: adjacent, a common neighbor in `s`, or neighbors in `s` that are
/// adjacent in `s`.
pub fn affinity(g: &Graph, s: &Subgraph, free: &[Vertex]) -> Vec<u64> {
    let k = free.len();
    let s_nbrs: Vec<BTreeSet<Vertex>> = free
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| s.contains_vertex(u))
                .collect()
        })
        .collect();
    let mut out = vec![0u64; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let linked = g.has_edge(free[i], free[j])
                || s_nbrs[i]
                    .iter()
                    .any(|&a| s_nbrs[j].iter().any(|&b| a == b || s.contains_edge(a, b)));
            if linked {
                out[i] |= 1u64 << j;
            }
        }
    }
    out
}

/// Calls `emit` for each connected subset of `allowed` containing `v`.
fn connected_sets(v: usize, allowed: u64, adj: &[u64], emit: &mut dyn FnMut(u64)) {
    fn rec(set: u64, cand: u64, excl: u64, allowed: u64, adj: &[u64], emit: &mut dyn FnMut(u64)) {
        emit(set);
        let mut c = cand;
        let mut ex = excl;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            let b = 1u64 << u;
            c &= !b;
            let ns = set | b;
            let nc = (c | (adj[u] & allowed)) & !ns & !ex;
            rec(ns, nc, ex, allowed, adj, emit);
            ex |= b;
        }
    }
    let b = 1u64 << v;
    rec(b, adj[v] & allowed & !b, b, allowed, adj, emit);
}

/// Enumerates list assignments (one set of colors per position) with the
/// given list sizes whose color classes are connected in `affinity`, one per
/// orbit under renaming colors and splitting non-interacting classes. Stops
/// when `visit` returns `false`; returns whether the sweep completed.
pub fn connected_class_assignments(
    affinity: &[u64],
    sizes: &[usize],
    visit: &mut dyn FnMut(&[ColorSet]) -> bool,
) -> bool {
    struct State<'a> {
        adj: &'a [u64],
        cap: Vec<usize>,
        classes: Vec<u64>,
    }
    fn rec(st: &mut State, last: u64, visit: &mut dyn FnMut(&[ColorSet]) -> bool) -> bool {
        let Some(v) = st.cap.iter().position(|&c| c > 0) else {
            let k = st.cap.len();
            let mut lists = vec![ColorSet::EMPTY; k];
            for (c, &m) in st.classes.iter().enumerate() {
                for (i, list) in lists.iter_mut().enumerate() {
                    if m & (1u64 << i) != 0 {
                        list.insert(c as Color);
                    }
                }
            }
            return visit(&lists);
        };
        if st.classes.len() >= crate::lists::MAX_COLORS {
            return true;
        }
        let allowed = st
            .cap
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i));
        let mut sets = Vec::new();
        connected_sets(v, allowed, st.adj, &mut |s| sets.push(s));
        sets.sort_unstable();
        // Classes with the same lowest vertex are taken in nondecreasing order.
        let same_start = last.trailing_zeros() as usize == v && last != 0;
        for s in sets {
            if same_start && s < last {
                continue;
            }
            for i in (0..st.cap.len()).filter(|&i| s & (1u64 << i) != 0) {
                st.cap[i] -= 1;
            }
            st.classes.push(s);
            let go = rec(st, s, visit);
            st.classes.pop();
            for i in (0..st.cap.len()).filter(|&i| s & (1u64 << i) != 0) {
                st.cap[i] += 1;
            }
            if !go {
                return false;
            }
        }
        true
    }
    let mut st = State {
        adj: affinity,
        cap: sizes.to_vec(),
        classes: Vec::new(),
    };
    rec(&mut st, 0, visit)
}

/// Result of a sweep over list assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    Found(ListAssignment),
    None { tested: u64 },
    BudgetExceeded { tested: u64 },
}

const CHUNK: usize = 2048;

/// Sweeps the assignments of `connected_class_assignments` over the vertices
/// `free` of a graph with `n` vertices, in order, testing chunks in parallel
/// and returning the first assignment (in sweep order) accepted by `test`.
fn sweep(
    n: usize,
    free: &[Vertex],
    affinity: &[u64],
    sizes: &[usize],
    budget: Option<u64>,
    test: &(dyn Fn(&ListAssignment) -> Result<bool, SolverError> + Sync),
) -> Result<SweepOutcome, SolverError> {
    let to_l = |lists: &[ColorSet]| {
        let mut l = ListAssignment::new(n);
        for (&v, &c) in free.iter().zip(lists) {
            l.set(v, c);
        }
        l
    };
    let mut tested = 0u64;
    let mut chunk: Vec<ListAssignment> = Vec::with_capacity(CHUNK);
    let mut result: Result<Option<ListAssignment>, SolverError> = Ok(None);
    let mut over = false;
    let flush = |chunk: &mut Vec<ListAssignment>,
                 result: &mut Result<Option<ListAssignment>, SolverError>| {
        let found = chunk
            .par_iter()
            .map(|l| test(l).map(|ok| ok.then(|| l.clone())))
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        chunk.clear();
        match found {
            Some(Ok(l)) => *result = Ok(l),
            Some(Err(e)) => *result = Err(e),
            None => {}
        }
        !matches!(result, Ok(Some(_)) | Err(_))
    };
    let completed = connected_class_assignments(affinity, sizes, &mut |lists| {
        if budget.is_some_and(|b| tested >= b) {
            over = true;
            return false;
        }
        tested += 1;
        chunk.push(to_l(lists));
        if chunk.len() == CHUNK {
            return flush(&mut chunk, &mut result);
        }
        true
    });
    if matches!(result, Ok(None)) && !chunk.is_empty() {
        flush(&mut chunk, &mut result);
    }
    match result? {
        Some(l) => Ok(SweepOutcome::Found(l)),
        None if over || !completed && budget.is_some() => {
            Ok(SweepOutcome::BudgetExceeded { tested })
        }
        None => Ok(SweepOutcome::None { tested }),
    }
}

/// Decides whether `g` is a proper critical graph with respect to its outer
/// face for some assignment of 3-lists to the other vertices. The uniform
/// assignment is tried first, then the full sweep up to equivalence.
pub fn critical_for_some_l(
    g: &PlaneGraph,
    budget: Option<u64>,
) -> Result<SweepOutcome, SolverError> {
    let gr = g.graph();
    let s = outer_subgraph(g);
    let n = g.vertex_count();
    let free: Vec<Vertex> = (0..n).filter(|&v| !s.contains_vertex(v)).collect();
    if free.is_empty() && gr.edge_count() == s.edges().len() {
        return Ok(SweepOutcome::None { tested: 0 });
    }
    let test = |l: &ListAssignment| -> Result<bool, SolverError> {
        Ok(is_critical(&gr, &s, l)?.is_critical())
    };
    let mut uniform = ListAssignment::new(n);
    for &v in &free {
        uniform.set_colors(v, &[0, 1, 2]);
    }
    if test(&uniform)? {
        return Ok(SweepOutcome::Found(uniform));
    }
    let aff = affinity(&gr, &s, &free);
    sweep(n, &free, &aff, &vec![3; free.len()], budget, &test)
}

/// Shape of `G - V(F)` for a critical graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriticalShape {
    TreeCaseA,
    UnicyclicCaseB,
    Figure2,
    Other,
}

impl fmt::Display for CriticalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriticalShape::TreeCaseA => "tree-case-a",
            CriticalShape::UnicyclicCaseB => "unicyclic-case-b",
            CriticalShape::Figure2 => "figure-2",
            CriticalShape::Other => "other",
        })
    }
}

impl std::str::FromStr for CriticalShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tree-case-a" => Ok(CriticalShape::TreeCaseA),
            "unicyclic-case-b" => Ok(CriticalShape::UnicyclicCaseB),
            "figure-2" => Ok(CriticalShape::Figure2),
            "other" => Ok(CriticalShape::Other),
            _ => Err(format!("unknown shape {s:?}")),
        }
    }
}

/// The graph `G - V(F)` in its own numbering.
pub fn interior_graph(g: &PlaneGraph) -> Graph {
    let outer = outer_set(g);
    let inner: Vec<Vertex> = (0..g.vertex_count())
        .filter(|v| !outer.contains(v))
        .collect();
    let id = |v: Vertex| inner.iter().position(|&w| w == v);
    let mut h = Graph::new(inner.len());
    for e in g.edges() {
        if let (Some(a), Some(b)) = (id(e.0), id(e.1)) {
            h.add_edge(a, b);
        }
    }
    h
}

/// Classifies a critical graph by the shape of `G - V(F)`.
pub fn classify_shape(g: &PlaneGraph) -> CriticalShape {
    let l = g.outer_face().length;
    let h = interior_graph(g);
    let (n, m) = (h.vertex_count(), h.edge_count());
    let connected = n > 0 && h.is_connected();
    if connected && m + 1 == n && l >= 9 && n + 8 <= l {
        return CriticalShape::TreeCaseA;
    }
    if connected && m == n && l >= 10 && n + 5 <= l && crate::embed::girth_of(&h) == Some(5) {
        return CriticalShape::UnicyclicCaseB;
    }
    if l == 12 && has_alternating_pattern(g) {
        return CriticalShape::Figure2;
    }
    CriticalShape::Other
}

/// A critical graph in canonical numbering with a list assignment making it
/// critical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedGraph {
    pub code: Code,
    pub graph: PlaneGraph,
    pub witness: ListAssignment,
    pub shape: CriticalShape,
}

impl ClassifiedGraph {
    /// One `.crit` line: code, shape and the witness lists.
    pub fn crit_line(&self) -> String {
        format!(
            "{} {} {}",
            self.code,
            self.shape,
            format_witness(&self.witness)
        )
    }

    /// Rebuilds and re-verifies a `.crit` line.
    pub fn parse_crit_line(line: &str) -> Result<ClassifiedGraph, EnumerateError> {
        let bad = || EnumerateError::Malformed(line.to_string());
        let mut parts = line.split_whitespace();
        let code: Code = parts.next().ok_or_else(bad)?.parse()?;
        let shape: CriticalShape = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let graph = canon::from_code(&code)?;
        let witness =
            parse_witness(parts.next().ok_or_else(bad)?, graph.vertex_count()).ok_or_else(bad)?;
        Ok(ClassifiedGraph {
            code,
            graph,
            witness,
            shape,
        })
    }

    /// Whether the witness makes the graph critical.
    pub fn verify(&self) -> Result<bool, SolverError> {
        Ok(is_critical(
            &self.graph.graph(),
            &outer_subgraph(&self.graph),
            &self.witness,
        )?
        .is_critical())
    }
}

/// `v:a,b,c;...` over the vertices with lists.
pub fn format_witness(l: &ListAssignment) -> String {
    let parts: Vec<String> = l
        .iter()
        .map(|(v, c)| {
            format!(
                "{}:{}",
                v,
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(";")
    }
}

pub fn parse_witness(s: &str, n: usize) -> Option<ListAssignment> {
    let mut l = ListAssignment::new(n);
    if s == "-" {
        return Some(l);
    }
    for part in s.split(';') {
        let (v, cs) = part.split_once(':')?;
        let v: Vertex = v.parse().ok()?;
        if v >= n {
            return None;
        }
        let colors: Vec<Color> = cs
            .split(',')
            .map(|c| c.parse().ok())
            .collect::<Option<_>>()?;
        if colors
            .iter()
            .any(|&c| c as usize >= crate::lists::MAX_COLORS)
        {
            return None;
        }
        l.set_colors(v, &colors);
    }
    Some(l)
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("outer length {0} is outside the supported range 5..=12")]
    OuterLength(usize),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Result of [`enumerate_critical`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub filter: CandidateFilter,
    pub candidates: usize,
    pub stats: GenerationStats,
    pub critical: Vec<ClassifiedGraph>,
    /// Set when the budget ran out: the candidate being swept and the number
    /// of assignments tried on it. Later candidates were not examined.
    pub incomplete: Option<(Code, u64)>,
}

impl Enumeration {
    /// The `.crit` file: header lines and one line per critical graph.
    pub fn to_crit(&self) -> String {
        let f = &self.filter;
        let mut out = format!(
            "# girthfive {}\n# outer={} max_interior={} girth={} min_interior_degree={} pattern={} short_cycle_faces={} candidates={}\n",
            crate::VERSION,
            f.outer,
            f.max_interior,
            f.girth,
            f.min_interior_degree,
            f.pattern,
            f.short_cycle_faces,
            self.candidates
        );
        for c in &self.critical {
            out.push_str(&c.crit_line());
            out.push('\n');
        }
        if let Some((code, tested)) = &self.incomplete {
            out.push_str(&format!(
                "# PARTIAL budget exceeded on {code} after {tested} assignments\n"
            ));
        }
        out
    }
}

/// Puts `g` and `l` into the numbering of the canonical code.
fn canonicalize(
    g: &PlaneGraph,
    l: &ListAssignment,
) -> Result<(Code, PlaneGraph, ListAssignment), CanonError> {
    let (code, order) = canon::canonical_labeling(g)?;
    let graph = canon::from_code(&code)?;
    let mut witness = ListAssignment::new(g.vertex_count());
    for (i, &v) in order.iter().enumerate() {
        if let Some(c) = l.get(v) {
            witness.set(i, c);
        }
    }
    Ok((code, graph, witness))
}

/// All proper critical graphs (for some 3-list assignment) among the
/// candidates of `filter`, in canonical-code order. `budget` bounds the
/// number of list assignments swept per candidate; when it runs out the
/// graphs found so far are returned with `incomplete` set.
pub fn enumerate_critical(
    filter: &CandidateFilter,
    budget: Option<u64>,
) -> Result<Enumeration, EnumerateError> {
    if !(5..=12).contains(&filter.outer) {
        return Err(EnumerateError::OuterLength(filter.outer));
    }
    let (cands, stats) = generate_candidates(filter);
    let mut critical = Vec::new();
    let mut incomplete = None;
    for (code, g) in &cands {
        if g.vertex_count() == filter.outer {
            continue;
        }
        match critical_for_some_l(g, budget)? {
            SweepOutcome::Found(l) => {
                let (code, graph, witness) = canonicalize(g, &l)?;
                let shape = classify_shape(&graph);
                critical.push(ClassifiedGraph {
                    code,
                    graph,
                    witness,
                    shape,
                });
            }
            SweepOutcome::None { .. } => {}
            SweepOutcome::BudgetExceeded { tested } => {
                incomplete = Some((code.clone(), tested));
                break;
            }
        }
    }
    critical.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(Enumeration {
        filter: filter.clone(),
        candidates: cands.len(),
        stats,
        critical,
        incomplete,
    })
}

/// Whether `g` contains a path `v1 ... vk` whose list sizes equal `sizes`
/// where given (`None` matches any size).
pub fn has_size_path(
    g: &Graph,
    l: &ListAssignment,
    sizes: &[Option<usize>],
) -> Option<Vec<Vertex>> {
    fn rec(g: &Graph, l: &ListAssignment, sizes: &[Option<usize>], path: &mut Vec<Vertex>) -> bool {
        if path.len() == sizes.len() {
            return true;
        }
        let i = path.len();
        let cands: Vec<Vertex> = if i == 0 {
            (0..g.vertex_count()).collect()
        } else {
            g.neighbors(path[i - 1]).to_vec()
        };
        for v in cands {
            if path.contains(&v) || sizes[i].is_some_and(|s| l.size(v) != s) {
                continue;
            }
            path.push(v);
            if rec(g, l, sizes, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::new();
    rec(g, l, sizes, &mut path).then_some(path)
}

/// An uncolorable instance violating only the second path condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm3Counterexample {
    pub graph: PlaneGraph,
    pub lists: ListAssignment,
    pub path: Vec<Vertex>,
}

/// Outcome of [`search_thm3_counterexample`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounterexampleSearch {
    Found(Thm3Counterexample),
    Exhausted { graphs: usize, assignments: u64 },
    BudgetExceeded { graphs: usize, assignments: u64 },
}

/// Searches plane graphs of girth at least five with at most `max_vertices`
/// vertices, with 2-lists on some outer vertices and 3-lists elsewhere, for
/// an instance that has no path with three 2-lists, has a path whose list
/// sizes read 2, 2, 3, 2, 2, and is not colorable. Only graphs where every
/// vertex has degree at least its list size are considered, since removing a
/// vertex of smaller degree preserves colorability in both directions.
/// `budget` bounds the number of list assignments tried overall.
pub fn search_thm3_counterexample(
    max_vertices: usize,
    budget: u64,
) -> Result<CounterexampleSearch, SolverError> {
    let graphs = crate::generate::small_rooted_plane_graphs(max_vertices, 5);
    let mut assignments = 0u64;
    let mut count = 0usize;
    for g in &graphs {
        let gr = g.graph();
        let n = g.vertex_count();
        if n < 5 || !g.outer_walk().is_simple() {
            continue;
        }
        let outer: Vec<Vertex> = g.outer_walk().vertices().to_vec();
        let k = outer.len();
        count += 1;
        for mask in 1u64..(1u64 << k) {
            let mut sizes = vec![3usize; n];
            for (i, &v) in outer.iter().enumerate() {
                if mask & (1u64 << i) != 0 {
                    sizes[v] = 2;
                }
            }
            if (0..n).any(|v| gr.degree(v) < sizes[v]) {
                continue;
            }
            let mut probe = ListAssignment::new(n);
            for v in 0..n {
                probe.set(v, ColorSet::first(sizes[v]));
            }
            if has_size_path(&gr, &probe, &[Some(2), Some(2), Some(2)]).is_some() {
                continue;
            }
            let Some(path) =
                has_size_path(&gr, &probe, &[Some(2), Some(2), Some(3), Some(2), Some(2)])
            else {
                continue;
            };
            let free: Vec<Vertex> = (0..n).collect();
            let aff: Vec<u64> = (0..n)
                .map(|v| gr.neighbors(v).iter().fold(0u64, |m, &u| m | (1u64 << u)))
                .collect();
            let left = budget.saturating_sub(assignments);
            let test = |l: &ListAssignment| -> Result<bool, SolverError> {
                Ok(find_coloring(&gr, l, &Coloring::new(n))?.is_none())
            };
            let out = sweep(n, &free, &aff, &sizes, Some(left), &test)?;
            match out {
                SweepOutcome::Found(lists) => {
                    return Ok(CounterexampleSearch::Found(Thm3Counterexample {
                        graph: g.clone(),
                        lists,
                        path,
                    }))
                }
                SweepOutcome::None { tested } => assignments += tested,
                SweepOutcome::BudgetExceeded { tested } => {
                    assignments += tested;
                    return Ok(CounterexampleSearch::BudgetExceeded {
                        graphs: count,
                        assignments,
                    });
                }
            }
        }
    }
    Ok(CounterexampleSearch::Exhausted {
        graphs: count,
        assignments,
    })
}
