//! List assignments, precolored paths and the hypothesis predicates built on
//! list sizes: the I-sets, bad vertices, validity, and the forbidden-path
//! conditions of the colorability theorems.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::embed::{FaceRef, PlaneGraph};
use crate::graph::{Graph, Vertex};

pub type Color = u8;

/// Colors are kept in a 64-bit set, so they must be below this bound.
pub const MAX_COLORS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_colors(colors: &[Color]) -> ColorSet {
        let mut s = ColorSet::EMPTY;
        for &c in colors {
            s.insert(c);
        }
        s
    }

    pub fn singleton(c: Color) -> ColorSet {
        ColorSet(1u64 << c)
    }

    /// The colors `0..k`.
    pub fn first(k: usize) -> ColorSet {
        if k >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn contains(self, c: Color) -> bool {
        (c as usize) < MAX_COLORS && self.0 & (1u64 << c) != 0
    }

    pub fn insert(&mut self, c: Color) {
        assert!((c as usize) < MAX_COLORS, "color {c} out of range");
        self.0 |= 1u64 << c;
    }

    pub fn remove(&mut self, c: Color) {
        if (c as usize) < MAX_COLORS {
            self.0 &= !(1u64 << c);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    pub fn min(self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Color)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as Color;
                bits &= bits - 1;
                Some(c)
            }
        })
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Per-vertex color lists. Vertices without a list are precolored or belong
/// to the subgraph whose coloring is given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Option<ColorSet>>,
}

impl ListAssignment {
    pub fn new(n: usize) -> Self {
        ListAssignment {
            lists: vec![None; n],
        }
    }

    /// Every vertex receives `colors`.
    pub fn uniform(n: usize, colors: &[Color]) -> Self {
        ListAssignment {
            lists: vec![Some(ColorSet::from_colors(colors)); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn set(&mut self, v: Vertex, list: ColorSet) {
        self.lists[v] = Some(list);
    }

    pub fn set_colors(&mut self, v: Vertex, colors: &[Color]) {
        self.set(v, ColorSet::from_colors(colors));
    }

    pub fn clear(&mut self, v: Vertex) {
        self.lists[v] = None;
    }

    pub fn get(&self, v: Vertex) -> Option<ColorSet> {
        self.lists.get(v).copied().flatten()
    }

    /// List size, 0 when the vertex has no list.
    pub fn size(&self, v: Vertex) -> usize {
        self.get(v).map_or(0, ColorSet::len)
    }

    /// Union of all lists.
    pub fn all_colors(&self) -> ColorSet {
        self.lists
            .iter()
            .flatten()
            .fold(ColorSet::EMPTY, |a, &b| a.union(b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, ColorSet)> + '_ {
        self.lists
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.map(|l| (v, l)))
    }
}

/// A path `p1 ... pk` on the outer face, optionally with fixed colors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrecoloredPath {
    vertices: Vec<Vertex>,
    colors: Option<Vec<Color>>,
}

impl PrecoloredPath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        PrecoloredPath {
            vertices,
            colors: None,
        }
    }

    pub fn empty() -> Self {
        PrecoloredPath::default()
    }

    pub fn with_colors(vertices: Vec<Vertex>, colors: Vec<Color>) -> Self {
        assert_eq!(vertices.len(), colors.len(), "one color per path vertex");
        PrecoloredPath {
            vertices,
            colors: Some(colors),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn colors(&self) -> Option<&[Color]> {
        self.colors.as_deref()
    }

    pub fn color_of(&self, v: Vertex) -> Option<Color> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        self.colors.as_ref().map(|c| c[i])
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_path_in(&self, g: &Graph) -> bool {
        let set: BTreeSet<_> = self.vertices.iter().collect();
        set.len() == self.vertices.len()
            && self.vertices.iter().all(|&v| v < g.vertex_count())
            && self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ListError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Precondition failures of the hypothesis checkers, distinct from the
/// hypotheses simply not holding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisError {
    #[error("girth {0} is below five")]
    Girth(usize),
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
    #[error("vertex {vertex} has a list of size {size}, expected {expected}")]
    ListSize {
        vertex: Vertex,
        size: usize,
        expected: &'static str,
    },
    #[error("face {0} is not a face of the graph")]
    UnknownFace(usize),
    #[error("precolored path is not a path of the graph")]
    NotAPath,
    #[error("vertex {0} of the precolored path is not on the face")]
    PathOffFace(Vertex),
    #[error("precolored path has length {0}, more than allowed")]
    PathTooLong(usize),
    #[error("precolored vertices {0} and {1} are adjacent and share a color")]
    ImproperPath(Vertex, Vertex),
}

/// Outcome of a hypothesis check: whether it holds, and otherwise the
/// lexicographically least offending path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub holds: bool,
    pub witness: Option<Vec<Vertex>>,
}

impl CheckResult {
    fn from_witness(witness: Option<Vec<Vertex>>) -> Self {
        CheckResult {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// List sizes with vertices of the precolored path treated as having no list.
fn sizes(g: &Graph, p: &PrecoloredPath, l: &ListAssignment) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|v| if p.contains(v) { 0 } else { l.size(v) })
        .collect()
}

fn sorted_adjacency(g: &Graph) -> Vec<Vec<Vertex>> {
    (0..g.vertex_count())
        .map(|v| {
            let mut ns = g.neighbors(v).to_vec();
            ns.sort_unstable();
            ns
        })
        .collect()
}

/// Depth-first search for the lexicographically least simple path whose
/// `i`-th vertex satisfies `preds[i]`, optionally with a fixed first vertex.
fn least_path(
    adj: &[Vec<Vertex>],
    preds: &[&dyn Fn(Vertex) -> bool],
    start: Option<Vertex>,
) -> Option<Vec<Vertex>> {
    fn extend(
        adj: &[Vec<Vertex>],
        preds: &[&dyn Fn(Vertex) -> bool],
        path: &mut Vec<Vertex>,
    ) -> bool {
        if path.len() == preds.len() {
            return true;
        }
        let last = *path.last().expect("nonempty");
        for &w in &adj[last] {
            if !path.contains(&w) && preds[path.len()](w) {
                path.push(w);
                if extend(adj, preds, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let starts: Vec<Vertex> = match start {
        Some(s) => vec![s],
        None => (0..adj.len()).collect(),
    };
    let mut path = Vec::with_capacity(preds.len());
    for s in starts {
        if !preds[0](s) {
            continue;
        }
        path.clear();
        path.push(s);
        if extend(adj, preds, &mut path) {
            return Some(path);
        }
    }
    None
}

/// `I0` (vertices with lists of size two) and `I`, which adds the path
/// vertices when the path has length at least three.
pub fn i_sets(
    g: &Graph,
    p: &PrecoloredPath,
    l: &ListAssignment,
) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
    let size = sizes(g, p, l);
    let i0: BTreeSet<Vertex> = (0..g.vertex_count()).filter(|&v| size[v] == 2).collect();
    let mut i = i0.clone();
    if p.length() > 2 {
        i.extend(p.vertices().iter().copied());
    }
    (i0, i)
}

/// The least path certifying that `v` is bad, if any.
pub fn bad_witness(
    g: &Graph,
    p: &PrecoloredPath,
    l: &ListAssignment,
    v: Vertex,
) -> Option<Vec<Vertex>> {
    let adj = sorted_adjacency(g);
    bad_witness_with(&adj, &sizes(g, p, l), &i_sets(g, p, l).1, v)
}

fn bad_witness_with(
    adj: &[Vec<Vertex>],
    size: &[usize],
    i: &BTreeSet<Vertex>,
    v: Vertex,
) -> Option<Vec<Vertex>> {
    let any = |_: Vertex| true;
    let two = |w: Vertex| size[w] == 2;
    let three = |w: Vertex| size[w] == 3;
    let in_i = |w: Vertex| i.contains(&w);
    let short = least_path(adj, &[&any, &two, &in_i], Some(v));
    let long = least_path(adj, &[&any, &two, &three, &two, &in_i], Some(v));
    match (short, long) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// All bad vertices.
pub fn bad_vertices(g: &Graph, p: &PrecoloredPath, l: &ListAssignment) -> BTreeSet<Vertex> {
    let adj = sorted_adjacency(g);
    let size = sizes(g, p, l);
    let (_, i) = i_sets(g, p, l);
    (0..g.vertex_count())
        .filter(|&v| bad_witness_with(&adj, &size, &i, v).is_some())
        .collect()
}

/// Valid means no vertex with a list of size two is bad. The witness is the
/// path certifying badness of the least offending vertex.
pub fn is_valid(g: &Graph, p: &PrecoloredPath, l: &ListAssignment) -> CheckResult {
    let adj = sorted_adjacency(g);
    let size = sizes(g, p, l);
    let (i0, i) = i_sets(g, p, l);
    let witness = i0
        .iter()
        .find_map(|&v| bad_witness_with(&adj, &size, &i, v));
    CheckResult::from_witness(witness)
}

fn face_vertices(g: &PlaneGraph, f: FaceRef) -> Result<BTreeSet<Vertex>, HypothesisError> {
    g.faces()
        .get(f.index)
        .map(|w| w.iter().copied().collect())
        .ok_or(HypothesisError::UnknownFace(f.index))
}

fn check_girth(g: &Graph) -> Result<(), HypothesisError> {
    match crate::embed::girth_of(g) {
        Some(x) if x < 5 => Err(HypothesisError::Girth(x)),
        _ => Ok(()),
    }
}

/// Preconditions shared by the path-pattern theorems: girth at least five,
/// lists of size three off the face and at least two on it.
fn check_face_lists(
    g: &Graph,
    on_face: &BTreeSet<Vertex>,
    l: &ListAssignment,
) -> Result<(), HypothesisError> {
    check_girth(g)?;
    for v in 0..g.vertex_count() {
        let size = l.get(v).ok_or(HypothesisError::MissingList(v))?.len();
        if on_face.contains(&v) {
            if size < 2 {
                return Err(HypothesisError::ListSize {
                    vertex: v,
                    size,
                    expected: "at least 2",
                });
            }
        } else if size != 3 {
            return Err(HypothesisError::ListSize {
                vertex: v,
                size,
                expected: "exactly 3",
            });
        }
    }
    Ok(())
}

fn pattern_of(adj: &[Vec<Vertex>], size: &[usize], pattern: &[bool]) -> Option<Vec<Vertex>> {
    let two = |w: Vertex| size[w] == 2;
    let any = |_: Vertex| true;
    let preds: Vec<&dyn Fn(Vertex) -> bool> = pattern
        .iter()
        .map(|&needs_two| {
            if needs_two {
                &two as &dyn Fn(Vertex) -> bool
            } else {
                &any
            }
        })
        .collect();
    least_path(adj, &preds, None)
}

/// Least path among several size patterns (`true` marks a position that needs
/// a list of size two).
fn least_of_patterns(g: &Graph, l: &ListAssignment, patterns: &[&[bool]]) -> Option<Vec<Vertex>> {
    let adj = sorted_adjacency(g);
    let size: Vec<usize> = (0..g.vertex_count()).map(|v| l.size(v)).collect();
    patterns
        .iter()
        .filter_map(|p| pattern_of(&adj, &size, p))
        .min()
}

/// The two-pattern condition: no path `v1v2v3` with all lists of size two and
/// no path `v1...v5` with `v1, v2, v4, v5` having lists of size two.
pub fn check_thm3(
    g: &PlaneGraph,
    f: FaceRef,
    l: &ListAssignment,
) -> Result<CheckResult, HypothesisError> {
    let graph = g.graph();
    check_face_lists(&graph, &face_vertices(g, f)?, l)?;
    Ok(thm3_patterns(&graph, l))
}

/// [`check_thm3`] without the precondition checks.
pub fn thm3_patterns(g: &Graph, l: &ListAssignment) -> CheckResult {
    CheckResult::from_witness(least_of_patterns(
        g,
        l,
        &[&[true, true, true], &[true, true, false, true, true]],
    ))
}

/// The three-pattern condition: no 2-2-2 path, no path `v1..v4` with
/// `v1, v2, v4` of size two, and no path `v1..v6` with `v1, v2, v5, v6` of
/// size two.
pub fn check_cor2(
    g: &PlaneGraph,
    f: FaceRef,
    l: &ListAssignment,
) -> Result<CheckResult, HypothesisError> {
    let graph = g.graph();
    check_face_lists(&graph, &face_vertices(g, f)?, l)?;
    Ok(cor2_patterns(&graph, l))
}

/// [`check_cor2`] without the precondition checks.
pub fn cor2_patterns(g: &Graph, l: &ListAssignment) -> CheckResult {
    CheckResult::from_witness(least_of_patterns(
        g,
        l,
        &[
            &[true, true, true],
            &[true, true, false, true],
            &[true, true, false, false, true, true],
        ],
    ))
}

/// Singleton-list regime: `P` (length at most five, on the face) carries lists
/// of size one that properly color `G[V(P)]`; the condition is that every
/// vertex with a list of size two has no neighbor with a list of size at most
/// two. Colors given on the path override missing lists.
pub fn check_thm1(
    g: &PlaneGraph,
    f: FaceRef,
    p: &PrecoloredPath,
    l: &ListAssignment,
) -> Result<CheckResult, HypothesisError> {
    let graph = g.graph();
    let on_face = face_vertices(g, f)?;
    check_girth(&graph)?;
    if !p.is_path_in(&graph) {
        return Err(HypothesisError::NotAPath);
    }
    if p.length() > 5 {
        return Err(HypothesisError::PathTooLong(p.length()));
    }
    if let Some(&v) = p.vertices().iter().find(|v| !on_face.contains(v)) {
        return Err(HypothesisError::PathOffFace(v));
    }
    let mut eff = l.clone();
    for (i, &v) in p.vertices().iter().enumerate() {
        if let Some(cs) = p.colors() {
            eff.set(v, ColorSet::singleton(cs[i]));
        }
        let size = eff.get(v).ok_or(HypothesisError::MissingList(v))?.len();
        if size != 1 {
            return Err(HypothesisError::ListSize {
                vertex: v,
                size,
                expected: "exactly 1 on the path",
            });
        }
    }
    for &u in p.vertices() {
        for &w in p.vertices() {
            if u < w && graph.has_edge(u, w) && eff.get(u) == eff.get(w) {
                return Err(HypothesisError::ImproperPath(u, w));
            }
        }
    }
    for v in 0..graph.vertex_count() {
        if p.contains(v) {
            continue;
        }
        let size = eff.get(v).ok_or(HypothesisError::MissingList(v))?.len();
        let ok = if on_face.contains(&v) {
            size >= 2
        } else {
            size == 3
        };
        if !ok {
            return Err(HypothesisError::ListSize {
                vertex: v,
                size,
                expected: if on_face.contains(&v) {
                    "at least 2"
                } else {
                    "exactly 3"
                },
            });
        }
    }
    Ok(thm1_pattern(&graph, &eff))
}

/// [`check_thm1`] without the precondition checks: the least edge joining a
/// vertex with a list of size two to one with a list of size at most two.
pub fn thm1_pattern(g: &Graph, l: &ListAssignment) -> CheckResult {
    let adj = sorted_adjacency(g);
    let two = |w: Vertex| l.size(w) == 2;
    let small = |w: Vertex| l.size(w) <= 2;
    let a = least_path(&adj, &[&two, &small], None);
    let b = least_path(&adj, &[&small, &two], None);
    let witness = match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    CheckResult::from_witness(witness)
}

/// Parses the `.lst` format: `l <v>: <colors>`, `path <v1> <v2> ...` and
/// `p <v>: <c>` lines; `#` starts a comment line.
pub fn parse_lst(text: &str, n: usize) -> Result<(ListAssignment, PrecoloredPath), ListError> {
    let perr = |line: usize, message: &str| ListError::Parse {
        line,
        message: message.to_string(),
    };
    let mut l = ListAssignment::new(n);
    let mut path: Option<Vec<Vertex>> = None;
    let mut fixed: Vec<(Vertex, Color)> = Vec::new();
    let parse_vertex = |s: &str, line: usize| -> Result<Vertex, ListError> {
        let v: Vertex = s.trim().parse().map_err(|_| perr(line, "bad vertex id"))?;
        if v >= n {
            return Err(perr(line, "vertex id out of range"));
        }
        Ok(v)
    };
    let parse_color = |s: &str, line: usize| -> Result<Color, ListError> {
        let c: usize = s.parse().map_err(|_| perr(line, "bad color"))?;
        if c >= MAX_COLORS {
            return Err(perr(line, "color out of range (must be below 64)"));
        }
        Ok(c as Color)
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "l" | "p" => {
                let (v, cs) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, "expected `<vertex>: <colors>`"))?;
                let v = parse_vertex(v, line_no)?;
                let colors = cs
                    .split_whitespace()
                    .map(|c| parse_color(c, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                if kw == "l" {
                    if colors.is_empty() {
                        return Err(perr(line_no, "empty list"));
                    }
                    if l.get(v).is_some() {
                        return Err(perr(line_no, "vertex listed twice"));
                    }
                    l.set_colors(v, &colors);
                } else {
                    if colors.len() != 1 {
                        return Err(perr(line_no, "expected exactly one color"));
                    }
                    fixed.push((v, colors[0]));
                }
            }
            "path" => {
                if path.is_some() {
                    return Err(perr(line_no, "duplicate path line"));
                }
                path = Some(
                    rest.split_whitespace()
                        .map(|w| parse_vertex(w, line_no))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            _ => return Err(perr(line_no, "unknown line")),
        }
    }
    let last = text.lines().count().max(1);
    let vertices = path.unwrap_or_default();
    let p = if fixed.is_empty() {
        PrecoloredPath::new(vertices)
    } else {
        let mut colors = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            let c = fixed
                .iter()
                .find(|(w, _)| *w == v)
                .map(|&(_, c)| c)
                .ok_or_else(|| perr(last, &format!("path vertex {v} has no fixed color")))?;
            colors.push(c);
        }
        if let Some((v, _)) = fixed.iter().find(|(v, _)| !vertices.contains(v)) {
            return Err(perr(
                last,
                &format!("fixed color for vertex {v} which is not on the path"),
            ));
        }
        PrecoloredPath::with_colors(vertices, colors)
    };
    Ok((l, p))
}

/// Writes the `.lst` format.
pub fn format_lst(l: &ListAssignment, p: &PrecoloredPath) -> String {
    let mut out = String::new();
    for (v, list) in l.iter() {
        let cs: Vec<String> = list.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("l {}: {}\n", v, cs.join(" ")));
    }
    if !p.is_empty() {
        let vs: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("path {}\n", vs.join(" ")));
        if let Some(cs) = p.colors() {
            for (v, c) in p.vertices().iter().zip(cs) {
                out.push_str(&format!("p {}: {}\n", v, c));
            }
        }
    }
    out
}
