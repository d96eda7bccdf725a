//! Exact list coloring, precoloring extension, criticality, skeletons and the
//! class A / class B classifier.
//!
//! Criticality is decided edge by edge. A proper subgraph `G'` of `G` that
//! contains `S` either misses an edge `e` outside `S` (then `G' ⊆ G - e`, and a
//! precoloring extending to `G - e` extends to `G'` by restriction) or misses
//! only isolated vertices outside `S` (which never affect extendability).
//! So `G` is S-critical exactly when it has no isolated vertex outside `S` and
//! every edge outside `S` has a precoloring that extends to `G - e` but not
//! to `G`.
//!
//! Precolorings of `S` range over all colors, not only list colors. Colors
//! outside every list are interchangeable, so the searches use the list colors
//! plus "fresh" colors that only matter through equalities on edges joining
//! two vertices of `S`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::embed::{girth_of, EmbedError, PlaneGraph};
use crate::graph::{Edge, Graph, Subgraph, Vertex, MAX_VERTICES};
use crate::lists::{self, Color, ColorSet, ListAssignment, PrecoloredPath, MAX_COLORS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {0} has neither a list nor a fixed color")]
    MissingList(Vertex),
    #[error("fixed colors of adjacent vertices {0} and {1} coincide")]
    FixedImproper(Vertex, Vertex),
    #[error("fixed color {1} of vertex {0} is not in its list")]
    FixedOffList(Vertex, Color),
    #[error("vertex {0} is outside the graph")]
    UnknownVertex(Vertex),
    #[error("palette is empty")]
    EmptyPalette,
    #[error("subgraph is not contained in the graph")]
    NotASubgraph,
}

/// A partial map from vertices to colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new(n: usize) -> Self {
        Coloring {
            colors: vec![None; n],
        }
    }

    pub fn from_colors(colors: Vec<Option<Color>>) -> Self {
        Coloring { colors }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        if v >= self.colors.len() {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        if v < self.colors.len() {
            self.colors[v] = None;
        }
    }

    pub fn domain(&self) -> Vec<Vertex> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v].is_some())
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// No edge of `g` joins two colored vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|e| !matches!((self.get(e.0), self.get(e.1)), (Some(a), Some(b)) if a == b))
    }

    /// Every colored vertex that has a list uses a color from it.
    pub fn respects(&self, l: &ListAssignment) -> bool {
        self.colors
            .iter()
            .enumerate()
            .all(|(v, c)| match (c, l.get(v)) {
                (Some(c), Some(list)) => list.contains(*c),
                _ => true,
            })
    }

    /// The restriction to the given vertices.
    pub fn restrict(&self, keep: impl IntoIterator<Item = Vertex>) -> Coloring {
        let mut out = Coloring::new(self.colors.len());
        for v in keep {
            if let Some(c) = self.get(v) {
                out.set(v, c);
            }
        }
        out
    }
}

impl fmt::Display for Coloring {
    /// One `c <vertex> <color>` line per colored vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                writeln!(f, "c {v} {c}")?;
            }
        }
        Ok(())
    }
}

fn masks_of(g: &Graph) -> Result<Vec<u64>, SolverError> {
    g.masks()
        .ok_or(SolverError::TooManyVertices(g.vertex_count()))
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Backtracking search with minimum-remaining-values selection (ties broken
/// by the smallest vertex id) and forward checking. `avail` is restored on
/// return; `out` receives the colors of the vertices in `todo`.
pub(crate) fn search(adj: &[u64], avail: &mut [u64], todo: u64, out: &mut [u8]) -> bool {
    if todo == 0 {
        return true;
    }
    let mut best = usize::MAX;
    let mut best_count = u32::MAX;
    for v in bits(todo) {
        let c = avail[v].count_ones();
        if c < best_count {
            best_count = c;
            best = v;
            if c <= 1 {
                break;
            }
        }
    }
    if best_count == 0 {
        return false;
    }
    let v = best;
    let rest = todo & !(1u64 << v);
    let nbrs = adj[v] & rest;
    for c in bits(avail[v]) {
        let bit = 1u64 << c;
        let mut touched = 0u64;
        let mut dead = false;
        for w in bits(nbrs) {
            if avail[w] & bit != 0 {
                avail[w] &= !bit;
                touched |= 1u64 << w;
                if avail[w] == 0 {
                    dead = true;
                }
            }
        }
        if !dead {
            out[v] = c as u8;
            if search(adj, avail, rest, out) {
                for w in bits(touched) {
                    avail[w] |= bit;
                }
                return true;
            }
        }
        for w in bits(touched) {
            avail[w] |= bit;
        }
    }
    false
}

/// A proper coloring of `g` from the lists of `l` that agrees with `fixed`.
/// Vertices colored by `fixed` need no list; if they have one, the fixed color
/// must belong to it.
pub fn find_coloring(
    g: &Graph,
    l: &ListAssignment,
    fixed: &Coloring,
) -> Result<Option<Coloring>, SolverError> {
    let n = g.vertex_count();
    let adj = masks_of(g)?;
    if let Some(v) = fixed.domain().into_iter().find(|&v| v >= n) {
        return Err(SolverError::UnknownVertex(v));
    }
    let mut avail = vec![0u64; n];
    let mut todo = 0u64;
    for v in 0..n {
        match fixed.get(v) {
            Some(c) => {
                if let Some(list) = l.get(v) {
                    if !list.contains(c) {
                        return Err(SolverError::FixedOffList(v, c));
                    }
                }
            }
            None => {
                avail[v] = l.get(v).ok_or(SolverError::MissingList(v))?.0;
                todo |= 1u64 << v;
            }
        }
    }
    for e in g.edges() {
        if let (Some(a), Some(b)) = (fixed.get(e.0), fixed.get(e.1)) {
            if a == b {
                return Err(SolverError::FixedImproper(e.0, e.1));
            }
        }
    }
    for v in fixed.domain() {
        let c = fixed.get(v).expect("in domain");
        for w in bits(adj[v] & todo) {
            avail[w] &= !(1u64 << c);
        }
    }
    let mut out = vec![0u8; n];
    if !search(&adj, &mut avail, todo, &mut out) {
        return Ok(None);
    }
    let mut col = fixed.clone();
    col.colors.resize(n, None);
    for v in bits(todo) {
        col.set(v, out[v]);
    }
    Ok(Some(col))
}

/// Result of the degree-choosability shortcut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FastPath {
    Colorable,
    /// Complete graph or odd cycle whose lists are all equal and of size equal
    /// to the degree: not colorable.
    Exception,
    /// `H` is not 2-connected or some list is smaller than the degree.
    Inapplicable,
}

/// For a 2-connected `h` with `|L(v)| >= deg_H(v)`, decides colorability
/// without search: colorable unless `h` is complete or an odd cycle with all
/// lists equal (and then of size exactly the degree).
pub fn degree_choosable_fastpath(h: &Subgraph, l: &ListAssignment) -> FastPath {
    let verts: Vec<Vertex> = h.vertices().iter().copied().collect();
    let n = verts.iter().max().map_or(0, |&m| m + 1);
    let g = Graph::from_edges(n, h.edges().iter().map(|e| (e.0, e.1)));
    if !g.is_two_connected_on(&verts) {
        return FastPath::Inapplicable;
    }
    for &v in &verts {
        if l.size(v) < g.degree(v) {
            return FastPath::Inapplicable;
        }
    }
    let k = verts.len();
    let m = h.edges().len();
    let complete = m == k * (k - 1) / 2;
    let odd_cycle = m == k && k % 2 == 1 && verts.iter().all(|&v| g.degree(v) == 2);
    let first = l.get(verts[0]);
    let same = verts
        .iter()
        .all(|&v| l.get(v) == first && l.size(v) == g.degree(v));
    if (complete || odd_cycle) && same {
        FastPath::Exception
    } else {
        FastPath::Colorable
    }
}

/// Streams the proper colorings of `s` from the palette `0..palette`, one per
/// orbit of the color permutations that fix every color of `distinguished`.
/// With all palette colors distinguished every proper coloring is produced.
pub fn precolorings(
    s: &Subgraph,
    palette: usize,
    distinguished: ColorSet,
) -> Result<Precolorings, SolverError> {
    if palette == 0 {
        return Err(SolverError::EmptyPalette);
    }
    let order: Vec<Vertex> = s.vertices().iter().copied().collect();
    let n = order.last().map_or(0, |&v| v + 1);
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (0..i).filter(|&j| s.contains_edge(order[j], v)).collect())
        .collect();
    Ok(Precolorings {
        order,
        n,
        earlier,
        palette: palette.min(MAX_COLORS),
        distinguished,
        current: Vec::new(),
        started: false,
        done: false,
    })
}

pub struct Precolorings {
    order: Vec<Vertex>,
    n: usize,
    earlier: Vec<Vec<usize>>,
    palette: usize,
    distinguished: ColorSet,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl Precolorings {
    /// Smallest admissible color at position `i` that is at least `from`.
    fn next_color(&self, i: usize, from: usize) -> Option<usize> {
        let used: ColorSet = self.current[..i].iter().fold(ColorSet::EMPTY, |a, &c| {
            a.union(ColorSet::singleton(c as Color))
        });
        let fresh = (0..self.palette)
            .find(|&c| !self.distinguished.contains(c as Color) && !used.contains(c as Color));
        (from..self.palette).find(|&c| {
            let ok_nd = self.distinguished.contains(c as Color)
                || used.contains(c as Color)
                || Some(c) == fresh;
            ok_nd && self.earlier[i].iter().all(|&j| self.current[j] != c)
        })
    }

    /// Fills positions `from..` with their smallest admissible colors,
    /// backtracking as needed. Returns false when exhausted.
    fn fill(&mut self, mut i: usize, mut from: usize) -> bool {
        let k = self.order.len();
        loop {
            if i == k {
                return true;
            }
            match self.next_color(i, from) {
                Some(c) => {
                    self.current.truncate(i);
                    self.current.push(c);
                    i += 1;
                    from = 0;
                }
                None => {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    from = self.current[i] + 1;
                    self.current.truncate(i);
                }
            }
        }
    }

    fn emit(&self) -> Coloring {
        let mut col = Coloring::new(self.n);
        for (i, &v) in self.order.iter().enumerate() {
            col.set(v, self.current[i] as Color);
        }
        col
    }
}

impl Iterator for Precolorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.fill(0, 0)
        } else if self.order.is_empty() {
            false
        } else {
            let last = self.order.len() - 1;
            let from = self.current[last] + 1;
            self.current.truncate(last);
            self.fill(last, from)
        };
        if ok {
            Some(self.emit())
        } else {
            self.done = true;
            None
        }
    }
}

/// Verdicts of the criticality tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    EqualsS,
    NotCritical,
    Critical,
    StronglyCritical,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EqualsS => "EQUALS-S",
            Verdict::NotCritical => "NOT-CRITICAL",
            Verdict::Critical => "CRITICAL",
            Verdict::StronglyCritical => "STRONGLY-CRITICAL",
        })
    }
}

/// A precoloring of `S` that extends to `G - edge` but not to `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWitness {
    pub edge: Edge,
    pub precoloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub verdict: Verdict,
    /// One witness per edge outside `S` (sorted by edge) when critical.
    pub witnesses: Vec<EdgeWitness>,
    /// For strongly critical graphs, the single precoloring that works for
    /// every edge.
    pub strong_witness: Option<Coloring>,
    /// An edge outside `S` without a witness, when not critical.
    pub failing_edge: Option<Edge>,
    /// An isolated vertex outside `S`, when not critical for that reason.
    pub failing_vertex: Option<Vertex>,
}

impl CriticalityReport {
    fn simple(verdict: Verdict) -> Self {
        CriticalityReport {
            verdict,
            witnesses: Vec::new(),
            strong_witness: None,
            failing_edge: None,
            failing_vertex: None,
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!(self.verdict, Verdict::Critical | Verdict::StronglyCritical)
    }
}

const UNSET: u8 = 255;
const SHARED: u8 = 254;

/// Extension problem for precolorings of `S` on a graph of at most 64
/// vertices, with list colors renamed to `0..r`. A precoloring maps each
/// vertex of `S` to a list color, to a fresh color `>= r` (fresh colors of
/// adjacent vertices must differ), or to `UNSET`, meaning a fresh color not
/// used anywhere else.
#[derive(Clone, Debug)]
pub(crate) struct ExtensionProblem {
    pub(crate) n: usize,
    pub(crate) adj: Vec<u64>,
    pub(crate) s_mask: u64,
    /// Dense lists of the vertices outside `S`.
    pub(crate) lists: Vec<u64>,
    pub(crate) free: u64,
    pub(crate) r: u8,
    /// Original color of each dense color.
    pub(crate) palette: Vec<Color>,
    /// Edges of `G` outside `S`, sorted.
    pub(crate) edges: Vec<Edge>,
}

impl ExtensionProblem {
    pub(crate) fn new(g: &Graph, s: &Subgraph, l: &ListAssignment) -> Result<Self, SolverError> {
        let n = g.vertex_count();
        if n > MAX_VERTICES {
            return Err(SolverError::TooManyVertices(n));
        }
        if !s.within(g) {
            return Err(SolverError::NotASubgraph);
        }
        let adj = masks_of(g)?;
        let s_mask = s.vertex_mask();
        let mut union = ColorSet::EMPTY;
        for v in 0..n {
            if s_mask & (1u64 << v) == 0 {
                union = union.union(l.get(v).ok_or(SolverError::MissingList(v))?);
            }
        }
        let palette: Vec<Color> = union.iter().collect();
        let mut dense = [0u8; MAX_COLORS];
        for (i, &c) in palette.iter().enumerate() {
            dense[c as usize] = i as u8;
        }
        let mut lists = vec![0u64; n];
        for (v, list) in lists.iter_mut().enumerate() {
            if s_mask & (1u64 << v) == 0 {
                *list = l
                    .get(v)
                    .expect("checked")
                    .iter()
                    .fold(0u64, |m, c| m | (1u64 << dense[c as usize]));
            }
        }
        let edges: Vec<Edge> = g
            .edges()
            .into_iter()
            .filter(|e| !s.contains_edge(e.0, e.1))
            .collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(ExtensionProblem {
            n,
            adj,
            s_mask,
            lists,
            free: full & !s_mask,
            r: palette.len() as u8,
            palette,
            edges,
        })
    }

    pub(crate) fn without_edge(&self, e: Edge) -> Vec<u64> {
        let mut adj = self.adj.clone();
        adj[e.0] &= !(1u64 << e.1);
        adj[e.1] &= !(1u64 << e.0);
        adj
    }

    /// Whether the precoloring extends to the graph with adjacency `adj`.
    pub(crate) fn extends(&self, adj: &[u64], psi: &[u8]) -> bool {
        self.extension(adj, psi).is_some()
    }

    pub(crate) fn extension(&self, adj: &[u64], psi: &[u8]) -> Option<Vec<u8>> {
        let mut avail = self.lists.clone();
        for s in bits(self.s_mask) {
            let c = psi[s];
            if c == UNSET {
                continue;
            }
            for t in bits(adj[s] & self.s_mask) {
                if psi[t] == c {
                    return None;
                }
            }
            if c < self.r {
                let bit = !(1u64 << c);
                for w in bits(adj[s] & self.free) {
                    avail[w] &= bit;
                }
            }
        }
        for w in bits(self.free) {
            if avail[w] == 0 {
                return None;
            }
        }
        let mut out = vec![0u8; self.n];
        if search(adj, &mut avail, self.free, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    /// Searches for a precoloring satisfying `alive` (which must be preserved
    /// under relaxing assignments) that does not extend to the whole graph.
    fn kill_search(&self, alive: &dyn Fn(&[u8]) -> bool, budget: &mut Budget) -> Option<Vec<u8>> {
        let psi = vec![UNSET; self.n];
        let forb = vec![0u64; self.n];
        let mut seen = HashSet::new();
        self.kill_rec(psi, forb, alive, &mut seen, budget)
    }

    fn kill_rec(
        &self,
        psi: Vec<u8>,
        forb: Vec<u64>,
        alive: &dyn Fn(&[u8]) -> bool,
        seen: &mut HashSet<(Vec<u8>, Vec<u64>)>,
        budget: &mut Budget,
    ) -> Option<Vec<u8>> {
        if !budget.spend() {
            return None;
        }
        if !seen.insert((psi.clone(), forb.clone())) {
            return None;
        }
        if !alive(&psi) {
            return None;
        }
        let phi = match self.extension(&self.adj, &psi) {
            None => return Some(psi),
            Some(phi) => phi,
        };
        let mut pairs: Vec<(usize, u8)> = Vec::new();
        for s in bits(self.s_mask) {
            if psi[s] != UNSET {
                continue;
            }
            let mut cs = 0u64;
            for w in bits(self.adj[s] & self.free) {
                cs |= 1u64 << phi[w];
            }
            cs &= !forb[s];
            for t in bits(self.adj[s] & self.s_mask) {
                if psi[t] < self.r {
                    cs &= !(1u64 << psi[t]);
                }
            }
            for c in bits(cs) {
                pairs.push((s, c as u8));
            }
        }
        let mut forb_acc = forb;
        for &(s, c) in &pairs {
            let mut next = psi.clone();
            next[s] = c;
            let mut f = forb_acc.clone();
            f[s] = 0;
            if let Some(w) = self.kill_rec(next, f, alive, seen, budget) {
                return Some(w);
            }
            if budget.exhausted() {
                return None;
            }
            forb_acc[s] |= 1u64 << c;
        }
        None
    }

    /// A precoloring extending to `G - e` but not to `G`.
    pub(crate) fn edge_witness(&self, e: Edge, budget: &mut Budget) -> Option<Vec<u8>> {
        let minus = self.without_edge(e);
        let in_s = |v: Vertex| self.s_mask & (1u64 << v) != 0;
        if in_s(e.0) && in_s(e.1) {
            let mut psi = vec![UNSET; self.n];
            psi[e.0] = SHARED;
            psi[e.1] = SHARED;
            return if self.extends(&minus, &psi) {
                Some(psi)
            } else {
                None
            };
        }
        self.kill_search(&|psi: &[u8]| self.extends(&minus, psi), budget)
    }

    /// Whether the graph is S-critical; on success returns one witness per
    /// edge (in edge order), otherwise the first edge without one.
    pub(crate) fn critical_witnesses(&self, budget: &mut Budget) -> Result<Vec<Vec<u8>>, Edge> {
        let minus: Vec<Vec<u64>> = self.edges.iter().map(|&e| self.without_edge(e)).collect();
        let mut found: Vec<Option<Vec<u8>>> = vec![None; self.edges.len()];
        let mut pool: Vec<Vec<u8>> = Vec::new();
        for i in 0..self.edges.len() {
            if found[i].is_some() {
                continue;
            }
            if let Some(w) = pool.iter().find(|w| self.extends(&minus[i], w)) {
                found[i] = Some(w.clone());
                continue;
            }
            match self.edge_witness(self.edges[i], budget) {
                Some(w) => {
                    for j in i + 1..self.edges.len() {
                        if found[j].is_none() && self.extends(&minus[j], &w) {
                            found[j] = Some(w.clone());
                        }
                    }
                    found[i] = Some(w.clone());
                    pool.push(w);
                }
                None => return Err(self.edges[i]),
            }
        }
        Ok(found.into_iter().map(|w| w.expect("filled")).collect())
    }

    /// A precoloring extending to every `G - e` but not to `G`.
    pub(crate) fn strong_witness(&self, budget: &mut Budget) -> Option<Vec<u8>> {
        if self.edges.is_empty() {
            return None;
        }
        if self.edges.len() == 1 {
            return self.edge_witness(self.edges[0], budget);
        }
        let minus: Vec<Vec<u64>> = self.edges.iter().map(|&e| self.without_edge(e)).collect();
        self.kill_search(
            &|psi: &[u8]| minus.iter().all(|adj| self.extends(adj, psi)),
            budget,
        )
    }

    pub(crate) fn isolated_free_vertex(&self) -> Option<Vertex> {
        bits(self.free).find(|&v| self.adj[v] == 0)
    }

    /// Translates a dense precoloring to original colors; fresh colors become
    /// distinct colors above every list color.
    pub(crate) fn concretize(&self, psi: &[u8]) -> Coloring {
        let base = self
            .palette
            .iter()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0);
        let mut next_fresh = base;
        let mut fresh_of = std::collections::BTreeMap::new();
        let mut col = Coloring::new(self.n);
        for s in bits(self.s_mask) {
            let c = psi[s];
            let color = if c < self.r {
                self.palette[c as usize] as usize
            } else {
                let key = if c == UNSET { 1000 + s } else { c as usize };
                *fresh_of.entry(key).or_insert_with(|| {
                    let f = next_fresh;
                    next_fresh += 1;
                    f
                })
            };
            col.set(s, color.min(MAX_COLORS - 1) as Color);
        }
        col
    }
}

/// Work limit for searches; unlimited by default.
#[derive(Clone, Debug)]
pub(crate) struct Budget {
    left: Option<u64>,
    hit: bool,
}

impl Budget {
    pub(crate) fn unlimited() -> Self {
        Budget {
            left: None,
            hit: false,
        }
    }

    pub(crate) fn spend(&mut self) -> bool {
        match &mut self.left {
            None => true,
            Some(0) => {
                self.hit = true;
                false
            }
            Some(k) => {
                *k -= 1;
                true
            }
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.hit
    }
}

fn equals_s(g: &Graph, s: &Subgraph) -> bool {
    s.vertices().len() == g.vertex_count() && s.edges().len() == g.edge_count()
}

/// Decides whether `g` is S-critical with respect to `l` (lists on the
/// vertices outside `S`). Witnesses are re-verified with [`find_coloring`].
pub fn is_critical(
    g: &Graph,
    s: &Subgraph,
    l: &ListAssignment,
) -> Result<CriticalityReport, SolverError> {
    let prob = ExtensionProblem::new(g, s, l)?;
    if equals_s(g, s) {
        return Ok(CriticalityReport::simple(Verdict::EqualsS));
    }
    if let Some(v) = prob.isolated_free_vertex() {
        let mut r = CriticalityReport::simple(Verdict::NotCritical);
        r.failing_vertex = Some(v);
        return Ok(r);
    }
    match prob.critical_witnesses(&mut Budget::unlimited()) {
        Ok(ws) => {
            let mut r = CriticalityReport::simple(Verdict::Critical);
            for (e, w) in prob.edges.iter().zip(ws) {
                let psi = prob.concretize(&w);
                debug_assert!(verify_edge_witness(g, s, l, *e, &psi));
                r.witnesses.push(EdgeWitness {
                    edge: *e,
                    precoloring: psi,
                });
            }
            Ok(r)
        }
        Err(e) => {
            let mut r = CriticalityReport::simple(Verdict::NotCritical);
            r.failing_edge = Some(e);
            Ok(r)
        }
    }
}

/// Decides strong S-criticality. When the graph is not strongly critical the
/// report carries the plain criticality verdict.
pub fn is_strongly_critical(
    g: &Graph,
    s: &Subgraph,
    l: &ListAssignment,
) -> Result<CriticalityReport, SolverError> {
    let prob = ExtensionProblem::new(g, s, l)?;
    if equals_s(g, s) {
        return Ok(CriticalityReport::simple(Verdict::EqualsS));
    }
    if prob.isolated_free_vertex().is_none() {
        if let Some(w) = prob.strong_witness(&mut Budget::unlimited()) {
            let psi = prob.concretize(&w);
            let mut r = CriticalityReport::simple(Verdict::StronglyCritical);
            r.witnesses = prob
                .edges
                .iter()
                .map(|&e| EdgeWitness {
                    edge: e,
                    precoloring: psi.clone(),
                })
                .collect();
            r.strong_witness = Some(psi);
            return Ok(r);
        }
    }
    is_critical(g, s, l)
}

/// Lists on `S` are dropped so that precolored vertices need no list.
fn lists_outside(s: &Subgraph, l: &ListAssignment) -> ListAssignment {
    let mut out = l.clone();
    for &v in s.vertices() {
        if v < out.vertex_count() {
            out.clear(v);
        }
    }
    out
}

/// Re-solves a witness: it must extend to `G - e` and not to `G`.
pub fn verify_edge_witness(
    g: &Graph,
    s: &Subgraph,
    l: &ListAssignment,
    e: Edge,
    psi: &Coloring,
) -> bool {
    let lo = lists_outside(s, l);
    let mut minus = g.clone();
    minus.remove_edge(e.0, e.1);
    let ext = |h: &Graph| matches!(find_coloring(h, &lo, psi), Ok(Some(_)));
    ext(&minus) && !ext(g)
}

/// An S-critical subgraph of `h` with the same extendable precolorings of
/// `S`, by greedy deletion of edges whose removal changes nothing.
pub fn skeleton_subgraph(
    h: &Graph,
    s: &Subgraph,
    l: &ListAssignment,
) -> Result<Subgraph, SolverError> {
    let mut cur = h.clone();
    loop {
        let prob = ExtensionProblem::new(&cur, s, l)?;
        let removable = prob
            .edges
            .iter()
            .copied()
            .find(|&e| prob.edge_witness(e, &mut Budget::unlimited()).is_none());
        match removable {
            Some(e) => {
                cur.remove_edge(e.0, e.1);
            }
            None => break,
        }
    }
    let mut out = Subgraph::from_parts(s.vertices().iter().copied(), cur.edges());
    for v in 0..cur.vertex_count() {
        if cur.degree(v) > 0 {
            out.add_vertex(v);
        }
    }
    Ok(out)
}

/// [`skeleton_subgraph`] embedded as a plane graph (vertex origins refer to
/// `h`).
pub fn skeleton(
    h: &PlaneGraph,
    s: &Subgraph,
    l: &ListAssignment,
) -> Result<PlaneGraph, SkeletonError> {
    let sub = skeleton_subgraph(&h.graph(), s, l)?;
    Ok(h.embed_subgraph(&sub)?)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    FiveFace,
    ClassA,
    ClassB,
    NotClassified,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::FiveFace => "FiveFace",
            ClassTag::ClassA => "ClassA",
            ClassTag::ClassB => "ClassB",
            ClassTag::NotClassified => "NotClassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub tag: ClassTag,
    /// The distinguished path coloring when class A or B holds.
    pub witness: Option<Coloring>,
    pub class_a: bool,
    pub class_b: bool,
    /// Number of path colorings (up to renaming colors outside the lists)
    /// that do not extend.
    pub non_extending: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the precolored path must have length four")]
    PathLength,
    #[error("the precolored path is not a path on the outer face")]
    PathNotOnOuterFace,
    #[error("girth is below five")]
    Girth,
    #[error("vertex {0} has a list of the wrong size")]
    ListSize(Vertex),
    #[error("the list assignment is not valid (witness {0:?})")]
    Invalid(Vec<Vertex>),
    #[error("path vertex {0} is bad")]
    BadPathVertex(Vertex),
    #[error("the graph is not a proper P-critical graph")]
    NotCritical,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Classifies a proper P-critical graph with a precolored path of length four
/// into a 5-face, class A or class B, checking the hypotheses first.
pub fn classify_ab(
    g: &PlaneGraph,
    p: &PrecoloredPath,
    l: &ListAssignment,
) -> Result<ClassVerdict, ClassifyError> {
    let graph = g.graph();
    if p.length() != 4 {
        return Err(ClassifyError::PathLength);
    }
    let outer: BTreeSet<Vertex> = g.outer_walk().vertices().iter().copied().collect();
    if !p.is_path_in(&graph) || p.vertices().iter().any(|v| !outer.contains(v)) {
        return Err(ClassifyError::PathNotOnOuterFace);
    }
    if girth_of(&graph).is_some_and(|x| x < 5) {
        return Err(ClassifyError::Girth);
    }
    let pv = p.vertices().to_vec();
    let l = {
        let mut m = l.clone();
        for &v in &pv {
            m.clear(v);
        }
        m
    };
    for v in 0..graph.vertex_count() {
        if p.contains(v) {
            continue;
        }
        let size = l.size(v);
        let ok = if outer.contains(&v) {
            size >= 2
        } else {
            size == 3
        };
        if !ok {
            return Err(ClassifyError::ListSize(v));
        }
    }
    let valid = lists::is_valid(&graph, p, &l);
    if let Some(w) = valid.witness {
        return Err(ClassifyError::Invalid(w));
    }
    let bad = lists::bad_vertices(&graph, p, &l);
    if let Some(&v) = pv.iter().find(|v| bad.contains(v)) {
        return Err(ClassifyError::BadPathVertex(v));
    }
    let s = Subgraph::from_walk(&pv, false);
    let prob = ExtensionProblem::new(&graph, &s, &l)?;
    if equals_s(&graph, &s)
        || prob.isolated_free_vertex().is_some()
        || prob.critical_witnesses(&mut Budget::unlimited()).is_err()
    {
        return Err(ClassifyError::NotCritical);
    }
    if graph.vertex_count() == 5 && graph.edge_count() == 5 && graph.has_edge(pv[0], pv[4]) {
        return Ok(ClassVerdict {
            tag: ClassTag::FiveFace,
            witness: None,
            class_a: false,
            class_b: false,
            non_extending: 0,
        });
    }
    let r = prob.r;
    let mut bad_list: Vec<[u8; 5]> = Vec::new();
    let mut first: Option<[u8; 5]> = None;
    let mut cur = [0u8; 5];
    enumerate_path_colorings(r, 0, 0, &mut cur, &mut |psi5| {
        if first.is_none() {
            first = Some(*psi5);
        }
        let mut psi = vec![UNSET; prob.n];
        for (i, &v) in pv.iter().enumerate() {
            psi[v] = psi5[i];
        }
        if !prob.extends(&prob.adj, &psi) {
            bad_list.push(*psi5);
        }
    });
    let agree = |positions: &[usize]| -> bool {
        match bad_list.first() {
            None => true,
            Some(b0) => bad_list
                .iter()
                .all(|b| positions.iter().all(|&i| b[i] == b0[i] && b[i] < r)),
        }
    };
    let two_list_nbr = |v: Vertex| graph.neighbors(v).iter().any(|&w| l.size(w) == 2);
    let class_a = two_list_nbr(pv[0]) && two_list_nbr(pv[4]) && agree(&[0, 1, 3, 4]);
    let class_b = agree(&[0, 2, 4]);
    let tag = if class_a {
        ClassTag::ClassA
    } else if class_b {
        ClassTag::ClassB
    } else {
        ClassTag::NotClassified
    };
    let witness = if class_a || class_b {
        let psi5 = bad_list
            .first()
            .copied()
            .or(first)
            .expect("some path coloring");
        let mut psi = vec![UNSET; prob.n];
        for (i, &v) in pv.iter().enumerate() {
            psi[v] = psi5[i];
        }
        Some(concretize_with_fresh(&prob, &psi))
    } else {
        None
    };
    Ok(ClassVerdict {
        tag,
        witness,
        class_a,
        class_b,
        non_extending: bad_list.len(),
    })
}

/// Colorings of a 5-vertex path from list colors `0..r` and fresh colors
/// `r, r+1, ...` introduced in order of first use.
fn enumerate_path_colorings(
    r: u8,
    i: usize,
    fresh_used: u8,
    cur: &mut [u8; 5],
    f: &mut dyn FnMut(&[u8; 5]),
) {
    if i == 5 {
        f(cur);
        return;
    }
    for c in 0..r + fresh_used + 1 {
        if i > 0 && cur[i - 1] == c {
            continue;
        }
        cur[i] = c;
        let fu = if c == r + fresh_used {
            fresh_used + 1
        } else {
            fresh_used
        };
        enumerate_path_colorings(r, i + 1, fu, cur, f);
    }
}

/// Like [`ExtensionProblem::concretize`] but keeps explicit fresh ids apart.
fn concretize_with_fresh(prob: &ExtensionProblem, psi: &[u8]) -> Coloring {
    prob.concretize(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists_of(n: usize, ls: &[&[Color]]) -> ListAssignment {
        let mut l = ListAssignment::new(n);
        for (v, cs) in ls.iter().enumerate() {
            l.set_colors(v, cs);
        }
        l
    }

    #[test]
    fn odd_cycle_two_colors_fails() {
        let g = Graph::cycle(5);
        let l = ListAssignment::uniform(5, &[1, 2]);
        assert_eq!(find_coloring(&g, &l, &Coloring::new(5)).unwrap(), None);
    }

    #[test]
    fn odd_cycle_with_one_different_list() {
        let g = Graph::cycle(5);
        let l = lists_of(5, &[&[1, 2], &[1, 2], &[1, 2], &[1, 2], &[1, 3]]);
        let c = find_coloring(&g, &l, &Coloring::new(5)).unwrap().unwrap();
        assert!(c.is_total() && c.is_proper(&g) && c.respects(&l));
    }

    #[test]
    fn fixed_colors_are_checked() {
        let g = Graph::path(2);
        let l = ListAssignment::uniform(2, &[1, 2]);
        let mut f = Coloring::new(2);
        f.set(0, 1);
        f.set(1, 1);
        assert_eq!(
            find_coloring(&g, &l, &f),
            Err(SolverError::FixedImproper(0, 1))
        );
        let mut f = Coloring::new(2);
        f.set(0, 5);
        assert_eq!(
            find_coloring(&g, &l, &f),
            Err(SolverError::FixedOffList(0, 5))
        );
    }

    #[test]
    fn fastpath_cases() {
        let c5 = Subgraph::from_walk(&[0, 1, 2, 3, 4], true);
        let same = ListAssignment::uniform(5, &[1, 2]);
        assert_eq!(degree_choosable_fastpath(&c5, &same), FastPath::Exception);
        let diff = lists_of(5, &[&[1, 2], &[1, 2], &[1, 2], &[1, 2], &[2, 3]]);
        assert_eq!(degree_choosable_fastpath(&c5, &diff), FastPath::Colorable);
        let c6 = Subgraph::from_walk(&[0, 1, 2, 3, 4, 5], true);
        assert_eq!(
            degree_choosable_fastpath(&c6, &ListAssignment::uniform(6, &[1, 2])),
            FastPath::Colorable
        );
        let p3 = Subgraph::from_walk(&[0, 1, 2], false);
        assert_eq!(
            degree_choosable_fastpath(&p3, &ListAssignment::uniform(3, &[1, 2])),
            FastPath::Inapplicable
        );
    }

    #[test]
    fn precolorings_single_vertex_and_edge() {
        let v = Subgraph::from_parts([0], []);
        assert_eq!(precolorings(&v, 3, ColorSet::first(3)).unwrap().count(), 3);
        assert_eq!(precolorings(&v, 3, ColorSet::EMPTY).unwrap().count(), 1);
        let e = Subgraph::from_walk(&[0, 1], false);
        assert_eq!(precolorings(&e, 2, ColorSet::first(2)).unwrap().count(), 2);
        assert_eq!(precolorings(&e, 2, ColorSet::EMPTY).unwrap().count(), 1);
        assert!(precolorings(&e, 0, ColorSet::EMPTY).is_err());
    }

    #[test]
    fn equals_s_and_pendant() {
        let g = Graph::cycle(5);
        let s = Subgraph::whole(&g);
        let l = ListAssignment::new(5);
        assert_eq!(is_critical(&g, &s, &l).unwrap().verdict, Verdict::EqualsS);
        assert_eq!(
            is_strongly_critical(&g, &s, &l).unwrap().verdict,
            Verdict::EqualsS
        );
        let mut g2 = Graph::new(6);
        for e in g.edges() {
            g2.add_edge(e.0, e.1);
        }
        g2.add_edge(0, 5);
        let mut l2 = ListAssignment::new(6);
        l2.set_colors(5, &[1, 2, 3]);
        let r = is_critical(&g2, &s, &l2).unwrap();
        assert_eq!(r.verdict, Verdict::NotCritical);
        assert_eq!(r.failing_edge, Some(Edge(0, 5)));
    }

    #[test]
    fn star_with_three_leaves_is_strongly_critical() {
        let g = Graph::from_edges(4, [(0, 3), (1, 3), (2, 3)]);
        let s = Subgraph::from_parts([0, 1, 2], []);
        let mut l = ListAssignment::new(4);
        l.set_colors(3, &[1, 2, 3]);
        let r = is_strongly_critical(&g, &s, &l).unwrap();
        assert_eq!(r.verdict, Verdict::StronglyCritical);
        let w = r.strong_witness.unwrap();
        let mut cs: Vec<Color> = (0..3).map(|v| w.get(v).unwrap()).collect();
        cs.sort();
        assert_eq!(cs, vec![1, 2, 3]);
        for ew in &r.witnesses {
            assert!(verify_edge_witness(&g, &s, &l, ew.edge, &ew.precoloring));
        }
    }

    #[test]
    fn edge_between_precolored_vertices() {
        let g = Graph::path(2);
        let s = Subgraph::from_parts([0, 1], []);
        let r = is_critical(&g, &s, &ListAssignment::new(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Critical);
        let w = &r.witnesses[0].precoloring;
        assert_eq!(w.get(0), w.get(1));
    }

    #[test]
    fn skeleton_drops_pendant_vertex() {
        let mut g = Graph::cycle(5);
        let mut big = Graph::new(6);
        for e in g.edges() {
            big.add_edge(e.0, e.1);
        }
        big.add_edge(2, 5);
        g = big;
        let s = Subgraph::from_walk(&[0, 1, 2, 3, 4], true);
        let mut l = ListAssignment::new(6);
        l.set_colors(5, &[1, 2, 3]);
        let sk = skeleton_subgraph(&g, &s, &l).unwrap();
        assert_eq!(sk, s);
    }
}
