//! Plane graphs as rotation systems.
//!
//! Each vertex lists its neighbours in clockwise order. Faces are traced with
//! the rule "leave `v` along the edge that follows the reversed incoming edge in
//! the clockwise rotation of `v`": the dart `u -> v` is followed by
//! `v -> succ_v(u)`. One traced face is designated as the outer face.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::graph::{Edge, Graph, Subgraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("vertex {0} is out of range")]
    UnknownVertex(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("rotation of {0} lists {1}, but the rotation of {1} does not list {0}")]
    InconsistentRotation(Vertex, Vertex),
    #[error("vertex {0} has no neighbours")]
    IsolatedVertex(Vertex),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler check failed: |V|={vertices}, |E|={edges}, faces={faces} (expected V-E+F=2)")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("{0}->{1} is not a dart of the graph")]
    NotADart(Vertex, Vertex),
    #[error("face {0} is not bounded by a cycle")]
    FaceNotCycle(usize),
    #[error("walk is not a cycle of the graph")]
    NotACycle,
    #[error("walk is not a chord of the outer face: {0}")]
    NotAChord(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A vertex sequence, optionally closed. Equality ignores orientation and, for
/// closed walks, the starting point.
#[derive(Clone, Debug)]
pub struct Walk {
    vertices: Vec<Vertex>,
    closed: bool,
}

impl Walk {
    pub fn path(vertices: Vec<Vertex>) -> Self {
        Walk {
            vertices,
            closed: false,
        }
    }

    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        Walk {
            vertices,
            closed: true,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len().saturating_sub(1)
        }
    }

    pub fn first(&self) -> Option<Vertex> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.vertices.last().copied()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .vertices
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]))
            .collect();
        if self.closed && self.vertices.len() > 2 {
            out.push(Edge::new(
                self.vertices[self.vertices.len() - 1],
                self.vertices[0],
            ));
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.vertices.iter().collect();
        set.len() == self.vertices.len()
    }

    /// Consecutive vertices adjacent in `g` (including the closing pair).
    pub fn is_walk_in(&self, g: &Graph) -> bool {
        if self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        self.edges().iter().all(|e| g.has_edge(e.0, e.1))
    }

    pub fn reversed(&self) -> Walk {
        let mut v = self.vertices.clone();
        v.reverse();
        Walk {
            vertices: v,
            closed: self.closed,
        }
    }

    /// Least representative over reversal (and rotation for closed walks).
    pub fn canonical(&self) -> Walk {
        let n = self.vertices.len();
        if !self.closed || n == 0 {
            let r = self.reversed();
            return if r.vertices < self.vertices {
                r
            } else {
                self.clone()
            };
        }
        let mut best: Option<Vec<Vertex>> = None;
        for seq in [self.vertices.clone(), self.reversed().vertices] {
            for s in 0..n {
                let rot: Vec<Vertex> = (0..n).map(|i| seq[(s + i) % n]).collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Walk::cycle(best.unwrap_or_default())
    }

    pub fn to_subgraph(&self) -> Subgraph {
        Subgraph::from_walk(&self.vertices, self.closed)
    }
}

impl PartialEq for Walk {
    fn eq(&self, other: &Self) -> bool {
        self.closed == other.closed && self.canonical().vertices == other.canonical().vertices
    }
}

impl Eq for Walk {}

impl Hash for Walk {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.closed.hash(state);
        self.canonical().vertices.hash(state);
    }
}

impl PartialOrd for Walk {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Walk {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.closed, self.canonical().vertices).cmp(&(other.closed, other.canonical().vertices))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("-"))?;
        if self.closed {
            write!(f, "-*")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub index: usize,
    pub length: usize,
}

/// A connected (by default) plane graph with a designated outer face.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rotation: Vec<Vec<Vertex>>,
    /// `twin[u][i]` is the position of `u` in the rotation of `rotation[u][i]`.
    twin: Vec<Vec<usize>>,
    faces: Vec<Vec<Vertex>>,
    dart_face: Vec<Vec<usize>>,
    outer: usize,
    edge_count: usize,
    origin: Vec<Vertex>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation
            && self.faces[self.outer] == other.faces[other.outer]
            && self.origin == other.origin
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a connected plane graph; `outer` names a dart of the outer face.
    pub fn new(rotation: Vec<Vec<Vertex>>, outer: (Vertex, Vertex)) -> Result<Self, EmbedError> {
        Self::with_options(rotation, outer, false)
    }

    pub fn with_options(
        rotation: Vec<Vec<Vertex>>,
        outer: (Vertex, Vertex),
        allow_disconnected: bool,
    ) -> Result<Self, EmbedError> {
        let mut g = Self::trace(rotation, allow_disconnected)?;
        g.outer = g
            .face_of_dart(outer.0, outer.1)
            .ok_or(EmbedError::NotADart(outer.0, outer.1))?;
        Ok(g)
    }

    /// A plane cycle `0-1-...-(n-1)`, outer face traced along `0 -> 1`.
    pub fn cycle(n: usize) -> Self {
        let rotation = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        Self::new(rotation, (0, 1)).expect("cycle embedding")
    }

    fn trace(rotation: Vec<Vec<Vertex>>, allow_disconnected: bool) -> Result<Self, EmbedError> {
        let n = rotation.len();
        for (u, ns) in rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in ns {
                if v >= n {
                    return Err(EmbedError::UnknownVertex(v));
                }
                if v == u {
                    return Err(EmbedError::Loop(u));
                }
                if !seen.insert(v) {
                    return Err(EmbedError::ParallelEdge(u, v));
                }
            }
        }
        let mut twin = Vec::with_capacity(n);
        for (u, ns) in rotation.iter().enumerate() {
            let mut t = Vec::with_capacity(ns.len());
            for &v in ns {
                let j = rotation[v]
                    .iter()
                    .position(|&w| w == u)
                    .ok_or(EmbedError::InconsistentRotation(u, v))?;
                t.push(j);
            }
            twin.push(t);
        }
        let edge_count = rotation.iter().map(Vec::len).sum::<usize>() / 2;
        if edge_count == 0 {
            return Err(EmbedError::EmptyGraph);
        }
        let mut dart_face: Vec<Vec<usize>> = rotation
            .iter()
            .map(|ns| vec![usize::MAX; ns.len()])
            .collect();
        let mut faces = Vec::new();
        for u in 0..n {
            for i in 0..rotation[u].len() {
                if dart_face[u][i] != usize::MAX {
                    continue;
                }
                let f = faces.len();
                let mut walk = Vec::new();
                let (mut a, mut k) = (u, i);
                while dart_face[a][k] == usize::MAX {
                    dart_face[a][k] = f;
                    walk.push(a);
                    let b = rotation[a][k];
                    let j = twin[a][k];
                    k = (j + 1) % rotation[b].len();
                    a = b;
                }
                faces.push(walk);
            }
        }
        let g = PlaneGraph {
            rotation,
            twin,
            faces,
            dart_face,
            outer: 0,
            edge_count,
            origin: (0..n).collect(),
        };
        let comps = g.components();
        if comps.len() > 1 && !allow_disconnected {
            return Err(EmbedError::Disconnected);
        }
        if !allow_disconnected {
            if let Some(v) = (0..n).find(|&v| g.rotation[v].is_empty()) {
                return Err(EmbedError::IsolatedVertex(v));
            }
        }
        let mut comp_of = vec![0; n];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        for (c, comp) in comps.iter().enumerate() {
            let e: usize = comp.iter().map(|&v| g.rotation[v].len()).sum::<usize>() / 2;
            if e == 0 {
                continue;
            }
            let f = g.faces.iter().filter(|w| comp_of[w[0]] == c).count();
            if comp.len() + f != e + 2 {
                return Err(EmbedError::EulerViolation {
                    vertices: comp.len(),
                    edges: e,
                    faces: f,
                });
            }
        }
        Ok(g)
    }

    fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.rotation.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.rotation[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.rotation.len() && self.rotation[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = Vec::with_capacity(self.edge_count);
        for (u, ns) in self.rotation.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push(Edge(u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(
            self.vertex_count(),
            self.edges().into_iter().map(|e| (e.0, e.1)),
        )
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn face_refs(&self) -> Vec<FaceRef> {
        (0..self.faces.len())
            .map(|i| FaceRef {
                index: i,
                length: self.faces[i].len(),
            })
            .collect()
    }

    /// Faces other than the outer one.
    pub fn inner_faces(&self) -> Vec<FaceRef> {
        self.face_refs()
            .into_iter()
            .filter(|f| f.index != self.outer)
            .collect()
    }

    pub fn outer_face(&self) -> FaceRef {
        FaceRef {
            index: self.outer,
            length: self.faces[self.outer].len(),
        }
    }

    pub fn face_walk(&self, f: FaceRef) -> Walk {
        Walk::cycle(self.faces[f.index].clone())
    }

    pub fn outer_walk(&self) -> Walk {
        self.face_walk(self.outer_face())
    }

    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let i = self.rotation.get(u)?.iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    /// The face boundary is a cycle (no repeated vertex, length at least 3).
    pub fn face_is_cycle(&self, f: FaceRef) -> bool {
        let w = &self.faces[f.index];
        w.len() >= 3 && w.iter().collect::<BTreeSet<_>>().len() == w.len()
    }

    /// Face indices whose boundary equals the given cycle (as a vertex cycle).
    pub fn face_bounded_by(&self, c: &Walk) -> Option<usize> {
        if !c.is_closed() {
            return None;
        }
        self.faces
            .iter()
            .position(|w| w.len() == c.vertices().len() && Walk::cycle(w.clone()) == *c)
    }

    /// Vertex ids of the graph this one was cut from (identity for built graphs).
    pub fn origin(&self, v: Vertex) -> Vertex {
        self.origin[v]
    }

    pub fn origins(&self) -> &[Vertex] {
        &self.origin
    }

    /// The same graph with every vertex as its own origin.
    pub fn with_identity_origin(&self) -> PlaneGraph {
        let mut g = self.clone();
        g.origin = (0..self.vertex_count()).collect();
        g
    }

    /// The vertex and edge sets of this graph expressed in origin ids.
    pub fn as_origin_subgraph(&self) -> Subgraph {
        Subgraph::from_parts(
            self.origin.iter().copied(),
            self.edges()
                .into_iter()
                .map(|e| Edge::new(self.origin[e.0], self.origin[e.1])),
        )
    }

    /// The mirror image: every rotation reversed. The outer face is the face
    /// containing the reversed outer darts.
    pub fn mirrored(&self) -> PlaneGraph {
        let rotation: Vec<Vec<Vertex>> = self
            .rotation
            .iter()
            .map(|ns| ns.iter().rev().copied().collect())
            .collect();
        let ow = &self.faces[self.outer];
        let (a, b) = (ow[0], ow[1 % ow.len()]);
        let mut m = Self::trace(rotation, true).expect("mirror of a valid embedding");
        m.outer = m.face_of_dart(b, a).expect("reversed outer dart");
        m.origin = self.origin.clone();
        m
    }

    /// Re-designates the outer face.
    pub fn with_outer(&self, dart: (Vertex, Vertex)) -> Result<PlaneGraph, EmbedError> {
        let mut g = self.clone();
        g.outer = self
            .face_of_dart(dart.0, dart.1)
            .ok_or(EmbedError::NotADart(dart.0, dart.1))?;
        Ok(g)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        girth_of(&self.graph())
    }

    /// All simple cycles of length at most `max_len`, each reported once.
    pub fn cycles_up_to(&self, max_len: usize) -> Vec<Walk> {
        cycles_up_to(&self.graph(), max_len)
    }

    /// All `t`-chords of the face `f` (chords for `t = 1`), each reported once
    /// with the smaller endpoint first.
    pub fn t_chords(&self, f: FaceRef, t: usize) -> Result<Vec<Walk>, EmbedError> {
        if !self.face_is_cycle(f) {
            return Err(EmbedError::FaceNotCycle(f.index));
        }
        if t == 0 {
            return Ok(Vec::new());
        }
        let boundary = &self.faces[f.index];
        let n = self.vertex_count();
        let mut on_face = vec![false; n];
        for &v in boundary {
            on_face[v] = true;
        }
        let face_edges: BTreeSet<Edge> =
            Walk::cycle(boundary.clone()).edges().into_iter().collect();
        let mut out = Vec::new();
        if t == 1 {
            for e in self.edges() {
                if on_face[e.0] && on_face[e.1] && !face_edges.contains(&e) {
                    out.push(Walk::path(vec![e.0, e.1]));
                }
            }
            return Ok(out);
        }
        let mut path = Vec::with_capacity(t + 1);
        for &q0 in boundary {
            path.clear();
            path.push(q0);
            self.extend_chord(&on_face, t, &mut path, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn extend_chord(
        &self,
        on_face: &[bool],
        t: usize,
        path: &mut Vec<Vertex>,
        out: &mut Vec<Walk>,
    ) {
        let last = *path.last().expect("nonempty");
        let step = path.len();
        for &w in &self.rotation[last] {
            if step == t {
                if on_face[w] && w > path[0] {
                    let mut p = path.clone();
                    p.push(w);
                    out.push(Walk::path(p));
                }
            } else if !on_face[w] && !path.contains(&w) {
                path.push(w);
                self.extend_chord(on_face, t, path, out);
                path.pop();
            }
        }
    }

    /// Checks that `q` is a t-chord (t >= 1) of the outer face, which must be a cycle.
    fn validate_outer_chord(&self, q: &Walk) -> Result<(), EmbedError> {
        let outer = self.outer_face();
        if !self.face_is_cycle(outer) {
            return Err(EmbedError::FaceNotCycle(outer.index));
        }
        let vs = q.vertices();
        if q.is_closed() || vs.len() < 2 {
            return Err(EmbedError::NotAChord(
                "need an open walk with at least one edge".into(),
            ));
        }
        if !q.is_simple() || !q.is_walk_in(&self.graph()) {
            return Err(EmbedError::NotAChord("not a path of the graph".into()));
        }
        let on_face: BTreeSet<Vertex> = self.faces[outer.index].iter().copied().collect();
        let (a, b) = (vs[0], vs[vs.len() - 1]);
        if !on_face.contains(&a) || !on_face.contains(&b) {
            return Err(EmbedError::NotAChord(
                "endpoints must lie on the outer face".into(),
            ));
        }
        if vs[1..vs.len() - 1].iter().any(|v| on_face.contains(v)) {
            return Err(EmbedError::NotAChord(
                "interior vertices must avoid the outer face".into(),
            ));
        }
        if vs.len() == 2 {
            let face_edges: BTreeSet<Edge> = self.outer_walk().edges().into_iter().collect();
            if face_edges.contains(&Edge::new(a, b)) {
                return Err(EmbedError::NotAChord("edge of the outer face".into()));
            }
        }
        Ok(())
    }

    /// Cuts the graph along a t-chord `q` of the outer face. The first part
    /// contains the outer-face segment from `q`'s first vertex forward (in the
    /// traced direction of the outer face) to its last vertex. Vertex origins
    /// refer to this graph's origin ids.
    pub fn split_along(&self, q: &Walk) -> Result<(PlaneGraph, PlaneGraph), EmbedError> {
        self.validate_outer_chord(q)?;
        let ow = &self.faces[self.outer];
        let m = ow.len();
        let vs = q.vertices();
        let (a, b) = (vs[0], vs[vs.len() - 1]);
        let ia = ow.iter().position(|&v| v == a).expect("on face");
        let ib = ow.iter().position(|&v| v == b).expect("on face");
        let segment = |from: usize, to: usize| -> Vec<Vertex> {
            let mut s = vec![ow[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % m;
                s.push(ow[i]);
            }
            s
        };
        let interior: Vec<Vertex> = vs[1..vs.len() - 1].to_vec();
        let mut k1 = segment(ia, ib);
        k1.extend(interior.iter().rev());
        let mut k2 = segment(ib, ia);
        k2.extend(interior.iter());
        let g1 = self.disk_subgraph(&Walk::cycle(k1))?;
        let g2 = self.disk_subgraph(&Walk::cycle(k2))?;
        Ok((g1, g2))
    }

    /// Faces of `self` grouped by the sides of the cycle `c`: returns a flag per
    /// face telling whether it lies inside (on the side away from the outer face).
    fn inside_faces(&self, c: &Walk) -> Result<Vec<bool>, EmbedError> {
        let vs = c.vertices();
        if !c.is_closed() || vs.len() < 3 || !c.is_simple() || !c.is_walk_in(&self.graph()) {
            return Err(EmbedError::NotACycle);
        }
        let on_cycle: BTreeSet<Edge> = c.edges().into_iter().collect();
        let mut uf = UnionFind::new(self.faces.len());
        for (u, ns) in self.rotation.iter().enumerate() {
            for (i, &v) in ns.iter().enumerate() {
                if u < v && !on_cycle.contains(&Edge(u, v)) {
                    let j = self.twin[u][i];
                    uf.union(self.dart_face[u][i], self.dart_face[v][j]);
                }
            }
        }
        let outside = uf.find(self.outer);
        let inside: Vec<bool> = (0..self.faces.len())
            .map(|f| uf.find(f) != outside)
            .collect();
        if !inside.iter().any(|&x| x) {
            return Err(EmbedError::NotACycle);
        }
        Ok(inside)
    }

    /// Vertices strictly inside the cycle `c`.
    pub fn vertices_inside(&self, c: &Walk) -> Result<Vec<Vertex>, EmbedError> {
        let inside = self.inside_faces(c)?;
        let on_cycle: BTreeSet<Vertex> = c.vertices().iter().copied().collect();
        let mut out = BTreeSet::new();
        for (f, w) in self.faces.iter().enumerate() {
            if inside[f] {
                out.extend(w.iter().copied().filter(|v| !on_cycle.contains(v)));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The subgraph drawn in the closed disk bounded by the cycle `c`, with `c`
    /// as its outer face.
    pub fn disk_subgraph(&self, c: &Walk) -> Result<PlaneGraph, EmbedError> {
        let inside = self.inside_faces(c)?;
        let n = self.vertex_count();
        let mut keep_v = vec![false; n];
        for &v in c.vertices() {
            keep_v[v] = true;
        }
        let mut keep_e = BTreeSet::new();
        for (u, ns) in self.rotation.iter().enumerate() {
            for (i, &v) in ns.iter().enumerate() {
                if inside[self.dart_face[u][i]] {
                    keep_v[u] = true;
                    keep_v[v] = true;
                    keep_e.insert(Edge::new(u, v));
                }
            }
        }
        self.restrict(&keep_v, &|u, v| keep_e.contains(&Edge::new(u, v)))
    }

    /// The sub-embedding on the kept vertices and edges. Its outer face is the
    /// face containing this graph's outer face.
    pub fn restrict(
        &self,
        keep_vertex: &[bool],
        keep_edge: &dyn Fn(Vertex, Vertex) -> bool,
    ) -> Result<PlaneGraph, EmbedError> {
        let n = self.vertex_count();
        let mut new_id = vec![usize::MAX; n];
        let mut origin = Vec::new();
        for v in 0..n {
            if keep_vertex[v] {
                new_id[v] = origin.len();
                origin.push(v);
            }
        }
        let kept = |u: Vertex, v: Vertex| keep_vertex[u] && keep_vertex[v] && keep_edge(u, v);
        let mut uf = UnionFind::new(self.faces.len());
        for (u, ns) in self.rotation.iter().enumerate() {
            for (i, &v) in ns.iter().enumerate() {
                if u < v && !kept(u, v) {
                    uf.union(self.dart_face[u][i], self.dart_face[v][self.twin[u][i]]);
                }
            }
        }
        let rotation: Vec<Vec<Vertex>> = origin
            .iter()
            .map(|&u| {
                self.rotation[u]
                    .iter()
                    .filter(|&&v| kept(u, v))
                    .map(|&v| new_id[v])
                    .collect()
            })
            .collect();
        let mut g = Self::trace(rotation, true)?;
        let outer_class = uf.find(self.outer);
        let mut outer = None;
        for (f, w) in g.faces.iter().enumerate() {
            let a = w[0];
            let b = g.rotation[a][g.dart_face[a].iter().position(|&x| x == f).expect("dart")];
            let old = self.face_of_dart(origin[a], origin[b]).expect("kept dart");
            if uf.find(old) == outer_class {
                outer = Some(f);
                break;
            }
        }
        g.outer = outer.unwrap_or(0);
        g.origin = origin.iter().map(|&v| self.origin[v]).collect();
        Ok(g)
    }

    /// Embeds a subgraph given in this graph's own vertex ids.
    pub fn embed_subgraph(&self, s: &Subgraph) -> Result<PlaneGraph, EmbedError> {
        let n = self.vertex_count();
        let mut keep_v = vec![false; n];
        for &v in s.vertices() {
            if v >= n {
                return Err(EmbedError::UnknownVertex(v));
            }
            keep_v[v] = true;
        }
        self.restrict(&keep_v, &|u, v| s.contains_edge(u, v))
    }

    /// The S-bridges of the graph that avoid `t` outside `s`, each joined with
    /// `s`. A bridge is a component of `G - V(S)` with its attaching edges, or a
    /// single edge outside `S` joining two vertices of `S`. When no such bridge
    /// exists the only component is `s` itself.
    pub fn s_components(&self, s: &Subgraph, t: &Subgraph) -> Vec<Subgraph> {
        s_components(&self.graph(), s, t)
    }

    /// Writes the `.pg` text form.
    pub fn to_pg(&self) -> String {
        let mut out = format!("pg {}\n", self.vertex_count());
        for (v, ns) in self.rotation.iter().enumerate() {
            let parts: Vec<String> = ns.iter().map(|w| w.to_string()).collect();
            out.push_str(&format!("v {}: {}\n", v, parts.join(" ")));
        }
        let ow = &self.faces[self.outer];
        out.push_str(&format!("outer {} {}\n", ow[0], ow[1 % ow.len()]));
        out
    }

    /// Parses the `.pg` text form.
    pub fn parse_pg(text: &str) -> Result<PlaneGraph, EmbedError> {
        let perr = |line: usize, message: &str| EmbedError::Parse {
            line,
            message: message.to_string(),
        };
        let mut n: Option<usize> = None;
        let mut rotation: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut outer: Option<(Vertex, Vertex)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("pg") => {
                    if n.is_some() {
                        return Err(perr(line_no, "duplicate header"));
                    }
                    let count: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| perr(line_no, "expected `pg <n>`"))?;
                    n = Some(count);
                    rotation = vec![None; count];
                }
                Some("v") => {
                    let count = n.ok_or_else(|| perr(line_no, "vertex line before header"))?;
                    let rest = line[1..].trim();
                    let (id, nbrs) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(line_no, "expected `v <id>: <neighbours>`"))?;
                    let id: usize = id
                        .trim()
                        .parse()
                        .map_err(|_| perr(line_no, "bad vertex id"))?;
                    if id >= count {
                        return Err(perr(line_no, "vertex id out of range"));
                    }
                    if rotation[id].is_some() {
                        return Err(perr(line_no, "vertex listed twice"));
                    }
                    let ns: Result<Vec<Vertex>, _> = nbrs
                        .split_whitespace()
                        .map(|w| w.parse::<usize>())
                        .collect();
                    rotation[id] = Some(ns.map_err(|_| perr(line_no, "bad neighbour id"))?);
                }
                Some("outer") => {
                    let a = words.next().and_then(|w| w.parse().ok());
                    let b = words.next().and_then(|w| w.parse().ok());
                    match (a, b) {
                        (Some(a), Some(b)) => outer = Some((a, b)),
                        _ => return Err(perr(line_no, "expected `outer <u> <w>`")),
                    }
                }
                _ => return Err(perr(line_no, "unknown line")),
            }
        }
        let line_count = text.lines().count().max(1);
        n.ok_or_else(|| perr(line_count, "missing `pg` header"))?;
        let rotation: Vec<Vec<Vertex>> = rotation
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| perr(line_count, &format!("vertex {v} not listed"))))
            .collect::<Result<_, _>>()?;
        let outer = outer.ok_or_else(|| perr(line_count, "missing `outer` line"))?;
        PlaneGraph::new(rotation, outer)
    }
}

impl fmt::Display for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pg())
    }
}

/// Shortest cycle length by breadth-first search from every vertex.
pub fn girth_of(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Every simple cycle of length at most `max_len`, reported once each (least
/// vertex first, second vertex smaller than the last).
pub fn cycles_up_to(g: &Graph, max_len: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..g.vertex_count() {
        path.clear();
        path.push(s);
        cycle_dfs(g, s, max_len, &mut path, &mut out);
    }
    out
}

fn cycle_dfs(g: &Graph, s: Vertex, max_len: usize, path: &mut Vec<Vertex>, out: &mut Vec<Walk>) {
    let last = *path.last().expect("nonempty");
    for &w in g.neighbors(last) {
        if w == s && path.len() >= 3 && path[1] < last {
            out.push(Walk::cycle(path.clone()));
        } else if w > s && path.len() < max_len && !path.contains(&w) {
            path.push(w);
            cycle_dfs(g, s, max_len, path, out);
            path.pop();
        }
    }
}

/// See [`PlaneGraph::s_components`].
pub fn s_components(g: &Graph, s: &Subgraph, t: &Subgraph) -> Vec<Subgraph> {
    let n = g.vertex_count();
    let in_s = |v: Vertex| s.contains_vertex(v);
    let mut bridges: Vec<Subgraph> = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] || in_s(start) {
            continue;
        }
        let mut b = Subgraph::new();
        seen[start] = true;
        let mut stack = vec![start];
        b.add_vertex(start);
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                b.add_edge(Edge::new(u, v));
                if !in_s(v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        bridges.push(b);
    }
    for e in g.edges() {
        if in_s(e.0) && in_s(e.1) && !s.contains_edge(e.0, e.1) {
            bridges.push(Subgraph::from_parts([], [e]));
        }
    }
    let mut out: Vec<Subgraph> = bridges
        .into_iter()
        .map(|b| b.union(s))
        .filter(|c| {
            let meet = t.intersection(c);
            meet.is_subgraph_of(s)
        })
        .collect();
    if out.is_empty() {
        out.push(s.clone());
    }
    out
}

/// Whether `h` is an S-component of `g` relative to `t`: `s` within `h`, `t`
/// meets `h` only inside `s`, and `h` keeps every edge of `g` at its vertices
/// outside `s`.
pub fn is_s_component(g: &Graph, h: &Subgraph, s: &Subgraph, t: &Subgraph) -> bool {
    if !s.is_subgraph_of(h) || !h.within(g) {
        return false;
    }
    if !t.intersection(h).is_subgraph_of(s) {
        return false;
    }
    h.vertices()
        .iter()
        .filter(|v| !s.contains_vertex(**v))
        .all(|&v| g.neighbors(v).iter().all(|&w| h.contains_edge(v, w)))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups face indices by length; handy for weight computations and reports.
pub fn face_length_histogram(g: &PlaneGraph, include_outer: bool) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for f in g.face_refs() {
        if include_outer || f.index != g.outer_face().index {
            *h.entry(f.length).or_insert(0) += 1;
        }
    }
    h
}
