//! Generation of plane graphs.
//!
//! Disk graphs are grown from a cycle `C_l` (vertices `0..l`, outer face along
//! `0 -> 1`) by adding ears inside inner faces. Every 2-connected plane graph
//! whose outer face is bounded by that cycle has an ear decomposition starting
//! from the cycle in which every ear lies in a face of the graph built so far,
//! so the closure under ear additions contains all of them. Graphs are
//! processed level by level (by the number of ears) and deduplicated by
//! canonical code within each level.
//!
//! Small plane graphs of girth at least five are grown from an edge by adding
//! pendant vertices at corners and edges inside faces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::canon::{self, Code};
use crate::embed::{FaceRef, PlaneGraph};
use crate::graph::Vertex;

/// Constraints on generated disk graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarConfig {
    pub outer: usize,
    pub max_interior: usize,
    pub girth: usize,
    /// Outer vertices with odd index never receive an ear, and the final
    /// graphs are those where each of them lies on a 5-face. While the face
    /// at some odd vertex is longer than five, ears go only into the face of
    /// the first such vertex; afterwards faces at odd vertices stay closed.
    /// Any target graph is still reached: its 5-face boundary at that vertex
    /// can be completed first, one missing segment at a time.
    pub alternating: bool,
    /// Keep only graphs in which cycles of length at most 7 bound faces,
    /// 8-cycles have empty interiors and 9-cycles hold at most one vertex.
    pub short_cycle_faces: bool,
}

impl EarConfig {
    pub fn new(outer: usize, max_interior: usize) -> Self {
        EarConfig {
            outer,
            max_interior,
            girth: 5,
            alternating: false,
            short_cycle_faces: false,
        }
    }

    fn may_attach(&self, v: Vertex) -> bool {
        !(self.alternating && v < self.outer && v % 2 == 1)
    }
}

/// Distances from `s` in the graph of `g` (unreachable vertices get `usize::MAX`).
pub fn distances(g: &PlaneGraph, s: Vertex) -> Vec<usize> {
    let n = g.vertex_count();
    let mut d = vec![usize::MAX; n];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.rotation(u) {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Inserts `new` into the rotation of `v` right after `after`.
fn insert_after(rot: &mut [Vec<Vertex>], v: Vertex, after: Vertex, new: Vertex) {
    let i = rot[v]
        .iter()
        .position(|&x| x == after)
        .expect("neighbor present");
    rot[v].insert(i + 1, new);
}

/// Adds a path of length `t` from `a` to `b` through the corners of face
/// walk `w` at positions `i` and `j`.
fn add_ear(g: &PlaneGraph, w: &[Vertex], i: usize, j: usize, t: usize) -> PlaneGraph {
    let k = w.len();
    let mut rot: Vec<Vec<Vertex>> = g.rotations().to_vec();
    let n = rot.len();
    let (a, b) = (w[i], w[j]);
    let mut path = vec![a];
    for m in 0..t - 1 {
        path.push(n + m);
    }
    path.push(b);
    for m in 1..t {
        rot.push(vec![path[m - 1], path[m + 1]]);
    }
    insert_after(&mut rot, a, w[(i + k - 1) % k], path[1]);
    insert_after(&mut rot, b, w[(j + k - 1) % k], path[t - 1]);
    let ow = g.outer_walk();
    let ov = ow.vertices();
    PlaneGraph::new(rot, (ov[0], ov[1])).expect("ear addition keeps a valid embedding")
}

fn interior_count(g: &PlaneGraph, cfg: &EarConfig) -> usize {
    g.vertex_count() - cfg.outer
}

/// Inner faces that may receive an ear.
fn open_faces(g: &PlaneGraph, cfg: &EarConfig) -> Vec<FaceRef> {
    let inner = g.inner_faces();
    if !cfg.alternating {
        return inner;
    }
    let has_odd = |f: &FaceRef| {
        g.faces()[f.index]
            .iter()
            .any(|&v| v < cfg.outer && v % 2 == 1)
    };
    for v in (1..cfg.outer).step_by(2) {
        if let Some(f) = inner.iter().find(|f| g.faces()[f.index].contains(&v)) {
            if f.length > 5 {
                return vec![*f];
            }
        }
    }
    inner.into_iter().filter(|f| !has_odd(f)).collect()
}

/// All graphs obtained from `g` by one ear addition allowed by `cfg`.
pub fn ear_extensions(g: &PlaneGraph, cfg: &EarConfig) -> Vec<PlaneGraph> {
    let budget = cfg.max_interior - interior_count(g, cfg);
    let n = g.vertex_count();
    let dist: Vec<Vec<usize>> = (0..n).map(|v| distances(g, v)).collect();
    let mut out = Vec::new();
    for f in open_faces(g, cfg) {
        let w = g.face_walk(f);
        let w = w.vertices();
        let k = w.len();
        for i in 0..k {
            if !cfg.may_attach(w[i]) {
                continue;
            }
            for j in i + 1..k {
                if !cfg.may_attach(w[j]) {
                    continue;
                }
                let (a, b) = (w[i], w[j]);
                let both_outer = a < cfg.outer && b < cfg.outer;
                let t_min =
                    cfg.girth
                        .saturating_sub(dist[a][b])
                        .max(if both_outer { 2 } else { 1 });
                for t in t_min..=budget + 1 {
                    out.push(add_ear(g, w, i, j, t));
                }
            }
        }
    }
    if cfg.short_cycle_faces {
        out.retain(short_cycles_bound_faces);
    }
    out
}

/// Cycles of length at most 7 bound faces, 8-cycles have no vertex inside
/// and 9-cycles at most one.
pub fn short_cycles_bound_faces(g: &PlaneGraph) -> bool {
    g.cycles_up_to(9).iter().all(|c| {
        let inside = g.vertices_inside(c).map(|v| v.len()).unwrap_or(usize::MAX);
        match c.length() {
            x if x <= 7 => inside == 0 && g.face_bounded_by(c).is_some(),
            8 => inside == 0,
            _ => inside <= 1,
        }
    })
}

/// Canonical code respecting the alternating marking: only isomorphisms that
/// map even-indexed outer vertices to even-indexed ones are factored out.
fn marked_code(g: &PlaneGraph, cfg: &EarConfig) -> Code {
    if cfg.alternating {
        canon::canonical_code_rooted_at(g, &|v| v % 2 == 0).expect("connected")
    } else {
        canon::canonical_code(g).expect("connected")
    }
}

/// Statistics of a generation run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenerationStats {
    /// Distinct graphs per level (number of ears).
    pub per_level: Vec<usize>,
}

/// Decodes a code of a disk graph, renumbering so that the outer cycle is
/// `0..l` starting at the code's root and the outer face runs along `0 -> 1`.
pub fn decode_disk(code: &Code) -> PlaneGraph {
    let g = canon::from_code(code).expect("valid code");
    let ow = g.outer_walk();
    let vs = ow.vertices();
    let k = vs.len();
    let s = vs.iter().position(|&v| v == 0).expect("root on outer face");
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; n];
    for i in 0..k {
        map[vs[(s + i) % k]] = i;
    }
    let mut next = k;
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        rot[map[v]] = g.rotation(v).iter().map(|&w| map[w]).collect();
    }
    PlaneGraph::new(rot, (0, 1)).expect("relabeled embedding")
}

/// All plane graphs reachable from `C_l` by ear additions under `cfg` that
/// satisfy `keep`, deduplicated and sorted by canonical code. Levels are held
/// as codes only.
pub fn ear_closure(
    cfg: &EarConfig,
    keep: &(dyn Fn(&PlaneGraph) -> bool + Sync),
) -> (Vec<(Code, PlaneGraph)>, GenerationStats) {
    let start = PlaneGraph::cycle(cfg.outer);
    let mut level: Vec<Code> = vec![marked_code(&start, cfg)];
    let mut stats = GenerationStats::default();
    let mut accepted: BTreeMap<Code, PlaneGraph> = BTreeMap::new();
    while !level.is_empty() {
        stats.per_level.push(level.len());
        let results: Vec<(Option<(Code, PlaneGraph)>, Vec<Code>)> = level
            .par_iter()
            .map(|c| {
                let g = decode_disk(c);
                let kept = if keep(&g) {
                    Some((canon::canonical_code(&g).expect("connected"), g.clone()))
                } else {
                    None
                };
                let next = ear_extensions(&g, cfg)
                    .iter()
                    .map(|h| marked_code(h, cfg))
                    .collect();
                (kept, next)
            })
            .collect();
        let mut set: BTreeSet<Code> = BTreeSet::new();
        for (kept, next) in results {
            if let Some((c, g)) = kept {
                accepted.entry(c).or_insert(g);
            }
            set.extend(next);
        }
        level = set.into_iter().collect();
    }
    (accepted.into_iter().collect(), stats)
}

/// Connected plane graphs of girth at least `girth` with `2..=max_vertices`
/// vertices, one per embedding up to (possibly reflecting) isomorphism, with
/// an arbitrary outer face.
pub fn small_plane_graphs(max_vertices: usize, girth: usize) -> Vec<PlaneGraph> {
    let k2 = PlaneGraph::new(vec![vec![1], vec![0]], (0, 1)).expect("edge");
    let mut all: BTreeMap<Code, PlaneGraph> = BTreeMap::new();
    let mut level: BTreeMap<Code, PlaneGraph> = BTreeMap::new();
    level.insert(canon::unrooted_code(&k2).expect("connected"), k2);
    while !level.is_empty() {
        let batches: Vec<Vec<PlaneGraph>> = level
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|g| small_extensions(g, max_vertices, girth))
            .collect();
        all.extend(std::mem::take(&mut level));
        for h in batches.into_iter().flatten() {
            let c = canon::unrooted_code(&h).expect("connected");
            if !all.contains_key(&c) {
                level.entry(c).or_insert(h);
            }
        }
    }
    all.into_values().collect()
}

fn small_extensions(g: &PlaneGraph, max_vertices: usize, girth: usize) -> Vec<PlaneGraph> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let ow = g.outer_walk();
    let dart = (ow.vertices()[0], ow.vertices()[1 % ow.length().max(1)]);
    if n < max_vertices {
        for v in 0..n {
            for pos in 0..g.degree(v) {
                let mut rot = g.rotations().to_vec();
                rot[v].insert(pos, n);
                rot.push(vec![v]);
                out.push(PlaneGraph::new(rot, dart).expect("pendant addition"));
            }
        }
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|v| distances(g, v)).collect();
    for f in g.face_refs() {
        let w = g.face_walk(f);
        let w = w.vertices();
        let k = w.len();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (w[i], w[j]);
                if a == b || dist[a][b] + 1 < girth {
                    continue;
                }
                let mut rot = g.rotations().to_vec();
                insert_after(&mut rot, a, w[(i + k - 1) % k], b);
                insert_after(&mut rot, b, w[(j + k - 1) % k], a);
                out.push(PlaneGraph::new(rot, dart).expect("edge inside a face"));
            }
        }
    }
    out
}

/// Every graph of [`small_plane_graphs`] with every choice of outer face,
/// deduplicated up to isomorphism preserving the outer face.
pub fn small_rooted_plane_graphs(max_vertices: usize, girth: usize) -> Vec<PlaneGraph> {
    let mut out: BTreeMap<Code, PlaneGraph> = BTreeMap::new();
    for g in small_plane_graphs(max_vertices, girth) {
        for f in g.face_refs() {
            let w = g.face_walk(f);
            let vs = w.vertices();
            let h = g.with_outer((vs[0], vs[1 % vs.len()])).expect("face dart");
            out.entry(canon::canonical_code(&h).expect("connected"))
                .or_insert(h);
        }
    }
    out.into_values().collect()
}
