//! Face weights, exceptional graphs, jumps, peelings, structural
//! configurations and the weight and size bounds for critical graphs.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::embed::{EmbedError, FaceRef, PlaneGraph, Walk};
use crate::graph::{Edge, Vertex};

/// Exact rational number.
pub type Rational = Ratio<i64>;

/// Formats `r` as `p/q`, always with a denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `w(x)`: 0 for `x <= 4`, 1/7 for `x = 5`, `x - 5` for `x >= 6`.
pub fn weight_fn(x: i64) -> Rational {
    match x {
        x if x <= 4 => Rational::zero(),
        5 => Rational::new(1, 7),
        x => Rational::from_integer(x - 5),
    }
}

/// Sum of `w` over the faces other than the outer one.
pub fn graph_weight(g: &PlaneGraph) -> Rational {
    g.inner_faces()
        .iter()
        .map(|f| weight_fn(f.length as i64))
        .fold(Rational::zero(), |a, b| a + b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionalTag {
    E1,
    E2,
    E3,
    NotExceptional,
}

impl fmt::Display for ExceptionalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionalTag::E1 => "E1",
            ExceptionalTag::E2 => "E2",
            ExceptionalTag::E3 => "E3",
            ExceptionalTag::NotExceptional => "NE",
        })
    }
}

fn outer_is_cycle(g: &PlaneGraph) -> bool {
    let w = g.outer_walk();
    w.is_simple() && g.face_is_cycle(g.outer_face())
}

fn outer_is_induced_cycle(g: &PlaneGraph) -> bool {
    if !outer_is_cycle(g) {
        return false;
    }
    let w = g.outer_walk();
    let vs = w.vertices();
    let on: BTreeSet<Vertex> = vs.iter().copied().collect();
    let chords = g
        .edges()
        .iter()
        .filter(|e| on.contains(&e.0) && on.contains(&e.1))
        .count();
    chords == vs.len()
}

/// Membership in the exceptional classes: cycles of length at least five
/// (E1), a cycle with one chord (E2), and an induced cycle with one extra
/// vertex of degree three (E3); girth at least five is required.
pub fn exceptional_class(g: &PlaneGraph) -> ExceptionalTag {
    let n = g.vertex_count();
    let m = g.edge_count();
    let girth_ok = g.girth().is_none_or(|x| x >= 5);
    if !girth_ok || !outer_is_cycle(g) {
        return ExceptionalTag::NotExceptional;
    }
    let l = g.outer_face().length;
    if m == n && l == n && l >= 5 {
        return ExceptionalTag::E1;
    }
    if l == n && m == n + 1 {
        return ExceptionalTag::E2;
    }
    if l + 1 == n && m == l + 3 && outer_is_induced_cycle(g) {
        let on: BTreeSet<Vertex> = g.outer_walk().vertices().iter().copied().collect();
        if (0..n).any(|v| !on.contains(&v) && g.degree(v) == 3) {
            return ExceptionalTag::E3;
        }
    }
    ExceptionalTag::NotExceptional
}

/// Two 5-faces `v1 v2 v3 y x` and `v3 v4 v5 z y` over the segment
/// `v1 .. v5` of the outer facial walk, with `x, y, z` off the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub base: [Vertex; 5],
    pub body: [Vertex; 5],
    pub faces: [usize; 2],
}

impl Jump {
    pub fn internal_vertices(&self) -> BTreeSet<Vertex> {
        [
            self.base[1],
            self.base[2],
            self.base[3],
            self.body[1],
            self.body[2],
            self.body[3],
        ]
        .into_iter()
        .collect()
    }

    pub fn is_disjoint_from(&self, other: &Jump) -> bool {
        self.internal_vertices()
            .is_disjoint(&other.internal_vertices())
    }

    /// Vertices and edges of the two faces.
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.base.iter().chain(self.body.iter()).copied().collect()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for w in [&self.base, &self.body] {
            for i in 0..4 {
                out.insert(Edge::new(w[i], w[i + 1]));
            }
        }
        out.insert(Edge::new(self.base[2], self.body[2]));
        out
    }
}

/// The inner face on the far side of the outer dart `a -> b`, as a 5-cycle
/// `a b c y x` with `x ~ a`, `y ~ c` and `x, y` off the outer face.
fn five_face_over(
    g: &PlaneGraph,
    on_outer: &BTreeSet<Vertex>,
    a: Vertex,
    b: Vertex,
    c: Vertex,
) -> Option<(usize, Vertex, Vertex)> {
    let f = g.face_of_dart(b, a)?;
    let w = &g.faces()[f];
    if w.len() != 5 || w.iter().collect::<BTreeSet<_>>().len() != 5 {
        return None;
    }
    let i = w.iter().position(|&v| v == b)?;
    // The face runs b -> a -> x -> y -> c -> b.
    let seq: Vec<Vertex> = (0..5).map(|k| w[(i + k) % 5]).collect();
    if seq[1] != a || seq[4] != c {
        return None;
    }
    let (x, y) = (seq[2], seq[3]);
    if on_outer.contains(&x) || on_outer.contains(&y) {
        return None;
    }
    Some((f, x, y))
}

/// All jumps, one per base (read along the outer facial walk).
pub fn find_jumps(g: &PlaneGraph) -> Vec<Jump> {
    let ow = g.outer_walk();
    let w = ow.vertices();
    let k = w.len();
    if k < 5 {
        return Vec::new();
    }
    let on_outer: BTreeSet<Vertex> = w.iter().copied().collect();
    let mut out = Vec::new();
    for i in 0..k {
        let v: Vec<Vertex> = (0..5).map(|j| w[(i + j) % k]).collect();
        if v.iter().collect::<BTreeSet<_>>().len() != 5 {
            continue;
        }
        let Some((f1, x, y)) = five_face_over(g, &on_outer, v[0], v[1], v[2]) else {
            continue;
        };
        let Some((f2, y2, z)) = five_face_over(g, &on_outer, v[2], v[3], v[4]) else {
            continue;
        };
        if y2 != y || x == z {
            continue;
        }
        out.push(Jump {
            base: [v[0], v[1], v[2], v[3], v[4]],
            body: [v[0], x, y, z, v[4]],
            faces: [f1, f2],
        });
    }
    out
}

/// A peeling: the graph with the internal base vertices of the listed jumps
/// removed. Vertex origins refer to the peeled graph.
#[derive(Clone, Debug)]
pub struct Peeling {
    pub jumps: Vec<Jump>,
    pub graph: PlaneGraph,
}

/// All peelings by at most two disjoint jumps, starting with the graph itself.
pub fn peelings(g: &PlaneGraph) -> Result<Vec<Peeling>, EmbedError> {
    let base = g.with_identity_origin();
    let jumps = find_jumps(&base);
    let mut sets: Vec<Vec<Jump>> = vec![Vec::new()];
    for (i, a) in jumps.iter().enumerate() {
        sets.push(vec![a.clone()]);
        for b in &jumps[i + 1..] {
            if a.is_disjoint_from(b) {
                sets.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    let n = base.vertex_count();
    sets.into_iter()
        .map(|js| {
            let mut keep = vec![true; n];
            for j in &js {
                for &v in &j.base[1..4] {
                    keep[v] = false;
                }
            }
            let graph = if js.is_empty() {
                base.clone()
            } else {
                base.restrict(&keep, &|_, _| true)?
            };
            Ok(Peeling { jumps: js, graph })
        })
        .collect()
}

/// The two cycles of `B + Q` other than `B`, for a chord path `q` of the
/// outer cycle `b` (vertex sequences in the same ids).
fn chord_cycles(b: &[Vertex], q: &[Vertex]) -> [Walk; 2] {
    let k = b.len();
    let (s, t) = (q[0], q[q.len() - 1]);
    let is = b.iter().position(|&v| v == s).expect("chord end on cycle");
    let it = b.iter().position(|&v| v == t).expect("chord end on cycle");
    let arc = |from: usize, to: usize| -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut i = (from + 1) % k;
        while i != to {
            out.push(b[i]);
            i = (i + 1) % k;
        }
        out
    };
    // Q from s to t, then back from t to s along B in either direction.
    let mut c1 = q.to_vec();
    c1.extend(arc(it, is));
    let mut c2 = q.to_vec();
    let mut back = arc(is, it);
    back.reverse();
    c2.extend(back);
    [Walk::cycle(c1), Walk::cycle(c2)]
}

fn map_walk(h: &PlaneGraph, w: &Walk) -> Walk {
    let vs: Vec<Vertex> = w.vertices().iter().map(|&v| h.origin(v)).collect();
    if w.is_closed() {
        Walk::cycle(vs)
    } else {
        Walk::path(vs)
    }
}

fn fmt_walk(w: &Walk) -> String {
    w.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

fn fmt_peeling(p: &Peeling) -> String {
    if p.jumps.is_empty() {
        "G".into()
    } else {
        let parts: Vec<String> = p
            .jumps
            .iter()
            .map(|j| format!("[{}]", j.base.map(|v| v.to_string()).join("-")))
            .collect();
        format!("G-{}", parts.join(""))
    }
}

/// Configurations found by [`struct_config`], each with a short witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigReport {
    pub witnesses: Vec<(char, String)>,
}

impl ConfigReport {
    pub fn tags(&self) -> BTreeSet<char> {
        self.witnesses.iter().map(|(c, _)| *c).collect()
    }

    fn add(&mut self, tag: char, witness: String) {
        if !self.witnesses.iter().any(|(c, _)| *c == tag) {
            self.witnesses.push((tag, witness));
        }
    }

    /// Tags as a string such as `bcf`, or `-` when empty.
    pub fn tag_string(&self) -> String {
        let s: String = self.tags().into_iter().collect();
        if s.is_empty() {
            "-".into()
        } else {
            s
        }
    }
}

/// Whether the subgraph of `g` in the closed disk of `k` is `k` itself or `k`
/// with exactly one chord incident with `mid`.
fn disk_is_trivial(g: &PlaneGraph, k: &Walk, mid: Vertex) -> Result<bool, EmbedError> {
    let d = g.disk_subgraph(k)?;
    let len = k.length();
    if d.vertex_count() != len {
        return Ok(false);
    }
    if d.edge_count() == len {
        return Ok(true);
    }
    if d.edge_count() != len + 1 {
        return Ok(false);
    }
    let cyc: BTreeSet<Edge> = k.edges().into_iter().collect();
    Ok(d.edges()
        .iter()
        .map(|e| Edge::new(d.origin(e.0), d.origin(e.1)))
        .filter(|e| !cyc.contains(e))
        .all(|e| e.contains(mid)))
}

fn cycle_vertices(c: &Walk) -> BTreeSet<Vertex> {
    c.vertices().iter().copied().collect()
}

/// The configurations (a)-(h) present in `g` (vertex ids of `g`); all of
/// them are reported, each with one witness.
pub fn struct_config(g: &PlaneGraph) -> Result<ConfigReport, EmbedError> {
    let g = g.with_identity_origin();
    let mut rep = ConfigReport::default();
    let f_vertices: BTreeSet<Vertex> = g.outer_walk().vertices().iter().copied().collect();

    // (c) two adjacent outer vertices of degree two.
    let ow = g.outer_walk();
    let w = ow.vertices();
    for i in 0..w.len() {
        let (a, b) = (w[i], w[(i + 1) % w.len()]);
        if g.degree(a) == 2 && g.degree(b) == 2 {
            rep.add('c', format!("{a}-{b}"));
            break;
        }
    }

    // (f) a path uvwx off F whose vertices all have a neighbor in F.
    let n = g.vertex_count();
    let x_set: Vec<bool> = (0..n)
        .map(|v| !f_vertices.contains(&v) && g.rotation(v).iter().any(|u| f_vertices.contains(u)))
        .collect();
    'f: for u in 0..n {
        if !x_set[u] {
            continue;
        }
        for &v in g.rotation(u) {
            if !x_set[v] {
                continue;
            }
            for &x in g.rotation(v) {
                if !x_set[x] || x == u {
                    continue;
                }
                for &y in g.rotation(x) {
                    if x_set[y] && y != v && y != u {
                        rep.add('f', format!("{u}-{v}-{x}-{y}"));
                        break 'f;
                    }
                }
            }
        }
    }

    for p in peelings(&g)? {
        let h = &p.graph;
        let pname = fmt_peeling(&p);
        if !outer_is_induced_cycle(h) {
            rep.add('a', pname.clone());
            continue;
        }
        let bf = h.outer_face();
        let bw = h.outer_walk();
        let b = bw.vertices().to_vec();
        if let Some(q) = h.t_chords(bf, 2)?.first() {
            rep.add('b', format!("{pname} {}", fmt_walk(&map_walk(h, q))));
        }
        for q in h.t_chords(bf, 3)? {
            let cs = chord_cycles(&b, q.vertices());
            let faces = cs
                .iter()
                .filter(|c| g.face_bounded_by(&map_walk(h, c)).is_some())
                .count();
            if faces == 0 {
                rep.add('d', format!("{pname} {}", fmt_walk(&map_walk(h, &q))));
            }
        }
        let h_jumps = find_jumps(h);
        let h_five: Vec<FaceRef> = h
            .inner_faces()
            .into_iter()
            .filter(|f| f.length == 5)
            .collect();
        for q in h.t_chords(bf, 4)? {
            let cs = chord_cycles(&b, q.vertices());
            let qg = map_walk(h, &q);
            let mid = qg.vertices()[2];
            let mut trivial = 0;
            for c in &cs {
                if disk_is_trivial(&g, &map_walk(h, c), mid)? {
                    trivial += 1;
                }
            }
            if trivial == 0 {
                rep.add('e', format!("{pname} {}", fmt_walk(&qg)));
            }
            for c in &cs {
                if g.face_bounded_by(&map_walk(h, c)).is_none() {
                    continue;
                }
                let cv = cycle_vertices(c);
                let ce: BTreeSet<Edge> = c.edges().into_iter().collect();
                for dir in [q.clone(), q.reversed()] {
                    let qv = dir.vertices();
                    let first = Edge::new(qv[0], qv[1]);
                    let last = Edge::new(qv[3], qv[4]);
                    let meets_in = |vs: &BTreeSet<Vertex>, es: &BTreeSet<Edge>, e: Edge| {
                        let iv: BTreeSet<Vertex> = vs.intersection(&cv).copied().collect();
                        let ie: BTreeSet<Edge> = es.intersection(&ce).copied().collect();
                        iv == BTreeSet::from([e.0, e.1]) && ie == BTreeSet::from([e])
                    };
                    if h_jumps
                        .iter()
                        .any(|j| meets_in(&j.vertices(), &j.edges(), first))
                    {
                        rep.add('g', format!("{pname} {}", fmt_walk(&map_walk(h, &dir))));
                    }
                    let bset: BTreeSet<Vertex> = b.iter().copied().collect();
                    let face_parts = |f: &FaceRef| {
                        let fw = h.face_walk(*f);
                        let vs: BTreeSet<Vertex> = fw.vertices().iter().copied().collect();
                        let es: BTreeSet<Edge> = fw.edges().into_iter().collect();
                        (vs, es)
                    };
                    let on_b3 = |vs: &BTreeSet<Vertex>| vs.intersection(&bset).count() == 3;
                    let c1 = h_five.iter().any(|f| {
                        let (vs, es) = face_parts(f);
                        on_b3(&vs) && meets_in(&vs, &es, first)
                    });
                    let c2 = h_five.iter().any(|f| {
                        let (vs, es) = face_parts(f);
                        on_b3(&vs) && meets_in(&vs, &es, last)
                    });
                    if c1 && c2 {
                        rep.add('h', format!("{pname} {}", fmt_walk(&map_walk(h, &dir))));
                    }
                }
            }
        }
    }
    rep.witnesses.sort();
    Ok(rep)
}

/// Checks `w(x) + w(y) <= w(z - m) + w(m)` for all `x + y = z <= max_z` and
/// `1 <= m <= min(x, y)`; returns the first violation `(x, y, m)`.
pub fn msum_violation(max_z: i64) -> Option<(i64, i64, i64)> {
    for z in 2..=max_z {
        for x in 1..z {
            let y = z - x;
            for m in 1..=x.min(y) {
                if weight_fn(x) + weight_fn(y) > weight_fn(z - m) + weight_fn(m) {
                    return Some((x, y, m));
                }
            }
        }
    }
    None
}

pub fn check_msum(max_z: i64) -> bool {
    msum_violation(max_z).is_none()
}

/// Result of comparing a graph against the bound for its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAudit {
    pub outer_length: usize,
    pub weight: Rational,
    pub bound: Rational,
    pub tag: ExceptionalTag,
    pub vertices: usize,
    pub edges: usize,
    /// `18 l - 160`, for non-exceptional graphs.
    pub edge_bound: Option<i64>,
    /// `(37 l - 320) / 3`, for non-exceptional graphs.
    pub vertex_bound: Option<Rational>,
    pub pass: bool,
}

/// Compares `g` against the bound for `tag`: `w(l-5) + 5 w(5)` together with
/// `l >= 10` and the edge and vertex bounds for non-exceptional graphs;
/// `w(l)`, `w(l-3) + w(5)` and `w(l-4) + 2 w(5)` for E1, E2 and E3.
pub fn audit_bounds(g: &PlaneGraph, tag: ExceptionalTag) -> WeightAudit {
    let l = g.outer_face().length as i64;
    let w5 = weight_fn(5);
    let weight = graph_weight(g);
    let (bound, edge_bound, vertex_bound) = match tag {
        ExceptionalTag::E1 => (weight_fn(l), None, None),
        ExceptionalTag::E2 => (weight_fn(l - 3) + w5, None, None),
        ExceptionalTag::E3 => (weight_fn(l - 4) + w5 * 2, None, None),
        ExceptionalTag::NotExceptional => (
            weight_fn(l - 5) + w5 * 5,
            Some(18 * l - 160),
            Some(Rational::new(37 * l - 320, 3)),
        ),
    };
    let vertices = g.vertex_count();
    let edges = g.edge_count();
    let mut pass = weight <= bound;
    if tag == ExceptionalTag::NotExceptional {
        pass &= l >= 10;
        pass &= edge_bound.is_some_and(|b| edges as i64 <= b);
        pass &= vertex_bound.is_some_and(|b| Rational::from_integer(vertices as i64) <= b);
    }
    WeightAudit {
        outer_length: l as usize,
        weight,
        bound,
        tag,
        vertices,
        edges,
        edge_bound,
        vertex_bound,
        pass,
    }
}

impl WeightAudit {
    /// One `.aud` line: code, tag, weight, bound, verdict, |V|, |E|, configs.
    pub fn aud_line(&self, code: &str, configs: &str) -> String {
        format!(
            "{} {} {} {} {} {} {} {}",
            code,
            self.tag,
            fmt_rational(&self.weight),
            fmt_rational(&self.bound),
            if self.pass { "pass" } else { "FAIL" },
            self.vertices,
            self.edges,
            configs
        )
    }
}

/// Parsed `.aud` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AudRecord {
    pub code: String,
    pub tag: String,
    pub weight: Rational,
    pub bound: Rational,
    pub pass: bool,
    pub vertices: usize,
    pub edges: usize,
    pub configs: String,
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let q: i64 = q.parse().ok()?;
    if q == 0 {
        return None;
    }
    Some(Rational::new(p.parse().ok()?, q))
}

pub fn parse_aud_line(line: &str) -> Option<AudRecord> {
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() != 8 {
        return None;
    }
    Some(AudRecord {
        code: f[0].into(),
        tag: f[1].into(),
        weight: parse_rational(f[2])?,
        bound: parse_rational(f[3])?,
        pass: match f[4] {
            "pass" => true,
            "FAIL" => false,
            _ => return None,
        },
        vertices: f[5].parse().ok()?,
        edges: f[6].parse().ok()?,
        configs: f[7].into(),
    })
}

/// The graph attaining the weight bound at `l = 10`: an outer 10-cycle
/// `0..10`, an inner 5-cycle `10..15`, and spokes from `10 + i` to `2 i`.
pub fn tight_graph() -> PlaneGraph {
    let mut rot: Vec<Vec<Vertex>> = (0..10).map(|i| vec![(i + 9) % 10, (i + 1) % 10]).collect();
    for i in 0..5 {
        rot[2 * i].insert(2, 10 + i);
    }
    let forward: Vec<Vec<Vertex>> = (0..5)
        .map(|i| vec![2 * i, 10 + (i + 4) % 5, 10 + (i + 1) % 5])
        .collect();
    let mut try_rot = rot.clone();
    try_rot.extend(forward.iter().cloned());
    if let Ok(g) = PlaneGraph::new(try_rot, (0, 1)) {
        return g;
    }
    rot.extend(forward.into_iter().map(|mut r| {
        r.swap(1, 2);
        r
    }));
    PlaneGraph::new(rot, (0, 1)).expect("tight graph embedding")
}
