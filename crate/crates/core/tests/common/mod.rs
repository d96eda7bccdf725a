#![allow(dead_code)]

use girthfive_core::graph::{Graph, Subgraph, Vertex};
use girthfive_core::lists::{Color, ListAssignment};
use girthfive_core::PlaneGraph;

/// A straight-line drawing turned into a rotation system (neighbors sorted
/// counter-clockwise); the outer face is the face of the dart `0 -> 1` or
/// `1 -> 0` of the larger length.
pub fn from_drawing(points: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> PlaneGraph {
    let n = points.len();
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (u, ns) in rot.iter_mut().enumerate() {
        let (x, y) = points[u];
        ns.sort_by(|&a, &b| {
            let ta = (points[a].1 - y).atan2(points[a].0 - x);
            let tb = (points[b].1 - y).atan2(points[b].0 - x);
            ta.partial_cmp(&tb).unwrap()
        });
    }
    let a = PlaneGraph::new(rot.clone(), (0, 1)).expect("planar drawing");
    let b = PlaneGraph::new(rot, (1, 0)).expect("planar drawing");
    if a.outer_face().length >= b.outer_face().length {
        a
    } else {
        b
    }
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

/// Outer cycle `0..l` drawn clockwise from the top.
fn rim(l: usize) -> (Vec<(f64, f64)>, Vec<(Vertex, Vertex)>) {
    let pts = (0..l)
        .map(|i| polar(10.0, 90.0 - 360.0 * i as f64 / l as f64))
        .collect();
    let edges = (0..l).map(|i| (i, (i + 1) % l)).collect();
    (pts, edges)
}

/// Outer cycle `0..l` drawn clockwise from the top, with interior vertices
/// `l..` at the given polar positions `(radius, degrees)` and extra edges.
pub fn rim_with(l: usize, inner: &[(f64, f64)], extra: &[(Vertex, Vertex)]) -> PlaneGraph {
    let (mut pts, mut edges) = rim(l);
    pts.extend(inner.iter().map(|&(r, d)| polar(r, d)));
    edges.extend_from_slice(extra);
    from_drawing(&pts, &edges)
}

/// `C_l` plus one vertex adjacent to the listed outer vertices.
pub fn apex(l: usize, attach: &[Vertex]) -> PlaneGraph {
    let (mut pts, mut edges) = rim(l);
    pts.push((0.0, 0.0));
    for &a in attach {
        edges.push((a, l));
    }
    from_drawing(&pts, &edges)
}

/// The critical graph whose outer 12-cycle alternates between degree two and
/// degree three: a 4-chord `0 x y z 6`, a 5-cycle inside the right half
/// adjacent to `0, 2, 4, 6, y` and an edge `u1 u2` in the left half with
/// `u1 ~ 8, z` and `u2 ~ 10, x`.
pub fn alternating_twelve() -> PlaneGraph {
    let (mut pts, mut edges) = rim(12);
    // x, y, z = 12, 13, 14
    pts.extend([(0.0, 5.0), (0.0, 0.0), (0.0, -5.0)]);
    edges.extend([(0, 12), (12, 13), (13, 14), (14, 6)]);
    // pentagon a..e = 15..19 adjacent to 0, 2, 4, 6, y
    pts.extend([(2.5, 5.0), (5.5, 2.0), (5.5, -2.0), (2.5, -5.0), (2.0, 0.0)]);
    edges.extend([(15, 16), (16, 17), (17, 18), (18, 19), (19, 15)]);
    edges.extend([(15, 0), (16, 2), (17, 4), (18, 6), (19, 13)]);
    // u1 = 20, u2 = 21
    pts.extend([(-3.0, -3.0), (-3.0, 3.0)]);
    edges.extend([(20, 21), (20, 8), (20, 14), (21, 10), (21, 12)]);
    from_drawing(&pts, &edges)
}

/// Outer 10-cycle, inner 5-cycle, spokes from the inner cycle to the even
/// outer vertices.
pub fn c10_c5_spokes() -> PlaneGraph {
    let (mut pts, mut edges) = rim(10);
    for i in 0..5 {
        pts.push(polar(5.0, 90.0 - 72.0 * i as f64));
        edges.push((10 + i, 10 + (i + 1) % 5));
        edges.push((10 + i, 2 * i));
    }
    from_drawing(&pts, &edges)
}

/// Brute-force proper coloring from lists, with `fixed` colors on some
/// vertices.
pub fn brute_colorable(g: &Graph, l: &ListAssignment, fixed: &[Option<Color>]) -> bool {
    let n = g.vertex_count();
    let mut col: Vec<Option<Color>> = fixed.to_vec();
    fn rec(g: &Graph, l: &ListAssignment, col: &mut Vec<Option<Color>>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        if col[v].is_some() {
            return rec(g, l, col, v + 1);
        }
        for c in l.get(v).expect("list").iter() {
            if g.neighbors(v).iter().all(|&w| col[w] != Some(c)) {
                col[v] = Some(c);
                if rec(g, l, col, v + 1) {
                    return true;
                }
                col[v] = None;
            }
        }
        false
    }
    assert_eq!(col.len(), n);
    // Fixed vertices are checked against every neighbor up front.
    for u in 0..n {
        for &w in g.neighbors(u) {
            if col[u].is_some() && col[u] == col[w] {
                return false;
            }
        }
    }
    rec(g, l, &mut col, 0)
}

/// All colorings of the vertices of `s` from `palette` colors (proper on the
/// edges of `s`).
pub fn all_precolorings(n: usize, s: &Subgraph, palette: Color) -> Vec<Vec<Option<Color>>> {
    let vs: Vec<Vertex> = s.vertices().iter().copied().collect();
    let mut out = Vec::new();
    let mut cur: Vec<Option<Color>> = vec![None; n];
    fn rec(
        i: usize,
        vs: &[Vertex],
        s: &Subgraph,
        palette: Color,
        cur: &mut Vec<Option<Color>>,
        out: &mut Vec<Vec<Option<Color>>>,
    ) {
        if i == vs.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..palette {
            let v = vs[i];
            if vs[..i]
                .iter()
                .any(|&u| s.contains_edge(u, v) && cur[u] == Some(c))
            {
                continue;
            }
            cur[v] = Some(c);
            rec(i + 1, vs, s, palette, cur, out);
            cur[v] = None;
        }
    }
    rec(0, &vs, s, palette, &mut cur, &mut out);
    out
}

/// Criticality by the definition over all proper subgraphs containing `s`:
/// for each such subgraph some precoloring of `s` extends to it but not to
/// `g`. Precolorings use the list colors plus `|V(S)|` further colors.
pub fn brute_critical(g: &Graph, s: &Subgraph, l: &ListAssignment) -> bool {
    let n = g.vertex_count();
    let extra: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|e| !s.contains_edge(e.0, e.1))
        .collect();
    let free_v: Vec<Vertex> = (0..n).filter(|&v| !s.contains_vertex(v)).collect();
    if extra.is_empty() && free_v.is_empty() {
        return false;
    }
    let palette =
        (l.all_colors().iter().max().map_or(0, |c| c + 1) as usize + s.vertices().len()) as Color;
    let precs = all_precolorings(n, s, palette);
    let full_ok: Vec<bool> = precs.iter().map(|p| brute_colorable(g, l, p)).collect();
    let bad: Vec<&Vec<Option<Color>>> = precs
        .iter()
        .zip(&full_ok)
        .filter(|(_, &ok)| !ok)
        .map(|(p, _)| p)
        .collect();
    let (m, k) = (extra.len(), free_v.len());
    for emask in 0u64..(1u64 << m) {
        for vmask in 0u64..(1u64 << k) {
            if emask == (1u64 << m) - 1 && vmask == (1u64 << k) - 1 {
                continue;
            }
            let keep_v: Vec<bool> = (0..n)
                .map(|v| {
                    s.contains_vertex(v)
                        || free_v
                            .iter()
                            .position(|&w| w == v)
                            .is_some_and(|i| vmask & (1 << i) != 0)
                })
                .collect();
            if extra
                .iter()
                .enumerate()
                .any(|(i, e)| emask & (1 << i) != 0 && !(keep_v[e.0] && keep_v[e.1]))
            {
                continue;
            }
            let mut h = Graph::new(n);
            for e in s.edges() {
                h.add_edge(e.0, e.1);
            }
            for (i, e) in extra.iter().enumerate() {
                if emask & (1 << i) != 0 {
                    h.add_edge(e.0, e.1);
                }
            }
            // Deleted vertices keep a list but no edges; they never block.
            let found = bad.iter().any(|p| {
                let mut lh = l.clone();
                for v in 0..n {
                    if !keep_v[v] {
                        lh.set_colors(v, &[0]);
                    }
                }
                brute_colorable(&h, &lh, p)
            });
            if !found {
                return false;
            }
        }
    }
    true
}
