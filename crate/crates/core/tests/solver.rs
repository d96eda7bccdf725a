mod common;

use std::collections::BTreeSet;

use girthfive_core::enumerate::{affinity, connected_class_assignments};
use girthfive_core::graph::{Edge, Graph, Subgraph, Vertex};
use girthfive_core::lists::{Color, ColorSet, ListAssignment, PrecoloredPath};
use girthfive_core::solver::{
    classify_ab, find_coloring, is_critical, is_strongly_critical, precolorings, skeleton,
    skeleton_subgraph, ClassTag, ClassVerdict, ClassifyError, Coloring, SolverError, Verdict,
};
use girthfive_core::PlaneGraph;
use proptest::prelude::*;

/// A random graph on `n` vertices from an edge bitmask, lists of size 1..=3
/// from four colors.
fn instance() -> impl Strategy<Value = (Graph, ListAssignment)> {
    (3usize..=7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(1u64..16, n),
        )
            .prop_map(|(n, bits, masks)| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                let mut l = ListAssignment::new(n);
                for (v, m) in masks.into_iter().enumerate() {
                    // Keep lists at size at most three.
                    let mut set = ColorSet(m);
                    while set.len() > 3 {
                        set.remove(set.min().unwrap());
                    }
                    l.set(v, set);
                }
                (g, l)
            })
    })
}

fn s_of(g: &Graph, k: usize) -> Subgraph {
    let mut s = Subgraph::from_parts(0..k, []);
    for u in 0..k {
        for v in u + 1..k {
            if g.has_edge(u, v) {
                s.add_edge(Edge::new(u, v));
            }
        }
    }
    s
}

fn outside(l: &ListAssignment, s: &Subgraph) -> ListAssignment {
    let mut out = l.clone();
    for &v in s.vertices() {
        out.clear(v);
    }
    out
}

/// Precolorings of `s` (as full color vectors) that extend to `g`.
fn extendable(
    g: &Graph,
    s: &Subgraph,
    l: &ListAssignment,
    palette: Color,
) -> BTreeSet<Vec<Option<Color>>> {
    common::all_precolorings(g.vertex_count(), s, palette)
        .into_iter()
        .filter(|p| common::brute_colorable(g, l, p))
        .collect()
}

fn sub_graph(n: usize, sub: &Subgraph) -> Graph {
    Graph::from_edges(n, sub.edges().iter().map(|e| (e.0, e.1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn find_coloring_agrees_with_brute_force((g, l) in instance(), fix in proptest::collection::vec(proptest::option::of(0u8..4), 7)) {
        let n = g.vertex_count();
        let fixed: Vec<Option<Color>> = (0..n).map(|v| fix[v].filter(|_| v % 3 == 0)).collect();
        let mut lists = l.clone();
        for v in 0..n {
            if fixed[v].is_some() {
                lists.clear(v);
            }
        }
        let expect = common::brute_colorable(&g, &lists, &fixed);
        match find_coloring(&g, &lists, &Coloring::from_colors(fixed.clone())) {
            Ok(Some(c)) => {
                prop_assert!(expect);
                prop_assert!(c.is_total());
                prop_assert!(c.is_proper(&g));
                prop_assert!(c.respects(&lists));
                for v in 0..n {
                    if let Some(x) = fixed[v] {
                        prop_assert_eq!(c.get(v), Some(x));
                    }
                }
            }
            Ok(None) => prop_assert!(!expect),
            Err(SolverError::FixedImproper(..)) => prop_assert!(!expect),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn criticality_agrees_with_definition((g, l) in instance(), k in 1usize..=2) {
        let s = s_of(&g, k);
        let m = g.edge_count() - s.edges().len();
        prop_assume!(m + g.vertex_count() - k <= 10);
        let lo = outside(&l, &s);
        let report = is_critical(&g, &s, &lo).unwrap();
        if report.verdict == Verdict::EqualsS {
            prop_assert_eq!(g.vertex_count(), k);
            return Ok(());
        }
        prop_assert_eq!(report.is_critical(), common::brute_critical(&g, &s, &lo));
        if report.is_critical() {
            for v in k..g.vertex_count() {
                prop_assert!(g.degree(v) >= lo.size(v));
            }
            for w in &report.witnesses {
                let mut minus = g.clone();
                minus.remove_edge(w.edge.0, w.edge.1);
                let fixed: Vec<Option<Color>> = (0..g.vertex_count()).map(|v| w.precoloring.get(v)).collect();
                prop_assert!(common::brute_colorable(&minus, &lo, &fixed));
                prop_assert!(!common::brute_colorable(&g, &lo, &fixed));
            }
        }
        let strong = is_strongly_critical(&g, &s, &lo).unwrap();
        if strong.verdict == Verdict::StronglyCritical {
            prop_assert!(report.is_critical());
            let psi = strong.strong_witness.unwrap();
            let fixed: Vec<Option<Color>> = (0..g.vertex_count()).map(|v| psi.get(v)).collect();
            prop_assert!(!common::brute_colorable(&g, &lo, &fixed));
        } else {
            prop_assert_eq!(strong.verdict, report.verdict);
        }
    }

    #[test]
    fn skeleton_is_critical_with_same_extensions((g, l) in instance(), k in 1usize..=2) {
        let s = s_of(&g, k);
        let lo = outside(&l, &s);
        let n = g.vertex_count();
        let sk = skeleton_subgraph(&g, &s, &lo).unwrap();
        prop_assert!(s.is_subgraph_of(&sk));
        prop_assert!(sk.within(&g));
        let h = sub_graph(n, &sk);
        let palette = (lo.all_colors().iter().max().map_or(0, |c| c + 1) as usize + k) as Color;
        // Vertices dropped from the skeleton keep their lists but lose their
        // edges, so they never block an extension.
        prop_assert_eq!(extendable(&g, &s, &lo, palette), extendable(&h, &s, &lo, palette));
        let mut hl = lo.clone();
        for v in 0..n {
            if !sk.contains_vertex(v) {
                hl.clear(v);
            }
        }
        let vs: Vec<Vertex> = sk.vertices().iter().copied().collect();
        let idx = |v: Vertex| vs.iter().position(|&w| w == v).unwrap();
        let hi = Graph::from_edges(vs.len(), sk.edges().iter().map(|e| (idx(e.0), idx(e.1))));
        let si = Subgraph::from_parts(0..k, s.edges().iter().copied());
        let mut li = ListAssignment::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            if let Some(c) = hl.get(v) {
                li.set(i, c);
            }
        }
        let r = is_critical(&hi, &si, &li).unwrap();
        prop_assert!(matches!(r.verdict, Verdict::EqualsS | Verdict::Critical | Verdict::StronglyCritical));
    }
}

/// Number of proper colorings of `s` using at most `palette` colors, up to
/// renaming the colors that are not distinguished.
fn orbit_count(s: &Subgraph, palette: Color, distinguished: ColorSet) -> usize {
    let n = s.vertices().iter().max().map_or(0, |&m| m + 1);
    let mut seen = BTreeSet::new();
    for p in common::all_precolorings(n, s, palette) {
        let mut rename = std::collections::BTreeMap::new();
        let key: Vec<Option<Color>> = p
            .iter()
            .map(|c| {
                c.map(|c| {
                    if distinguished.contains(c) {
                        c
                    } else {
                        let next = 100 + rename.len() as Color;
                        *rename.entry(c).or_insert(next)
                    }
                })
            })
            .collect();
        seen.insert(key);
    }
    seen.len()
}

#[test]
fn precolorings_of_c9() {
    let s = Subgraph::from_walk(&(0..9).collect::<Vec<_>>(), true);
    // Chromatic polynomial of C_9 at 4: 3^9 - 3.
    assert_eq!(
        precolorings(&s, 4, ColorSet::first(4)).unwrap().count(),
        19680
    );
    assert_eq!(
        precolorings(&s, 4, ColorSet::EMPTY).unwrap().count(),
        orbit_count(&s, 4, ColorSet::EMPTY)
    );
    let d = ColorSet::from_colors(&[0, 1]);
    assert_eq!(
        precolorings(&s, 4, d).unwrap().count(),
        orbit_count(&s, 4, d)
    );
    for c in precolorings(&s, 4, ColorSet::EMPTY).unwrap() {
        assert!(c.is_proper(&Graph::cycle(9)));
    }
    assert!(matches!(
        precolorings(&s, 0, ColorSet::EMPTY),
        Err(SolverError::EmptyPalette)
    ));
}

#[test]
fn precoloring_counts_match_orbits_on_paths() {
    for len in 1..6usize {
        let s = Subgraph::from_walk(&(0..len).collect::<Vec<_>>(), false);
        for palette in 1..5u8 {
            for d in [ColorSet::EMPTY, ColorSet::first(1), ColorSet::first(2)] {
                assert_eq!(
                    precolorings(&s, palette as usize, d).unwrap().count(),
                    orbit_count(&s, palette, d),
                    "len {len} palette {palette} {d:?}"
                );
            }
        }
    }
}

#[test]
fn odd_cycle_with_two_lists_is_critical() {
    // C5 with one vertex precolored and equal 2-lists elsewhere.
    let g = Graph::cycle(5);
    let s = Subgraph::from_parts([0], []);
    let mut l = ListAssignment::new(5);
    for v in 1..5 {
        l.set_colors(v, &[0, 1]);
    }
    let r = is_critical(&g, &s, &l).unwrap();
    assert!(r.is_critical());
    assert!(common::brute_critical(&g, &s, &l));
    assert_eq!(r.witnesses.len(), 5);
    let strong = is_strongly_critical(&g, &s, &l).unwrap();
    // Coloring vertex 0 with color 0 blocks every edge at once.
    assert_eq!(strong.verdict, Verdict::StronglyCritical);
}

#[test]
fn pendant_vertex_is_not_critical() {
    let g = Graph::path(3);
    let s = Subgraph::from_parts([0], []);
    let mut l = ListAssignment::new(3);
    l.set_colors(1, &[0, 1]);
    l.set_colors(2, &[0, 1]);
    let r = is_critical(&g, &s, &l).unwrap();
    assert_eq!(r.verdict, Verdict::NotCritical);
    assert!(r.failing_edge.is_some());
    let s = Subgraph::whole(&g);
    assert_eq!(
        is_critical(&g, &s, &ListAssignment::new(3))
            .unwrap()
            .verdict,
        Verdict::EqualsS
    );
}

#[test]
fn skeleton_of_padded_c5() {
    // A pendant path attached to a critical C5 is removed.
    let g = PlaneGraph::new(
        vec![
            vec![1, 4, 5],
            vec![0, 2],
            vec![1, 3],
            vec![2, 4],
            vec![3, 0],
            vec![0],
        ],
        (0, 1),
    )
    .unwrap();
    let s = Subgraph::from_parts([0], []);
    let mut l = ListAssignment::new(6);
    for v in 1..6 {
        l.set_colors(v, &[0, 1]);
    }
    let sk = skeleton(&g, &s, &l).unwrap();
    assert_eq!((sk.vertex_count(), sk.edge_count()), (5, 5));
    assert_eq!(sk.origins(), &[0, 1, 2, 3, 4]);
}

fn path_p() -> PrecoloredPath {
    PrecoloredPath::new(vec![0, 1, 2, 3, 4])
}

/// First list assignment (in sweep order) with the given sizes on the
/// vertices off the path for which `classify_ab` succeeds with `tag`.
fn find_class(
    g: &PlaneGraph,
    sizes: &[(Vertex, usize)],
    tag: ClassTag,
) -> Option<(ListAssignment, ClassVerdict)> {
    let graph = g.graph();
    let s = Subgraph::from_walk(&[0, 1, 2, 3, 4], false);
    let free: Vec<Vertex> = sizes.iter().map(|x| x.0).collect();
    let sz: Vec<usize> = sizes.iter().map(|x| x.1).collect();
    let aff = affinity(&graph, &s, &free);
    let mut found = None;
    connected_class_assignments(&aff, &sz, &mut |lists| {
        let mut l = ListAssignment::new(g.vertex_count());
        for (&v, &c) in free.iter().zip(lists) {
            l.set(v, c);
        }
        if let Ok(r) = classify_ab(g, &path_p(), &l) {
            if r.tag == tag {
                found = Some((l, r));
                return false;
            }
        }
        true
    });
    found
}

fn class_a_graph() -> PlaneGraph {
    // p1..p5 = 0..4, v1..v5 = 5..9, x = 10 ~ p4, v2, y and y = 11 ~ p2, v4.
    let mut pts: Vec<(f64, f64)> = (0..10)
        .map(|i| {
            let t = (90.0 - 36.0 * i as f64).to_radians();
            (10.0 * t.cos(), 10.0 * t.sin())
        })
        .collect();
    pts.push((1.5, -4.0));
    pts.push((-1.5, 4.0));
    let mut edges: Vec<(Vertex, Vertex)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    edges.extend([(10, 3), (10, 6), (10, 11), (11, 1), (11, 8)]);
    common::from_drawing(&pts, &edges)
}

#[test]
fn five_face_classification() {
    let g = PlaneGraph::cycle(5);
    let r = classify_ab(&g, &path_p(), &ListAssignment::new(5)).unwrap();
    assert_eq!(r.tag, ClassTag::FiveFace);
}

#[test]
fn class_a_graph_is_class_a() {
    let g = class_a_graph();
    assert_eq!(g.outer_face().length, 10);
    assert!(g.inner_faces().iter().all(|f| f.length == 5));
    let sizes = [(5, 2), (6, 3), (7, 2), (8, 3), (9, 2), (10, 3), (11, 3)];
    let (l, r) = find_class(&g, &sizes, ClassTag::ClassA).expect("class A lists");
    assert!(r.class_a);
    let psi = r.witness.unwrap();
    // The distinguished path coloring does not extend.
    let mut lists = l.clone();
    for v in 0..5 {
        lists.clear(v);
    }
    let fixed: Vec<Option<Color>> = (0..12).map(|v| psi.get(v)).collect();
    assert!(!common::brute_colorable(&g.graph(), &lists, &fixed));
}

#[test]
fn apex_graph_is_class_b() {
    // p1..p5 = 0..4, v1..v4 = 5..8, apex 9 ~ p3, v1, v4.
    let g = common::apex(9, &[2, 5, 8]);
    assert!(g.inner_faces().iter().all(|f| f.length == 5));
    let sizes = [(5, 3), (6, 2), (7, 2), (8, 3), (9, 3)];
    let (_, r) = find_class(&g, &sizes, ClassTag::ClassB).expect("class B lists");
    assert!(r.class_b);
    assert!(r.witness.is_some());
    assert!(r.non_extending >= 1);
}

#[test]
fn classify_rejects_bad_input() {
    let g = PlaneGraph::cycle(5);
    let l = ListAssignment::new(5);
    assert_eq!(
        classify_ab(&g, &PrecoloredPath::new(vec![0, 1, 2]), &l),
        Err(ClassifyError::PathLength)
    );
    assert_eq!(
        classify_ab(&g, &PrecoloredPath::new(vec![0, 2, 4, 1, 3]), &l),
        Err(ClassifyError::PathNotOnOuterFace)
    );
    let c6 = PlaneGraph::cycle(6);
    let mut l6 = ListAssignment::new(6);
    l6.set_colors(5, &[0]);
    assert_eq!(
        classify_ab(&c6, &path_p(), &l6),
        Err(ClassifyError::ListSize(5))
    );
    l6.set_colors(5, &[0, 1]);
    // A 6-cycle whose extra vertex has two colors is never critical.
    assert!(matches!(
        classify_ab(&c6, &path_p(), &l6),
        Err(ClassifyError::NotCritical) | Err(ClassifyError::BadPathVertex(_))
    ));
}
