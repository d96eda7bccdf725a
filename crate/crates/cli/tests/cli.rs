use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use girthfive_core::audit::parse_aud_line;
use girthfive_core::enumerate::{affinity, connected_class_assignments, ClassifiedGraph};
use girthfive_core::lists::{format_lst, is_valid, parse_lst};
use girthfive_core::solver::{classify_ab, ClassTag};
use girthfive_core::{
    ColorSet, Coloring, Edge, Graph, ListAssignment, PlaneGraph, PrecoloredPath, Subgraph, Vertex,
};
use tempfile::TempDir;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn girthfive(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_girthfive"))
        .args(args)
        .output()
        .unwrap();
    Run {
        status: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Rotation system with the cycle `0..l` counter-clockwise and extra
/// vertices inside; the outer face is the longer face through `0 -> 1`.
fn plane(rotation: Vec<Vec<Vertex>>) -> PlaneGraph {
    let a = PlaneGraph::new(rotation.clone(), (0, 1)).unwrap();
    let b = PlaneGraph::new(rotation, (1, 0)).unwrap();
    if a.outer_face().length >= b.outer_face().length {
        a
    } else {
        b
    }
}

/// `C_l` with one inner vertex adjacent to `attach` (in increasing order).
fn apex(l: usize, attach: &[Vertex]) -> PlaneGraph {
    let mut rot: Vec<Vec<Vertex>> = (0..l)
        .map(|i| {
            let mut r = vec![(i + 1) % l];
            if attach.contains(&i) {
                r.push(l);
            }
            r.push((i + l - 1) % l);
            r
        })
        .collect();
    rot.push(attach.to_vec());
    plane(rot)
}

fn uniform_lists(n: usize, colors: &[u8]) -> String {
    format_lst(
        &ListAssignment::uniform(n, colors),
        &PrecoloredPath::empty(),
    )
}

fn parse_coloring(text: &str, n: usize) -> Coloring {
    let mut c = Coloring::new(n);
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(f[0], "c");
        c.set(f[1].parse().unwrap(), f[2].parse().unwrap());
    }
    c
}

#[test]
fn color_decides_both_ways() {
    let dir = TempDir::new().unwrap();
    let c5 = PlaneGraph::cycle(5);
    let g = write(&dir, "c5.pg", &c5.to_pg());
    let two = write(&dir, "two.lst", &uniform_lists(5, &[1, 2]));
    let r = girthfive(&["color", s(&g), s(&two)]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "UNCOLORABLE\n"));
    let three = write(&dir, "three.lst", &uniform_lists(5, &[1, 2, 3]));
    let r = girthfive(&["color", s(&g), s(&three)]);
    assert_eq!(r.status, 0);
    let c = parse_coloring(&r.stdout, 5);
    let l = ListAssignment::uniform(5, &[1, 2, 3]);
    assert!(c.is_total() && c.is_proper(&c5.graph()) && c.respects(&l));
}

#[test]
fn color_respects_path_colors_and_valid_two_lists() {
    let dir = TempDir::new().unwrap();
    let g = apex(9, &[0, 3, 6]);
    let pg = write(&dir, "apex.pg", &g.to_pg());
    // 2-lists on 1, 2, 4 and 7 satisfy both path conditions.
    let mut l = ListAssignment::new(10);
    for v in 0..10 {
        let two = [1, 2, 4, 7].contains(&v);
        l.set(
            v,
            if two {
                ColorSet::from_colors(&[0, 1])
            } else {
                ColorSet::first(3)
            },
        );
    }
    assert!(is_valid(&g.graph(), &PrecoloredPath::empty(), &l).holds);
    let lst = write(&dir, "l.lst", &format_lst(&l, &PrecoloredPath::empty()));
    let r = girthfive(&["verify", s(&pg), s(&lst), "--mode", "thm3"]);
    assert_eq!(r.stdout, "VALID\n");
    let r = girthfive(&["color", s(&pg), s(&lst)]);
    let c = parse_coloring(&r.stdout, 10);
    assert!(c.is_total() && c.is_proper(&g.graph()) && c.respects(&l));
    // Fixing colors on a path.
    let mut rest = l.clone();
    rest.clear(0);
    rest.clear(1);
    let p = PrecoloredPath::with_colors(vec![0, 1], vec![2, 0]);
    let lst = write(&dir, "p.lst", &format_lst(&rest, &p));
    let r = girthfive(&["color", s(&pg), s(&lst)]);
    let c = parse_coloring(&r.stdout, 10);
    assert_eq!((c.get(0), c.get(1)), (Some(2), Some(0)));
    assert!(c.is_proper(&g.graph()));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.pg", "pg 3\nv 0: 1\nv 1: 0\n");
    let lst = write(&dir, "l.lst", &uniform_lists(3, &[0, 1]));
    let r = girthfive(&["color", s(&bad), s(&lst)]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("bad.pg"));
    assert!(r.stderr.contains("line"));
    let g = write(&dir, "c5.pg", &PlaneGraph::cycle(5).to_pg());
    let lst = write(&dir, "bad.lst", "l 0: 1 2\nl 9: 1\n");
    let r = girthfive(&["color", s(&g), s(&lst)]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 2"));
    let lst = write(&dir, "big.lst", &uniform_lists(5, &[0, 7]));
    let r = girthfive(&["color", s(&g), s(&lst), "--palette", "5"]);
    assert_eq!(r.status, 2);
    assert_eq!(girthfive(&["enumerate", "13"]).status, 2);
    assert_eq!(girthfive(&["verify", s(&g), "--mode", "bogus"]).status, 2);
}

#[test]
fn verify_pattern_modes_match_the_library() {
    let dir = TempDir::new().unwrap();
    let c9 = PlaneGraph::cycle(9);
    let g = write(&dir, "c9.pg", &c9.to_pg());
    let mut l = ListAssignment::uniform(9, &[0, 1, 2]);
    for v in [3, 4, 5] {
        l.set_colors(v, &[0, 1]);
    }
    let lst = write(&dir, "l.lst", &format_lst(&l, &PrecoloredPath::empty()));
    let expect = is_valid(&c9.graph(), &PrecoloredPath::empty(), &l);
    let w: Vec<String> = expect
        .witness
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let r = girthfive(&["verify", s(&g), s(&lst), "--mode", "valid"]);
    assert_eq!(r.stdout, format!("INVALID {}\n", w.join(" ")));
    assert_eq!(r.stdout, "INVALID 3 4 5\n");
    for mode in ["thm3", "cor2"] {
        let r = girthfive(&["verify", s(&g), s(&lst), "--mode", mode]);
        assert_eq!((r.status, r.stdout.as_str()), (0, "INVALID 3 4 5\n"));
    }
    // Independent 2-lists with a precolored edge.
    let mut l = ListAssignment::uniform(9, &[0, 1, 2]);
    l.set_colors(4, &[0, 1]);
    l.set_colors(7, &[0, 1]);
    l.clear(0);
    l.clear(1);
    let p = PrecoloredPath::with_colors(vec![0, 1], vec![0, 1]);
    let lst = write(&dir, "p.lst", &format_lst(&l, &p));
    let r = girthfive(&["verify", s(&g), s(&lst), "--mode", "thm1"]);
    assert_eq!(r.stdout, "VALID\n");
    // A hypothesis precondition failure is a diagnostic, not a crash.
    let c4 = write(&dir, "c4.pg", &PlaneGraph::cycle(4).to_pg());
    let lst = write(&dir, "c4.lst", &uniform_lists(4, &[0, 1]));
    let r = girthfive(&["verify", s(&c4), s(&lst), "--mode", "thm3"]);
    assert_eq!(r.status, 2);
    assert!(r.stdout.starts_with("PRECONDITION girth 4"));
}

#[test]
fn verify_criticality() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.pg", &PlaneGraph::cycle(5).to_pg());
    let mut l = ListAssignment::uniform(5, &[0, 1]);
    l.clear(0);
    let lst = write(
        &dir,
        "l.lst",
        &(format_lst(&l, &PrecoloredPath::empty()) + "path 0\n"),
    );
    let r = girthfive(&["verify", s(&g), s(&lst), "--mode", "strongly-critical"]);
    assert_eq!(r.stdout, "STRONGLY-CRITICAL\npsi 0:0\n");
    let r = girthfive(&["verify", s(&g), s(&lst), "--mode", "critical"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "CRITICAL");
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|x| x.starts_with("edge ")));
    // With the outer face as S there is nothing left to be critical.
    let all = write(&dir, "all.lst", &uniform_lists(5, &[0, 1]));
    let r = girthfive(&["verify", s(&g), s(&all), "--mode", "critical"]);
    assert_eq!(r.stdout, "EQUALS-S\n");
}

#[test]
fn verify_classify_finds_class_b() {
    let dir = TempDir::new().unwrap();
    // p1..p5 = 0..4, v1..v4 = 5..8, apex 9 ~ p3, v1, v4.
    let g = apex(9, &[2, 5, 8]);
    let p = PrecoloredPath::new(vec![0, 1, 2, 3, 4]);
    let sizes = [(5, 3), (6, 2), (7, 2), (8, 3), (9, 3)];
    let free: Vec<Vertex> = sizes.iter().map(|x| x.0).collect();
    let sz: Vec<usize> = sizes.iter().map(|x| x.1).collect();
    let aff = affinity(&g.graph(), &Subgraph::from_walk(p.vertices(), false), &free);
    let mut found = None;
    connected_class_assignments(&aff, &sz, &mut |lists| {
        let mut l = ListAssignment::new(10);
        for (&v, &c) in free.iter().zip(lists) {
            l.set(v, c);
        }
        if classify_ab(&g, &p, &l).is_ok_and(|r| r.tag == ClassTag::ClassB) {
            found = Some(l);
            return false;
        }
        true
    });
    let l = found.expect("class B lists");
    let pg = write(&dir, "g.pg", &g.to_pg());
    let lst = write(&dir, "l.lst", &format_lst(&l, &p));
    let r = girthfive(&["verify", s(&pg), s(&lst), "--mode", "classify"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(r.status, 0);
    assert_eq!(lines[0], "ClassB");
    assert!(lines[1].starts_with("psi 0:"));
    assert_eq!(lines[1].split_whitespace().count(), 6);
}

#[test]
fn verify_audit_of_an_eight_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c8.pg", &PlaneGraph::cycle(8).to_pg());
    let r = girthfive(&["verify", s(&g), "--mode", "audit"]);
    let rec = parse_aud_line(r.stdout.trim()).unwrap();
    let f: Vec<&str> = r.stdout.split_whitespace().collect();
    assert_eq!(&f[1..5], ["E1", "3/1", "3/1", "pass"]);
    assert_eq!((rec.vertices, rec.edges, rec.pass), (8, 8, true));
}

fn body(crit: &str) -> Vec<&str> {
    crit.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn enumerate_writes_deterministic_crit_files() {
    let r = girthfive(&["enumerate", "8"]);
    assert_eq!(r.status, 0);
    assert!(body(&r.stdout).is_empty());
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nine.crit");
    let r = girthfive(&[
        "enumerate",
        "9",
        "--jobs",
        "1",
        "--seed",
        "7",
        "--out",
        s(&out),
    ]);
    assert_eq!((r.status, r.stdout.as_str()), (0, ""));
    let one = std::fs::read_to_string(&out).unwrap();
    assert!(one.lines().any(|l| l == "# seed=7"));
    let lines = body(&one);
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains(" tree-case-a "));
    let c = ClassifiedGraph::parse_crit_line(lines[0]).unwrap();
    assert!(c.verify().unwrap());
    assert_eq!(c.crit_line(), lines[0]);
    let two = girthfive(&["enumerate", "9", "--jobs", "2", "--seed", "7"]).stdout;
    assert_eq!(one, two);
    let r = girthfive(&["enumerate", "10", "--max-interior", "3"]);
    assert!(r.stdout.contains("max_interior=3"));
}

#[test]
fn enumerate_reports_budget_exhaustion() {
    let r = girthfive(&[
        "enumerate",
        "12",
        "--pattern",
        "--short-cycle-faces",
        "--max-interior",
        "8",
        "--budget",
        "0",
    ]);
    assert_eq!(r.status, 3);
    assert!(r.stdout.lines().last().unwrap().starts_with("# PARTIAL"));
}

#[test]
fn audit_reads_crit_and_pg_files() {
    let dir = TempDir::new().unwrap();
    let crit = dir.path().join("nine.crit");
    girthfive(&["enumerate", "9", "--out", s(&crit)]);
    let c5 = write(&dir, "c5.pg", &PlaneGraph::cycle(5).to_pg());
    let out = dir.path().join("a.aud");
    let r = girthfive(&["audit", s(&crit), s(&c5), "--out", s(&out)]);
    assert_eq!(r.status, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let recs: Vec<_> = body(&text)
        .into_iter()
        .map(|l| parse_aud_line(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0].code, "123.04.056.07.15.248.297.36.59.68");
    assert!(recs.iter().all(|r| r.pass));
    assert_eq!(girthfive(&["audit"]).status, 2);
}

#[test]
fn skeleton_drops_a_pendant_vertex() {
    let dir = TempDir::new().unwrap();
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
    let pg = write(&dir, "g.pg", &g.to_pg());
    let mut l = ListAssignment::uniform(6, &[0, 1]);
    l.clear(0);
    let lst = write(
        &dir,
        "l.lst",
        &(format_lst(&l, &PrecoloredPath::empty()) + "path 0\n"),
    );
    let r = girthfive(&["skeleton", s(&pg), s(&lst)]);
    assert_eq!(r.status, 0);
    let sk = PlaneGraph::parse_pg(&r.stdout).unwrap();
    assert_eq!((sk.vertex_count(), sk.edge_count()), (5, 5));
    let edges: BTreeSet<Edge> = sk.edges().into_iter().collect();
    assert_eq!(edges, Graph::cycle(5).edges().into_iter().collect());
    let (l2, _) = parse_lst(&std::fs::read_to_string(&lst).unwrap(), 6).unwrap();
    assert_eq!(l2, l);
}
