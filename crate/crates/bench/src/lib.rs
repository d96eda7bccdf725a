//! Benchmark inputs shared by the criterion benches.

use girthfive_core::audit::tight_graph;
use girthfive_core::{ListAssignment, PlaneGraph};

/// The outer 10-cycle with an inner 5-cycle joined by five spokes, and the
/// same 3-list on every inner vertex.
pub fn tight_instance() -> (PlaneGraph, ListAssignment) {
    let g = tight_graph();
    let n = g.vertex_count();
    let mut l = ListAssignment::new(n);
    let outer: Vec<usize> = g.outer_walk().vertices().to_vec();
    for v in (0..n).filter(|v| !outer.contains(v)) {
        l.set_colors(v, &[0, 1, 2]);
    }
    (g, l)
}
