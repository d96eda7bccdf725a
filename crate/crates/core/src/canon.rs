//! Canonical codes of plane graphs up to orientation-preserving and
//! orientation-reversing isomorphism.
//!
//! A code is produced from a starting dart `(a, b)` and a direction: vertices
//! are numbered in breadth-first order, each vertex listing its neighbors in
//! rotation order (clockwise or counter-clockwise) starting from the neighbor
//! through which it was reached (`b` for the root). The code is the sequence
//! of these neighbor lists. The rooted code minimizes over darts of the outer
//! face, read clockwise, and over their reversals read counter-clockwise (which
//! is the same as reading the mirror image); the unrooted code minimizes over
//! every dart.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::embed::{EmbedError, PlaneGraph};
use crate::graph::Vertex;

const ALPHABET: &[u8; 64] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz-_";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("graph is disconnected or has isolated vertices")]
    Disconnected,
    #[error("graph has more than 64 vertices")]
    TooLarge,
    #[error("malformed code: {0}")]
    Malformed(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// A canonical code: neighbor lists in canonical numbering, stored flat with
/// every list terminated by [`END`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(Vec<u8>);

const END: u8 = u8::MAX;

impl Code {
    pub fn vertex_count(&self) -> usize {
        self.0.iter().filter(|&&x| x == END).count()
    }

    pub fn lists(&self) -> Vec<Vec<u8>> {
        self.0
            .split(|&x| x == END)
            .take(self.vertex_count())
            .map(<[u8]>::to_vec)
            .collect()
    }
}

impl fmt::Display for Code {
    /// Neighbor lists joined by `.`, one character per neighbor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, list) in self.lists().iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            for &x in list {
                write!(f, "{}", ALPHABET[x as usize] as char)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Code {
    type Err = CanonError;

    fn from_str(s: &str) -> Result<Self, CanonError> {
        let mut flat = Vec::with_capacity(s.len() + 1);
        for part in s.split('.') {
            for ch in part.bytes() {
                let x = ALPHABET.iter().position(|&a| a == ch).ok_or_else(|| {
                    CanonError::Malformed(format!("unexpected character {:?}", ch as char))
                })?;
                flat.push(x as u8);
            }
            flat.push(END);
        }
        Ok(Code(flat))
    }
}

/// Code of `g` started at dart `a -> b`, reading rotations forward when
/// `forward` is set and backward otherwise. Returns the code and the vertex
/// numbering (`order[i]` is the vertex numbered `i`). Stops early and returns
/// `None` once the partial code exceeds `bound`.
fn code_from(
    g: &PlaneGraph,
    a: Vertex,
    b: Vertex,
    forward: bool,
    bound: Option<&Code>,
) -> Option<(Code, Vec<Vertex>)> {
    let n = g.vertex_count();
    let mut num = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    num[a] = 0;
    order.push(a);
    parent[a] = b;
    let mut flat: Vec<u8> = Vec::with_capacity(3 * n);
    let mut head = 0;
    let mut less = false;
    while head < order.len() {
        let v = order[head];
        let rot = g.rotation(v);
        let d = rot.len();
        let start = rot
            .iter()
            .position(|&x| x == parent[v])
            .expect("parent is a neighbor");
        let from = flat.len();
        for k in 0..d {
            let idx = if forward {
                (start + k) % d
            } else {
                (start + d - k) % d
            };
            let w = rot[idx];
            if num[w] == usize::MAX {
                num[w] = order.len();
                parent[w] = v;
                order.push(w);
            }
            flat.push(num[w] as u8);
        }
        flat.push(END);
        if let (Some(bound), false) = (bound, less) {
            let end = flat.len().min(bound.0.len());
            match flat[from..end].cmp(&bound.0[from.min(end)..end]) {
                std::cmp::Ordering::Less => less = true,
                std::cmp::Ordering::Greater => return None,
                std::cmp::Ordering::Equal => {}
            }
        }
        head += 1;
    }
    Some((Code(flat), order))
}

fn check(g: &PlaneGraph) -> Result<(), CanonError> {
    if g.vertex_count() > 64 {
        return Err(CanonError::TooLarge);
    }
    if !g.graph().is_connected() || (0..g.vertex_count()).any(|v| g.degree(v) == 0) {
        return Err(CanonError::Disconnected);
    }
    Ok(())
}

fn minimize(
    g: &PlaneGraph,
    starts: impl Iterator<Item = (Vertex, Vertex, bool)>,
) -> (Code, Vec<Vertex>) {
    let mut best: Option<(Code, Vec<Vertex>)> = None;
    for (a, b, fwd) in starts {
        if let Some(c) = code_from(g, a, b, fwd, best.as_ref().map(|x| &x.0)) {
            if best.as_ref().is_none_or(|x| c.0 < x.0) {
                best = Some(c);
            }
        }
    }
    best.expect("at least one dart")
}

fn outer_starts(g: &PlaneGraph) -> Vec<(Vertex, Vertex, bool)> {
    let w = g.outer_walk();
    let vs = w.vertices();
    let k = vs.len();
    let mut out = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (a, b) = (vs[i], vs[(i + 1) % k]);
        out.push((a, b, true));
        out.push((b, a, false));
    }
    out
}

/// Canonical code of `g` with its outer face, and the vertex numbering that
/// realizes it.
pub fn canonical_labeling(g: &PlaneGraph) -> Result<(Code, Vec<Vertex>), CanonError> {
    check(g)?;
    Ok(minimize(g, outer_starts(g).into_iter()))
}

/// Canonical code of `g` with its outer face. Two plane graphs get equal codes
/// exactly when some isomorphism (possibly reflecting) maps one onto the other
/// together with the outer face.
pub fn canonical_code(g: &PlaneGraph) -> Result<Code, CanonError> {
    Ok(canonical_labeling(g)?.0)
}

/// Canonical code over the outer darts whose tail satisfies `root`. When the
/// predicate marks a class of outer vertices preserved by the isomorphisms of
/// interest, equal codes mean isomorphic graphs with matching marks.
pub fn canonical_code_rooted_at(
    g: &PlaneGraph,
    root: &dyn Fn(Vertex) -> bool,
) -> Result<Code, CanonError> {
    check(g)?;
    let starts: Vec<_> = outer_starts(g)
        .into_iter()
        .filter(|&(a, _, _)| root(a))
        .collect();
    if starts.is_empty() {
        return canonical_code(g);
    }
    Ok(minimize(g, starts.into_iter()).0)
}

/// Canonical code ignoring which face is outer.
pub fn unrooted_code(g: &PlaneGraph) -> Result<Code, CanonError> {
    check(g)?;
    let starts = (0..g.vertex_count()).flat_map(|a| {
        g.rotation(a)
            .iter()
            .flat_map(move |&b| [(a, b, true), (a, b, false)])
            .collect::<Vec<_>>()
    });
    Ok(minimize(g, starts).0)
}

/// Rebuilds the plane graph of a code. Vertex `i` is the `i`-th vertex in
/// canonical order and the outer face is traced along `0 -> first neighbor`.
pub fn from_code(code: &Code) -> Result<PlaneGraph, CanonError> {
    let n = code.vertex_count();
    let rotation: Vec<Vec<Vertex>> = code
        .lists()
        .iter()
        .map(|l| l.iter().map(|&x| x as Vertex).collect())
        .collect();
    if rotation.iter().flatten().any(|&x| x >= n) {
        return Err(CanonError::Malformed("neighbor out of range".into()));
    }
    let first = *rotation
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| CanonError::Malformed("empty code".into()))?;
    Ok(PlaneGraph::new(rotation, (0, first))?)
}

/// `g` relabeled in canonical order.
pub fn canonical_form(g: &PlaneGraph) -> Result<PlaneGraph, CanonError> {
    from_code(&canonical_code(g)?)
}
