//! The correspondence between graph-knots and looped graphs.

use crate::error::Result;
use crate::graph::{Framing, Label, LabeledGraph, LoopedGraph, Sign};
use crate::invariants::writhe;

/// Looped graph with adjacency `(A(G) + E)⁻¹` off the diagonal and a loop
/// at every vertex of negative writhe.
pub fn chi(g: &LabeledGraph) -> Result<LoopedGraph> {
    let w = writhe(g)?;
    let inv = g.adjacency_matrix().plus_identity().inverse()?;
    let mut out = g.map_labels(|_| false);
    for i in 0..g.len() {
        out.set_label(i, w.per_vertex[i] < 0);
        for j in i + 1..g.len() {
            out.set_edge(i, j, inv.get(i, j));
        }
    }
    Ok(out)
}

/// Labeled graph read off `A⁻¹ + E`, where `A` is the deterministic
/// nondegenerate completion of the looped graph's adjacency matrix.
/// The sign of vertex `i` is `w_i (1 - 2 a_ii)` with `w_i = -1` on looped
/// vertices.
pub fn chi_inverse(l: &LoopedGraph) -> LabeledGraph {
    let a = l.adjacency_matrix().nondegenerate_completion();
    let m = a.inverse().expect("completion is nonsingular").plus_identity();
    let mut out = l.map_labels(|_| Label::zero(Sign::Plus));
    for i in 0..l.len() {
        let w = if l.is_looped(i) { -1 } else { 1 };
        let aii = if a.get(i, i) { -1 } else { 1 };
        out.set_label(i, Label::new(Framing::from_bit(m.get(i, i)), Sign::from_value(w * aii)));
        for j in i + 1..l.len() {
            out.set_edge(i, j, m.get(i, j));
        }
    }
    out
}
