//! Even and odd vertices of graph-knots and two-component graph-links.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::Gf2SymMatrix;
use crate::graph::{LabeledGraph, LoopedGraph, VertexId};
use crate::invariants::{component_count, oriented_vertices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of every vertex, in the graph's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    entries: Vec<(VertexId, Parity)>,
}

impl ParityTable {
    pub fn new(entries: Vec<(VertexId, Parity)>) -> Self {
        ParityTable { entries }
    }

    pub fn entries(&self) -> &[(VertexId, Parity)] {
        &self.entries
    }

    pub fn get(&self, id: &VertexId) -> Option<Parity> {
        self.entries.iter().find(|(v, _)| v == id).map(|&(_, p)| p)
    }

    pub fn parity_at(&self, i: usize) -> Parity {
        self.entries[i].1
    }

    pub fn all_odd(&self) -> bool {
        self.entries.iter().all(|&(_, p)| p == Parity::Odd)
    }

    pub fn even_ids(&self) -> Vec<VertexId> {
        self.entries
            .iter()
            .filter(|&&(_, p)| p == Parity::Even)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

impl fmt::Display for ParityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(v, p)| format!("{v}={p}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parity of the non-loop degree.
pub fn parity_knot(l: &LoopedGraph) -> ParityTable {
    ParityTable::new(
        (0..l.len())
            .map(|i| (l.id(i).clone(), Parity::of_count(l.degree(i))))
            .collect(),
    )
}

/// Off-diagonal part of `(A(G) + E)⁻¹`, the adjacency of `χ(G)`.
pub(crate) fn chi_adjacency(g: &LabeledGraph) -> Result<Gf2SymMatrix> {
    let ae = g.adjacency_matrix().plus_identity();
    ae.inverse().map_err(|_| Error::NotOneComponent {
        components: ae.corank() + 1,
    })
}

/// Parity of a graph-knot's vertices through its looped graph.
pub fn parity_knot_labeled(g: &LabeledGraph) -> Result<ParityTable> {
    let m = chi_adjacency(g)?;
    Ok(ParityTable::new(
        (0..g.len())
            .map(|i| {
                let deg = (0..g.len()).filter(|&j| j != i && m.get(i, j)).count();
                (g.id(i).clone(), Parity::of_count(deg))
            })
            .collect(),
    ))
}

/// Two-component graph-links: a vertex is even iff it is oriented.
pub fn parity_link2(g: &LabeledGraph) -> Result<ParityTable> {
    let components = component_count(g);
    if components != 2 {
        return Err(Error::NotTwoComponents { components });
    }
    let o = oriented_vertices(g);
    Ok(ParityTable::new(
        (0..g.len())
            .map(|i| (g.id(i).clone(), if o[i] { Parity::Even } else { Parity::Odd }))
            .collect(),
    ))
}

/// Where adjacency is read when counting oriented neighbours after
/// smoothing a one-component graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParityReading {
    /// Adjacency in the looped graph of the original one-component input.
    #[default]
    OriginalChi,
    /// Adjacency in the smoothed graph itself.
    Smoothed,
}

/// Parity of each vertex `u` of `smoothed` relative to the smoothings that
/// produced it from `original`: the number of oriented vertices of
/// `smoothed` adjacent to `u`, taken mod 2. Vertices are matched by id;
/// ids absent from `original` have no neighbours there.
pub fn relative_parity(
    original: &LabeledGraph,
    smoothed: &LabeledGraph,
    reading: ParityReading,
) -> Result<ParityTable> {
    let oriented = oriented_vertices(smoothed);
    let n = smoothed.len();
    let adjacent: Box<dyn Fn(usize, usize) -> bool> = match reading {
        ParityReading::OriginalChi => {
            let m = chi_adjacency(original)?;
            let pos: Vec<Option<usize>> = (0..n).map(|i| original.index_of(smoothed.id(i))).collect();
            Box::new(move |a, b| match (pos[a], pos[b]) {
                (Some(x), Some(y)) => x != y && m.get(x, y),
                _ => false,
            })
        }
        ParityReading::Smoothed => Box::new(|a, b| smoothed.has_edge(a, b)),
    };
    Ok(ParityTable::new(
        (0..n)
            .map(|u| {
                let k = (0..n).filter(|&w| w != u && oriented[w] && adjacent(u, w)).count();
                (smoothed.id(u).clone(), Parity::of_count(k))
            })
            .collect(),
    ))
}
