//! Labeled and looped simple graphs, local complementation and pivot.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf2::Gf2SymMatrix;

/// Opaque vertex name. Ordering is by the underlying string; graph
/// computations use the declared vertex order instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(s: &str) -> Self {
        VertexId(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i32) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Framing {
    Zero,
    One,
}

impl Framing {
    pub fn bit(self) -> bool {
        self == Framing::One
    }

    pub fn from_bit(b: bool) -> Framing {
        if b {
            Framing::One
        } else {
            Framing::Zero
        }
    }

    pub fn toggled(self) -> Framing {
        Framing::from_bit(!self.bit())
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit() as u8)
    }
}

/// Vertex label `(framing, sign)` of a labeled graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label {
    pub framing: Framing,
    pub sign: Sign,
}

impl Label {
    pub const fn new(framing: Framing, sign: Sign) -> Self {
        Label { framing, sign }
    }

    /// `(0, sign)`.
    pub const fn zero(sign: Sign) -> Self {
        Label::new(Framing::Zero, sign)
    }

    /// `(1, sign)`.
    pub const fn one(sign: Sign) -> Self {
        Label::new(Framing::One, sign)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.framing, self.sign)
    }
}

/// Per-vertex decoration that canonical forms must respect.
pub trait VertexLabel: Clone + Eq + fmt::Debug {
    /// Tag distinguishing graph kinds inside canonical forms.
    const KIND: u8;
    /// Small integer encoding of the label.
    fn color(&self) -> u8;
}

impl VertexLabel for Label {
    const KIND: u8 = b'L';
    fn color(&self) -> u8 {
        (self.framing.bit() as u8) << 1 | (self.sign == Sign::Minus) as u8
    }
}

/// The loop flag of a looped-graph vertex.
impl VertexLabel for bool {
    const KIND: u8 = b'O';
    fn color(&self) -> u8 {
        *self as u8
    }
}

/// A simple graph with per-vertex labels, stored in declared vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph<L> {
    ids: Vec<VertexId>,
    labels: Vec<L>,
    adj: Vec<FixedBitSet>,
}

/// Vertices carry `(framing, sign)`.
pub type LabeledGraph = Graph<Label>;
/// Vertices carry a loop flag.
pub type LoopedGraph = Graph<bool>;

impl<L> Default for Graph<L> {
    fn default() -> Self {
        Graph {
            ids: Vec::new(),
            labels: Vec::new(),
            adj: Vec::new(),
        }
    }
}

impl<L: Clone> Graph<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &VertexId {
        &self.ids[i]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn set_label(&mut self, i: usize, label: L) {
        self.labels[i] = label;
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn index(&self, id: &VertexId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.clone()))
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.index_of(id).is_some()
    }

    /// Appends an isolated vertex and returns its position.
    pub fn add_vertex(&mut self, id: VertexId, label: L) -> Result<usize> {
        if self.contains(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let n = self.len() + 1;
        for row in &mut self.adj {
            row.grow(n);
        }
        self.adj.push(FixedBitSet::with_capacity(n));
        self.ids.push(id);
        self.labels.push(label);
        Ok(n - 1)
    }

    /// Adds edge `ij`, rejecting loops and duplicates.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::Loop(self.ids[i].clone()));
        }
        if self.has_edge(i, j) {
            return Err(Error::DuplicateEdge(self.ids[i].clone(), self.ids[j].clone()));
        }
        self.toggle_edge(i, j);
        Ok(())
    }

    pub fn add_edge_by_id(&mut self, a: &VertexId, b: &VertexId) -> Result<()> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        self.add_edge(i, j)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.adj[i].toggle(j);
        self.adj[j].toggle(i);
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        if self.has_edge(i, j) != present {
            self.toggle_edge(i, j);
        }
    }

    pub fn neighborhood(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.adj[i].is_clear()
    }

    /// Edges as position pairs `(i, j)` with `i < j`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.adj[i].ones().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Neighborhoods of `i` and `j` agree outside `{i, j}`.
    pub fn same_outside_neighborhood(&self, i: usize, j: usize) -> bool {
        (0..self.len()).all(|k| k == i || k == j || self.has_edge(i, k) == self.has_edge(j, k))
    }

    /// Keeps the vertices at the given positions, in the given order.
    pub fn select(&self, keep: &[usize]) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(keep.len()); keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.has_edge(i, j) {
                    adj[a].insert(b);
                }
            }
        }
        Graph {
            ids: keep.iter().map(|&i| self.ids[i].clone()).collect(),
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            adj,
        }
    }

    pub fn without(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !drop.contains(i)).collect();
        self.select(&keep)
    }

    /// The induced subgraph on `s`, keeping the declared order of `self`.
    pub fn induced_subgraph(&self, s: &[VertexId]) -> Result<Self> {
        let mut mask = vec![false; self.len()];
        for id in s {
            mask[self.index(id)?] = true;
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask[i]).collect();
        Ok(self.select(&keep))
    }

    pub fn map_labels<M: Clone>(&self, mut f: impl FnMut(&L) -> M) -> Graph<M> {
        Graph {
            ids: self.ids.clone(),
            labels: self.labels.iter().map(&mut f).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Exchanges the names of two vertices, keeping labels and adjacency
    /// attached to the positions.
    pub fn swap_ids(&mut self, i: usize, j: usize) {
        self.ids.swap(i, j);
    }

    /// A name not used by any vertex, of the form `{prefix}{k}`.
    pub fn fresh_id(&self, prefix: &str) -> VertexId {
        (1..)
            .map(|k| VertexId::new(&format!("{prefix}{k}")))
            .find(|id| !self.contains(id))
            .expect("unbounded")
    }

    /// Connected components as sorted position lists, ordered by their
    /// first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in self.adj[v].ones() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Local complementation at position `v`: toggles every pair of
    /// distinct neighbours of `v`.
    pub fn local_complement_at(&self, v: usize) -> Self {
        let mut g = self.clone();
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                g.toggle_edge(a, b);
            }
        }
        g
    }

    pub fn local_complement(&self, v: &VertexId) -> Result<Self> {
        Ok(self.local_complement_at(self.index(v)?))
    }

    /// Pivot at positions `u != v`: toggles `xy` for `x ∈ N(u)`, `y ∈ N(v)`,
    /// `x, y ∉ {u, v}`, unless both `x ∈ N(v)` and `y ∈ N(u)`.
    pub fn pivot_at(&self, u: usize, v: usize) -> Self {
        assert_ne!(u, v);
        let mut toggles = FixedBitSet::with_capacity(self.len() * self.len());
        let n = self.len();
        for x in self.neighbors(u) {
            for y in self.neighbors(v) {
                if x == y || x == u || x == v || y == u || y == v {
                    continue;
                }
                if !self.has_edge(x, v) || !self.has_edge(y, u) {
                    let (a, b) = (x.min(y), x.max(y));
                    toggles.insert(a * n + b);
                }
            }
        }
        let mut g = self.clone();
        for k in toggles.ones() {
            g.toggle_edge(k / n, k % n);
        }
        g
    }

    pub fn pivot(&self, u: &VertexId, v: &VertexId) -> Result<Self> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        if i == j {
            return Err(Error::SameVertex(u.clone()));
        }
        Ok(self.pivot_at(i, j))
    }

    /// Adjacency rows as words; requires `len() <= 64`.
    pub(crate) fn adjacency_words(&self) -> Vec<u64> {
        assert!(self.len() <= 64);
        self.adj
            .iter()
            .map(|r| r.ones().fold(0u64, |acc, j| acc | 1 << j))
            .collect()
    }
}

impl LabeledGraph {
    /// `A(G)`: adjacency off the diagonal, framings on it.
    pub fn adjacency_matrix(&self) -> Gf2SymMatrix {
        Gf2SymMatrix::from_upper(self.len(), |i, j| {
            if i == j {
                self.labels[i].framing.bit()
            } else {
                self.has_edge(i, j)
            }
        })
    }

    /// The same graph with every sign set to `+`.
    pub fn erase_signs(&self) -> Self {
        self.map_labels(|l| Label::new(l.framing, Sign::Plus))
    }

    pub fn framing(&self, i: usize) -> Framing {
        self.labels[i].framing
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.labels[i].sign
    }
}

impl LoopedGraph {
    pub fn is_looped(&self, i: usize) -> bool {
        self.labels[i]
    }

    /// Adjacency with zero diagonal.
    pub fn adjacency_matrix(&self) -> Gf2SymMatrix {
        Gf2SymMatrix::from_upper(self.len(), |i, j| i != j && self.has_edge(i, j))
    }
}

impl<L: fmt::Debug> fmt::Debug for Graph<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ids.len();
        let verts: Vec<String> = (0..n).map(|i| format!("{}{:?}", self.ids[i], self.labels[i])).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in self.adj[i].ones().filter(|&j| j > i) {
                edges.push(format!("{}-{}", self.ids[i], self.ids[j]));
            }
        }
        write!(f, "Graph {{ v: [{}], e: [{}] }}", verts.join(", "), edges.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> LoopedGraph {
        let mut g = LoopedGraph::new();
        for id in ["a", "v", "b"] {
            g.add_vertex(id.into(), false).unwrap();
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g
    }

    #[test]
    fn lc_on_path_gives_triangle() {
        let g = path3();
        let h = g.local_complement(&"v".into()).unwrap();
        assert!(h.has_edge(0, 2));
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.local_complement(&"v".into()).unwrap(), g);
    }

    #[test]
    fn lc_isolated_is_identity() {
        let mut g = path3();
        g.add_vertex("z".into(), true).unwrap();
        assert_eq!(g.local_complement(&"z".into()).unwrap(), g);
    }

    #[test]
    fn pivot_errors() {
        let g = path3();
        assert_eq!(g.pivot(&"a".into(), &"a".into()), Err(Error::SameVertex("a".into())));
        assert_eq!(
            g.pivot(&"a".into(), &"q".into()),
            Err(Error::UnknownVertex("q".into()))
        );
        assert_eq!(
            g.local_complement(&"q".into()),
            Err(Error::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn pivot_on_isolated_pair_is_identity() {
        let mut g = LoopedGraph::new();
        g.add_vertex("u".into(), false).unwrap();
        g.add_vertex("v".into(), true).unwrap();
        assert_eq!(g.pivot(&"u".into(), &"v".into()).unwrap(), g);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = path3();
        assert!(matches!(g.add_edge(0, 0), Err(Error::Loop(_))));
        assert!(matches!(g.add_edge(1, 0), Err(Error::DuplicateEdge(..))));
        assert!(matches!(g.add_vertex("a".into(), true), Err(Error::DuplicateVertex(_))));
    }

    #[test]
    fn induced_subgraph_examples() {
        let mut g = LabeledGraph::new();
        for id in ["x", "y", "z"] {
            g.add_vertex(id.into(), Label::zero(Sign::Plus)).unwrap();
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g.add_edge(0, 2).unwrap();
        let all: Vec<VertexId> = g.ids().to_vec();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
        assert!(g.induced_subgraph(&[]).unwrap().is_empty());
        let two = g.induced_subgraph(&["z".into(), "x".into()]).unwrap();
        assert_eq!(two.ids(), &["x".into(), "z".into()]);
        assert_eq!(two.edge_count(), 1);
    }

    #[test]
    fn adjacency_matrix_examples() {
        let mut g = LabeledGraph::new();
        g.add_vertex("v".into(), Label::one(Sign::Plus)).unwrap();
        assert_eq!(g.adjacency_matrix(), Gf2SymMatrix::from_rows(&[&[1]]).unwrap());

        let mut h = LabeledGraph::new();
        h.add_vertex("a".into(), Label::zero(Sign::Plus)).unwrap();
        h.add_vertex("b".into(), Label::zero(Sign::Minus)).unwrap();
        h.add_edge(0, 1).unwrap();
        assert_eq!(h.adjacency_matrix(), Gf2SymMatrix::from_rows(&[&[0, 1], &[1, 0]]).unwrap());

        assert_eq!(LabeledGraph::new().adjacency_matrix().dim(), 0);
    }

    #[test]
    fn fresh_ids_avoid_collisions() {
        let mut g = LoopedGraph::new();
        g.add_vertex("n1".into(), false).unwrap();
        assert_eq!(g.fresh_id("n"), "n2".into());
    }
}
