//! Reidemeister graph-moves on labeled graphs, their looped-graph
//! counterparts, move detection and bounded equivalence search.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error as ThisError;

use crate::canon::{canonical_form_with_limit, CanonicalForm, DEFAULT_CANON_LIMIT, MAX_CANON_VERTICES};
use crate::error::{Error, Reason, Result};
use crate::graph::{Framing, Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexId};

/// A move on a labeled graph. Additions append the new vertices after all
/// existing ones, so an addition followed by the matching removal restores
/// the original graph exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// New isolated vertex labeled `(0, sign)`.
    Og1Add { id: VertexId, sign: Sign },
    Og1Remove { v: VertexId },
    /// Twins `a, b` with the given framing, signs `sign` and `-sign`,
    /// adjacent iff the framing is 1.
    Og2Add {
        a: VertexId,
        b: VertexId,
        framing: Framing,
        sign: Sign,
        neighbors: Vec<VertexId>,
    },
    Og2Remove { a: VertexId, b: VertexId },
    Og3 { u: VertexId, v: VertexId, w: VertexId },
    Og3Inv { u: VertexId, v: VertexId, w: VertexId },
    Og4 { u: VertexId, v: VertexId },
    Og4p { v: VertexId },
}

/// A move on a looped graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LoopedMove {
    R1Add { id: VertexId, looped: bool },
    R1Remove { v: VertexId },
    R2Add {
        looped: VertexId,
        unlooped: VertexId,
        neighbors: Vec<VertexId>,
        adjacent: bool,
    },
    R2Remove { a: VertexId, b: VertexId },
    R3 { u: VertexId, v: VertexId, w: VertexId },
    R3Inv { u: VertexId, v: VertexId, w: VertexId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Og1Add,
    Og1Remove,
    Og2Add,
    Og2Remove,
    Og3,
    Og3Inv,
    Og4,
    Og4p,
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    R3Inv,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Og1Add => "og1 add",
            MoveKind::Og1Remove => "og1 remove",
            MoveKind::Og2Add => "og2 add",
            MoveKind::Og2Remove => "og2 remove",
            MoveKind::Og3 => "og3",
            MoveKind::Og3Inv => "og3inv",
            MoveKind::Og4 => "og4",
            MoveKind::Og4p => "og4p",
            MoveKind::R1Add => "r1 add",
            MoveKind::R1Remove => "r1 remove",
            MoveKind::R2Add => "r2 add",
            MoveKind::R2Remove => "r2 remove",
            MoveKind::R3 => "r3",
            MoveKind::R3Inv => "r3inv",
        }
    }

    pub fn is_decreasing(self) -> bool {
        matches!(
            self,
            MoveKind::Og1Remove | MoveKind::Og2Remove | MoveKind::R1Remove | MoveKind::R2Remove
        )
    }

    /// A second Reidemeister move that removes two vertices.
    pub fn is_decreasing_second(self) -> bool {
        matches!(self, MoveKind::Og2Remove | MoveKind::R2Remove)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Og1Add { .. } => MoveKind::Og1Add,
            Move::Og1Remove { .. } => MoveKind::Og1Remove,
            Move::Og2Add { .. } => MoveKind::Og2Add,
            Move::Og2Remove { .. } => MoveKind::Og2Remove,
            Move::Og3 { .. } => MoveKind::Og3,
            Move::Og3Inv { .. } => MoveKind::Og3Inv,
            Move::Og4 { .. } => MoveKind::Og4,
            Move::Og4p { .. } => MoveKind::Og4p,
        }
    }

    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        match self {
            Move::Og1Add { id, sign } => og1_add(g, id, *sign),
            Move::Og1Remove { v } => og1_remove(g, v),
            Move::Og2Add {
                a,
                b,
                framing,
                sign,
                neighbors,
            } => og2_add(g, a, b, *framing, *sign, neighbors),
            Move::Og2Remove { a, b } => og2_remove(g, a, b),
            Move::Og3 { u, v, w } => og3(g, u, v, w),
            Move::Og3Inv { u, v, w } => og3_inv(g, u, v, w),
            Move::Og4 { u, v } => og4(g, u, v),
            Move::Og4p { v } => og4p(g, v),
        }
    }
}

impl LoopedMove {
    pub fn kind(&self) -> MoveKind {
        match self {
            LoopedMove::R1Add { .. } => MoveKind::R1Add,
            LoopedMove::R1Remove { .. } => MoveKind::R1Remove,
            LoopedMove::R2Add { .. } => MoveKind::R2Add,
            LoopedMove::R2Remove { .. } => MoveKind::R2Remove,
            LoopedMove::R3 { .. } => MoveKind::R3,
            LoopedMove::R3Inv { .. } => MoveKind::R3Inv,
        }
    }

    pub fn apply(&self, g: &LoopedGraph) -> Result<LoopedGraph> {
        match self {
            LoopedMove::R1Add { id, looped } => r1_add(g, id, *looped),
            LoopedMove::R1Remove { v } => r1_remove(g, v),
            LoopedMove::R2Add {
                looped,
                unlooped,
                neighbors,
                adjacent,
            } => r2_add(g, looped, unlooped, neighbors, *adjacent),
            LoopedMove::R2Remove { a, b } => r2_remove(g, a, b),
            LoopedMove::R3 { u, v, w } => r3(g, u, v, w),
            LoopedMove::R3Inv { u, v, w } => r3_inv(g, u, v, w),
        }
    }
}

fn na(mv: &'static str, reason: Reason) -> Error {
    Error::not_applicable(mv, reason)
}

fn distinct<L: Clone>(g: &Graph<L>, ids: &[&VertexId]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let i = g.index(id)?;
        if out.contains(&i) {
            return Err(Error::SameVertex((*id).clone()));
        }
        out.push(i);
    }
    Ok(out)
}

fn add_vertex_with<L: Clone>(
    g: &mut Graph<L>,
    mv: &'static str,
    id: &VertexId,
    label: L,
    neighbors: &[usize],
) -> Result<usize> {
    if g.contains(id) {
        return Err(na(mv, Reason::DuplicateVertex));
    }
    let x = g.add_vertex(id.clone(), label)?;
    for &k in neighbors {
        g.toggle_edge(x, k);
    }
    Ok(x)
}

fn neighbor_positions<L: Clone>(g: &Graph<L>, ids: &[VertexId]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let i = g.index(id)?;
        if out.contains(&i) {
            return Err(Error::DuplicateVertex(id.clone()));
        }
        out.push(i);
    }
    Ok(out)
}

pub fn og1_add(g: &LabeledGraph, id: &VertexId, sign: Sign) -> Result<LabeledGraph> {
    let mut h = g.clone();
    add_vertex_with(&mut h, "og1", id, Label::zero(sign), &[])?;
    Ok(h)
}

pub fn og1_remove(g: &LabeledGraph, v: &VertexId) -> Result<LabeledGraph> {
    let i = g.index(v)?;
    if !g.is_isolated(i) {
        return Err(na("og1", Reason::VertexNotIsolated));
    }
    if g.framing(i) != Framing::Zero {
        return Err(na("og1", Reason::NonzeroFraming));
    }
    Ok(g.without(&[i]))
}

pub fn og2_add(
    g: &LabeledGraph,
    a: &VertexId,
    b: &VertexId,
    framing: Framing,
    sign: Sign,
    neighbors: &[VertexId],
) -> Result<LabeledGraph> {
    if a == b {
        return Err(Error::SameVertex(a.clone()));
    }
    let nbrs = neighbor_positions(g, neighbors)?;
    let mut h = g.clone();
    let x = add_vertex_with(&mut h, "og2", a, Label::new(framing, sign), &nbrs)?;
    let y = add_vertex_with(&mut h, "og2", b, Label::new(framing, sign.flip()), &nbrs)?;
    if framing == Framing::One {
        h.toggle_edge(x, y);
    }
    Ok(h)
}

/// Why `{i, j}` is not a removable twin pair; `check_sign` is false for
/// the sign-free variant used on free graphs.
fn og2_obstruction(g: &LabeledGraph, i: usize, j: usize, check_sign: bool) -> Option<Reason> {
    let (li, lj) = (g.label(i), g.label(j));
    if li.framing != lj.framing {
        return Some(Reason::FramingMismatch);
    }
    if g.has_edge(i, j) != (li.framing == Framing::One) {
        return Some(Reason::FramingAdjacencyMismatch);
    }
    if !g.same_outside_neighborhood(i, j) {
        return Some(Reason::NeighborhoodMismatch);
    }
    if check_sign && li.sign == lj.sign {
        return Some(Reason::SignMismatch);
    }
    None
}

pub fn og2_remove(g: &LabeledGraph, a: &VertexId, b: &VertexId) -> Result<LabeledGraph> {
    let p = distinct(g, &[a, b])?;
    if let Some(r) = og2_obstruction(g, p[0], p[1], true) {
        return Err(na("og2", r));
    }
    Ok(g.without(&p))
}

/// Positions `t ∉ {u, v, w}` adjacent to exactly one of `v, w`.
fn og3_toggles<L: Clone>(g: &Graph<L>, u: usize, v: usize, w: usize) -> Vec<usize> {
    (0..g.len())
        .filter(|&t| t != u && t != v && t != w && g.has_edge(v, t) != g.has_edge(w, t))
        .collect()
}

fn og3_check(g: &LabeledGraph, u: &VertexId, v: &VertexId, w: &VertexId, inverse: bool) -> Result<[usize; 3]> {
    let name = if inverse { "og3inv" } else { "og3" };
    let p = distinct(g, &[u, v, w])?;
    let (u, v, w) = (p[0], p[1], p[2]);
    let vw_sign = if inverse { Sign::Plus } else { Sign::Minus };
    if *g.label(u) != Label::zero(Sign::Minus)
        || *g.label(v) != Label::zero(vw_sign)
        || *g.label(w) != Label::zero(vw_sign)
    {
        return Err(na(name, Reason::LabelMismatch));
    }
    if !g.has_edge(v, w) || !g.has_edge(u, v) || !g.has_edge(u, w) {
        return Err(na(name, Reason::NotAdjacent));
    }
    let expected = if inverse { og3_toggles(g, u, v, w) } else { Vec::new() };
    let actual: Vec<usize> = g.neighbors(u).filter(|&t| t != v && t != w).collect();
    if actual != expected {
        return Err(na(name, Reason::WrongNeighborhood));
    }
    Ok([u, v, w])
}

fn og3_apply(g: &LabeledGraph, [u, v, w]: [usize; 3], sign: Sign) -> LabeledGraph {
    let mut h = g.clone();
    for t in og3_toggles(g, u, v, w) {
        h.toggle_edge(u, t);
    }
    h.set_label(v, Label::zero(sign));
    h.set_label(w, Label::zero(sign));
    h
}

/// `u, v, w` labeled `(0,-)`, `N(u) = {v, w}`, `v ~ w`. Toggles `ut` for
/// `t ∈ (N(v) Δ N(w)) \ {u, v, w}` and sets the signs of `v, w` to `+`.
pub fn og3(g: &LabeledGraph, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<LabeledGraph> {
    let p = og3_check(g, u, v, w, false)?;
    Ok(og3_apply(g, p, Sign::Plus))
}

/// Inverse of [`og3`].
pub fn og3_inv(g: &LabeledGraph, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<LabeledGraph> {
    let p = og3_check(g, u, v, w, true)?;
    Ok(og3_apply(g, p, Sign::Minus))
}

pub(crate) fn og4_at(g: &LabeledGraph, u: usize, v: usize) -> LabeledGraph {
    let (a, b) = (g.sign(u), g.sign(v));
    let mut h = g.pivot_at(u, v);
    h.set_label(u, Label::new(g.framing(u), b.flip()));
    h.set_label(v, Label::new(g.framing(v), a.flip()));
    h
}

/// Pivot on adjacent framing-0 vertices `u, v` with signs `α, β`, then
/// relabel `u` with `-β` and `v` with `-α`.
pub fn og4(g: &LabeledGraph, u: &VertexId, v: &VertexId) -> Result<LabeledGraph> {
    let p = distinct(g, &[u, v])?;
    let (u, v) = (p[0], p[1]);
    if !g.has_edge(u, v) {
        return Err(na("og4", Reason::NotAdjacent));
    }
    if g.framing(u) != Framing::Zero || g.framing(v) != Framing::Zero {
        return Err(na("og4", Reason::NonzeroFraming));
    }
    Ok(og4_at(g, u, v))
}

pub(crate) fn og4p_at(g: &LabeledGraph, v: usize) -> LabeledGraph {
    let mut h = g.local_complement_at(v);
    h.set_label(v, Label::new(g.framing(v), g.sign(v).flip()));
    for u in g.neighbors(v) {
        h.set_label(u, Label::new(g.framing(u).toggled(), g.sign(u)));
    }
    h
}

/// Local complement at a framing-1 vertex `v`, flip the sign of `v` and
/// toggle the framing of each neighbour.
pub fn og4p(g: &LabeledGraph, v: &VertexId) -> Result<LabeledGraph> {
    let i = g.index(v)?;
    if g.framing(i) != Framing::One {
        return Err(na("og4p", Reason::FramingNotOne));
    }
    Ok(og4p_at(g, i))
}

pub fn r1_add(g: &LoopedGraph, id: &VertexId, looped: bool) -> Result<LoopedGraph> {
    let mut h = g.clone();
    add_vertex_with(&mut h, "r1", id, looped, &[])?;
    Ok(h)
}

pub fn r1_remove(g: &LoopedGraph, v: &VertexId) -> Result<LoopedGraph> {
    let i = g.index(v)?;
    if !g.is_isolated(i) {
        return Err(na("r1", Reason::VertexNotIsolated));
    }
    Ok(g.without(&[i]))
}

pub fn r2_add(
    g: &LoopedGraph,
    looped: &VertexId,
    unlooped: &VertexId,
    neighbors: &[VertexId],
    adjacent: bool,
) -> Result<LoopedGraph> {
    if looped == unlooped {
        return Err(Error::SameVertex(looped.clone()));
    }
    let nbrs = neighbor_positions(g, neighbors)?;
    let mut h = g.clone();
    let x = add_vertex_with(&mut h, "r2", looped, true, &nbrs)?;
    let y = add_vertex_with(&mut h, "r2", unlooped, false, &nbrs)?;
    if adjacent {
        h.toggle_edge(x, y);
    }
    Ok(h)
}

fn r2_obstruction(g: &LoopedGraph, i: usize, j: usize) -> Option<Reason> {
    if !g.same_outside_neighborhood(i, j) {
        return Some(Reason::NeighborhoodMismatch);
    }
    if g.is_looped(i) == g.is_looped(j) {
        return Some(Reason::LoopMismatch);
    }
    None
}

pub fn r2_remove(g: &LoopedGraph, a: &VertexId, b: &VertexId) -> Result<LoopedGraph> {
    let p = distinct(g, &[a, b])?;
    if let Some(r) = r2_obstruction(g, p[0], p[1]) {
        return Err(na("r2", r));
    }
    Ok(g.without(&p))
}

/// Every vertex outside `{u, v, w}` is adjacent to none or exactly two.
fn r3_incidence(g: &LoopedGraph, u: usize, v: usize, w: usize) -> bool {
    (0..g.len())
        .filter(|&x| x != u && x != v && x != w)
        .all(|x| matches!(g.has_edge(x, u) as u8 + g.has_edge(x, v) as u8 + g.has_edge(x, w) as u8, 0 | 2))
}

fn r3_check(g: &LoopedGraph, u: &VertexId, v: &VertexId, w: &VertexId, inverse: bool) -> Result<[usize; 3]> {
    let name = if inverse { "r3inv" } else { "r3" };
    let p = distinct(g, &[u, v, w])?;
    let (u, v, w) = (p[0], p[1], p[2]);
    if !g.is_looped(v) || g.is_looped(w) {
        return Err(na(name, Reason::LoopMismatch));
    }
    let (vw, uv, uw) = (g.has_edge(v, w), g.has_edge(u, v), g.has_edge(u, w));
    if inverse {
        if vw {
            return Err(na(name, Reason::Adjacent));
        }
        if !uv || !uw {
            return Err(na(name, Reason::NotAdjacent));
        }
    } else {
        if !vw {
            return Err(na(name, Reason::NotAdjacent));
        }
        if uv || uw {
            return Err(na(name, Reason::Adjacent));
        }
    }
    if !r3_incidence(g, u, v, w) {
        return Err(na(name, Reason::IncidenceCondition));
    }
    Ok([u, v, w])
}

fn r3_apply(g: &LoopedGraph, [u, v, w]: [usize; 3]) -> LoopedGraph {
    let mut h = g.clone();
    h.toggle_edge(u, v);
    h.toggle_edge(u, w);
    h.toggle_edge(v, w);
    h
}

/// `v` looped, `w` unlooped, `v ~ w`, `u` adjacent to neither, and every
/// other vertex adjacent to none or two of `u, v, w`. Toggles the three
/// pairwise adjacencies.
pub fn r3(g: &LoopedGraph, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<LoopedGraph> {
    let p = r3_check(g, u, v, w, false)?;
    Ok(r3_apply(g, p))
}

/// Inverse of [`r3`]: `u ~ v`, `u ~ w`, `v ≁ w`.
pub fn r3_inv(g: &LoopedGraph, u: &VertexId, v: &VertexId, w: &VertexId) -> Result<LoopedGraph> {
    let p = r3_check(g, u, v, w, true)?;
    Ok(r3_apply(g, p))
}

/// Either a concrete applicable move or a family of additions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveDescriptor<M> {
    Site(M),
    AdditionTemplate(MoveKind),
}

impl<M: HasKind> MoveDescriptor<M> {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveDescriptor::Site(m) => m.move_kind(),
            MoveDescriptor::AdditionTemplate(k) => *k,
        }
    }
}

impl<M: fmt::Display> fmt::Display for MoveDescriptor<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDescriptor::Site(m) => write!(f, "{m}"),
            MoveDescriptor::AdditionTemplate(k) => match k {
                MoveKind::Og1Add => f.write_str("og1 add <id> <sign>"),
                MoveKind::Og2Add => f.write_str("og2 add <id> <id> <framing> <sign> <neighbors>"),
                MoveKind::R1Add => f.write_str("r1 add <id> <looped>"),
                MoveKind::R2Add => f.write_str("r2 add <id> <id> <neighbors> <adjacent>"),
                other => write!(f, "{other}"),
            },
        }
    }
}

pub trait HasKind {
    fn move_kind(&self) -> MoveKind;
}

impl HasKind for Move {
    fn move_kind(&self) -> MoveKind {
        self.kind()
    }
}

impl HasKind for LoopedMove {
    fn move_kind(&self) -> MoveKind {
        self.kind()
    }
}

fn og2_removals(g: &LabeledGraph, check_sign: bool) -> Vec<(usize, usize)> {
    let n = g.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if og2_obstruction(g, i, j, check_sign).is_none() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Positions of a removable twin pair ignoring signs, first in row order.
pub(crate) fn sign_free_twins(g: &LabeledGraph) -> Option<(usize, usize)> {
    let n = g.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| og2_obstruction(g, i, j, false).is_none())
}

/// Every applicable removal and same-size move, followed by addition
/// templates, in a fixed order.
pub fn detect_moves(g: &LabeledGraph) -> Vec<MoveDescriptor<Move>> {
    let n = g.len();
    let id = |i: usize| g.id(i).clone();
    let mut out = Vec::new();
    for i in 0..n {
        if g.is_isolated(i) && g.framing(i) == Framing::Zero {
            out.push(MoveDescriptor::Site(Move::Og1Remove { v: id(i) }));
        }
    }
    for (i, j) in og2_removals(g, true) {
        out.push(MoveDescriptor::Site(Move::Og2Remove { a: id(i), b: id(j) }));
    }
    for (u, v, w) in og3_sites(g, false) {
        out.push(MoveDescriptor::Site(Move::Og3 {
            u: id(u),
            v: id(v),
            w: id(w),
        }));
    }
    for (u, v, w) in og3_sites(g, true) {
        out.push(MoveDescriptor::Site(Move::Og3Inv {
            u: id(u),
            v: id(v),
            w: id(w),
        }));
    }
    for (u, v) in g.edges() {
        if g.framing(u) == Framing::Zero && g.framing(v) == Framing::Zero {
            out.push(MoveDescriptor::Site(Move::Og4 { u: id(u), v: id(v) }));
        }
    }
    for v in 0..n {
        if g.framing(v) == Framing::One {
            out.push(MoveDescriptor::Site(Move::Og4p { v: id(v) }));
        }
    }
    out.push(MoveDescriptor::AdditionTemplate(MoveKind::Og1Add));
    out.push(MoveDescriptor::AdditionTemplate(MoveKind::Og2Add));
    out
}

fn og3_sites(g: &LabeledGraph, inverse: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (v, w) in g.edges() {
        for u in 0..g.len() {
            if u == v || u == w {
                continue;
            }
            let (a, b, c) = (g.id(u), g.id(v), g.id(w));
            if og3_check(g, a, b, c, inverse).is_ok() {
                out.push((u, v, w));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn detect_looped_moves(g: &LoopedGraph) -> Vec<MoveDescriptor<LoopedMove>> {
    let n = g.len();
    let id = |i: usize| g.id(i).clone();
    let mut out = Vec::new();
    for i in 0..n {
        if g.is_isolated(i) {
            out.push(MoveDescriptor::Site(LoopedMove::R1Remove { v: id(i) }));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if r2_obstruction(g, i, j).is_none() {
                out.push(MoveDescriptor::Site(LoopedMove::R2Remove { a: id(i), b: id(j) }));
            }
        }
    }
    for (u, v, w) in r3_sites(g, false) {
        out.push(MoveDescriptor::Site(LoopedMove::R3 {
            u: id(u),
            v: id(v),
            w: id(w),
        }));
    }
    for (u, v, w) in r3_sites(g, true) {
        out.push(MoveDescriptor::Site(LoopedMove::R3Inv {
            u: id(u),
            v: id(v),
            w: id(w),
        }));
    }
    out.push(MoveDescriptor::AdditionTemplate(MoveKind::R1Add));
    out.push(MoveDescriptor::AdditionTemplate(MoveKind::R2Add));
    out
}

fn r3_sites(g: &LoopedGraph, inverse: bool) -> Vec<(usize, usize, usize)> {
    let n = g.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u && g.is_looped(v)) {
            for w in (0..n).filter(|&w| w != u && !g.is_looped(w)) {
                if r3_check(g, g.id(u), g.id(v), g.id(w), inverse).is_ok() {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

/// Whether some decreasing second move applies.
pub fn has_decreasing_second_move(g: &LabeledGraph) -> bool {
    !og2_removals(g, true).is_empty()
}

pub fn has_decreasing_r2(g: &LoopedGraph) -> bool {
    let n = g.len();
    (0..n).any(|i| (i + 1..n).any(|j| r2_obstruction(g, i, j).is_none()))
}

/// Limits for [`equivalence_search`] and friends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest graph the search may visit.
    pub max_vertices: usize,
    /// Number of states expanded before giving up.
    pub max_steps: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_vertices: 12,
            max_steps: 100_000,
        }
    }
}

/// Graph kinds that carry a move system for breadth-first search.
pub trait MoveSystem: Sized + Clone + Send + Sync {
    type Move: Clone + Send + Sync;
    fn vertex_count(&self) -> usize;
    fn key(&self, limit: usize) -> Result<CanonicalForm>;
    /// Successors in deterministic order: removals, same-size moves,
    /// additions within `max_vertices`.
    fn successors(&self, max_vertices: usize) -> Vec<(Self::Move, Self)>;
}

fn neighbor_subsets<L: Clone>(g: &Graph<L>) -> impl Iterator<Item = Vec<VertexId>> + '_ {
    let n = g.len();
    (0u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| g.id(i).clone()).collect())
}

fn fresh_pair<L: Clone>(g: &Graph<L>) -> (VertexId, VertexId) {
    let a = g.fresh_id("n");
    let mut b;
    let mut k = 1;
    loop {
        b = VertexId::new(&format!("n{k}"));
        if b != a && !g.contains(&b) {
            break;
        }
        k += 1;
    }
    (a, b)
}

impl MoveSystem for LabeledGraph {
    type Move = Move;

    fn vertex_count(&self) -> usize {
        self.len()
    }

    fn key(&self, limit: usize) -> Result<CanonicalForm> {
        canonical_form_with_limit(self, limit)
    }

    fn successors(&self, max_vertices: usize) -> Vec<(Move, Self)> {
        let mut moves: Vec<Move> = detect_moves(self)
            .into_iter()
            .filter_map(|d| match d {
                MoveDescriptor::Site(m) => Some(m),
                MoveDescriptor::AdditionTemplate(_) => None,
            })
            .collect();
        if self.len() < max_vertices {
            for sign in [Sign::Plus, Sign::Minus] {
                moves.push(Move::Og1Add {
                    id: self.fresh_id("n"),
                    sign,
                });
            }
        }
        if self.len() + 2 <= max_vertices {
            let (a, b) = fresh_pair(self);
            for framing in [Framing::Zero, Framing::One] {
                for neighbors in neighbor_subsets(self) {
                    moves.push(Move::Og2Add {
                        a: a.clone(),
                        b: b.clone(),
                        framing,
                        sign: Sign::Plus,
                        neighbors,
                    });
                }
            }
        }
        moves
            .into_iter()
            .map(|m| {
                let h = m.apply(self).expect("generated moves are applicable");
                (m, h)
            })
            .collect()
    }
}

impl MoveSystem for LoopedGraph {
    type Move = LoopedMove;

    fn vertex_count(&self) -> usize {
        self.len()
    }

    fn key(&self, limit: usize) -> Result<CanonicalForm> {
        canonical_form_with_limit(self, limit)
    }

    fn successors(&self, max_vertices: usize) -> Vec<(LoopedMove, Self)> {
        let mut moves: Vec<LoopedMove> = detect_looped_moves(self)
            .into_iter()
            .filter_map(|d| match d {
                MoveDescriptor::Site(m) => Some(m),
                MoveDescriptor::AdditionTemplate(_) => None,
            })
            .collect();
        if self.len() < max_vertices {
            for looped in [false, true] {
                moves.push(LoopedMove::R1Add {
                    id: self.fresh_id("n"),
                    looped,
                });
            }
        }
        if self.len() + 2 <= max_vertices {
            let (a, b) = fresh_pair(self);
            for adjacent in [false, true] {
                for neighbors in neighbor_subsets(self) {
                    moves.push(LoopedMove::R2Add {
                        looped: a.clone(),
                        unlooped: b.clone(),
                        neighbors,
                        adjacent,
                    });
                }
            }
        }
        moves
            .into_iter()
            .map(|m| {
                let h = m.apply(self).expect("generated moves are applicable");
                (m, h)
            })
            .collect()
    }
}

/// Labeled graphs up to signs, moved by sign-free Ω_g2 and by Ω_g4, Ω_g4′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMoves(pub LabeledGraph);

impl MoveSystem for FreeMoves {
    type Move = Move;

    fn vertex_count(&self) -> usize {
        self.0.len()
    }

    fn key(&self, limit: usize) -> Result<CanonicalForm> {
        canonical_form_with_limit(&self.0.erase_signs(), limit)
    }

    fn successors(&self, max_vertices: usize) -> Vec<(Move, Self)> {
        let g = self.0.erase_signs();
        let id = |i: usize| g.id(i).clone();
        let mut out = Vec::new();
        for (i, j) in og2_removals(&g, false) {
            out.push((Move::Og2Remove { a: id(i), b: id(j) }, g.without(&[i, j])));
        }
        for (u, v) in g.edges() {
            if g.framing(u) == Framing::Zero && g.framing(v) == Framing::Zero {
                out.push((Move::Og4 { u: id(u), v: id(v) }, og4_at(&g, u, v).erase_signs()));
            }
        }
        for v in 0..g.len() {
            if g.framing(v) == Framing::One {
                out.push((Move::Og4p { v: id(v) }, og4p_at(&g, v).erase_signs()));
            }
        }
        if g.len() + 2 <= max_vertices {
            let (a, b) = fresh_pair(&g);
            for framing in [Framing::Zero, Framing::One] {
                for neighbors in neighbor_subsets(&g) {
                    let m = Move::Og2Add {
                        a: a.clone(),
                        b: b.clone(),
                        framing,
                        sign: Sign::Plus,
                        neighbors,
                    };
                    let h = m.apply(&g).expect("fresh ids").erase_signs();
                    out.push((m, h));
                }
            }
        }
        out.into_iter().map(|(m, h)| (m, FreeMoves(h))).collect()
    }
}

/// Breadth-first search from `start` for a graph isomorphic to `target`.
/// `Ok(None)` means nothing was found within the bounds, which proves
/// nothing about equivalence.
pub fn search<G: MoveSystem>(start: &G, target: &G, bounds: SearchBounds) -> Result<Option<Vec<G::Move>>> {
    let largest = start.vertex_count().max(target.vertex_count());
    if bounds.max_vertices < largest {
        return Err(Error::SizeLimit {
            what: "equivalence search vertices",
            limit: bounds.max_vertices,
            actual: largest,
        });
    }
    let goal = target.key(canon_limit(bounds)?)?;
    Ok(explore(start, bounds, |_, k| (k == &goal).then_some(()))?.map(|(_, path)| path))
}

fn canon_limit(bounds: SearchBounds) -> Result<usize> {
    if bounds.max_vertices > MAX_CANON_VERTICES {
        return Err(Error::SizeLimit {
            what: "equivalence search vertices",
            limit: MAX_CANON_VERTICES,
            actual: bounds.max_vertices,
        });
    }
    Ok(bounds.max_vertices.max(DEFAULT_CANON_LIMIT))
}

/// Visits the isomorphism classes reachable from `start` in breadth-first
/// order, at most `max_steps` expansions, stopping at the first state for
/// which `visit` returns a value. Returns that value and the moves leading
/// to the state.
pub fn explore<G: MoveSystem, T>(
    start: &G,
    bounds: SearchBounds,
    mut visit: impl FnMut(&G, &CanonicalForm) -> Option<T>,
) -> Result<Option<(T, Vec<G::Move>)>> {
    if bounds.max_vertices < start.vertex_count() {
        return Err(Error::SizeLimit {
            what: "equivalence search vertices",
            limit: bounds.max_vertices,
            actual: start.vertex_count(),
        });
    }
    let limit = canon_limit(bounds)?;
    let root = start.key(limit)?;
    if let Some(t) = visit(start, &root) {
        return Ok(Some((t, Vec::new())));
    }
    // arena of (state, parent, move)
    let mut arena: Vec<(G, usize, Option<G::Move>)> = vec![(start.clone(), usize::MAX, None)];
    let mut seen: HashSet<CanonicalForm> = HashSet::from([root]);
    let mut head = 0;
    let mut expanded = 0;
    while head < arena.len() && expanded < bounds.max_steps {
        let succ = arena[head].0.successors(bounds.max_vertices);
        expanded += 1;
        let keyed: Vec<(G::Move, G, Result<CanonicalForm>)> = succ
            .into_par_iter()
            .map(|(m, h)| {
                let k = h.key(limit);
                (m, h, k)
            })
            .collect();
        for (m, h, k) in keyed {
            let k = k?;
            if seen.contains(&k) {
                continue;
            }
            let hit = visit(&h, &k);
            seen.insert(k);
            arena.push((h, head, Some(m)));
            if let Some(t) = hit {
                return Ok(Some((t, trace(&arena, arena.len() - 1))));
            }
        }
        head += 1;
    }
    log::debug!("search gave up after {expanded} expansions, {} states", arena.len());
    Ok(None)
}

fn trace<G, M: Clone>(arena: &[(G, usize, Option<M>)], mut at: usize) -> Vec<M> {
    let mut out = Vec::new();
    while let Some(m) = &arena[at].2 {
        out.push(m.clone());
        at = arena[at].1;
    }
    out.reverse();
    out
}

/// Labeled-graph equivalence search under Ω_g1–Ω_g4′.
pub fn equivalence_search(g1: &LabeledGraph, g2: &LabeledGraph, bounds: SearchBounds) -> Result<Option<Vec<Move>>> {
    search(g1, g2, bounds)
}

/// Looped-graph equivalence search under R1–R3.
pub fn looped_equivalence_search(
    g1: &LoopedGraph,
    g2: &LoopedGraph,
    bounds: SearchBounds,
) -> Result<Option<Vec<LoopedMove>>> {
    search(g1, g2, bounds)
}

/// Free framed graphs: signs ignored, moves sign-free Ω_g2, Ω_g4, Ω_g4′.
pub fn free_equivalence_search(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    bounds: SearchBounds,
) -> Result<Option<Vec<Move>>> {
    search(&FreeMoves(g1.clone()), &FreeMoves(g2.clone()), bounds)
}

fn fmt_ids(ids: &[VertexId]) -> String {
    if ids.is_empty() {
        "-".to_string()
    } else {
        ids.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Og1Add { id, sign } => write!(f, "og1 add {id} {sign}"),
            Move::Og1Remove { v } => write!(f, "og1 remove {v}"),
            Move::Og2Add {
                a,
                b,
                framing,
                sign,
                neighbors,
            } => write!(f, "og2 add {a} {b} {framing} {sign} {}", fmt_ids(neighbors)),
            Move::Og2Remove { a, b } => write!(f, "og2 remove {a} {b}"),
            Move::Og3 { u, v, w } => write!(f, "og3 {u} {v} {w}"),
            Move::Og3Inv { u, v, w } => write!(f, "og3inv {u} {v} {w}"),
            Move::Og4 { u, v } => write!(f, "og4 {u} {v}"),
            Move::Og4p { v } => write!(f, "og4p {v}"),
        }
    }
}

impl fmt::Display for LoopedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopedMove::R1Add { id, looped } => write!(f, "r1 add {id} {}", *looped as u8),
            LoopedMove::R1Remove { v } => write!(f, "r1 remove {v}"),
            LoopedMove::R2Add {
                looped,
                unlooped,
                neighbors,
                adjacent,
            } => write!(f, "r2 add {looped} {unlooped} {} {}", fmt_ids(neighbors), *adjacent as u8),
            LoopedMove::R2Remove { a, b } => write!(f, "r2 remove {a} {b}"),
            LoopedMove::R3 { u, v, w } => write!(f, "r3 {u} {v} {w}"),
            LoopedMove::R3Inv { u, v, w } => write!(f, "r3inv {u} {v} {w}"),
        }
    }
}

/// A parsed move specification of either family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    Labeled(Move),
    Looped(LoopedMove),
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSpec::Labeled(m) => m.fmt(f),
            MoveSpec::Looped(m) => m.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum MoveParseError {
    #[error("empty move specification")]
    Empty,
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("`{mv}` expects {expected}")]
    Arity { mv: String, expected: &'static str },
    #[error("invalid {what} `{token}`")]
    Token { what: &'static str, token: String },
}

pub(crate) fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-'))
}

fn parse_id(s: &str) -> std::result::Result<VertexId, MoveParseError> {
    if is_valid_id(s) && s != "-" {
        Ok(VertexId::new(s))
    } else {
        Err(MoveParseError::Token {
            what: "vertex id",
            token: s.to_string(),
        })
    }
}

fn parse_ids(s: &str) -> std::result::Result<Vec<VertexId>, MoveParseError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_id).collect()
}

pub(crate) fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

pub(crate) fn parse_bit(s: &str) -> Option<bool> {
    match s {
        "0" => Some(false),
        "1" => Some(true),
        _ => None,
    }
}

impl FromStr for MoveSpec {
    type Err = MoveParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let Some(&head) = toks.first() else {
            return Err(MoveParseError::Empty);
        };
        let (name, args): (String, &[&str]) = match (head, toks.get(1)) {
            ("og1" | "og2" | "r1" | "r2", Some(&dir @ ("add" | "remove"))) => (format!("{head} {dir}"), &toks[2..]),
            _ => (head.to_string(), &toks[1..]),
        };
        let arity = |expected: &'static str| MoveParseError::Arity {
            mv: name.clone(),
            expected,
        };
        let sign = |t: &str| {
            parse_sign(t).ok_or(MoveParseError::Token {
                what: "sign",
                token: t.to_string(),
            })
        };
        let bit = |t: &str| {
            parse_bit(t).ok_or(MoveParseError::Token {
                what: "bit",
                token: t.to_string(),
            })
        };
        use LoopedMove as L;
        use Move as M;
        let spec = match (name.as_str(), args) {
            ("og1 add", [id, s]) => MoveSpec::Labeled(M::Og1Add {
                id: parse_id(id)?,
                sign: sign(s)?,
            }),
            ("og1 add", _) => return Err(arity("<id> <sign>")),
            ("og1 remove", [v]) => MoveSpec::Labeled(M::Og1Remove { v: parse_id(v)? }),
            ("og1 remove", _) => return Err(arity("<id>")),
            ("og2 add", [a, b, f, s, n]) => MoveSpec::Labeled(M::Og2Add {
                a: parse_id(a)?,
                b: parse_id(b)?,
                framing: Framing::from_bit(bit(f)?),
                sign: sign(s)?,
                neighbors: parse_ids(n)?,
            }),
            ("og2 add", _) => return Err(arity("<id> <id> <framing> <sign> <n1,n2,...|->")),
            ("og2 remove", [a, b]) => MoveSpec::Labeled(M::Og2Remove {
                a: parse_id(a)?,
                b: parse_id(b)?,
            }),
            ("og2 remove", _) => return Err(arity("<id> <id>")),
            ("og3" | "og3inv" | "r3" | "r3inv", [u, v, w]) => {
                let (u, v, w) = (parse_id(u)?, parse_id(v)?, parse_id(w)?);
                match name.as_str() {
                    "og3" => MoveSpec::Labeled(M::Og3 { u, v, w }),
                    "og3inv" => MoveSpec::Labeled(M::Og3Inv { u, v, w }),
                    "r3" => MoveSpec::Looped(L::R3 { u, v, w }),
                    _ => MoveSpec::Looped(L::R3Inv { u, v, w }),
                }
            }
            ("og3" | "og3inv" | "r3" | "r3inv", _) => return Err(arity("<u> <v> <w>")),
            ("og4", [u, v]) => MoveSpec::Labeled(M::Og4 {
                u: parse_id(u)?,
                v: parse_id(v)?,
            }),
            ("og4", _) => return Err(arity("<u> <v>")),
            ("og4p", [v]) => MoveSpec::Labeled(M::Og4p { v: parse_id(v)? }),
            ("og4p", _) => return Err(arity("<v>")),
            ("r1 add", [id, l]) => MoveSpec::Looped(L::R1Add {
                id: parse_id(id)?,
                looped: bit(l)?,
            }),
            ("r1 add", _) => return Err(arity("<id> <looped>")),
            ("r1 remove", [v]) => MoveSpec::Looped(L::R1Remove { v: parse_id(v)? }),
            ("r1 remove", _) => return Err(arity("<id>")),
            ("r2 add", [a, b, n, adj]) => MoveSpec::Looped(L::R2Add {
                looped: parse_id(a)?,
                unlooped: parse_id(b)?,
                neighbors: parse_ids(n)?,
                adjacent: bit(adj)?,
            }),
            ("r2 add", _) => return Err(arity("<looped-id> <unlooped-id> <n1,n2,...|-> <adjacent>")),
            ("r2 remove", [a, b]) => MoveSpec::Looped(L::R2Remove {
                a: parse_id(a)?,
                b: parse_id(b)?,
            }),
            ("r2 remove", _) => return Err(arity("<id> <id>")),
            _ => return Err(MoveParseError::UnknownMove(name)),
        };
        Ok(spec)
    }
}

/// Labels available to random test generators and the CLI.
pub const ALL_LABELS: [Label; 4] = [
    Label::zero(Sign::Plus),
    Label::zero(Sign::Minus),
    Label::one(Sign::Plus),
    Label::one(Sign::Minus),
];
