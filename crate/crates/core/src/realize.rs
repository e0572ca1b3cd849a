//! Chord-diagram realization of graphs and graph-links.

use crate::chord::{intersection_graph, ChordDiagram};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexId};
use crate::invariants::{looped_minimality_certificate, minimality_certificate, Verdict};
use crate::moves::{explore, LoopedMove, Move, SearchBounds};

/// Default bound on the number of chords `realize` will search for.
pub const DEFAULT_MAX_CHORDS: usize = 8;

/// Backtracking over double-occurrence words of one connected component.
/// `nbr[x]` is the neighbourhood bitmask of local vertex `x`.
struct WordSearch<'a> {
    nbr: &'a [u64],
    word: Vec<usize>,
    open_at: Vec<usize>,
    close_at: Vec<usize>,
    open: u64,
    opened: u64,
}

const UNSET: usize = usize::MAX;

impl WordSearch<'_> {
    fn run(nbr: &[u64]) -> Option<Vec<usize>> {
        let m = nbr.len();
        let mut s = WordSearch {
            nbr,
            word: Vec::with_capacity(2 * m),
            open_at: vec![UNSET; m],
            close_at: vec![UNSET; m],
            open: 0,
            opened: 0,
        };
        s.dfs().then_some(s.word)
    }

    fn dfs(&mut self) -> bool {
        let m = self.nbr.len();
        let pos = self.word.len();
        if pos == 2 * m {
            return true;
        }
        let mut rest = self.open;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.can_close(x) {
                self.close_at[x] = pos;
                self.open &= !(1 << x);
                self.word.push(x);
                if self.dfs() {
                    return true;
                }
                self.word.pop();
                self.open |= 1 << x;
                self.close_at[x] = UNSET;
            }
        }
        let candidates: Vec<usize> = if pos == 0 {
            vec![0]
        } else {
            (0..m).filter(|&y| self.opened & (1 << y) == 0).collect()
        };
        for y in candidates {
            self.open_at[y] = pos;
            self.open |= 1 << y;
            self.opened |= 1 << y;
            self.word.push(y);
            if self.dfs() {
                return true;
            }
            self.word.pop();
            self.opened &= !(1 << y);
            self.open &= !(1 << y);
            self.open_at[y] = UNSET;
        }
        false
    }

    /// Closing `x` now must link it with exactly `N(x)`. Chords still open
    /// are already decided: linked iff opened after `x`.
    fn can_close(&self, x: usize) -> bool {
        let p = self.open_at[x];
        let mut linked = 0u64;
        let mut rest = self.opened & !(1 << x);
        while rest != 0 {
            let y = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let inside_open = self.open_at[y] > p;
            let crosses = if self.open & (1 << y) != 0 {
                inside_open
            } else {
                !inside_open && self.close_at[y] > p
            };
            if crosses {
                linked |= 1 << y;
            }
        }
        linked == self.nbr[x]
    }
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit || n > 63 {
        return Err(Error::SizeLimit {
            what: "realize",
            limit: limit.min(63),
            actual: n,
        });
    }
    Ok(())
}

fn component_word<L: Clone>(g: &Graph<L>, comp: &[usize]) -> Option<Vec<VertexId>> {
    let local: Vec<u64> = comp
        .iter()
        .map(|&i| {
            comp.iter()
                .enumerate()
                .filter(|&(_, &j)| g.has_edge(i, j))
                .fold(0u64, |m, (k, _)| m | 1 << k)
        })
        .collect();
    let word = WordSearch::run(&local)?;
    Some(word.into_iter().map(|k| g.id(comp[k]).clone()).collect())
}

fn diagram_from(words: Vec<Vec<VertexId>>, g: &LabeledGraph) -> ChordDiagram {
    let word = words.concat();
    let chords = (0..g.len()).map(|i| (g.id(i).clone(), *g.label(i))).collect();
    let d = ChordDiagram::new(word, chords).expect("every vertex occurs twice");
    debug_assert!(intersection_graph(&d) == *g);
    d
}

pub fn realize(g: &LabeledGraph) -> Result<Option<ChordDiagram>> {
    realize_with_limit(g, DEFAULT_MAX_CHORDS)
}

/// A chord diagram whose intersection graph is `g`, labels included, or
/// `None` if the underlying graph is not a circle graph. Components are
/// realized separately and their words concatenated.
pub fn realize_with_limit(g: &LabeledGraph, limit: usize) -> Result<Option<ChordDiagram>> {
    check_size(g.len(), limit)?;
    let mut words = Vec::new();
    for comp in g.components() {
        match component_word(g, &comp) {
            Some(w) => words.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(diagram_from(words, g)))
}

/// One diagram per connected component, in component order.
pub fn realize_connected_components(g: &LabeledGraph, limit: usize) -> Result<Option<Vec<ChordDiagram>>> {
    check_size(g.len(), limit)?;
    let mut out = Vec::new();
    for comp in g.components() {
        let Some(w) = component_word(g, &comp) else {
            return Ok(None);
        };
        let sub = g.select(&comp);
        out.push(diagram_from(vec![w], &sub));
    }
    Ok(Some(out))
}

/// Realizes a looped graph's underlying simple graph; every chord gets
/// the label `(0,+)`.
pub fn realize_looped(l: &LoopedGraph, limit: usize) -> Result<Option<ChordDiagram>> {
    realize_with_limit(&l.map_labels(|_| Label::zero(Sign::Plus)), limit)
}

/// Outcome of the realizability search for a whole equivalence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realizability<M> {
    /// A representative reached by `path` has the diagram as a realization.
    RealizableWitness { diagram: ChordDiagram, path: Vec<M> },
    /// The input is minimal with all vertices odd and no decreasing second
    /// move, and is not itself realizable.
    CertifiedNonRealizable,
    /// The search ran out of budget.
    Unknown,
}

impl<M> Realizability<M> {
    pub fn name(&self) -> &'static str {
        match self {
            Realizability::RealizableWitness { .. } => "realizable",
            Realizability::CertifiedNonRealizable => "certified-non-realizable",
            Realizability::Unknown => "unknown",
        }
    }
}

/// Searches the graph-link of `g` for a realizable representative with at
/// most `max_chords` vertices.
pub fn graphlink_realizability(
    g: &LabeledGraph,
    max_chords: usize,
    bounds: SearchBounds,
) -> Result<Realizability<Move>> {
    if let Some(diagram) = realize_with_limit(g, max_chords)? {
        return Ok(Realizability::RealizableWitness { diagram, path: Vec::new() });
    }
    if minimality_certificate(g).verdict == Verdict::MinimalByOddParity {
        return Ok(Realizability::CertifiedNonRealizable);
    }
    let hit = explore(g, bounds, |h, _| {
        if h.len() > max_chords {
            return None;
        }
        realize_with_limit(h, max_chords).ok().flatten()
    })?;
    Ok(match hit {
        Some((diagram, path)) => Realizability::RealizableWitness { diagram, path },
        None => Realizability::Unknown,
    })
}

/// Looped-graph analogue under R1–R3.
pub fn looped_realizability(
    l: &LoopedGraph,
    max_chords: usize,
    bounds: SearchBounds,
) -> Result<Realizability<LoopedMove>> {
    if let Some(diagram) = realize_looped(l, max_chords)? {
        return Ok(Realizability::RealizableWitness { diagram, path: Vec::new() });
    }
    if looped_minimality_certificate(l).verdict == Verdict::MinimalByOddParity {
        return Ok(Realizability::CertifiedNonRealizable);
    }
    let hit = explore(l, bounds, |h, _| {
        if h.len() > max_chords {
            return None;
        }
        realize_looped(h, max_chords).ok().flatten()
    })?;
    Ok(match hit {
        Some((diagram, path)) => Realizability::RealizableWitness { diagram, path },
        None => Realizability::Unknown,
    })
}
