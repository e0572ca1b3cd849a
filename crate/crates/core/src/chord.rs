//! Labeled chord diagrams, intersection graphs and surgery tracing.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Framing, Label, LabeledGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("chord `{token}` occurs {count} times in the word, expected 2")]
    Occurrences { token: VertexId, count: usize },
    #[error("chord `{0}` has no label")]
    MissingLabel(VertexId),
    #[error("label given for `{0}`, which is not in the word")]
    UnknownChord(VertexId),
    #[error("chord `{0}` is labeled twice")]
    DuplicateLabel(VertexId),
}

/// A circle with `2n` endpoints read as a cyclic word in which every chord
/// token occurs exactly twice, plus a label per chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    word: Vec<VertexId>,
    /// Chords in declared order with their labels.
    chords: Vec<(VertexId, Label)>,
    /// Endpoint positions `(first, second)` per chord, declared order.
    ends: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn new(word: Vec<VertexId>, chords: Vec<(VertexId, Label)>) -> Result<Self, ChordError> {
        let mut index: HashMap<&VertexId, usize> = HashMap::new();
        for (k, (t, _)) in chords.iter().enumerate() {
            if index.insert(t, k).is_some() {
                return Err(ChordError::DuplicateLabel(t.clone()));
            }
        }
        let mut pos: Vec<Vec<usize>> = vec![Vec::new(); chords.len()];
        for (p, t) in word.iter().enumerate() {
            match index.get(t) {
                Some(&k) => pos[k].push(p),
                None => {
                    let count = word.iter().filter(|x| *x == t).count();
                    if count != 2 {
                        return Err(ChordError::Occurrences {
                            token: t.clone(),
                            count,
                        });
                    }
                    return Err(ChordError::MissingLabel(t.clone()));
                }
            }
        }
        let mut ends = Vec::with_capacity(chords.len());
        for (k, p) in pos.iter().enumerate() {
            match p.as_slice() {
                [a, b] => ends.push((*a, *b)),
                [] => return Err(ChordError::UnknownChord(chords[k].0.clone())),
                _ => {
                    return Err(ChordError::Occurrences {
                        token: chords[k].0.clone(),
                        count: p.len(),
                    })
                }
            }
        }
        Ok(ChordDiagram { word, chords, ends })
    }

    pub fn empty() -> Self {
        ChordDiagram {
            word: Vec::new(),
            chords: Vec::new(),
            ends: Vec::new(),
        }
    }

    /// Number of chords.
    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn word(&self) -> &[VertexId] {
        &self.word
    }

    pub fn chords(&self) -> &[(VertexId, Label)] {
        &self.chords
    }

    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn linked(&self, a: usize, b: usize) -> bool {
        let (a1, a2) = self.ends[a];
        let (b1, b2) = self.ends[b];
        (a1 < b1 && b1 < a2) != (a1 < b2 && b2 < a2)
    }

    /// The diagram keeping only the chords at the given declared positions.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let chords: Vec<(VertexId, Label)> = keep.iter().map(|&k| self.chords[k].clone()).collect();
        let word = self
            .word
            .iter()
            .filter(|t| chords.iter().any(|(c, _)| c == *t))
            .cloned()
            .collect();
        ChordDiagram::new(word, chords).expect("restriction of a valid diagram")
    }

    pub fn with_labels(&self, f: impl Fn(&VertexId) -> Label) -> Self {
        let mut d = self.clone();
        for (t, l) in &mut d.chords {
            *l = f(t);
        }
        d
    }
}

/// One vertex per chord with its label, in declared order; edges join
/// linked chords.
pub fn intersection_graph(d: &ChordDiagram) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for (t, l) in d.chords() {
        g.add_vertex(t.clone(), *l).expect("chord tokens are distinct");
    }
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            if d.linked(a, b) {
                g.toggle_edge(a, b);
            }
        }
    }
    g
}

/// Circles of the 1-manifold obtained by surgery along every chord.
///
/// Endpoint `p` splits into half-points `p⁻, p⁺`; circle arcs join `p⁺` to
/// `(p+1)⁻`. A framing-0 chord `pq` joins `p⁺q⁻` and `p⁻q⁺`, a framing-1
/// chord joins `p⁺q⁺` and `p⁻q⁻`.
pub fn surgery_components(d: &ChordDiagram) -> usize {
    let m = d.word.len();
    if m == 0 {
        return 1;
    }
    let minus = |p: usize| 2 * p;
    let plus = |p: usize| 2 * p + 1;
    let mut uf: Vec<usize> = (0..2 * m).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut join = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        uf[ra] = rb;
    };
    for p in 0..m {
        join(plus(p), minus((p + 1) % m));
    }
    for (k, &(p, q)) in d.ends.iter().enumerate() {
        match d.chords[k].1.framing {
            Framing::Zero => {
                join(plus(p), minus(q));
                join(minus(p), plus(q));
            }
            Framing::One => {
                join(plus(p), plus(q));
                join(minus(p), minus(q));
            }
        }
    }
    (0..2 * m).filter(|&x| find(&mut uf, x) == x).count()
}

/// Whether the surgery circle count equals `corank A(G(D)) + 1`.
pub fn verify_soboleva(d: &ChordDiagram) -> bool {
    surgery_components(d) == intersection_graph(d).adjacency_matrix().corank() + 1
}
