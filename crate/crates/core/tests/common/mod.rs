#![allow(dead_code)]

use std::path::PathBuf;

use graphlink::chord::ChordDiagram;
use graphlink::format::parse_graph_file;
use graphlink::moves::{detect_moves, MoveDescriptor};
use graphlink::{Framing, Label, LabeledGraph, LaurentPoly, LoopedGraph, Move, Sign, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

pub const LABELS: [Label; 4] = [
    Label::zero(Sign::Plus),
    Label::zero(Sign::Minus),
    Label::one(Sign::Plus),
    Label::one(Sign::Minus),
];

pub fn fixture(name: &str) -> graphlink::format::GraphFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_graph_file(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn labeled_fixture(name: &str) -> LabeledGraph {
    fixture(name).into_labeled().unwrap()
}

pub fn graph(labels: &[Label], edges: &[(usize, usize)]) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for (i, l) in labels.iter().enumerate() {
        g.add_vertex(VertexId::new(&format!("v{i}")), *l).unwrap();
    }
    for &(a, b) in edges {
        g.add_edge(a, b).unwrap();
    }
    g
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> LabeledGraph {
    let labels: Vec<Label> = (0..n).map(|_| LABELS[rng.gen_range(0..4)]).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    graph(&labels, &edges)
}

pub fn random_looped(rng: &mut impl Rng, n: usize, p: f64) -> LoopedGraph {
    let mut l = LoopedGraph::new();
    for i in 0..n {
        l.add_vertex(VertexId::new(&format!("v{i}")), rng.gen_bool(0.5)).unwrap();
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                l.add_edge(i, j).unwrap();
            }
        }
    }
    l
}

/// Random graph with exactly one component.
pub fn random_knot(rng: &mut impl Rng, max_n: usize) -> LabeledGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(rng, n, 0.5);
        if graphlink::invariants::component_count(&g) == 1 {
            return g;
        }
    }
}

/// Every move site on `g` plus a sample of additions: both first-move
/// additions and, for each framing and sign, two random neighbour sets.
pub fn sampled_moves(g: &LabeledGraph, rng: &mut impl Rng) -> Vec<Move> {
    let mut out: Vec<Move> = detect_moves(g)
        .into_iter()
        .filter_map(|d| match d {
            MoveDescriptor::Site(m) => Some(m),
            MoveDescriptor::AdditionTemplate(_) => None,
        })
        .collect();
    for sign in [Sign::Plus, Sign::Minus] {
        out.push(Move::Og1Add {
            id: "new".into(),
            sign,
        });
    }
    for framing in [Framing::Zero, Framing::One] {
        for sign in [Sign::Plus, Sign::Minus] {
            for _ in 0..2 {
                let neighbors = g.ids().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                out.push(Move::Og2Add {
                    a: "new_a".into(),
                    b: "new_b".into(),
                    framing,
                    sign,
                    neighbors,
                });
            }
        }
    }
    out
}

/// Random perfect matching on `2n` points as a diagram word.
pub fn random_diagram(rng: &mut impl Rng, n: usize) -> ChordDiagram {
    let mut word: Vec<VertexId> = (0..n).flat_map(|k| [chord_name(k), chord_name(k)]).collect();
    word.shuffle(rng);
    let chords = (0..n).map(|k| (chord_name(k), LABELS[rng.gen_range(0..4)])).collect();
    ChordDiagram::new(word, chords).unwrap()
}

pub fn chord_name(k: usize) -> VertexId {
    VertexId::new(&format!("c{k}"))
}

/// All perfect matchings of `0..2n` as partner arrays.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for second in first + 1..partner.len() {
            if partner[second] == usize::MAX {
                partner[first] = second;
                partner[second] = first;
                go(partner, out);
                partner[first] = usize::MAX;
                partner[second] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], &mut out);
    out
}

/// Diagram for a partner array, chords named in order of first endpoint.
pub fn diagram_of_matching(partner: &[usize], labels: &[Label]) -> ChordDiagram {
    let mut name = vec![usize::MAX; partner.len()];
    let mut k = 0;
    for p in 0..partner.len() {
        if partner[p] > p {
            name[p] = k;
            name[partner[p]] = k;
            k += 1;
        }
    }
    let word = name.iter().map(|&k| chord_name(k)).collect();
    let chords = (0..k).map(|c| (chord_name(c), labels[c])).collect();
    ChordDiagram::new(word, chords).unwrap()
}

/// Corank over GF(2) by plain elimination on boolean rows.
pub fn naive_corank(m: &[Vec<bool>]) -> usize {
    let mut rows: Vec<Vec<bool>> = m.to_vec();
    let n = rows.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        for r in 0..n {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    n - rank
}

/// The bracket as a literal sum over subsets, with `d^k` expanded by
/// repeated multiplication.
pub fn naive_bracket(g: &LabeledGraph) -> LaurentPoly {
    let n = g.len();
    let d = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
    let mut total = LaurentPoly::zero();
    for s in 0u32..(1 << n) {
        let inside: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        let alpha = (0..n)
            .filter(|&i| (s >> i & 1 == 1) == (g.sign(i) == Sign::Minus))
            .count() as i32;
        let beta = n as i32 - alpha;
        let m: Vec<Vec<bool>> = inside
            .iter()
            .map(|&i| {
                inside
                    .iter()
                    .map(|&j| if i == j { g.framing(i) == Framing::One } else { g.has_edge(i, j) })
                    .collect()
            })
            .collect();
        let mut term = LaurentPoly::monomial(1, alpha - beta);
        for _ in 0..naive_corank(&m) {
            term = &term * &d;
        }
        total = &total + &term;
    }
    total
}
