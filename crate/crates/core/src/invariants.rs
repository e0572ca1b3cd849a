//! Component count, writhe, Kauffman bracket, span and atom genus.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::rank_of_words;
use crate::chi::chi_inverse;
use crate::graph::{LabeledGraph, LoopedGraph, Sign};
use crate::moves::sign_free_twins;
use crate::parity::{parity_knot, parity_knot_labeled, parity_link2, ParityTable};
use crate::poly::LaurentPoly;

/// Default vertex bound for the bracket state sum.
pub const DEFAULT_BRACKET_LIMIT: usize = 24;

/// `corank(A(G) + E) + 1`.
pub fn component_count(g: &LabeledGraph) -> usize {
    g.adjacency_matrix().plus_identity().corank() + 1
}

/// Per-vertex writhe numbers and their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Writhe {
    pub per_vertex: Vec<i32>,
    pub total: i32,
}

/// `w_i = (-1)^corank(B_i) · sign_i` with `B_i = A + E + E_ii`; graph-knots
/// only.
pub fn writhe(g: &LabeledGraph) -> Result<Writhe> {
    let ae = g.adjacency_matrix().plus_identity();
    let corank = ae.corank();
    if corank != 0 {
        return Err(Error::NotAKnot { corank });
    }
    let per_vertex: Vec<i32> = (0..g.len())
        .map(|i| {
            let parity = if ae.with_diagonal_toggled(i).corank().is_multiple_of(2) { 1 } else { -1 };
            parity * g.sign(i).value()
        })
        .collect();
    let total = per_vertex.iter().sum();
    Ok(Writhe { per_vertex, total })
}

pub fn kauffman_bracket(g: &LabeledGraph) -> Result<LaurentPoly> {
    kauffman_bracket_with_limit(g, DEFAULT_BRACKET_LIMIT)
}

/// `Σ_s a^{α(s)-β(s)} d^{corank A(G(s))}` over all vertex subsets `s`,
/// where `α(s)` counts `-` vertices in `s` and `+` vertices outside it.
pub fn kauffman_bracket_with_limit(g: &LabeledGraph, limit: usize) -> Result<LaurentPoly> {
    let n = g.len();
    let limit = limit.min(63);
    if n > limit {
        return Err(Error::SizeLimit {
            what: "kauffman bracket",
            limit,
            actual: n,
        });
    }
    let rows: Vec<u64> = g
        .adjacency_matrix()
        .word_rows()
        .expect("at most 63 vertices");
    let minus: u64 = (0..n).filter(|&i| g.sign(i) == Sign::Minus).fold(0, |m, i| m | 1 << i);
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let plus = full & !minus;

    // hist[(α-β+n)/2 ... ] indexed by α in 0..=n, then corank in 0..=n
    let width = n + 1;
    let states: u64 = 1 << n;
    let chunk: u64 = 1 << 12;
    let blocks = states.div_ceil(chunk);
    let hist = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut h = vec![0i64; width * width];
            let mut buf = [0u64; 64];
            let lo = b * chunk;
            let hi = (lo + chunk).min(states);
            for s in lo..hi {
                let alpha = (s & minus).count_ones() + (!s & plus).count_ones();
                let mut m = 0;
                let mut rest = s;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    buf[m] = rows[i] & s;
                    m += 1;
                }
                let corank = m - rank_of_words(&mut buf[..m]);
                h[alpha as usize * width + corank] += 1;
            }
            h
        })
        .reduce(
            || vec![0i64; width * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let d = LaurentPoly::loop_value();
    let dpow: Vec<LaurentPoly> = (0..width as u32).map(|k| d.pow(k)).collect();
    let mut out = LaurentPoly::zero();
    for alpha in 0..width {
        let exp = 2 * alpha as i32 - n as i32;
        for (k, dk) in dpow.iter().enumerate() {
            let c = hist[alpha * width + k];
            if c != 0 {
                out = &out + &(&LaurentPoly::monomial(c, exp) * dk);
            }
        }
    }
    Ok(out)
}

/// `max degree - min degree` of the bracket.
pub fn span(p: &LaurentPoly) -> Result<u32> {
    p.span()
}

/// Circle counts of the all-A and all-B states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtomGenus {
    /// `corank A(G(s₁)) + 1` with `s₁` the `-` vertices.
    pub k: usize,
    /// `corank A(G(s₂)) + 1` with `s₂` the `+` vertices.
    pub l: usize,
    pub n: usize,
}

impl AtomGenus {
    /// `1 - (k + l - n) / 2`.
    pub fn genus(&self) -> Rational64 {
        Rational64::from_integer(1) - Rational64::new(self.k as i64 + self.l as i64 - self.n as i64, 2)
    }
}

pub fn atom_genus_data(g: &LabeledGraph) -> AtomGenus {
    let a = g.adjacency_matrix();
    let state = |sign: Sign| -> usize {
        let s: Vec<usize> = (0..g.len()).filter(|&i| g.sign(i) == sign).collect();
        a.principal_submatrix(&s).corank() + 1
    };
    AtomGenus {
        k: state(Sign::Minus),
        l: state(Sign::Plus),
        n: g.len(),
    }
}

pub fn atom_genus(g: &LabeledGraph) -> Rational64 {
    atom_genus_data(g).genus()
}

/// Atom genus exactly zero.
pub fn is_alternating(g: &LabeledGraph) -> bool {
    atom_genus(g) == Rational64::from_integer(0)
}

/// No isolated vertices.
pub fn is_nonsplit(g: &LabeledGraph) -> bool {
    (0..g.len()).all(|i| !g.is_isolated(i))
}

/// `corank(A + E) <= corank(B_i)`.
pub fn is_oriented_vertex(g: &LabeledGraph, i: usize) -> bool {
    let ae = g.adjacency_matrix().plus_identity();
    ae.corank() <= ae.with_diagonal_toggled(i).corank()
}

pub fn is_oriented(g: &LabeledGraph, v: &crate::graph::VertexId) -> Result<bool> {
    Ok(is_oriented_vertex(g, g.index(v)?))
}

/// Orientation flags for every vertex, sharing one corank computation.
pub fn oriented_vertices(g: &LabeledGraph) -> Vec<bool> {
    let ae = g.adjacency_matrix().plus_identity();
    let c = ae.corank();
    (0..g.len()).map(|i| c <= ae.with_diagonal_toggled(i).corank()).collect()
}

/// Which minimality theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    MinimalByAlternating,
    MinimalByOddParity,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MinimalByAlternating => "by-alternating",
            Verdict::MinimalByOddParity => "by-odd-parity",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// A minimality verdict with the data it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub verdict: Verdict,
    pub genus: Rational64,
    pub nonsplit: bool,
    /// Knot parity for one component, oriented-vertex parity for two.
    pub parity: Option<ParityTable>,
    pub decreasing_second_move: bool,
}

/// Parity table for graph-knots and two-component graph-links.
pub fn parity_for(g: &LabeledGraph) -> Option<ParityTable> {
    match component_count(g) {
        1 => parity_knot_labeled(g).ok(),
        2 => parity_link2(g).ok(),
        _ => None,
    }
}

fn certify(genus: Rational64, nonsplit: bool, parity: Option<ParityTable>, decreasing: bool) -> MinimalityCertificate {
    let verdict = if genus == Rational64::from_integer(0) && nonsplit {
        Verdict::MinimalByAlternating
    } else if parity.as_ref().is_some_and(|p| p.all_odd()) && !decreasing {
        Verdict::MinimalByOddParity
    } else {
        Verdict::Inconclusive
    };
    MinimalityCertificate {
        verdict,
        genus,
        nonsplit,
        parity,
        decreasing_second_move: decreasing,
    }
}

/// Alternating and non-split, or every vertex odd with no twin pair.
/// Twins are looked for with signs ignored, which is the stronger check.
pub fn minimality_certificate(g: &LabeledGraph) -> MinimalityCertificate {
    certify(atom_genus(g), is_nonsplit(g), parity_for(g), sign_free_twins(g).is_some())
}

/// Looped graphs: the alternating route goes through the labeled graph
/// `χ⁻¹(L)`, the parity route uses vertex degrees and looks for twin
/// pairs with loops ignored.
pub fn looped_minimality_certificate(l: &LoopedGraph) -> MinimalityCertificate {
    let g = chi_inverse(l);
    certify(atom_genus(&g), is_nonsplit(&g), Some(parity_knot(l)), has_twins(l))
}

/// Two distinct vertices with equal neighbourhoods outside the pair.
pub fn has_twins<L: Clone>(g: &crate::graph::Graph<L>) -> bool {
    let n = g.len();
    (0..n).any(|i| (i + 1..n).any(|j| g.same_outside_neighborhood(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Label;

    fn lg(labels: &[Label], edges: &[(usize, usize)]) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for (i, l) in labels.iter().enumerate() {
            g.add_vertex(format!("v{}", i + 1).as_str().into(), *l).unwrap();
        }
        for &(a, b) in edges {
            g.add_edge(a, b).unwrap();
        }
        g
    }

    const ZP: Label = Label::zero(Sign::Plus);
    const ZM: Label = Label::zero(Sign::Minus);
    const OP: Label = Label::one(Sign::Plus);

    #[test]
    fn component_examples() {
        assert_eq!(component_count(&LabeledGraph::new()), 1);
        assert_eq!(component_count(&lg(&[ZP], &[])), 1);
        assert_eq!(component_count(&lg(&[OP], &[])), 2);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&lg(&[ZP], &[])).unwrap().total, -1);
        assert_eq!(writhe(&lg(&[ZM], &[])).unwrap().per_vertex, vec![1]);
        assert_eq!(writhe(&lg(&[OP], &[])), Err(Error::NotAKnot { corank: 1 }));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(kauffman_bracket(&LabeledGraph::new()).unwrap(), LaurentPoly::one());
        assert_eq!(kauffman_bracket(&lg(&[ZP], &[])).unwrap(), LaurentPoly::monomial(-1, -3));
        assert_eq!(kauffman_bracket(&lg(&[ZM], &[])).unwrap(), LaurentPoly::monomial(-1, 3));
        assert_eq!(
            kauffman_bracket(&lg(&[ZP, ZP], &[(0, 1)])).unwrap(),
            LaurentPoly::loop_value()
        );
        let big = lg(&[ZP; 25], &[]);
        assert!(matches!(kauffman_bracket(&big), Err(Error::SizeLimit { limit: 24, .. })));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(atom_genus(&LabeledGraph::new()), Rational64::from_integer(0));
        assert_eq!(atom_genus(&lg(&[ZP], &[])), Rational64::from_integer(0));
        assert_eq!(atom_genus(&lg(&[ZP, ZP], &[(0, 1)])), Rational64::from_integer(1));
        assert!(!is_alternating(&lg(&[ZP, ZP], &[(0, 1)])));
        assert!(!is_nonsplit(&lg(&[ZP, ZP], &[])));
    }

    #[test]
    fn oriented_examples() {
        assert!(is_oriented_vertex(&lg(&[ZP], &[]), 0));
        assert!(!is_oriented_vertex(&lg(&[OP], &[]), 0));
        // adjacent framing-1 pair: A+E = [[0,1],[1,0]] is nonsingular
        let pair = lg(&[OP, OP], &[(0, 1)]);
        assert_eq!(component_count(&pair), 1);
        assert!(is_oriented_vertex(&pair, 0));
    }
}
