//! Smoothings of free framed graphs, the Δ maps, GF(2) graph sums and the
//! parity brackets.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::canon::{canonical_form_with_limit, CanonicalForm, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{Framing, Label, LabeledGraph, VertexId};
use crate::invariants::{component_count, oriented_vertices};
use crate::moves::{free_equivalence_search, og4_at, og4p_at, sign_free_twins, SearchBounds};
use crate::parity::{parity_knot_labeled, parity_link2, relative_parity, Parity, ParityReading};

/// Default bound on the number of classes visited by an orbit search.
pub const DEFAULT_ORBIT_CAP: usize = 100_000;

fn key_of(g: &LabeledGraph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, MAX_CANON_VERTICES)
}

/// A labeled graph up to signs and up to Ω_g4, Ω_g4′, stored as one
/// concrete sign-erased representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFramedGraph {
    rep: LabeledGraph,
}

impl FreeFramedGraph {
    pub fn new(g: &LabeledGraph) -> Self {
        FreeFramedGraph { rep: g.erase_signs() }
    }

    pub fn representative(&self) -> &LabeledGraph {
        &self.rep
    }

    /// Representatives reachable by Ω_g4 and Ω_g4′, one per isomorphism
    /// class, in breadth-first order starting with the stored one.
    pub fn orbit(&self, cap: usize) -> Result<Vec<LabeledGraph>> {
        let mut seen: HashSet<CanonicalForm> = HashSet::from([key_of(&self.rep)?]);
        let mut out = vec![self.rep.clone()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let h = out[k].clone();
            let mut next = Vec::new();
            for u in 0..h.len() {
                if h.framing(u) == Framing::One {
                    next.push(og4p_at(&h, u));
                }
            }
            for (u, v) in h.edges() {
                if h.framing(u) == Framing::Zero && h.framing(v) == Framing::Zero {
                    next.push(og4_at(&h, u, v));
                }
            }
            for m in next {
                let m = m.erase_signs();
                if seen.insert(key_of(&m)?) {
                    if seen.len() > cap {
                        return Err(Error::OrbitLimit { cap });
                    }
                    queue.push_back(out.len());
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    /// Least canonical form over the orbit; equal for two graphs iff they
    /// are related by Ω_g4, Ω_g4′ and relabeling, signs ignored.
    pub fn key(&self) -> Result<CanonicalForm> {
        self.key_with_cap(DEFAULT_ORBIT_CAP)
    }

    pub fn key_with_cap(&self, cap: usize) -> Result<CanonicalForm> {
        let orbit = self.orbit(cap)?;
        let mut best = None;
        for g in &orbit {
            let k = key_of(g)?;
            if best.as_ref().is_none_or(|b| &k < b) {
                best = Some(k);
            }
        }
        Ok(best.expect("orbit contains the representative"))
    }
}

pub fn free_key(g: &LabeledGraph) -> Result<CanonicalForm> {
    FreeFramedGraph::new(g).key()
}

/// The two smoothings of a free framed graph at one vertex, sign-erased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothings {
    pub first: LabeledGraph,
    pub second: LabeledGraph,
}

impl Smoothings {
    /// The smoothing with more components, when the counts differ.
    pub fn splitting(self) -> Option<LabeledGraph> {
        let (a, b) = (component_count(&self.first), component_count(&self.second));
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Some(self.first),
            std::cmp::Ordering::Less => Some(self.second),
            std::cmp::Ordering::Equal => None,
        }
    }
}

pub fn smooth(g: &LabeledGraph, v: &VertexId) -> Result<Smoothings> {
    Ok(smooth_at(g, g.index(v)?))
}

/// Representatives `H₁, H₂` differing by Ω_g4 or Ω_g4′ at `v`, with `v`
/// deleted from both. A framing-0 vertex with a framing-0 neighbour `u`
/// uses `H₂ = Ω_g4(G; v, u)` with the names of `u` and `v` exchanged, so
/// the surviving vertex keeps the name `u`. An isolated framing-0 vertex
/// gives `G \ v` and `G` plus a new framing-0 vertex adjacent only to `v`.
pub fn smooth_at(g: &LabeledGraph, v: usize) -> Smoothings {
    let zero_nbr = g.neighbors(v).find(|&u| g.framing(u) == Framing::Zero);
    let (h1, h2, drop2) = if g.framing(v) == Framing::One {
        (g.clone(), og4p_at(g, v), v)
    } else if let Some(u) = zero_nbr {
        let mut h2 = og4_at(g, v, u);
        h2.swap_ids(v, u);
        (g.clone(), h2, u)
    } else if let Some(u) = g.neighbors(v).next() {
        let h1 = og4p_at(g, u);
        let h2 = og4p_at(&h1, v);
        (h1, h2, v)
    } else {
        let mut h = g.erase_signs();
        let x = h
            .add_vertex(g.fresh_id("s"), Label::zero(crate::graph::Sign::Plus))
            .expect("fresh id");
        h.toggle_edge(x, v);
        return Smoothings {
            first: g.without(&[v]).erase_signs(),
            second: h,
        };
    };
    Smoothings {
        first: h1.without(&[v]).erase_signs(),
        second: h2.without(&[drop2]).erase_signs(),
    }
}

/// Elements of the GF(2)-vector space spanned by free framed graphs: a
/// class added twice cancels.
#[derive(Clone, Debug, Default)]
pub struct GraphSum {
    terms: BTreeMap<CanonicalForm, LabeledGraph>,
}

impl PartialEq for GraphSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.keys().eq(other.terms.keys())
    }
}

impl Eq for GraphSum {}

impl GraphSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: &LabeledGraph) -> Result<Self> {
        let mut s = Self::new();
        s.toggle(g.clone())?;
        Ok(s)
    }

    /// Adds `g` with coefficient 1.
    pub fn toggle(&mut self, g: LabeledGraph) -> Result<()> {
        let k = free_key(&g)?;
        self.toggle_keyed(k, g);
        Ok(())
    }

    pub fn toggle_keyed(&mut self, key: CanonicalForm, g: LabeledGraph) {
        if self.terms.remove(&key).is_none() {
            self.terms.insert(key, g.erase_signs());
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, &LabeledGraph)> {
        self.terms.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &LabeledGraph> {
        self.terms.values()
    }

    pub fn contains(&self, g: &LabeledGraph) -> Result<bool> {
        Ok(self.terms.contains_key(&free_key(g)?))
    }
}

/// Knot-level checks: returns an error unless `g` has one component.
fn require_knot(g: &LabeledGraph) -> Result<()> {
    let components = component_count(g);
    if components != 1 {
        return Err(Error::NotOneComponent { components });
    }
    Ok(())
}

/// For every vertex, the smoothing with two components.
pub fn delta_terms(g: &LabeledGraph) -> Result<Vec<(VertexId, LabeledGraph)>> {
    require_knot(g)?;
    Ok((0..g.len())
        .filter_map(|v| smooth_at(g, v).splitting().map(|h| (g.id(v).clone(), h)))
        .collect())
}

/// `Δ(G) = Σ_v G_v`.
pub fn delta(g: &LabeledGraph) -> Result<GraphSum> {
    let mut s = GraphSum::new();
    for (_, h) in delta_terms(g)? {
        s.toggle(h)?;
    }
    Ok(s)
}

/// Splitting smoothings at the oriented vertices of `h` admitted by `keep`.
fn split_oriented(h: &LabeledGraph, keep: impl Fn(usize) -> bool) -> Vec<LabeledGraph> {
    let oriented = oriented_vertices(h);
    (0..h.len())
        .filter(|&v| oriented[v] && keep(v))
        .filter_map(|v| smooth_at(h, v).splitting())
        .collect()
}

/// `Δⁱ`, applied as a linear map with cancellation after every step.
pub fn delta_iter(g: &LabeledGraph, i: usize) -> Result<GraphSum> {
    require_knot(g)?;
    let mut sum = GraphSum::single(g)?;
    for _ in 0..i {
        let mut next = GraphSum::new();
        for h in sum.graphs() {
            for t in split_oriented(h, |_| true) {
                next.toggle(t)?;
            }
        }
        sum = next;
    }
    Ok(sum)
}

/// `Δⁱ` restricted at each step to oriented vertices of the given parity
/// relative to the earlier smoothings. Terms are expanded along smoothing
/// sequences and only summed at the end, since relative parity depends on
/// vertex identities.
pub fn delta_parity(g: &LabeledGraph, i: usize, parity: Parity, reading: ParityReading) -> Result<GraphSum> {
    require_knot(g)?;
    let mut terms = vec![g.erase_signs()];
    for _ in 0..i {
        let mut next = Vec::new();
        for h in &terms {
            let table = relative_parity(g, h, reading)?;
            next.extend(split_oriented(h, |v| table.parity_at(v) == parity));
        }
        terms = next;
    }
    let mut sum = GraphSum::new();
    for t in terms {
        sum.toggle(t)?;
    }
    Ok(sum)
}

pub fn delta_odd(g: &LabeledGraph, i: usize) -> Result<GraphSum> {
    delta_parity(g, i, Parity::Odd, ParityReading::default())
}

pub fn delta_even(g: &LabeledGraph, i: usize) -> Result<GraphSum> {
    delta_parity(g, i, Parity::Even, ParityReading::default())
}

/// Every way of smoothing the listed vertices, in binary-tree order.
fn smooth_all(g: &LabeledGraph, ids: &[VertexId]) -> Vec<LabeledGraph> {
    let mut states = vec![g.erase_signs()];
    for id in ids {
        let mut next = Vec::with_capacity(states.len() * 2);
        for h in &states {
            let v = h.index_of(id).expect("unsmoothed vertices keep their names");
            let s = smooth_at(h, v);
            next.push(s.first);
            next.push(s.second);
        }
        states = next;
    }
    states
}

/// `[G]`: all smoothings at even vertices that keep one component.
pub fn bracket_knot(g: &LabeledGraph) -> Result<GraphSum> {
    require_knot(g)?;
    let even = parity_knot_labeled(g)?.even_ids();
    let mut sum = GraphSum::new();
    for h in smooth_all(g, &even) {
        if component_count(&h) == 1 {
            sum.toggle(h)?;
        }
    }
    Ok(sum)
}

/// `{H}`: all smoothings at even vertices, dropping those equivalent to a
/// graph with two framing-0 vertices adjacent only to each other.
pub fn bracket_link2(h: &LabeledGraph) -> Result<GraphSum> {
    let even = parity_link2(h)?.even_ids();
    let mut sum = GraphSum::new();
    for s in smooth_all(h, &even) {
        if reduce_term(&s, DEFAULT_ORBIT_CAP)?.is_some() {
            sum.toggle(s)?;
        }
    }
    Ok(sum)
}

/// Two framing-0 vertices adjacent only to each other.
pub fn has_pendant_pair(g: &LabeledGraph) -> bool {
    (0..g.len()).any(|x| {
        g.framing(x) == Framing::Zero && g.degree(x) == 1 && {
            let y = g.neighbors(x).next().expect("degree 1");
            g.framing(y) == Framing::Zero && g.degree(y) == 1
        }
    })
}

/// Removes twin pairs, searching the Ω_g4/Ω_g4′ orbit for a representative
/// that has one whenever the current graph has none. Returns `None` when
/// some visited representative has a pendant framing-0 pair, otherwise the
/// free key and the reduced graph.
pub fn reduce_term(g: &LabeledGraph, cap: usize) -> Result<Option<(CanonicalForm, LabeledGraph)>> {
    let mut g = g.erase_signs();
    'outer: loop {
        if has_pendant_pair(&g) {
            return Ok(None);
        }
        if let Some((i, j)) = sign_free_twins(&g) {
            g = g.without(&[i, j]);
            continue;
        }
        let orbit = FreeFramedGraph { rep: g.clone() }.orbit(cap)?;
        for h in &orbit {
            if has_pendant_pair(h) {
                return Ok(None);
            }
            if let Some((i, j)) = sign_free_twins(h) {
                g = h.without(&[i, j]);
                continue 'outer;
            }
        }
        let mut best: Option<CanonicalForm> = None;
        for h in &orbit {
            let k = key_of(h)?;
            if best.as_ref().is_none_or(|b| &k < b) {
                best = Some(k);
            }
        }
        return Ok(Some((best.expect("nonempty orbit"), g)));
    }
}

/// Reduces every term by decreasing second moves, drops terms that vanish
/// by the pendant-pair relation, and cancels equal classes.
pub fn reduce_sum(s: &GraphSum) -> Result<GraphSum> {
    let mut out = GraphSum::new();
    for g in s.graphs() {
        if let Some((k, r)) = reduce_term(g, DEFAULT_ORBIT_CAP)? {
            out.toggle_keyed(k, r);
        }
    }
    Ok(out)
}

/// Outcome of comparing two sums in the quotient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumComparison {
    pub equal: bool,
    /// Whether reduction alone was inconclusive and a bounded move search
    /// was needed.
    pub fallback_used: bool,
}

/// Compares after [`reduce_sum`]; unmatched terms are paired by a bounded
/// free-move search. A negative answer is not a proof of inequality.
pub fn compare_sums(a: &GraphSum, b: &GraphSum, bounds: SearchBounds) -> Result<SumComparison> {
    let (ra, rb) = (reduce_sum(a)?, reduce_sum(b)?);
    if ra == rb {
        return Ok(SumComparison {
            equal: true,
            fallback_used: false,
        });
    }
    let left: Vec<&LabeledGraph> = ra.iter().filter(|(k, _)| !rb.terms.contains_key(k)).map(|(_, g)| g).collect();
    let mut right: Vec<&LabeledGraph> = rb.iter().filter(|(k, _)| !ra.terms.contains_key(k)).map(|(_, g)| g).collect();
    let mut equal = left.len() == right.len();
    if equal {
        for l in left {
            let mut matched = None;
            for (idx, r) in right.iter().enumerate() {
                let need = l.len().max(r.len()) + 2;
                let b = SearchBounds {
                    max_vertices: bounds.max_vertices.max(need),
                    ..bounds
                };
                if free_equivalence_search(l, r, b)?.is_some() {
                    matched = Some(idx);
                    break;
                }
            }
            match matched {
                Some(idx) => {
                    right.remove(idx);
                }
                None => {
                    equal = false;
                    break;
                }
            }
        }
    }
    log::debug!("sum comparison fell back to move search: equal = {equal}");
    Ok(SumComparison {
        equal,
        fallback_used: true,
    })
}
