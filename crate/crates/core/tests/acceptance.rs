//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with a custom harness so the report is printed by a plain
//! `cargo test`. The process fails if any counted criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use graphlink::canon::{canonical_form, isomorphic};
use graphlink::chi::{chi, chi_inverse};
use graphlink::chord::{intersection_graph, surgery_components, verify_soboleva, ChordDiagram};
use graphlink::format::{parse_graph_file, parse_graph_record, GraphFile};
use graphlink::invariants::{
    atom_genus, component_count, is_nonsplit, is_oriented_vertex, kauffman_bracket, looped_minimality_certificate,
    minimality_certificate, writhe, Verdict,
};
use graphlink::moves::{has_decreasing_r2, has_decreasing_second_move, SearchBounds};
use graphlink::parity::{parity_knot, parity_knot_labeled, parity_link2};
use graphlink::realize::{graphlink_realizability, looped_realizability, realize_with_limit, Realizability};
use graphlink::smoothing::{bracket_knot, compare_sums, delta, delta_terms, smooth_at};
use graphlink::{Framing, Label, LabeledGraph, LaurentPoly, Move, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Suite {
    counted_failures: Vec<String>,
}

impl Suite {
    /// Runs one criterion; exceeding `budget` is a failure.
    fn run(&mut self, id: &str, name: &str, budget: Option<Duration>, counted: bool, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > b {
                o.pass = false;
                o.detail = format!("{}; over budget {:?}", o.detail, b);
            }
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let note = if counted { "" } else { " [not counted]" };
        println!("criterion {id:>3} {name}: {verdict}{note} ({}; {:.2?})", o.detail, elapsed);
        if !o.pass && counted {
            self.counted_failures.push(id.to_string());
        }
    }
}

fn c1_soboleva() -> Outcome {
    let mut exhaustive = 0usize;
    let mut bad = 0usize;
    for n in 0..=5 {
        for partner in matchings(n) {
            for mask in 0u32..(1 << n) {
                let labels: Vec<Label> = (0..n)
                    .map(|k| Label::new(Framing::from_bit(mask >> k & 1 == 1), Sign::Plus))
                    .collect();
                exhaustive += 1;
                if !verify_soboleva(&diagram_of_matching(&partner, &labels)) {
                    bad += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let n = rng.gen_range(6..=8);
        if !verify_soboleva(&random_diagram(&mut rng, n)) {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("{exhaustive} exhaustive + 1000 random diagrams, {bad} mismatches"),
    )
}

fn c2_two_chords() -> Outcome {
    let d = |w: &str| {
        let word = w.split_whitespace().map(Into::into).collect();
        let l = Label::zero(Sign::Plus);
        ChordDiagram::new(word, vec![("a".into(), l), ("b".into(), l)]).unwrap()
    };
    let (linked, unlinked) = (surgery_components(&d("a b a b")), surgery_components(&d("a a b b")));
    outcome(
        linked == 1 && unlinked == 3,
        format!("linked {linked} circle(s), unlinked {unlinked}"),
    )
}

struct MoveStats {
    graphs: usize,
    moves: usize,
    bracket_bad: Vec<String>,
    corank_bad: Vec<String>,
}

/// `⟨G'⟩ / ⟨G⟩` expected for a first move adding or removing a vertex
/// labeled `(0, sign)`.
fn kink_factor(sign: Sign) -> LaurentPoly {
    match sign {
        Sign::Plus => LaurentPoly::monomial(-1, -3),
        Sign::Minus => LaurentPoly::monomial(-1, 3),
    }
}

fn move_suite() -> MoveStats {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut s = MoveStats {
        graphs: 0,
        moves: 0,
        bracket_bad: Vec::new(),
        corank_bad: Vec::new(),
    };
    while s.graphs < 500 {
        let n = rng.gen_range(0..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        s.graphs += 1;
        let bg = kauffman_bracket(&g).unwrap();
        let cg = component_count(&g);
        for m in sampled_moves(&g, &mut rng) {
            let h = m.apply(&g).unwrap();
            s.moves += 1;
            let bh = kauffman_bracket(&h).unwrap();
            let ok = match &m {
                Move::Og1Add { sign, .. } => bh == &bg * &kink_factor(*sign),
                Move::Og1Remove { v } => bg == &bh * &kink_factor(g.sign(g.index(v).unwrap())),
                _ => bh == bg,
            };
            if !ok {
                s.bracket_bad.push(m.to_string());
            }
            if component_count(&h) != cg {
                s.corank_bad.push(m.to_string());
            }
        }
    }
    s
}

fn c5_writhe() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut knots, mut moves, mut bad) = (0, 0, Vec::new());
    while knots < 300 {
        let g = random_knot(&mut rng, 8);
        knots += 1;
        let w = writhe(&g).unwrap().total;
        for m in sampled_moves(&g, &mut rng) {
            let h = m.apply(&g).unwrap();
            moves += 1;
            let wh = writhe(&h).unwrap().total;
            let ok = match m {
                Move::Og1Add { .. } | Move::Og1Remove { .. } => (wh - w).abs() == 1,
                _ => wh == w,
            };
            if !ok {
                bad.push(m.to_string());
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{knots} graph-knots, {moves} moves, {} violations{}", bad.len(), first(&bad)),
    )
}

fn c6_kinks() -> Outcome {
    let plus = graph(&[Label::zero(Sign::Plus)], &[]);
    let minus = graph(&[Label::zero(Sign::Minus)], &[]);
    let (bp, bm) = (kauffman_bracket(&plus).unwrap(), kauffman_bracket(&minus).unwrap());
    let ok = bp == LaurentPoly::monomial(-1, -3)
        && bm == LaurentPoly::monomial(-1, 3)
        && bp == naive_bracket(&plus)
        && bm == naive_bracket(&minus);
    outcome(ok, format!("<(0,+)> = {bp}, <(0,-)> = {bm}"))
}

/// Whether some perfect matching on `2n` points has `g`'s underlying graph
/// as its intersection graph, by enumerating all of them.
fn matching_oracle(g: &LabeledGraph) -> bool {
    let n = g.len();
    let plain = g.map_labels(|_| Label::zero(Sign::Plus));
    let mut degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    degrees.sort_unstable();
    let target = canonical_form(&plain).unwrap();
    let labels = vec![Label::zero(Sign::Plus); n];
    matchings(n).iter().any(|partner| {
        let h = intersection_graph(&diagram_of_matching(partner, &labels));
        let mut dh: Vec<usize> = (0..n).map(|i| h.degree(i)).collect();
        dh.sort_unstable();
        dh == degrees && canonical_form(&h).unwrap() == target
    })
}

fn c7_bw3() -> Outcome {
    let g = labeled_fixture("bw3.graph");
    let genus = atom_genus(&g);
    let cert = minimality_certificate(&g);
    let realized = realize_with_limit(&g, 7).unwrap();
    let oracle = matching_oracle(&g);
    let span = kauffman_bracket(&g).unwrap().span().unwrap();
    let ok = g.len() == 7
        && genus == 0.into()
        && is_nonsplit(&g)
        && cert.verdict == Verdict::MinimalByAlternating
        && realized.is_none()
        && !oracle;
    let flag = if span == 28 { "as expected" } else { "FLAGGED: expected 28" };
    outcome(
        ok,
        format!(
            "genus {genus}, non-split {}, {}, realizable {} (matching oracle {oracle}), span {span} {flag}",
            is_nonsplit(&g),
            cert.verdict.as_str(),
            realized.is_some()
        ),
    )
}

fn c8_w5() -> Outcome {
    let g = labeled_fixture("w5.graph");
    let GraphFile::Looped(l) = fixture("w5.looped") else {
        return outcome(false, "w5.looped is not a looped file");
    };
    let odd = parity_knot(&l).all_odd() && parity_knot_labeled(&g).unwrap().all_odd();
    let no_second = !has_decreasing_second_move(&g) && !has_decreasing_r2(&l);
    let cert = minimality_certificate(&g);
    let lcert = looped_minimality_certificate(&l);
    let bounds = SearchBounds::default();
    let r = graphlink_realizability(&g, 8, bounds).unwrap();
    let lr = looped_realizability(&l, 8, bounds).unwrap();
    let ok = odd
        && no_second
        && cert.verdict == Verdict::MinimalByOddParity
        && !cert.decreasing_second_move
        && lcert.verdict == Verdict::MinimalByOddParity
        && r == Realizability::CertifiedNonRealizable
        && lr == Realizability::CertifiedNonRealizable;
    outcome(
        ok,
        format!(
            "all odd {odd}, no decreasing second move {no_second}, {} / {}, {} / {}",
            cert.verdict.as_str(),
            lcert.verdict.as_str(),
            r.name(),
            lr.name()
        ),
    )
}

fn c9_involutions() -> Outcome {
    let (mut graphs, mut pairs, mut iso_fallback, mut bad) = (0usize, 0usize, 0usize, 0usize);
    for n in 0..=6usize {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << slots.len()) {
            let edges: Vec<(usize, usize)> =
                slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            let g = graph(&vec![Label::zero(Sign::Plus); n], &edges);
            graphs += 1;
            for v in 0..n {
                if g.local_complement_at(v).local_complement_at(v) != g {
                    bad += 1;
                }
            }
            for &(u, v) in &slots {
                let p = g.pivot_at(u, v);
                if p.pivot_at(u, v) != g {
                    bad += 1;
                }
                if !g.has_edge(u, v) {
                    continue;
                }
                pairs += 1;
                let h = g.local_complement_at(u).local_complement_at(v).local_complement_at(u);
                let swap = |x: usize| if x == u { v } else if x == v { u } else { x };
                let direct = (0..n).all(|x| (0..n).all(|y| x == y || p.has_edge(x, y) == h.has_edge(swap(x), swap(y))));
                if !direct {
                    iso_fallback += 1;
                    if !isomorphic(&p, &h).unwrap() {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("{graphs} graphs, {pairs} adjacent pairs, {bad} violations, {iso_fallback} needed a general isomorphism"),
    )
}

fn c10_chi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(0..=10);
        let p = rng.gen_range(0.2..0.8);
        let l = random_looped(&mut rng, n, p);
        if chi(&chi_inverse(&l)).ok() != Some(l) {
            bad += 1;
        }
    }
    let mut off_bad = 0;
    for _ in 0..500 {
        let g = random_knot(&mut rng, 10);
        let l = chi(&g).unwrap();
        let h = chi_inverse(&l);
        let hi = h.adjacency_matrix().plus_identity().inverse().unwrap();
        let gi = g.adjacency_matrix().plus_identity().inverse().unwrap();
        if !hi.coincides_off_diagonal(&gi) || chi(&h).ok() != Some(l) {
            off_bad += 1;
        }
    }
    outcome(
        bad == 0 && off_bad == 0,
        format!("500 looped graphs ({bad} failures), 500 graph-knots through chi_inverse o chi ({off_bad} failures)"),
    )
}

struct GapStats {
    vertices: usize,
    oriented: usize,
    gap_one: usize,
    oriented_gap_one: usize,
}

fn smoothing_gaps() -> GapStats {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut s = GapStats {
        vertices: 0,
        oriented: 0,
        gap_one: 0,
        oriented_gap_one: 0,
    };
    for _ in 0..400 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        for v in 0..n {
            let sm = smooth_at(&g, v);
            let gap = component_count(&sm.first).abs_diff(component_count(&sm.second));
            let oriented = is_oriented_vertex(&g, v);
            s.vertices += 1;
            s.oriented += oriented as usize;
            s.gap_one += (gap == 1) as usize;
            s.oriented_gap_one += (oriented && gap == 1) as usize;
        }
    }
    s
}

fn c12_parity_brackets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let bounds = SearchBounds {
        max_vertices: 10,
        max_steps: 2_000,
    };
    let (mut pairs, mut fallback, mut unequal) = (0usize, 0usize, Vec::new());
    while pairs < 200 {
        let g = random_knot(&mut rng, 6);
        let moves = sampled_moves(&g, &mut rng);
        let m = &moves[rng.gen_range(0..moves.len())];
        let h = m.apply(&g).unwrap();
        pairs += 1;
        let c = compare_sums(&bracket_knot(&g).unwrap(), &bracket_knot(&h).unwrap(), bounds).unwrap();
        if c.fallback_used {
            fallback += 1;
            println!("    fallback used: {m} on {g:?}");
        }
        if !c.equal {
            unequal.push(m.to_string());
        }
    }
    let rate = fallback as f64 / pairs as f64;
    outcome(
        unequal.is_empty() && rate < 0.05,
        format!(
            "{pairs} pairs, {} unequal{}, fallback rate {:.1}%",
            unequal.len(),
            first(&unequal),
            100.0 * rate
        ),
    )
}

fn c13_serialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut files: Vec<GraphFile> = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(0..=10);
        files.push(GraphFile::Labeled(random_graph(&mut rng, n, 0.4)));
        files.push(GraphFile::Looped(random_looped(&mut rng, n, 0.4)));
        files.push(GraphFile::Chords(random_diagram(&mut rng, n.min(8))));
    }
    for name in ["bw3.graph", "w5.graph", "w5.looped", "path3.graph", "kink.graph", "empty.graph", "two_chords.chords"] {
        files.push(fixture(name));
    }
    let mut bad = 0;
    for f in &files {
        let text = f.to_string();
        let back = parse_graph_file(&text);
        let record = parse_graph_record(f.kind(), &f.to_record());
        let same = match (f, back, record) {
            (GraphFile::Labeled(a), Ok(GraphFile::Labeled(b)), Ok(GraphFile::Labeled(c))) => {
                canonical_form(a).unwrap() == canonical_form(&b).unwrap() && b == c
            }
            (GraphFile::Looped(a), Ok(GraphFile::Looped(b)), Ok(GraphFile::Looped(c))) => {
                canonical_form(a).unwrap() == canonical_form(&b).unwrap() && b == c
            }
            (GraphFile::Chords(a), Ok(GraphFile::Chords(b)), Ok(GraphFile::Chords(c))) => *a == b && b == c,
            _ => false,
        };
        if !same {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} files, {bad} failed to round-trip", files.len()))
}

/// A 7-vertex looped candidate with one dominating vertex and all degrees
/// even: a hub joined to every vertex of the triangular prism, no loops.
fn hub_prism() -> LabeledGraph {
    let mut l = graphlink::LoopedGraph::new();
    for i in 0..7 {
        l.add_vertex(format!("k{i}").as_str().into(), false).unwrap();
    }
    for (a, b) in [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)] {
        l.add_edge(a, b).unwrap();
    }
    for i in 1..7 {
        l.add_edge(0, i).unwrap();
    }
    chi_inverse(&l)
}

fn report_hub_prism() {
    let k = hub_prism();
    let terms = match delta_terms(&k) {
        Ok(t) => t,
        Err(e) => return println!("report: hub-plus-prism candidate: {e}"),
    };
    let odd = terms
        .iter()
        .filter(|(_, h)| parity_link2(h).map(|p| p.all_odd()).unwrap_or(false))
        .count();
    let reduced = delta(&k).map(|s| s.len()).unwrap_or(0);
    println!(
        "report: hub-plus-prism candidate: {} delta summands, {odd} with all vertices odd, {reduced} left after cancellation",
        terms.len()
    );
}

fn first<T: std::fmt::Debug>(v: &[T]) -> String {
    v.first().map(|x| format!(" (first: {x:?})")).unwrap_or_default()
}

fn main() {
    let mut suite = Suite {
        counted_failures: Vec::new(),
    };
    let secs = Duration::from_secs;
    suite.run("1", "Soboleva oracle", Some(secs(60)), true, c1_soboleva);
    suite.run("2", "two-chord figure", None, true, c2_two_chords);
    let mut moves = None;
    suite.run("3", "bracket move behaviour", Some(secs(120)), true, || {
        let moves = moves.insert(move_suite());
        outcome(
            moves.graphs >= 500 && moves.bracket_bad.is_empty(),
            format!(
                "{} graphs, {} moves, {} violations{}",
                moves.graphs,
                moves.moves,
                moves.bracket_bad.len(),
                first(&moves.bracket_bad)
            ),
        )
    });
    let moves = moves.expect("criterion 3 ran");
    suite.run("4", "component-count invariance", None, true, || {
        outcome(
            moves.corank_bad.is_empty(),
            format!("{} moves, {} violations{}", moves.moves, moves.corank_bad.len(), first(&moves.corank_bad)),
        )
    });
    suite.run("5", "writhe behaviour", None, true, c5_writhe);
    suite.run("6", "kink values", None, true, c6_kinks);
    suite.run("7", "BW3 fixture", Some(secs(30)), true, c7_bw3);
    suite.run("8", "W5 fixture", Some(secs(10)), true, c8_w5);
    suite.run("9", "involution laws", Some(secs(60)), true, c9_involutions);
    suite.run("10", "chi round trip", Some(secs(30)), true, c10_chi);
    let mut gaps = None;
    suite.run("11", "smoothing component gap at every vertex", None, false, || {
        let gaps = gaps.insert(smoothing_gaps());
        outcome(
            gaps.gap_one == gaps.vertices,
            format!(
                "gap 1 at {}/{} vertices, {} of the misses at oriented vertices",
                gaps.gap_one,
                gaps.vertices,
                gaps.oriented - gaps.oriented_gap_one
            ),
        )
    });
    let gaps = gaps.expect("criterion 11 ran");
    suite.run("11o", "smoothing component gap at oriented vertices", None, true, || {
        outcome(
            gaps.oriented_gap_one == gaps.oriented,
            format!("gap 1 at {}/{} oriented vertices", gaps.oriented_gap_one, gaps.oriented),
        )
    });
    suite.run("12", "parity bracket invariance", None, true, c12_parity_brackets);
    suite.run("13", "serialization round trip", None, true, c13_serialization);
    report_hub_prism();

    if suite.counted_failures.is_empty() {
        println!("acceptance: all counted criteria passed");
    } else {
        println!("acceptance: failed criteria {:?}", suite.counted_failures);
        std::process::exit(1);
    }
}
