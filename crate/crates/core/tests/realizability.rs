mod common;

use common::*;
use graphlink::chi::chi;
use graphlink::chord::intersection_graph;
use graphlink::format::GraphFile;
use graphlink::moves::{looped_equivalence_search, og2_add, SearchBounds};
use graphlink::realize::{
    graphlink_realizability, looped_realizability, realize, realize_connected_components, realize_looped, Realizability,
};
use graphlink::{Framing, Label, LabeledGraph, Move, Sign, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Z: Label = Label::zero(Sign::Plus);

fn cycle5_with_hubs(hubs: usize) -> LabeledGraph {
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for h in 0..hubs {
        edges.extend((0..5).map(|i| (i, 5 + h)));
    }
    let mut labels = vec![Z; 5 + hubs];
    if hubs == 2 {
        labels[6] = Label::zero(Sign::Minus);
    }
    graph(&labels, &edges)
}

#[test]
fn path_witness_round_trips() {
    let g = labeled_fixture("path3.graph");
    let d = realize(&g).unwrap().unwrap();
    assert_eq!(intersection_graph(&d), g);
    match graphlink_realizability(&g, 8, SearchBounds::default()).unwrap() {
        Realizability::RealizableWitness { diagram, path } => {
            assert!(path.is_empty());
            assert_eq!(intersection_graph(&diagram), g);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn components_are_realized_separately() {
    let two_paths = graph(&[Z; 6], &[(0, 1), (1, 2), (3, 4), (4, 5)]);
    let parts = realize_connected_components(&two_paths, 8).unwrap().unwrap();
    assert_eq!(parts.len(), 2);
    assert!(realize(&two_paths).unwrap().is_some());

    let mut edges: Vec<(usize, usize)> = (1..6).map(|i| (0, i)).collect();
    edges.extend((1..6).map(|i| (i, i % 5 + 1)));
    edges.push((6, 7));
    let with_wheel = graph(&[Z; 8], &edges);
    assert!(realize_connected_components(&with_wheel, 8).unwrap().is_none());
    assert!(realize(&with_wheel).unwrap().is_none());
    assert_eq!(realize_connected_components(&LabeledGraph::new(), 8).unwrap(), Some(vec![]));
}

#[test]
fn search_finds_a_realizable_representative() {
    // the two hubs are removable twins; without them the 5-cycle remains
    let g = cycle5_with_hubs(2);
    assert!(realize(&g).unwrap().is_none());
    let bounds = SearchBounds {
        max_vertices: 7,
        max_steps: 100,
    };
    match graphlink_realizability(&g, 8, bounds).unwrap() {
        Realizability::RealizableWitness { diagram, path } => {
            assert_eq!(path.len(), 1);
            assert!(matches!(path[0], Move::Og2Remove { .. }));
            assert_eq!(intersection_graph(&diagram).len(), 5);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn wheel_certificate_survives_a_twin_detour() {
    let g = labeled_fixture("w5.graph");
    let bounds = SearchBounds {
        max_vertices: 8,
        max_steps: 50,
    };
    assert_eq!(graphlink_realizability(&g, 8, bounds).unwrap(), Realizability::CertifiedNonRealizable);
    let nbrs: Vec<VertexId> = vec!["h".into(), "r1".into()];
    let bigger = og2_add(&g, &"p".into(), &"q".into(), Framing::Zero, Sign::Plus, &nbrs).unwrap();
    let verdict = graphlink_realizability(&bigger, 8, bounds).unwrap();
    assert_ne!(verdict, Realizability::CertifiedNonRealizable);
    assert!(!matches!(verdict, Realizability::RealizableWitness { .. }));
    let back = Move::Og2Remove {
        a: "p".into(),
        b: "q".into(),
    }
    .apply(&bigger)
    .unwrap();
    assert_eq!(graphlink_realizability(&back, 8, bounds).unwrap(), Realizability::CertifiedNonRealizable);
}

#[test]
fn bw3_is_unknown_as_a_graph_link() {
    let g = labeled_fixture("bw3.graph");
    assert!(realize(&g).unwrap().is_none());
    let bounds = SearchBounds {
        max_vertices: 9,
        max_steps: 200,
    };
    assert_eq!(graphlink_realizability(&g, 8, bounds).unwrap(), Realizability::Unknown);
}

#[test]
fn looped_wheel_is_certified() {
    let GraphFile::Looped(l) = fixture("w5.looped") else { panic!() };
    assert!(realize_looped(&l, 8).unwrap().is_none());
    assert_eq!(
        looped_realizability(&l, 8, SearchBounds::default()).unwrap(),
        Realizability::CertifiedNonRealizable
    );
}

#[test]
fn size_limits_are_reported() {
    let g = graph(&[Z; 9], &[]);
    assert!(realize(&g).unwrap_err().is_size_limit());
    assert!(graphlink_realizability(&g, 8, SearchBounds::default()).unwrap_err().is_size_limit());
}

/// Graph-knots related by one move have looped graphs related by looped
/// moves; checked with a small bounded search.
#[test]
fn chi_carries_moves_to_looped_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut pairs, mut found) = (0, 0);
    for _ in 0..12 {
        let g = random_knot(&mut rng, 3);
        let moves = sampled_moves(&g, &mut rng);
        let m = &moves[rng.gen_range(0..moves.len())];
        let h = m.apply(&g).unwrap();
        let (a, b) = (chi(&g).unwrap(), chi(&h).unwrap());
        let bounds = SearchBounds {
            max_vertices: a.len().max(b.len()) + 2,
            max_steps: 20_000,
        };
        pairs += 1;
        if looped_equivalence_search(&a, &b, bounds).unwrap().is_some() {
            found += 1;
        } else {
            println!("no looped path within bounds for {m} on {g:?}");
        }
    }
    assert_eq!(found, pairs);
}
