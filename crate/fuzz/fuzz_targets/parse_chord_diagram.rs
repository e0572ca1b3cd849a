#![no_main]

use graphlink::chord::intersection_graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(d) = graphlink::format::parse_chord_diagram(data) {
        let g = intersection_graph(&d);
        assert_eq!(g.len(), d.len());
    }
});
