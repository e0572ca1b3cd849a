#![no_main]

use graphlink::format::{parse_graph_file, parse_graph_record};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(f) = parse_graph_file(s) else {
        return;
    };
    let again = parse_graph_file(&f.to_string()).expect("serialized file parses");
    assert_eq!(again, f);
    let record = parse_graph_record(f.kind(), &f.to_record()).expect("record parses");
    assert_eq!(record, f);
});
