#![no_main]

use graphlink::MoveSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(spec) = data.parse::<MoveSpec>() {
        let shown = match &spec {
            MoveSpec::Labeled(m) => m.to_string(),
            MoveSpec::Looped(m) => m.to_string(),
        };
        assert_eq!(shown.parse::<MoveSpec>().ok(), Some(spec));
    }
});
