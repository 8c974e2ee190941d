#![no_main]

use libfuzzer_sys::fuzz_target;
use trifree::io::{from_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = from_json(text) {
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }
});
