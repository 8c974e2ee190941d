#![no_main]

use libfuzzer_sys::fuzz_target;
use trifree::io::{graph6_decode_bytes, graph6_encode};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = graph6_decode_bytes(data) {
        let again = graph6_decode_bytes(graph6_encode(&g).as_bytes()).expect("re-encoded graph6 decodes");
        assert_eq!(g, again);
    }
});
