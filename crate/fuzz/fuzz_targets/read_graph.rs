#![no_main]

use libfuzzer_sys::fuzz_target;
use trifree::io::read_graph;
use trifree::verify::verify_membership;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = read_graph(text) {
        if g.order() <= 64 {
            let _ = verify_membership(&g, 3, 3);
        }
    }
});
