#![no_main]

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;
use trifree::io::{graph6_decode, graph6_encode, read_graph};
use trifree::Graph;

#[derive(Debug, Arbitrary)]
struct Input {
    order: u8,
    edges: Vec<(u8, u8)>,
}

fuzz_target!(|input: Input| {
    let n = input.order as usize;
    let edges = input
        .edges
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .filter(|&(u, v)| u < n && v < n && u != v);
    let g = Graph::from_edges(n, edges).unwrap();
    let s = graph6_encode(&g);
    assert_eq!(graph6_decode(&s).unwrap(), g);
    assert_eq!(read_graph(&s).unwrap(), g);
});
