//! Text formats: graph6, DOT export and a JSON adjacency list.
//!
//! graph6 follows the standard layout: a size header (one byte for
//! `n < 63`, `~` plus three bytes for `n < 258048`, `~~` plus six bytes for
//! `n < 2^36`), then the upper triangle of the adjacency matrix in column
//! order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six bits per byte,
//! each byte offset by 63.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable in graph6.
pub const GRAPH6_MAX_ORDER: u64 = (1 << 36) - 1;

/// Largest order accepted from JSON input, which (unlike graph6) does not
/// bound `n` by its own length.
pub const JSON_MAX_ORDER: usize = 1 << 14;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n as u64 <= GRAPH6_MAX_ORDER, "graph too large for graph6");
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn g6_byte(input: &[u8], offset: usize) -> Result<u64> {
    match input.get(offset) {
        None => Err(Error::Graph6 {
            offset,
            reason: "unexpected end of input",
        }),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(_) => Err(Error::Graph6 {
            offset,
            reason: "byte outside the printable range 63..=126",
        }),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header is skipped;
/// surrounding whitespace is not accepted (trim lines before calling).
pub fn graph6_decode(text: &str) -> Result<Graph> {
    graph6_decode_bytes(text.as_bytes())
}

pub fn graph6_decode_bytes(input: &[u8]) -> Result<Graph> {
    let mut pos = if input.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    if input.get(pos) == Some(&b':') || input.get(pos) == Some(&b'&') {
        return Err(Error::Graph6 {
            offset: pos,
            reason: "sparse6 and digraph6 are not supported",
        });
    }
    let first = g6_byte(input, pos)?;
    let n: u64 = if first < 63 {
        pos += 1;
        first
    } else if g6_byte(input, pos + 1)? < 63 {
        let mut n = 0;
        for k in 1..=3 {
            n = (n << 6) | g6_byte(input, pos + k)?;
        }
        if n < 63 {
            return Err(Error::Graph6 {
                offset: pos,
                reason: "non-canonical size header",
            });
        }
        pos += 4;
        n
    } else {
        let mut n = 0;
        for k in 2..=7 {
            n = (n << 6) | g6_byte(input, pos + k)?;
        }
        if n < 258_048 {
            return Err(Error::Graph6 {
                offset: pos,
                reason: "non-canonical size header",
            });
        }
        pos += 8;
        n
    };

    let bits = n.saturating_mul(n.saturating_sub(1)) / 2;
    let needed = bits.div_ceil(6);
    let available = (input.len() - pos) as u64;
    if available < needed {
        return Err(Error::Graph6 {
            offset: input.len(),
            reason: "truncated adjacency bit stream",
        });
    }
    if available > needed {
        return Err(Error::Graph6 {
            offset: pos + needed as usize,
            reason: "trailing bytes after adjacency data",
        });
    }

    // `needed <= input.len()` bounds n by the input size from here on
    let n = n as usize;
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut byte = 0u64;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                byte = g6_byte(input, pos + bit / 6)?;
            }
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let pad_mask = (1u64 << (6 - bit % 6)) - 1;
        if byte & pad_mask != 0 {
            return Err(Error::Graph6 {
                offset: pos + bit / 6,
                reason: "non-zero padding bits",
            });
        }
    }
    Ok(g)
}

/// DOT rendering, one undirected edge per line.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            let _ = writeln!(s, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// JSON adjacency list: `{"n": 5, "edges": [[0,1], ...]}` with `u < v`,
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for JsonGraph {
    fn from(g: &Graph) -> Self {
        JsonGraph {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&JsonGraph> for Graph {
    type Error = Error;

    fn try_from(j: &JsonGraph) -> Result<Graph> {
        if j.n > JSON_MAX_ORDER {
            return Err(Error::Json(format!(
                "n = {} exceeds the supported maximum {JSON_MAX_ORDER}",
                j.n
            )));
        }
        Graph::from_edges(j.n, j.edges.iter().map(|&[u, v]| (u, v)))
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraph::from(g)).expect("serialising plain data")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let j: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    Graph::try_from(&j)
}

/// Reads a graph file: JSON when it opens with `{` followed by something
/// other than a graph6 byte, otherwise the first non-empty line as graph6.
/// A graph6 string on 60 vertices also starts with `{`.
pub fn read_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim_start();
    if let Some(rest) = trimmed.strip_prefix('{') {
        let next = rest.trim_start().bytes().next();
        if !matches!(next, Some(63..=126)) || rest.starts_with(char::is_whitespace) {
            return from_json(trimmed);
        }
    }
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or(Error::Graph6 {
            offset: 0,
            reason: "no graph6 line found",
        })?;
    graph6_decode(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_a_underscore() {
        assert_eq!(graph6_encode(&Graph::complete(2)), "A_");
    }

    #[test]
    fn known_strings() {
        // reference strings produced by nauty's geng/showg conventions
        assert_eq!(graph6_encode(&Graph::empty(0)), "?");
        assert_eq!(graph6_encode(&Graph::empty(1)), "@");
        assert_eq!(graph6_encode(&Graph::complete(4)), "C~");
        assert_eq!(graph6_encode(&Graph::cycle(5)), "Dhc");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
    }

    #[test]
    fn round_trips() {
        for g in [Graph::cycle(5), Graph::empty(0), Graph::complete(7), Graph::path(64)] {
            assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
        }
    }

    #[test]
    fn long_header() {
        let g = Graph::path(100);
        let s = graph6_encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(graph6_decode(&s).unwrap(), g);
    }

    #[test]
    fn decode_errors_name_offsets() {
        assert_eq!(
            graph6_decode(""),
            Err(Error::Graph6 { offset: 0, reason: "unexpected end of input" })
        );
        assert!(matches!(graph6_decode("Dh"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(graph6_decode("Dhc?"), Err(Error::Graph6 { offset: 3, .. })));
        assert!(matches!(graph6_decode("D\x01c"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(graph6_decode("~?"), Err(Error::Graph6 { offset: 2, .. })));
        // "A" then a byte with a padding bit set
        assert!(matches!(graph6_decode("A`"), Err(Error::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn optional_header_is_skipped() {
        assert_eq!(graph6_decode(">>graph6<<A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn json_is_sorted() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (0, 3)]).unwrap();
        assert_eq!(to_json(&g), r#"{"n":4,"edges":[[0,1],[0,3],[2,3]]}"#);
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn json_rejects_loops_and_range() {
        assert!(from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":99999999,"edges":[]}"#).is_err());
    }

    #[test]
    fn dot_lists_edges() {
        let dot = to_dot(&Graph::path(3));
        assert_eq!(dot, "graph G {\n  0 -- 1;\n  1 -- 2;\n}\n");
    }

    #[test]
    fn read_graph_autodetects() {
        assert_eq!(read_graph("\n  Dhc\n").unwrap(), Graph::cycle(5));
        assert_eq!(read_graph(r#" {"n":3,"edges":[[0,1]]}"#).unwrap().edge_count(), 1);
        let sixty = Graph::path(60);
        let s = graph6_encode(&sixty);
        assert!(s.starts_with('{'));
        assert_eq!(read_graph(&s).unwrap(), sixty);
    }
}
