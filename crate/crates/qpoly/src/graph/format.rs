//! graph6 and edge-list input, plus graph6 output.
//!
//! graph6 follows the standard format definition: an optional
//! `>>graph6<<` header, the vertex count in base-64 offset 63, then the
//! upper triangle of the adjacency matrix packed 6 bits per byte, column
//! by column, most significant bit first.
//!
//! Edge lists are UTF-8 lines `u v` with 0-indexed vertices and `#`
//! comments; an optional vertex-count override accounts for trailing
//! isolated vertices.

use super::Graph;
use crate::error::{Error, Result};

pub const GRAPH6_HEADER: &str = ">>graph6<<";

/// Input format selector for [`parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

/// Parse one graph from `text` in the named format. The vertex-count
/// override only applies to edge lists.
pub fn parse(format: InputFormat, text: &str, n_override: Option<usize>) -> Result<Graph> {
    match format {
        InputFormat::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            decode_graph6(line)
        }
        InputFormat::EdgeList => parse_edge_list(text, n_override),
    }
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s).trim();
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!(
                "invalid graph6 character 0x{b:02x}"
            )));
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Bounds(
                "graph6 vertex counts above 258047 are not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 vertex count".into()));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    let mut g = Graph::empty(n)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if bytes.len() - pos != expected {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected}",
            bytes.len() - pos
        )));
    }
    let mut bit = 0usize;
    let mut current = 0u8;
    let mut have = 0usize;
    for j in 1..n {
        for i in 0..j {
            if have == 0 {
                current = bytes[pos] - 63;
                pos += 1;
                have = 6;
            }
            if current >> 5 & 1 == 1 {
                g.adj[i] |= 1 << j;
                g.adj[j] |= 1 << i;
            }
            current <<= 1;
            have -= 1;
            bit += 1;
        }
    }
    debug_assert_eq!(bit, nbits);
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut current = 0u8;
    let mut have = 0;
    for j in 1..n {
        for i in 0..j {
            current = (current << 1) | u8::from(g.has_edge(i, j));
            have += 1;
            if have == 6 {
                out.push(current + 63);
                current = 0;
                have = 0;
            }
        }
    }
    if have > 0 {
        out.push((current << (6 - have)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_edge_list(text: &str, n_override: Option<usize>) -> Result<Graph> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_seen: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected \"u v\", got {raw:?}",
                    lineno + 1
                )))
            }
        };
        let u: usize = u
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex {u:?}", lineno + 1)))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex {v:?}", lineno + 1)))?;
        if u == v {
            return Err(Error::Parse(format!(
                "line {}: self-loop at vertex {u}",
                lineno + 1
            )));
        }
        let e = (u.min(v), u.max(v));
        if edges.contains(&e) {
            return Err(Error::Parse(format!(
                "line {}: duplicate edge ({u}, {v})",
                lineno + 1
            )));
        }
        edges.push(e);
        max_seen = Some(max_seen.map_or(e.1, |m: usize| m.max(e.1)));
    }
    let n = match n_override {
        Some(n) => {
            if let Some(m) = max_seen {
                if m >= n {
                    return Err(Error::Parse(format!(
                        "vertex {m} out of range for declared count {n}"
                    )));
                }
            }
            n
        }
        None => max_seen.map_or(0, |m| m + 1),
    };
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{empty_graph, path, Graph};

    #[test]
    fn graph6_decoding_by_hand() {
        // 'B' = 3 vertices; '_' = 32 = 100000 -> only the (0,1) bit set
        let g = decode_graph6("B_").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        // P_3 with edges (0,2),(1,2): bits x01=0, x02=1, x12=1 -> 011000 = 'W'
        let g = decode_graph6("BW").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(
            g.canonical_form().unwrap(),
            path(3).canonical_form().unwrap()
        );
        // standard sample: "DQc" is the 5-vertex graph 02,04,13,34
        let g = decode_graph6("DQc").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn graph6_round_trip_and_header() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6(">>graph6<<DQc").unwrap(), g);
        assert_eq!(encode_graph6(&empty_graph(0)), "?");
        assert_eq!(decode_graph6("?").unwrap().n(), 0);
        // multi-byte vertex count
        let big = empty_graph(63);
        assert_eq!(decode_graph6(&encode_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("B").is_err()); // missing body
        assert!(decode_graph6("B__").is_err()); // trailing garbage
        assert!(decode_graph6("B\u{1}").is_err()); // invalid character
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2", None).unwrap();
        assert_eq!(g, path(3));
        assert!(parse_edge_list("0 0", None).is_err());
        assert!(parse_edge_list("0 1\n1 0", None).is_err());
        assert!(parse_edge_list("0 1 2", None).is_err());
        assert!(parse_edge_list("0 x", None).is_err());
        // comments and the vertex-count override
        let g = parse_edge_list("# a triangle plus an isolate\n0 1\n1 2 # last\n0 2", Some(5))
            .unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 3));
        assert!(parse_edge_list("0 7", Some(3)).is_err());
        assert_eq!(parse_edge_list("", Some(2)).unwrap(), empty_graph(2));
        assert_eq!(parse_edge_list("", None).unwrap().n(), 0);
    }
}
