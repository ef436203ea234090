//! graph6 and DIMACS `.col` readers and writers.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, ParseError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dimacs" | "col" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Largest order the graph6 size prefix can express.
pub const GRAPH6_MAX_N: usize = (1 << 36) - 1;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

pub fn parse(format: Format, text: &[u8]) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn serialize(format: Format, g: &Graph) -> Result<Vec<u8>, GraphError> {
    match format {
        Format::Graph6 => write_graph6(g).map(String::into_bytes),
        Format::Dimacs => Ok(write_dimacs(g).into_bytes()),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and trailing
/// newline are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, ParseError> {
    let mut start = 0;
    if text.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = text.len();
    while end > start && matches!(text[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &text[start..end];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::new(start + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let sextet = |i: usize| -> Result<usize, ParseError> {
        body.get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| ParseError::new(start + i, "truncated size prefix"))
    };
    let (n, mut pos) = match body.first() {
        None => return Err(ParseError::new(start, "empty graph6 string")),
        Some(126) if body.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < pos + needed {
        return Err(ParseError::new(
            start + body.len(),
            format!("truncated bit vector: need {needed} bytes, found {}", body.len() - pos),
        ));
    }
    if body.len() > pos + needed {
        return Err(ParseError::new(start + pos + needed, "trailing bytes after bit vector"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    pos += needed;
    debug_assert_eq!(pos, body.len());
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(start, e.to_string()))
}

pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(GraphError::TooLarge { n, max: GRAPH6_MAX_N });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Reads DIMACS `.col` text: `c` comments, one `p edge n m` line, `e u v`
/// edges with 1-based endpoints. Repeated edges are merged.
pub fn parse_dimacs(text: &[u8]) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive(|&b| b == b'\n') {
        let line_offset = offset;
        offset += raw.len();
        let line = std::str::from_utf8(raw)
            .map_err(|_| ParseError::new(line_offset, "line is not valid UTF-8"))?
            .trim();
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(ParseError::new(line_offset, "duplicate problem line"));
                }
                let kind = fields.next();
                if !matches!(kind, Some("edge" | "col" | "edges")) {
                    return Err(ParseError::new(line_offset, "expected `p edge <n> <m>`"));
                }
                let nv = parse_field(fields.next(), line_offset, "vertex count")?;
                parse_field(fields.next(), line_offset, "edge count")?;
                if fields.next().is_some() {
                    return Err(ParseError::new(line_offset, "trailing fields in problem line"));
                }
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| ParseError::new(line_offset, "edge before problem line"))?;
                let u = parse_field(fields.next(), line_offset, "edge endpoint")?;
                let v = parse_field(fields.next(), line_offset, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > nv {
                        return Err(ParseError::new(
                            line_offset,
                            format!("vertex {w} outside 1..={nv}"),
                        ));
                    }
                }
                if u == v {
                    return Err(ParseError::new(line_offset, format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(tag) => {
                return Err(ParseError::new(line_offset, format!("unknown line type `{tag}`")));
            }
        }
    }
    let n = n.ok_or_else(|| ParseError::new(text.len(), "missing problem line"))?;
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(0, e.to_string()))
}

fn parse_field(field: Option<&str>, offset: usize, what: &str) -> Result<usize, ParseError> {
    field
        .ok_or_else(|| ParseError::new(offset, format!("missing {what}")))?
        .parse()
        .map_err(|_| ParseError::new(offset, format!("malformed {what}")))
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn dimacs_path_and_errors() {
        let g = parse_dimacs(b"p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        let err = parse_dimacs(b"p edge 3 2\ne 1 4\n").unwrap_err();
        assert_eq!(err.offset, 11);
        assert!(parse_dimacs(b"p edge x 2\n").is_err());
        assert!(parse_dimacs(b"e 1 2\n").is_err());
        assert!(parse_dimacs(b"c only a comment\n").is_err());
    }

    #[test]
    fn dimacs_writer() {
        let text = write_dimacs(&k3());
        assert_eq!(text, "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(write_dimacs(&Graph::empty(4)), "p edge 4 0\n");
    }

    #[test]
    fn graph6_known_strings() {
        // K3 is "Bw", the 5-cycle 0-1-2-3-4 is "Dhc".
        assert_eq!(write_graph6(&k3()).unwrap(), "Bw");
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(write_graph6(&c5).unwrap(), "Dhc");
        assert_eq!(parse_graph6(b">>graph6<<Dhc\n").unwrap(), c5);
        assert_eq!(parse_graph6(b"D~{").unwrap().m(), 10);
        assert_eq!(write_graph6(&parse_graph6(b"D~{").unwrap()).unwrap(), "D~{");
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(b"D~").unwrap_err().offset, 2);
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"D\x10{").is_err());
        assert!(parse_graph6(b"Bw?").is_err());
    }

    #[test]
    fn graph6_large_prefix() {
        let edges: Vec<_> = (0..99).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(100, &edges).unwrap();
        let s = write_graph6(&g).unwrap();
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }
}
