//! graph6 and plain edge-list serialization.
//!
//! graph6 follows the format published with nauty: an order prefix, then the
//! upper triangle of the adjacency matrix in column-major order packed into
//! 6-bit groups offset by 63.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let body = line.trim_end_matches(['\n', '\r']);
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    let err = |offset: usize, message: &str| Error::Graph6 {
        offset: offset + skip,
        message: message.to_string(),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    if bytes.is_empty() {
        return Err(err(0, "empty line"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(err(bytes.len(), "truncated order field"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(err(bytes.len(), "truncated order field"));
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(err(
            bytes.len().min(pos + need),
            &format!("expected {need} adjacency bytes for order {n}, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.link(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && cur & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(err(pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::EdgeList {
                line,
                message: format!("expected two non-negative integers, got '{l}'"),
            }),
        }
    };
    let (line, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "missing 'n m' header".into(),
    })?;
    let (n, m) = parse_pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
    }
    if edges.len() != m {
        return Err(Error::EdgeList {
            line: 1,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

/// Graph file format, chosen by extension or explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            _ => Format::EdgeList,
        }
    }
}

/// Reads every graph in a file: one per line for graph6, one per file for edge lists.
pub fn read_graphs(text: &str, format: Format) -> Result<Vec<Graph>> {
    match format {
        Format::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(from_graph6)
            .collect(),
        Format::EdgeList => Ok(vec![from_edge_list(text)?]),
    }
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => format!("{}\n", to_graph6(g)),
        Format::EdgeList => to_edge_list(g),
    }
}
