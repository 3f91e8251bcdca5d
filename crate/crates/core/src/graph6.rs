//! graph6 encoding (Brendan McKay's format) for graph I/O and counterexamples.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 258_047;

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= MAX_ORDER, "graph6 encoding supports at most {MAX_ORDER} vertices");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!("byte {:#04x} at offset {pos} is outside the graph6 range", bytes[pos])));
    }
    let (n, body) = match bytes[0] {
        126 => {
            if bytes.get(1) == Some(&126) {
                return Err(Error::Graph6("orders above 258047 are not supported".into()));
            }
            if bytes.len() < 4 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n <= 62 {
                return Err(Error::Graph6(format!("order {n} must use the one-byte header")));
            }
            (n, &bytes[4..])
        }
        b => ((b - 63) as usize, &bytes[1..]),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(Error::Graph6(format!("truncated bit field: need {need} bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!("{} trailing bytes after the bit field", body.len() - need)));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..need * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}
