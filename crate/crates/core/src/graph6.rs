//! The graph6 ASCII format (header `>>graph6<<` optional on input, never emitted).

use crate::error::{PzfError, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(b: u8) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(PzfError::Graph6(format!("byte {b:#04x} outside the printable range")))
    }
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let bytes = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    let truncated = || PzfError::Graph6("truncated input".into());
    let read = |from: usize, count: usize| -> Result<usize> {
        let chunk = bytes.get(from..from + count).ok_or_else(truncated)?;
        chunk
            .iter()
            .try_fold(0usize, |acc, &b| Ok((acc << 6) | sextet(b)? as usize))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(truncated()),
        Some(126) if bytes.get(1) == Some(&126) => (read(2, 6)?, 8),
        Some(126) => (read(1, 3)?, 4),
        Some(&b) => (sextet(b)? as usize, 1),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() != pos + bytes_needed {
        return Err(PzfError::Graph6(format!(
            "expected {bytes_needed} data bytes for order {n}, found {}",
            bytes.len().saturating_sub(pos)
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                current = sextet(bytes[pos])?;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Decodes every non-empty line of a graph6 corpus.
pub fn decode_all(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(decode)
        .collect()
}
