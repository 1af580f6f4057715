//! graph6 encoding (McKay's format).
//!
//! Size field: one byte `n + 63` for `n <= 62`; `126` then three bytes for
//! `n <= 258047`; `126 126` then six bytes beyond that. Payload: the upper
//! triangle in column order `(0,1), (0,2), (1,2), (0,3), ...`, six bits per
//! byte, most significant bit first, each byte offset by 63, last group
//! zero-padded.

use super::{Graph, GraphError};
use crate::gf2::BitMatrix;

const OFFSET: u8 = 63;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

/// Encodes `g` as a graph6 string (no header, no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighborhood(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(row.get(i));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a single graph6 string. An optional `>>graph6<<` header and
/// surrounding whitespace are ignored.
pub fn decode_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |m: &str| GraphError::Graph6(m.to_string());
    if bytes.is_empty() {
        return Err(bad("empty input"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b} outside the printable graph6 range")));
    }
    let sextet = |b: u8| (b - OFFSET) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (sextet(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(bad("truncated size field"));
        }
        let n = bytes[1..4].iter().fold(0, |acc, &b| (acc << 6) | sextet(b));
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(bad("truncated size field"));
        }
        let n = bytes[2..8].iter().fold(0, |acc, &b| (acc << 6) | sextet(b));
        (n, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} payload bytes for {n} vertices, got {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let bit_at = |k: usize| (sextet(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    if (bits..rest.len() * 6).any(bit_at) {
        return Err(bad("nonzero padding bits"));
    }
    let mut adj = BitMatrix::zeros(n, n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                adj.set_bit(i, j, true).expect("in range");
                adj.set_bit(j, i, true).expect("in range");
            }
            k += 1;
        }
    }
    Graph::new(adj)
}
