//! graph6 text codec (short form, n <= 62), one graph per line.

use crate::graph::{LabeledGraph, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("graph has {0} vertices but the short graph6 form stops at {max}", max = MAX_VERTICES)]
    TooLarge(usize),
    #[error("empty graph6 line")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph6 line truncated: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage at offset {0}")]
    TrailingData(usize),
}

/// Encodes a graph as a graph6 line (without the trailing newline).
pub fn encode(g: &LabeledGraph) -> Result<String, CodecError> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(CodecError::TooLarge(n));
    }
    let mut out = Vec::new();
    out.push(n as u8 + 63);
    // Upper triangle in column order: x(1,2), x(1,3), x(2,3), x(1,4), ...
    let mut bits: u8 = 0;
    let mut filled = 0;
    for v in 2..=n as u8 {
        for u in 1..v {
            bits <<= 1;
            if g.has_edge(u, v) {
                bits |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(bits + 63);
                bits = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((bits << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 line. `"?"` yields the 0-vertex graph; callers that
/// need at least one vertex must reject it themselves.
pub fn decode(line: &str) -> Result<LabeledGraph, CodecError> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(CodecError::Empty);
    }
    let b0 = bytes[0];
    if !(63..=126).contains(&b0) {
        return Err(CodecError::InvalidByte { byte: b0, offset: 0 });
    }
    let n = (b0 - 63) as usize;
    if n > MAX_VERTICES {
        return Err(CodecError::TooLarge(n));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < 1 + nbytes {
        return Err(CodecError::Truncated { expected: nbytes, found: bytes.len() - 1 });
    }
    if bytes.len() > 1 + nbytes {
        return Err(CodecError::TrailingData(1 + nbytes));
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    'outer: for v in 2..=n as u8 {
        for u in 1..v {
            let byte = bytes[1 + idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(CodecError::InvalidByte { byte, offset: 1 + idx / 6 });
            }
            let data = byte - 63;
            if data >> (5 - idx % 6) & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
            if idx == nbits {
                break 'outer;
            }
        }
    }
    // Padding bits past nbits are ignored by convention.
    Ok(LabeledGraph::new(n, &edges).expect("decoded edges are valid"))
}

/// Encodes many graphs, one per line.
pub fn encode_lines(graphs: &[LabeledGraph]) -> Result<String, CodecError> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&encode(g)?);
        out.push('\n');
    }
    Ok(out)
}

/// Decodes a whole file of graph6 lines, skipping blank lines.
pub fn decode_lines(text: &str) -> Result<Vec<LabeledGraph>, CodecError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(decode)
        .collect()
}
