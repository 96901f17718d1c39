//! The graph6 format.
//!
//! A graph6 string is `N(n) R(x)` where `N(n)` encodes the vertex count and
//! `R(x)` packs the upper triangle of the adjacency matrix column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) into 6-bit groups, each offset
//! by 63. Counts up to 62 take one byte, up to 258047 take `~` plus three
//! bytes, and larger counts take `~~` plus six bytes.

use thiserror::Error;

use super::{Graph, DEFAULT_MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

const SMALL_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LARGE_MAX: usize = 68_719_476_735;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 alphabet")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("malformed vertex count at offset {offset}")]
    BadLength { offset: usize },
    #[error("truncated edge data at offset {offset}: expected {expected} bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("non-zero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph with {n} vertices exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph with no vertices")]
    NullGraph,
}

/// Parses one graph6 record. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    parse_graph6_capped(text, DEFAULT_MAX_VERTICES)
}

pub fn parse_graph6_capped(text: &str, max_vertices: usize) -> Result<Graph, Graph6Error> {
    let start = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = start;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            offset: base + i,
            byte: bytes[i],
        });
    }

    let (n, header_len) = decode_count(bytes, base)?;
    if n == 0 {
        return Err(Graph6Error::NullGraph);
    }
    if n > max_vertices {
        return Err(Graph6Error::TooLarge { n, cap: max_vertices });
    }

    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: base + bytes.len(),
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData {
            offset: base + header_len + expected,
        });
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = data[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding {
                offset: base + header_len + expected - 1,
            });
        }
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = data[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 bit vector yields a simple graph"))
}

fn decode_count(bytes: &[u8], base: usize) -> Result<(usize, usize), Graph6Error> {
    let bad = |offset| Graph6Error::BadLength { offset: base + offset };
    let read = |from: usize, len: usize| -> Result<usize, Graph6Error> {
        let slice = bytes.get(from..from + len).ok_or_else(|| bad(from))?;
        Ok(slice.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63)))
    };
    if bytes[0] != 126 {
        return Ok((usize::from(bytes[0] - 63), 1));
    }
    if bytes.get(1) == Some(&126) {
        let n = read(2, 6)?;
        if n <= MEDIUM_MAX {
            return Err(bad(0));
        }
        Ok((n, 8))
    } else {
        let n = read(1, 3)?;
        if n <= SMALL_MAX {
            return Err(bad(0));
        }
        Ok((n, 4))
    }
}

fn encode_count(n: usize, out: &mut Vec<u8>) {
    if n <= SMALL_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        assert!(n <= LARGE_MAX, "graph6 cannot encode {n} vertices");
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
}

/// Encodes `g` as graph6 without header or trailing newline.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_count(n, &mut out);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
