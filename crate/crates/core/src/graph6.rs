//! graph6 encoding and decoding.
//!
//! graph6 is the compact ASCII format for undirected simple graphs: a header
//! carrying the order followed by the upper triangle of the adjacency matrix,
//! read column by column (`(0,1); (0,2), (1,2); (0,3), ...`), packed six bits
//! per printable byte (offset 63).  Orders up to 62 use a single header byte;
//! 63 and 64 use the `~`-prefixed long form.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, MAX_VERTICES};

/// Decoding errors.  Each failure mode is reported distinctly so callers can
/// tell a bad file apart from a graph this crate refuses to handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    /// Empty input or a header byte outside the printable graph6 range.
    MalformedHeader,
    /// The header declared an order of 0 or above [`MAX_VERTICES`].
    UnsupportedOrder(usize),
    /// Fewer adjacency bytes than the order requires.
    Truncated { needed: usize, got: usize },
    /// More adjacency bytes than the order requires.
    TrailingGarbage,
    /// A payload byte outside the printable graph6 range.
    InvalidByte { position: usize },
    /// The final partial group carried set bits beyond the triangle.
    BadPadding,
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::MalformedHeader => write!(f, "malformed graph6 header"),
            Graph6Error::UnsupportedOrder(n) => {
                write!(f, "graph6 order {} outside 1..={}", n, MAX_VERTICES)
            }
            Graph6Error::Truncated { needed, got } => {
                write!(f, "truncated graph6: need {} adjacency bytes, got {}", needed, got)
            }
            Graph6Error::TrailingGarbage => write!(f, "trailing bytes after graph6 adjacency data"),
            Graph6Error::InvalidByte { position } => {
                write!(f, "invalid graph6 byte at position {}", position)
            }
            Graph6Error::BadPadding => write!(f, "non-zero padding bits in final graph6 byte"),
        }
    }
}

impl core::error::Error for Graph6Error {}

/// Number of 6-bit groups needed for `bits` bits.
fn groups(bits: usize) -> usize {
    bits.div_ceil(6)
}

/// Encodes a graph in graph6.  The output is pure printable ASCII with no
/// trailing newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        // Long form: `~` then 18 bits of order, high group first.
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    debug_assert_eq!(out.len(), header_len(n) + groups(n * (n - 1) / 2));
    // Every byte is 63..=126, hence valid UTF-8.
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn header_len(n: usize) -> usize {
    if n <= 62 {
        1
    } else {
        4
    }
}

/// Decodes a graph6 string.  Leading and trailing ASCII whitespace is
/// tolerated; anything else must be an exact encoding.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_matches(|c: char| c.is_ascii_whitespace()).as_bytes();
    let (n, rest) = match bytes {
        [] => return Err(Graph6Error::MalformedHeader),
        [126, a, b, c, rest @ ..] => {
            for x in [*a, *b, *c] {
                if !(63..=126).contains(&x) {
                    return Err(Graph6Error::MalformedHeader);
                }
            }
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            (n, rest)
        }
        [126, ..] => return Err(Graph6Error::MalformedHeader),
        [h, rest @ ..] => {
            if !(63..=125).contains(h) {
                return Err(Graph6Error::MalformedHeader);
            }
            ((h - 63) as usize, rest)
        }
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedOrder(n));
    }

    let bits = n * (n - 1) / 2;
    let needed = groups(bits);
    if rest.len() < needed {
        return Err(Graph6Error::Truncated { needed, got: rest.len() });
    }
    if rest.len() > needed {
        return Err(Graph6Error::TrailingGarbage);
    }

    let mut g = Graph::empty(n).map_err(|_| Graph6Error::UnsupportedOrder(n))?;
    let mut bit_index = 0;
    for (i, &byte) in rest.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { position: header_len(n) + i });
        }
        let group = byte - 63;
        for k in (0..6).rev() {
            let bit = group >> k & 1;
            if bit_index >= bits {
                if bit == 1 {
                    return Err(Graph6Error::BadPadding);
                }
                continue;
            }
            if bit == 1 {
                let (u, v) = triangle_position(bit_index);
                g.add_edge(u, v);
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

/// Maps a flat upper-triangle index back to its `(row, column)` pair,
/// following the column-major graph6 order.
fn triangle_position(index: usize) -> (usize, usize) {
    // Column v holds v bits; find the column containing `index`.
    let mut v = 1;
    let mut start = 0;
    while start + v <= index {
        start += v;
        v += 1;
    }
    (index - start, v)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn single_vertex_is_at_sign() {
        let k1 = generate(&Family::Complete(1)).unwrap();
        assert_eq!(emit_graph6(&k1), "@");
        assert_eq!(parse_graph6("@").unwrap(), k1);
    }

    #[test]
    fn known_small_codes() {
        // "D?{" = order 5, groups 000000 111100: vertex 4 adjacent to all
        // others, i.e. the star with centre 4.
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.degree(4), 4);
        assert_eq!(g.size(), 4);
        assert_eq!(emit_graph6(&g), "D?{");

        // P_4 is 0-1-2-3: bits (0,1)=1; (0,2)=0,(1,2)=1; (0,3)=0,(1,3)=0,
        // (2,3)=1 -> 101001 = 'h'.
        let p4 = generate(&Family::Path(4)).unwrap();
        assert_eq!(emit_graph6(&p4), "Ch");
        assert_eq!(parse_graph6("Ch").unwrap(), p4);
    }

    #[test]
    fn round_trip_families() {
        for g in [
            generate(&Family::Petersen).unwrap(),
            generate(&Family::CompleteBipartite(3, 4)).unwrap(),
            generate(&Family::Complete(10)).unwrap(),
            generate(&Family::Null(7)).unwrap(),
            generate(&Family::Wheel(9)).unwrap(),
        ] {
            assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn long_form_for_orders_63_and_64() {
        for n in [63, 64] {
            let g = generate(&Family::Path(n)).unwrap();
            let enc = emit_graph6(&g);
            assert!(enc.starts_with('~'));
            assert_eq!(parse_graph6(&enc).unwrap(), g);
            let k = generate(&Family::Complete(n)).unwrap();
            assert_eq!(parse_graph6(&emit_graph6(&k)).unwrap(), k);
        }
    }

    #[test]
    fn whitespace_is_tolerated() {
        let p4 = generate(&Family::Path(4)).unwrap();
        assert_eq!(parse_graph6("Ch\n").unwrap(), p4);
        assert_eq!(parse_graph6("  Ch  ").unwrap(), p4);
    }

    #[test]
    fn each_failure_mode_is_distinct() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::MalformedHeader));
        assert_eq!(parse_graph6(">"), Err(Graph6Error::MalformedHeader));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::MalformedHeader));
        assert_eq!(parse_graph6("?"), Err(Graph6Error::UnsupportedOrder(0)));
        // 65 = 0b000001_000001 under `~`: bytes 63+0, 63+1, 63+1
        assert_eq!(parse_graph6("~?@@"), Err(Graph6Error::UnsupportedOrder(65)));
        assert_eq!(parse_graph6("D?"), Err(Graph6Error::Truncated { needed: 2, got: 1 }));
        assert_eq!(parse_graph6("D?{?"), Err(Graph6Error::TrailingGarbage));
        // Order 5 uses 10 of 12 bits; 'A' = 000010 sets a padding bit.
        assert_eq!(parse_graph6("D?A"), Err(Graph6Error::BadPadding));
    }

    #[test]
    fn triangle_position_walks_columns() {
        assert_eq!(triangle_position(0), (0, 1));
        assert_eq!(triangle_position(1), (0, 2));
        assert_eq!(triangle_position(2), (1, 2));
        assert_eq!(triangle_position(3), (0, 3));
        assert_eq!(triangle_position(9), (3, 4));
    }
}
