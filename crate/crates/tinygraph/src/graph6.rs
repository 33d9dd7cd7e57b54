//! graph6 text format, one graph per line, optional `>>graph6<<` header.
//!
//! Encoding follows the published format: N(n) is `n+63` for n <= 62,
//! `126` followed by three 6-bit groups for n <= 258047, and `126 126`
//! followed by six groups above that. The upper triangle is emitted
//! column-wise (x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ...), padded with
//! zeros to a multiple of six bits, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        bytes.push(63 + acc);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ascii")
}

pub fn read_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6Parse {
            offset: 0,
            msg: "empty line".into(),
        });
    }
    let mut pos = 0usize;
    let group = |b: u8, at: usize| -> Result<usize> {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6Parse {
                offset: at,
                msg: format!("byte {b} outside graph6 range 63..=126"),
            });
        }
        Ok((b - 63) as usize)
    };
    let n = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            pos = 2;
            let mut n = 0usize;
            for _ in 0..6 {
                let b = *bytes.get(pos).ok_or(Error::Graph6Parse {
                    offset: pos,
                    msg: "truncated vertex count".into(),
                })?;
                n = (n << 6) | group(b, pos)?;
                pos += 1;
            }
            n
        } else {
            pos = 1;
            let mut n = 0usize;
            for _ in 0..3 {
                let b = *bytes.get(pos).ok_or(Error::Graph6Parse {
                    offset: pos,
                    msg: "truncated vertex count".into(),
                })?;
                n = (n << 6) | group(b, pos)?;
                pos += 1;
            }
            n
        }
    } else {
        let n = group(bytes[0], 0)?;
        pos = 1;
        n
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let group_count = bit_count.div_ceil(6);
    if bytes.len() != pos + group_count {
        return Err(Error::Graph6Parse {
            offset: bytes.len().min(pos + group_count),
            msg: format!(
                "expected {} adjacency bytes for n = {n}, found {}",
                group_count,
                bytes.len() - pos
            ),
        });
    }

    let mut g = Graph::empty(n);
    let mut bit_idx = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte_at = pos + bit_idx / 6;
            let val = group(bytes[byte_at], byte_at)?;
            if val >> (5 - bit_idx % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            bit_idx += 1;
            if bit_idx == bit_count {
                break 'outer;
            }
        }
    }
    // trailing padding bits must be zero
    if bit_count % 6 != 0 {
        let last = group(bytes[pos + group_count - 1], pos + group_count - 1)?;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6Parse {
                offset: pos + group_count - 1,
                msg: "nonzero padding bits".into(),
            });
        }
    }
    Ok(g)
}

/// Parse a whole file: one graph per nonempty line, header lines skipped.
pub fn read_graph6_file(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == GRAPH6_HEADER {
            continue;
        }
        out.push(read_graph6(line)?);
    }
    Ok(out)
}

pub fn write_graph6_file(graphs: &[Graph]) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&write_graph6(g));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_is_at_sign() {
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn empty_graph_is_question_mark() {
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(read_graph6("?").unwrap().vertex_count(), 0);
    }

    #[test]
    fn c5_round_trip() {
        let c5 = Graph::cycle(5);
        let enc = write_graph6(&c5);
        assert_eq!(read_graph6(&enc).unwrap(), c5);
    }

    #[test]
    fn known_encodings() {
        // K4 in graph6 is "C~" (n=4, bits 111111)
        assert_eq!(write_graph6(&Graph::complete(4)), "C~");
        assert_eq!(read_graph6("C~").unwrap(), Graph::complete(4));
        // P4 as 0-1-2-3: column bits x01 x02 x12 x03 x13 x23 = 101001 -> 'h'
        assert_eq!(write_graph6(&Graph::path(4)), "Ch");
    }

    #[test]
    fn header_is_accepted() {
        let enc = format!(">>graph6<<{}", write_graph6(&Graph::cycle(4)));
        assert_eq!(read_graph6(&enc).unwrap(), Graph::cycle(4));
    }

    #[test]
    fn malformed_inputs_error_with_offset() {
        match read_graph6("not-graph6!") {
            Err(Error::Graph6Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(read_graph6("").is_err());
        // truncated adjacency section
        assert!(read_graph6("D").is_err());
        // byte below range (space)
        assert!(read_graph6("C ").is_err());
    }

    #[test]
    fn medium_n_encoding_round_trip() {
        let g = Graph::path(100);
        let enc = write_graph6(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(read_graph6(&enc).unwrap(), g);
    }
}
