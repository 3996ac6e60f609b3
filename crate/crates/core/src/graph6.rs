//! graph6 encoding.
//!
//! A graph6 line is a size header followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), …`),
//! packed six bits per byte and offset by 63. Sizes below 63 take one byte;
//! 63 and 64 use the `~` prefix and three further bytes.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Column-major upper-triangle pairs `(i, j)`, `i < j`.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n < 63 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in pairs(n) {
        acc = (acc << 1) | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push((acc + 63) as char);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are accepted; anything else that is not a
/// canonical-length encoding is rejected with the offending byte offset.
pub fn read_graph6(line: &str) -> Result<Graph> {
    let trimmed = line.trim();
    let lead = line.len() - line.trim_start().len();
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest, lead + HEADER.len()),
        None => (trimmed, lead),
    };
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                base + i,
                format!("byte {b:#04x} is outside the graph6 range"),
            ));
        }
    }

    let (n, start) = match bytes.first() {
        None => return Err(parse_err(base, "missing size header")),
        Some(b'~') => {
            if bytes.get(1) == Some(&b'~') {
                return Err(parse_err(
                    base + 1,
                    "eight-byte size headers exceed capacity",
                ));
            }
            if bytes.len() < 4 {
                return Err(parse_err(base + bytes.len(), "truncated size header"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            if n < 63 {
                return Err(parse_err(
                    base,
                    format!("size {n} must use the short header"),
                ));
            }
            (n, 4)
        }
        Some(&b) => (usize::from(b - 63), 1),
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }

    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let payload = &bytes[start..];
    if payload.len() < needed {
        return Err(parse_err(
            base + bytes.len(),
            format!("truncated payload: {} of {needed} bytes", payload.len()),
        ));
    }
    if payload.len() > needed {
        return Err(parse_err(
            base + start + needed,
            "trailing bytes after payload",
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut bits = payload
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |k| (b - 63) >> k & 1));
    for (i, j) in pairs(n) {
        if bits.next() == Some(1) {
            g.insert_edge(i, j);
        }
    }
    if bits.any(|b| b != 0) {
        return Err(parse_err(base + bytes.len() - 1, "nonzero padding bits"));
    }
    Ok(g)
}

/// Reads every nonblank line of a graph6 stream.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("line {}: {e}", lineno + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(read_graph6(&line).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset,
                message: format!("line {}: {message}", lineno + 1),
            },
            other => other,
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let g = read_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(
            g,
            Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap()
        );
        assert_eq!(write_graph6(&g), "D?{");
        assert_eq!(write_graph6(&Graph::complete(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(read_graph6("?").unwrap(), Graph::empty(0).unwrap());
    }

    #[test]
    fn known_encodings() {
        // standard examples: P_3 centred at 1 is "Bg"; K_4 is "C~"
        assert_eq!(write_graph6(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(write_graph6(&Graph::complete(4).unwrap()), "C~");
        let petgraph_example = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&petgraph_example), "DQc");
    }

    #[test]
    fn long_header() {
        let g = Graph::complete(64).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(read_graph6(&s).unwrap(), g);
        let c = Graph::cycle(63).unwrap();
        assert_eq!(read_graph6(&write_graph6(&c)).unwrap(), c);
    }

    #[test]
    fn header_and_whitespace() {
        let g = read_graph6(">>graph6<<D?{\n").unwrap();
        assert_eq!(write_graph6(&g), "D?{");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            read_graph6(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            read_graph6("D?"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            read_graph6("D?{?"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            read_graph6("D? {"),
            Err(Error::Parse { offset: 2, .. })
        ));
        // n = 2 uses one payload bit; the rest must be zero
        assert!(read_graph6("A_").is_ok());
        assert!(matches!(read_graph6("A`"), Err(Error::Parse { .. })));
        assert!(matches!(read_graph6("~??~"), Err(Error::Parse { .. })));
        assert_eq!(read_graph6("~?@@"), Err(Error::Capacity(65)));
    }

    #[test]
    fn reads_line_streams() {
        let text = "C~\n\nBg\n";
        let gs = read_graph6_lines(text.as_bytes()).unwrap();
        assert_eq!(gs.len(), 2);
        let err = read_graph6_lines("C~\nD?\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
