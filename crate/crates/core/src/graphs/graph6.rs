//! graph6 text format.
//!
//! Layout: a size prefix (`n + 63` for `n <= 62`, otherwise `~` followed by
//! three 6-bit groups), then the upper triangle of the adjacency matrix in
//! column-major order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) packed big-endian
//! into 6-bit groups, each offset by 63.

use std::fs;
use std::path::Path;

use super::{pairs, Graph, MAX_VERTICES};
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + pairs(n).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
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

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn decode(text: &str) -> Result<Graph> {
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = text[base..].trim_end_matches(['\n', '\r']).as_bytes();
    let at = |i: usize| -> Result<u8> {
        let b = *bytes
            .get(i)
            .ok_or_else(|| Error::parse(base + i, "unexpected end of input"))?;
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
        Ok(b - 63)
    };
    let (n, mut pos) = match at(0)? {
        63 => {
            if bytes.get(1) == Some(&b'~') {
                return Err(Error::parse(base + 1, "36-bit sizes exceed the 64 vertex limit"));
            }
            let mut n = 0usize;
            for k in 1..=3 {
                n = (n << 6) | at(k)? as usize;
            }
            (n, 4)
        }
        small => (small as usize, 1),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::parse(base, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let expected = pos + pairs(n).div_ceil(6);
    if bytes.len() != expected {
        let offset = base + bytes.len().min(expected);
        return Err(Error::parse(
            offset,
            format!("expected {expected} bytes for {n} vertices, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::new(n)?;
    let mut group = 0u8;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                group = at(pos)?;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if group >> left & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    if left > 0 && group & ((1 << left) - 1) != 0 {
        return Err(Error::parse(base + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

/// Parses newline-delimited graph6 text; blank lines are skipped. Offsets in
/// errors are relative to the whole input.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_end_matches(['\n', '\r']);
        if !trimmed.trim().is_empty() {
            out.push(decode(trimmed).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    decode_lines(&text)
}

pub fn write_file(path: impl AsRef<Path>, graphs: &[Graph]) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::new();
    for g in graphs {
        text.push_str(&encode(g));
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_labelled;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::complete(3)), "Bw");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&Graph::empty(2)), "A?");
        assert_eq!(encode(&Graph::complete(2)), "A_");
        // the 5-cycle 0-1-2-3-4-0
        assert_eq!(encode(&Graph::cycle(5)), "Dhc");
        assert_eq!(decode("Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn large_sizes_use_long_prefix() {
        let g = Graph::cycle(64);
        let s = encode(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(decode(&s).unwrap(), g);
        let h = Graph::path(62);
        assert_eq!(encode(&h).as_bytes()[0], 125);
        assert_eq!(decode(&encode(&h)).unwrap(), h);
    }

    #[test]
    fn exhaustive_round_trip() {
        for n in 1..=6 {
            for g in enumerate_labelled(n).unwrap() {
                assert_eq!(decode(&encode(&g)).unwrap(), g);
            }
        }
    }

    #[test]
    fn header_and_lines() {
        assert_eq!(decode(">>graph6<<Bw").unwrap(), Graph::complete(3));
        let gs = decode_lines("Bw\n\n@\r\nDhc\n").unwrap();
        assert_eq!(gs, vec![Graph::complete(3), Graph::empty(1), Graph::cycle(5)]);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let offset = |s: &str| match decode(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(offset(""), 0);
        assert_eq!(offset("?"), 0);
        assert_eq!(offset("B"), 1);
        assert_eq!(offset("Bww"), 2);
        assert_eq!(offset("B\x7f"), 1);
        // 3 vertices use only 3 of the 6 data bits
        assert_eq!(offset("Bx"), 1);
        assert_eq!(offset("~~"), 1);
        match decode_lines("Bw\nB!\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
    }
}
