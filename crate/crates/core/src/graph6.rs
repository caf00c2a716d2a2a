//! graph6 encoding as published with nauty.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &[u8] = b">>graph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
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
}

pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    out
}

pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is printable ASCII")
}

pub fn decode(s: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if s.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = s.len();
    while end > start && s[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let data = &s[..end];
    let err = |offset: usize, reason: &str| Error::Graph6 { offset, reason: reason.to_string() };
    for (i, &b) in data.iter().enumerate().skip(start) {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let mut pos = start;
    let take = |count: usize, pos: &mut usize| -> Result<usize> {
        let mut v = 0usize;
        for _ in 0..count {
            let b = *data.get(*pos).ok_or_else(|| err(*pos, "truncated size field"))?;
            v = (v << 6) | (b - 63) as usize;
            *pos += 1;
        }
        Ok(v)
    };
    let first = *data.get(pos).ok_or_else(|| err(pos, "empty input"))?;
    let n = if first < 126 {
        pos += 1;
        (first - 63) as usize
    } else if data.get(pos + 1) == Some(&126) {
        pos += 2;
        take(6, &mut pos)?
    } else {
        pos += 1;
        take(3, &mut pos)?
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if data.len() - pos != nbytes {
        return Err(err(pos, &format!("expected {nbytes} edge bytes, found {}", data.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[data.len() - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(err(data.len() - 1, "non-zero padding bits"));
        }
    }
    Graph::build(n, &edges)
}

pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(encode_string(&k3), "Bw");
        assert_eq!(encode_string(&Graph::empty(1)), "@");
        assert_eq!(encode_string(&Graph::empty(0)), "?");
        assert_eq!(decode_str("Bw").unwrap(), k3);
    }

    #[test]
    fn long_header() {
        let g = Graph::build(70, &[(0, 69), (3, 4)]).unwrap();
        let s = encode(&g);
        assert_eq!(&s[..4], &[126, 63, 64, 69]);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_reports_offset() {
        match decode(b"B!") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(decode(b"Bww").is_err());
        assert!(decode(b"Bx").is_err());
    }
}
