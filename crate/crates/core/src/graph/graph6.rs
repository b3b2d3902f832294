//! graph6: `N(n)` followed by the upper triangle in column order
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, each byte offset
//! by 63.

use super::{Graph, MAX_ORDER};
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parse one graph6 line. A trailing newline and the optional `>>graph6<<`
/// header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (base, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    let first = *body.first().ok_or_else(|| err(base, "empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(base, format!("byte {first:#04x} outside 63..=126")));
    }
    if first == 126 {
        return Err(err(base, format!("multi-byte order prefix: order exceeds {MAX_ORDER}")));
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(err(base, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    let payload = &body[1..];
    if payload.len() < need {
        return Err(err(
            base + 1 + payload.len(),
            format!("truncated: expected {need} payload bytes, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(err(base + 1 + need, "trailing bytes after payload"));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for (i, &byte) in payload.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(err(base + 1 + i, format!("byte {byte:#04x} outside 63..=126")));
        }
        let group = byte - 63;
        for shift in (0..6).rev() {
            let bit = group >> shift & 1 == 1;
            if k < bits {
                if bit {
                    let (u, v) = pair_at(k);
                    g.try_add_edge(u, v)?;
                }
            } else if bit {
                return Err(err(base + 1 + i, "nonzero padding bit"));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Position `k` of the column-order upper triangle as `(row, column)`.
fn pair_at(k: usize) -> (usize, usize) {
    let mut v = 1;
    let mut start = 0;
    while start + v <= k {
        start += v;
        v += 1;
    }
    (k - start, v)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group = group << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_reference_strings() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.order(), k2.edges()), (2, vec![(0, 1)]));
        let e3 = parse_graph6("B?").unwrap();
        assert_eq!((e3.order(), e3.edge_count()), (3, 0));
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn encodes_petgraph_reference() {
        // Edges a-c, a-e, b-d, d-e on five vertices encode as "DQc".
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn accepts_header_and_newline() {
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap().edge_count(), 6);
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(
            parse_graph6("C~~"),
            Err(Error::Graph6 {
                offset: 2,
                reason: "trailing bytes after payload".into()
            })
        );
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("D Q"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse_graph6("Dx\x7f"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("?"), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("~??"), Err(Error::Graph6 { .. })));
        // K2 with a stray padding bit.
        assert!(matches!(parse_graph6("A`"), Err(Error::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn pair_order_is_column_major() {
        let got: Vec<_> = (0..6).map(pair_at).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }
}
