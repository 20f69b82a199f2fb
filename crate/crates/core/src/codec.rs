//! graph6 reading and writing (short form only, n <= 62).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_GRAPH6_ORDER: usize = 62;
pub const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 record. A trailing newline and a leading header are
/// accepted; anything else outside the record is an error.
pub fn parse_graph6(line: &[u8]) -> Result<Graph> {
    let mut line = line;
    if let Some(rest) = line.strip_prefix(HEADER.as_bytes()) {
        line = rest;
    }
    while let Some((&last, rest)) = line.split_last() {
        if last == b'\n' || last == b'\r' {
            line = rest;
        } else {
            break;
        }
    }
    let (&first, body) = line
        .split_first()
        .ok_or_else(|| Error::MalformedGraph6("empty record".into()))?;
    if !(63..=126).contains(&first) {
        return Err(Error::MalformedGraph6(format!("size byte {first} out of range")));
    }
    if first == 126 {
        return Err(Error::MalformedGraph6("long-form orders (n > 62) are not supported".into()));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::MalformedGraph6(format!("byte {} at offset {} out of range", body[pos], pos + 1)));
    }
    let bit = |k: usize| -> bool { (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 };
    if (bits..expected * 6).any(bit) {
        return Err(Error::MalformedGraph6("nonzero padding bits".into()));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn parse_graph6_str(line: &str) -> Result<Graph> {
    parse_graph6(line.as_bytes())
}

/// Encodes `g` under its current labeling, without a trailing newline.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::TooLarge {
            n,
            max: MAX_GRAPH6_ORDER,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + bits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// One parsed line of a graph6 file, tagged with its 1-based line number.
#[derive(Debug)]
pub struct Record {
    pub line_no: usize,
    pub text: String,
    pub graph: Result<Graph>,
}

/// Splits graph6 text into records, skipping blank lines and a header line.
pub fn read_graph6_text(text: &str) -> Vec<Record> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let mut t = raw.trim_end_matches('\r');
            if i == 0 {
                t = t.strip_prefix(HEADER).unwrap_or(t);
            }
            if t.trim().is_empty() {
                return None;
            }
            Some(Record {
                line_no: i + 1,
                text: t.to_string(),
                graph: parse_graph6_str(t),
            })
        })
        .collect()
}

/// All graphs of a graph6 file, failing on the first bad line.
pub fn read_graph6_all(text: &str) -> Result<Vec<Graph>> {
    read_graph6_text(text)
        .into_iter()
        .map(|r| {
            r.graph
                .map_err(|e| Error::MalformedGraph6(format!("line {}: {e}", r.line_no)))
        })
        .collect()
}

/// One record per line, LF-terminated, no header.
pub fn write_graph6_lines<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<String> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&emit_graph6(g)?);
        out.push('\n');
    }
    Ok(out)
}

/// Undirected DOT graph named `name`; isolated vertices are listed too.
pub fn emit_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.order() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(parse_graph6(b"A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(parse_graph6(b"@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(parse_graph6(b"B?").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(parse_graph6(b"A_\n").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(parse_graph6(b">>graph6<<A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(parse_graph6(b"?").unwrap(), Graph::empty(0).unwrap());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(emit_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(emit_graph6(&Graph::complete(2).unwrap()).unwrap(), "A_");
        // The petgraph/networkx reference value for this 5-vertex graph.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g).unwrap(), "DQc");
        assert_eq!(emit_graph6(&Graph::complete(4).unwrap()).unwrap(), "C~");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [&b""[..], b"A", b"A__", b"A\x20", b"B?\x7f", b"A`", b"~??"] {
            assert!(matches!(parse_graph6(bad), Err(Error::MalformedGraph6(_))), "{bad:?}");
        }
    }

    #[test]
    fn too_large_to_emit() {
        let g = Graph::empty(63).unwrap();
        assert!(matches!(emit_graph6(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn reads_files_with_line_numbers() {
        let recs = read_graph6_text(">>graph6<<A_\n\nB?\nzz\n");
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].line_no, 1);
        assert!(recs[0].graph.is_ok());
        assert_eq!(recs[1].line_no, 3);
        assert_eq!(recs[2].line_no, 4);
        assert!(recs[2].graph.is_err());
        assert!(read_graph6_all("A_\nzz\n").is_err());
    }

    #[test]
    fn dot_lists_vertices_and_edges() {
        let dot = emit_dot(&Graph::path(3).unwrap(), "p3");
        assert_eq!(dot, "graph p3 {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
    }
}
