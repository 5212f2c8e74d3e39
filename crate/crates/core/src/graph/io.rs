//! Text formats: graph6, plain biadjacency and DOT.
//!
//! graph6 describes the whole `(n1 + n2)`-vertex graph with side-1 vertices
//! numbered first. The side split does not fit in graph6 itself, so files
//! written here carry it on a metadata line directly before the graph:
//!
//! ```text
//! # bipartite 7 14 recipe=semi-double of=heawood
//! T?????????????????????????
//! ```
//!
//! Extra `key=value` tokens on the metadata line are kept as tags.

use std::collections::VecDeque;
use std::fmt::Write as _;

use super::BipartiteGraph;
use crate::error::{parse_err, Error, Result};

const HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// graph6 string of the full graph, side 1 first.
pub fn encode_graph6(g: &BipartiteGraph) -> String {
    let n = g.order();
    let n1 = g.n1();
    let adjacent = |u: usize, v: usize| -> bool {
        // u < v
        u < n1 && v >= n1 && g.has_edge(u, v - n1)
    };
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | adjacent(u, v) as u8;
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

fn read_sextet(bytes: &[u8], pos: usize) -> Result<u8> {
    match bytes.get(pos) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(parse_err(
            pos,
            format!("byte {b:#04x} outside the graph6 range"),
        )),
        None => Err(parse_err(pos, "unexpected end of graph6 data")),
    }
}

/// Decodes a graph6 string into `(n, adjacency lists)`.
/// `base` is added to reported byte offsets.
pub fn decode_graph6_raw(text: &str, base: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = base;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base += HEADER.len();
    }
    let at = |e: Error| match e {
        Error::Parse { offset, msg } => Error::Parse {
            offset: offset + base,
            msg,
        },
        other => other,
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(parse_err(base, "empty graph6 string")),
        Some(126) if bytes.get(1) == Some(&126) => {
            let mut n = 0usize;
            for k in 0..6 {
                n = (n << 6) | read_sextet(bytes, 2 + k).map_err(at)? as usize;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0usize;
            for k in 0..3 {
                n = (n << 6) | read_sextet(bytes, 1 + k).map_err(at)? as usize;
            }
            (n, 4)
        }
        Some(_) => (read_sextet(bytes, 0).map_err(at)? as usize, 1),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if bytes.len() != pos + expected {
        return Err(at(parse_err(
            pos.min(bytes.len()),
            format!(
                "graph6 body has {} bytes, expected {expected} for n = {n}",
                bytes.len().saturating_sub(pos)
            ),
        )));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    let mut sextet = 0u8;
    'outer: for v in 1..n {
        for u in 0..v {
            if k.is_multiple_of(6) {
                sextet = read_sextet(bytes, pos).map_err(at)?;
                pos += 1;
            }
            if sextet >> (5 - k % 6) & 1 == 1 {
                adj[u].push(v);
                adj[v].push(u);
            }
            k += 1;
            if k == total_bits {
                break 'outer;
            }
        }
    }
    Ok((n, adj))
}

/// Decodes a graph6 string as a bipartite graph. With `split = Some((n1,
/// n2))` the first `n1` vertices form side 1; otherwise sides come from a
/// 2-colouring where the lowest-numbered vertex of each component is on
/// side 1 and vertex order is preserved within each side.
pub fn decode_graph6(text: &str, split: Option<(usize, usize)>) -> Result<BipartiteGraph> {
    let (n, adj) = decode_graph6_raw(text, 0)?;
    bipartite_from_adjacency(n, &adj, split)
}

pub(crate) fn bipartite_from_adjacency(
    n: usize,
    adj: &[Vec<usize>],
    split: Option<(usize, usize)>,
) -> Result<BipartiteGraph> {
    if n < 2 {
        return Err(parse_err(
            0,
            "a bipartite graph needs at least two vertices",
        ));
    }
    let (side_of, n1) = match split {
        Some((n1, n2)) => {
            if n1 + n2 != n {
                return Err(Error::ParamMismatch(format!(
                    "split {n1}+{n2} does not match {n} vertices"
                )));
            }
            ((0..n).map(|v| v >= n1).collect::<Vec<bool>>(), n1)
        }
        None => {
            let mut colour: Vec<Option<bool>> = vec![None; n];
            let mut queue = VecDeque::new();
            for s in 0..n {
                if colour[s].is_some() {
                    continue;
                }
                colour[s] = Some(false);
                queue.push_back(s);
                while let Some(u) = queue.pop_front() {
                    let c = colour[u].unwrap();
                    for &w in &adj[u] {
                        match colour[w] {
                            None => {
                                colour[w] = Some(!c);
                                queue.push_back(w);
                            }
                            Some(cw) if cw == c => return Err(Error::NotBipartite),
                            _ => {}
                        }
                    }
                }
            }
            let side: Vec<bool> = colour.into_iter().map(|c| c.unwrap()).collect();
            let n1 = side.iter().filter(|&&b| !b).count();
            (side, n1)
        }
    };
    let mut index = vec![0usize; n];
    let (mut a, mut b) = (0, 0);
    for v in 0..n {
        if side_of[v] {
            index[v] = b;
            b += 1;
        } else {
            index[v] = a;
            a += 1;
        }
    }
    let mut g = BipartiteGraph::new(n1, n - n1);
    for u in 0..n {
        for &w in &adj[u] {
            if side_of[u] == side_of[w] {
                return Err(Error::NotBipartite);
            }
            if !side_of[u] {
                g.add_edge(index[u], index[w]);
            }
        }
    }
    Ok(g)
}

/// Plain-text biadjacency: `n1 n2` on the first line, then `n1` lines of
/// `n2` characters from `{0, 1}`.
pub fn write_biadjacency(g: &BipartiteGraph) -> String {
    let mut s = format!("{} {}\n", g.n1(), g.n2());
    for i in 0..g.n1() {
        for j in 0..g.n2() {
            s.push(if g.has_edge(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

pub fn read_biadjacency(text: &str) -> Result<BipartiteGraph> {
    let mut lines = line_offsets(text).filter(|(_, l)| !l.trim().is_empty());
    let (off, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut parts = header.split_whitespace();
    let mut dim = |what: &str| -> Result<usize> {
        parts
            .next()
            .ok_or_else(|| parse_err(off, format!("missing {what}")))?
            .parse()
            .map_err(|_| parse_err(off, format!("{what} is not a number")))
    };
    let n1 = dim("n1")?;
    let n2 = dim("n2")?;
    if n1 + n2 < 2 {
        return Err(parse_err(
            off,
            "a bipartite graph needs at least two vertices",
        ));
    }
    let mut g = BipartiteGraph::new(n1, n2);
    for i in 0..n1 {
        let (off, line) = lines
            .next()
            .ok_or_else(|| parse_err(text.len(), format!("expected {n1} rows, found {i}")))?;
        let line = line.trim_end();
        if line.len() != n2 {
            return Err(parse_err(
                off,
                format!("row {i} has {} columns, expected {n2}", line.len()),
            ));
        }
        for (j, c) in line.bytes().enumerate() {
            match c {
                b'1' => g.add_edge(i, j),
                b'0' => {}
                _ => {
                    return Err(parse_err(
                        off + j,
                        format!("unexpected character {:?}", c as char),
                    ))
                }
            }
        }
    }
    if let Some((off, _)) = lines.next() {
        return Err(parse_err(off, "trailing data after the last row"));
    }
    Ok(g)
}

fn line_offsets(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').map(move |l| {
        let start = offset;
        offset += l.len();
        (start, l.trim_end_matches(['\n', '\r']))
    })
}

/// DOT rendering: side 1 as boxes, side 2 as circles.
pub fn to_dot(g: &BipartiteGraph) -> String {
    let quote = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut s = String::from("graph G {\n");
    s.push_str("  node [shape=box];\n");
    for i in 0..g.n1() {
        match g.labels() {
            Some(l) => writeln!(s, "  u{i} [label=\"{}\"];", quote(&l.side1[i])).unwrap(),
            None => writeln!(s, "  u{i};").unwrap(),
        }
    }
    s.push_str("  node [shape=circle];\n");
    for j in 0..g.n2() {
        match g.labels() {
            Some(l) => writeln!(s, "  v{j} [label=\"{}\"];", quote(&l.side2[j])).unwrap(),
            None => writeln!(s, "  v{j};").unwrap(),
        }
    }
    for (i, j) in g.edges() {
        writeln!(s, "  u{i} -- v{j};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// A graph read from a file together with its metadata tags.
#[derive(Debug, Clone)]
pub struct GraphRecord {
    pub graph: BipartiteGraph,
    pub tags: Vec<(String, String)>,
}

impl GraphRecord {
    pub fn tag(&self, key: &str) -> Option<&str> {
        self.tags
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// One metadata line plus the graph6 line.
pub fn write_graph6_record(g: &BipartiteGraph, tags: &[(&str, String)]) -> String {
    let mut s = format!("# bipartite {} {}", g.n1(), g.n2());
    for (k, v) in tags {
        write!(s, " {k}={v}").unwrap();
    }
    s.push('\n');
    s.push_str(&encode_graph6(g));
    s.push('\n');
    s
}

fn parse_meta(line: &str, off: usize) -> Result<Option<((usize, usize), Vec<(String, String)>)>> {
    let body = line.trim_start_matches('#').trim();
    let mut parts = body.split_whitespace();
    if parts.next() != Some("bipartite") {
        return Ok(None);
    }
    let mut num = || -> Result<usize> {
        parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| parse_err(off, "metadata line needs `bipartite n1 n2`"))
    };
    let split = (num()?, num()?);
    let tags = parts
        .filter_map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect();
    Ok(Some((split, tags)))
}

/// Reads every graph in `text`. Plain biadjacency input (first line two
/// integers) yields one graph; otherwise each non-comment line is graph6.
pub fn read_graphs(text: &str) -> Result<Vec<GraphRecord>> {
    let first = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let looks_like_matrix = first.is_some_and(|l| {
        let p: Vec<&str> = l.split_whitespace().collect();
        p.len() == 2 && p.iter().all(|t| t.parse::<usize>().is_ok())
    });
    if looks_like_matrix {
        let mut tags = Vec::new();
        let mut start = 0;
        for (off, line) in line_offsets(text) {
            if line.starts_with('#') {
                if let Some((_, t)) = parse_meta(line, off)? {
                    tags = t;
                }
                start = off + line.len() + 1;
            } else {
                break;
            }
        }
        let body = text.get(start.min(text.len())..).unwrap_or("");
        let graph = read_biadjacency(body).map_err(|e| match e {
            Error::Parse { offset, msg } => Error::Parse {
                offset: offset + start,
                msg,
            },
            other => other,
        })?;
        return Ok(vec![GraphRecord { graph, tags }]);
    }
    let mut out = Vec::new();
    let mut pending: Option<((usize, usize), Vec<(String, String)>)> = None;
    for (off, line) in line_offsets(text) {
        let line_trim = line.trim();
        if line_trim.is_empty() {
            continue;
        }
        if line_trim.starts_with('#') {
            if let Some(meta) = parse_meta(line_trim, off)? {
                pending = Some(meta);
            }
            continue;
        }
        let (n, adj) = decode_graph6_raw(line_trim, off)?;
        let (split, tags) = match pending.take() {
            Some((split, tags)) => (Some(split), tags),
            None => (None, Vec::new()),
        };
        let graph = bipartite_from_adjacency(n, &adj, split)?;
        out.push(GraphRecord { graph, tags });
    }
    if out.is_empty() {
        return Err(parse_err(0, "no graph found"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let k11 = BipartiteGraph::from_edges(1, 1, [(0, 0)]);
        // n = 2 -> 'A', one bit set -> 0b100000 + 63 = '_'
        assert_eq!(encode_graph6(&k11), "A_");
        assert_eq!(decode_graph6("A_", Some((1, 1))).unwrap(), k11);
    }

    #[test]
    fn known_string_from_reference_encoder() {
        // path 0-2, 0-4, 1-3, 3-4 on five vertices is "DQc"
        let (n, adj) = decode_graph6_raw("DQc", 0).unwrap();
        assert_eq!(n, 5);
        assert_eq!(adj[0], vec![2, 4]);
        assert_eq!(adj[3], vec![1, 4]);
        let g = decode_graph6("DQc", None).unwrap();
        assert_eq!((g.n1(), g.n2()), (2, 3));
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn large_size_prefix() {
        let g = BipartiteGraph::from_fn(40, 60, |i, j| (i * 7 + j) % 11 == 0);
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(&s, Some((40, 60))).unwrap(), g);
        let mut out = Vec::new();
        encode_size(300_000, &mut out);
        assert_eq!(&out[..2], b"~~");
        assert_eq!(out.len(), 8);
    }

    #[test]
    fn malformed_input_reports_offset() {
        match decode_graph6("D Q", None) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            decode_graph6("DQ", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            decode_graph6("", None),
            Err(Error::Parse { offset: 0, .. })
        ));
        // triangle is not bipartite
        assert_eq!(decode_graph6("Bw", None), Err(Error::NotBipartite));
        // split that puts an edge inside a side
        assert_eq!(decode_graph6("A_", Some((2, 0))), Err(Error::NotBipartite));
    }

    #[test]
    fn biadjacency_text() {
        let g = BipartiteGraph::from_edges(2, 3, [(0, 0), (0, 2), (1, 1)]);
        let s = write_biadjacency(&g);
        assert_eq!(s, "2 3\n101\n010\n");
        assert_eq!(read_biadjacency(&s).unwrap(), g);
        match read_biadjacency("2 3\n101\n0x0\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 9),
            other => panic!("{other:?}"),
        }
        assert!(read_biadjacency("2 3\n101\n").is_err());
        assert!(read_biadjacency("2 3\n101\n01\n").is_err());
    }

    #[test]
    fn records_keep_split_and_tags() {
        let g = BipartiteGraph::from_edges(1, 3, [(0, 0), (0, 1), (0, 2)]);
        let text = write_graph6_record(&g, &[("recipe", "star".into())]);
        let recs = read_graphs(&text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].graph, g);
        assert_eq!(recs[0].tag("recipe"), Some("star"));
        let m = read_graphs(&format!("# bipartite 1 3 x=y\n{}", write_biadjacency(&g))).unwrap();
        assert_eq!(m[0].graph, g);
        assert_eq!(m[0].tag("x"), Some("y"));
        let h = read_graphs(&format!("{HEADER}{}\n", encode_graph6(&g))).unwrap();
        assert_eq!(h[0].graph, g);
    }

    #[test]
    fn dot_marks_sides() {
        let g = BipartiteGraph::from_edges(1, 1, [(0, 0)]);
        let d = to_dot(&g);
        assert!(d.contains("shape=box") && d.contains("shape=circle") && d.contains("u0 -- v0"));
    }
}
