//! Text formats for families and graphs.
//!
//! Family files start with `n=<int>`; every later non-blank line holds one set
//! as ascending comma-separated elements, or `-` for the empty set. Graph files
//! start with `vertices=<m>` followed by one `u v` edge per line (0-based).
//! In both, `#` starts a comment.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::kneser::Graph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, usize)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing '{key}=' header")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix('='))
        .ok_or_else(|| Error::parse(no, format!("expected '{key}=<int>'")))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| Error::parse(no, format!("'{}' is not a valid {key}", value.trim())))?;
    Ok((no, value))
}

/// Parses a family file. Repeated sets are merged; the count of dropped
/// duplicates is returned alongside the family.
pub fn parse_family(text: &str) -> Result<(SetFamily, usize)> {
    let mut lines = content_lines(text);
    let (no, n) = header(&mut lines, "n")?;
    let n = u32::try_from(n).map_err(|_| Error::parse(no, "n too large"))?;
    let mut masks = Vec::new();
    for (no, line) in lines {
        let mask: SubsetMask = line.parse().map_err(|e: String| Error::parse(no, e))?;
        if !mask.fits(n) {
            return Err(Error::parse(no, format!("element outside [{n}]")));
        }
        masks.push(mask);
    }
    SetFamily::new(n, masks).map_err(|e| Error::parse(no, e.to_string()))
}

pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.n());
    for x in family {
        writeln!(out, "{x}").expect("write to string");
    }
    out
}

/// Parses an edge-list graph file.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (_, vertices) = header(&mut lines, "vertices")?;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let mut it = line.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::parse(no, "expected 'u v'"))?
                .parse()
                .map_err(|_| Error::parse(no, "endpoint is not a vertex index"))
        };
        let (u, v) = (endpoint()?, endpoint()?);
        if it.next().is_some() {
            return Err(Error::parse(no, "expected exactly two endpoints"));
        }
        if u >= vertices || v >= vertices {
            return Err(Error::parse(no, format!("vertex out of range 0..{vertices}")));
        }
        if u == v {
            return Err(Error::parse(no, "self-loop"));
        }
        edges.push((u, v));
    }
    Graph::from_edges(vertices, &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("vertices={}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("write to string");
    }
    out
}
