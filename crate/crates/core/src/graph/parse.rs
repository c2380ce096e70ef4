use std::collections::BTreeSet;

use serde_json::Value;

use super::{edge, Edge, Graph};
use crate::error::{Error, Result};

/// Parses either the edge-list text form or the JSON form of a graph.
///
/// Edge-list text is a header line holding `n` followed by one `u v` line per
/// edge; blank lines and `#` comments are ignored. JSON is
/// `{"n": int, "edges": [[u, v], ...]}`; unknown keys are ignored so annotated
/// outputs (e.g. products) read back as plain graphs. Duplicate edges collapse.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if tokens.len() != 1 {
                    return Err(Error::parse(
                        line_no,
                        line,
                        "header must be a single vertex count",
                    ));
                }
                n = Some(parse_index(tokens[0], line_no)?);
            }
            Some(n) => {
                if tokens.len() != 2 {
                    return Err(Error::parse(line_no, line, "edge line must be `u v`"));
                }
                let a = parse_index(tokens[0], line_no)?;
                let b = parse_index(tokens[1], line_no)?;
                edges.insert(checked_edge(a, b, n, line_no, tokens.join(" "))?);
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "", "missing vertex-count header"))?;
    Graph::from_edges(n, edges)
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, token, "expected a non-negative integer"))
}

fn checked_edge(a: usize, b: usize, n: usize, line: usize, token: String) -> Result<Edge> {
    if a == b {
        return Err(Error::parse(line, token, "loop edge"));
    }
    if a >= n || b >= n {
        return Err(Error::parse(
            line,
            token,
            format!("endpoint out of range for n = {n}"),
        ));
    }
    Ok(edge(a, b))
}

fn parse_json(text: &str) -> Result<Graph> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), text.trim().chars().take(32).collect::<String>(), e.to_string()))?;
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse(1, "n", "missing or non-integer `n`"))? as usize;
    let list = match value.get("edges") {
        None => return Graph::from_edges(n, []),
        Some(Value::Array(list)) => list,
        Some(other) => return Err(Error::parse(1, other.to_string(), "`edges` must be an array")),
    };
    let mut edges = BTreeSet::new();
    for item in list {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
            .ok_or_else(|| Error::parse(1, item.to_string(), "edge must be [u, v]"))?;
        edges.insert(checked_edge(pair.0, pair.1, n, 1, item.to_string())?);
    }
    Graph::from_edges(n, edges)
}
