//! Configuration file formats.
//!
//! Plain text — line 1: `n m`. Then `m` lines `u v` with 0-based endpoints.
//! Optional `w u <bits>` lines assign input strings; nodes without one carry
//! the empty input. Blank lines and `#` comments are ignored.
//!
//! A document whose first non-blank byte is `{` is read as JSON instead:
//! `{"n": …, "edges": [[u,v],…], "inputs": {"u": "bits", …}}`.

use crate::bits::BitString;
use crate::graph::config::Configuration;
use crate::graph::topology::build_graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON configuration: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::topology::GraphError),
    #[error(transparent)]
    Config(#[from] crate::graph::config::ConfigError),
}

pub fn parse_configuration(text: &str) -> Result<Configuration, FormatError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()));
    }
    let err = |line: usize, msg: &str| FormatError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lno, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(lno, "expected `n m`"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(lno, "expected `n m`"))?;
    if it.next().is_some() {
        return Err(err(lno, "trailing tokens after `n m`"));
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| err(0, "missing edge lines"))?;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lno, "expected `u v`"))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lno, "expected `u v`"))?;
        if it.next().is_some() {
            return Err(err(lno, "trailing tokens after edge"));
        }
        edges.push((u, v));
    }
    let mut inputs = vec![BitString::new(); n];
    for (lno, line) in lines {
        let mut it = line.split_whitespace();
        if it.next() != Some("w") {
            return Err(err(lno, "expected `w u <bits>`"));
        }
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&u| u < n)
            .ok_or_else(|| err(lno, "input for missing node"))?;
        let bits = it
            .next()
            .and_then(|t| BitString::parse(t).ok())
            .ok_or_else(|| err(lno, "expected a 0/1 string"))?;
        if it.next().is_some() {
            return Err(err(lno, "trailing tokens after input"));
        }
        inputs[u] = bits;
    }
    let g = build_graph(n, &edges)?;
    Ok(Configuration::new(g, inputs)?)
}

pub fn write_configuration(config: &Configuration) -> String {
    use std::fmt::Write;
    let g = config.topology();
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for v in 0..g.n() {
        if !config.input(v).is_empty() {
            writeln!(out, "w {v} {}", config.input(v)).unwrap();
        }
    }
    out
}
