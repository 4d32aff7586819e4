//! Plain-text hypergraph format.
//!
//! ```text
//! n k m
//! v_1 v_2 ... v_k      (m lines, strictly increasing 0-based ids)
//! ```
//!
//! Fields are separated by single spaces and every line ends with `\n`.
//! The writer emits edges in lexicographic order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::{Hypergraph, HypergraphError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed header, expected \"n k m\"")]
    Header,
    #[error("uniformity must be at least 2")]
    Uniformity,
    #[error("not a non-negative integer: {0:?}")]
    Number(String),
    #[error("expected {expected} vertices, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("vertex ids must be strictly increasing")]
    Order,
    #[error("vertex {vertex} out of range for n={n}")]
    VertexRange { vertex: usize, n: usize },
    #[error("duplicate edge")]
    Duplicate,
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("unexpected content after the last edge")]
    Trailing,
    #[error("missing trailing newline")]
    MissingNewline,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>, ParseError> {
    line.split(' ')
        .map(|tok| tok.parse::<usize>().map_err(|_| err(line_no, ParseErrorKind::Number(tok.to_string()))))
        .collect()
}

/// Parses the text format; errors carry the 1-based line number.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    if !text.is_empty() && !text.ends_with('\n') {
        let last = text.lines().count();
        return Err(err(last, ParseErrorKind::MissingNewline));
    }
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err(1, ParseErrorKind::Header))?;
    let head = numbers(1, header).map_err(|_| err(1, ParseErrorKind::Header))?;
    let [n, k, m] = head[..] else {
        return Err(err(1, ParseErrorKind::Header));
    };
    if k < 2 {
        return Err(err(1, ParseErrorKind::Uniformity));
    }
    let mut edges: Vec<Box<[usize]>> = Vec::with_capacity(m);
    for i in 0..m {
        let line_no = i + 2;
        let line = lines
            .next()
            .ok_or_else(|| err(line_no, ParseErrorKind::EdgeCount { expected: m, found: i }))?;
        let e = numbers(line_no, line)?;
        if e.len() != k {
            return Err(err(line_no, ParseErrorKind::Arity { expected: k, found: e.len() }));
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(line_no, ParseErrorKind::Order));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(err(line_no, ParseErrorKind::VertexRange { vertex: v, n }));
        }
        edges.push(e.into_boxed_slice());
    }
    if lines.next().is_some() {
        return Err(err(m + 2, ParseErrorKind::Trailing));
    }
    let mut sorted: Vec<(usize, Box<[usize]>)> = edges.into_iter().enumerate().collect();
    sorted.sort_unstable_by(|a, b| a.1.cmp(&b.1));
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        let line = w[0].0.max(w[1].0) + 2;
        return Err(err(line, ParseErrorKind::Duplicate));
    }
    Ok(Hypergraph::from_canonical(n, k, sorted.into_iter().map(|(_, e)| e).collect()))
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph, HypergraphError> {
    let text = fs::read_to_string(path)?;
    Ok(parse_hypergraph(&text)?)
}

/// Serializes to the text format.
pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", h.n(), h.k(), h.edge_count()).unwrap();
    for e in h.edges() {
        let line = e.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_hypergraph(h: &Hypergraph, path: impl AsRef<Path>) -> Result<(), HypergraphError> {
    fs::write(path, format_hypergraph(h))?;
    Ok(())
}

impl std::fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_hypergraph(self))
    }
}
