//! The facet-file format: one facet per line, whitespace-separated vertex
//! tokens, `#` starts a comment. Tokens that are all positive integers are
//! used as vertex numbers directly (the universe is their maximum);
//! otherwise every distinct token is mapped to `1..n` in first-appearance
//! order and the mapping is kept for echoing in reports.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FacetFileError {
    #[error("no facet lines found")]
    Empty,
    #[error("line {line}: duplicate vertex '{token}' in one facet")]
    DuplicateToken { line: usize, token: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone)]
pub struct ParsedComplex {
    pub complex: SimplicialComplex,
    /// `labels[v - 1]` is the original token for vertex v, present only
    /// when the file used non-numeric identifiers.
    pub labels: Option<Vec<String>>,
}

fn as_vertex_number(token: &str) -> Option<usize> {
    let value: usize = token.parse().ok()?;
    (value >= 1).then_some(value)
}

pub fn parse_facet_file(text: &str) -> Result<ParsedComplex, FacetFileError> {
    let mut lines: Vec<(usize, Vec<&str>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        for (i, t) in tokens.iter().enumerate() {
            if tokens[..i].contains(t) {
                return Err(FacetFileError::DuplicateToken { line: line_no, token: t.to_string() });
            }
        }
        lines.push((line_no, tokens));
    }
    if lines.is_empty() {
        return Err(FacetFileError::Empty);
    }

    let numeric = lines
        .iter()
        .all(|(_, tokens)| tokens.iter().all(|t| as_vertex_number(t).is_some()));

    if numeric {
        let mut n = 0;
        let mut facets: Vec<Vec<usize>> = Vec::with_capacity(lines.len());
        for (_, tokens) in &lines {
            let facet: Vec<usize> = tokens.iter().map(|t| as_vertex_number(t).unwrap()).collect();
            n = n.max(facet.iter().copied().max().unwrap_or(0));
            facets.push(facet);
        }
        let complex = SimplicialComplex::from_facets(n, &facets)?;
        Ok(ParsedComplex { complex, labels: None })
    } else {
        let mut order: Vec<String> = Vec::new();
        let mut numbers: HashMap<String, usize> = HashMap::new();
        let mut facets: Vec<Vec<usize>> = Vec::with_capacity(lines.len());
        for (_, tokens) in &lines {
            let mut facet = Vec::with_capacity(tokens.len());
            for t in tokens {
                let v = *numbers.entry(t.to_string()).or_insert_with(|| {
                    order.push(t.to_string());
                    order.len()
                });
                facet.push(v);
            }
            facets.push(facet);
        }
        let complex = SimplicialComplex::from_facets(order.len(), &facets)?;
        Ok(ParsedComplex { complex, labels: Some(order) })
    }
}

/// Canonical rendering: facets in lexicographic order, vertices ascending,
/// one facet per line.
pub fn render_facet_file(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in complex.facets() {
        let words: Vec<String> = facet.vertices().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}
