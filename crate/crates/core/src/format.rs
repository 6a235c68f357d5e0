//! Text and JSON serialization of complexes and monomial ideals.
//!
//! Complex text (`.cplx`): an optional `n <int>` header, then one facet per
//! line as space-separated vertices; `#` starts a comment and `-` is the empty
//! facet. JSON: `{"n": int, "facets": [[int, ...], ...]}`.
//!
//! Ideal text: an optional `n <int>` header, then one generator per line as
//! `x1*x3*x4` or `1 3 4`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hochster::MonomialIdeal;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line: &str, lineno: usize) -> Result<Option<usize>> {
    let Some(rest) = line.strip_prefix('n') else {
        return Ok(None);
    };
    if !rest.starts_with(char::is_whitespace) {
        return Ok(None);
    }
    rest.trim()
        .parse::<usize>()
        .map(Some)
        .map_err(|_| parse_err(lineno, format!("bad header `{line}`")))
}

fn parse_index(token: &str, lineno: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(lineno, format!("`{token}` is not a vertex")))
}

fn lift(err: Error, lineno: usize) -> Error {
    match err {
        Error::Parse { .. } => err,
        other => parse_err(lineno, other.to_string()),
    }
}

/// Parses the `.cplx` text format.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut n = None;
    let mut faces = Vec::new();
    let mut last_line = 0;
    for (idx, (lineno, line)) in content_lines(text).enumerate() {
        last_line = lineno;
        if idx == 0 {
            if let Some(value) = parse_header(line, lineno)? {
                n = Some(value);
                continue;
            }
        }
        if line == "-" {
            faces.push(Face::EMPTY);
            continue;
        }
        let vertices = line
            .split_whitespace()
            .map(|t| parse_index(t, lineno))
            .collect::<Result<Vec<_>>>()?;
        let face = Face::from_vertices(vertices).map_err(|e| lift(e, lineno))?;
        if let Some(n) = n {
            if face.max_vertex() > n {
                return Err(parse_err(
                    lineno,
                    Error::VertexOutOfRange {
                        vertex: face.max_vertex(),
                        n,
                    }
                    .to_string(),
                ));
            }
        }
        faces.push(face);
    }
    SimplicialComplex::from_faces(faces, n).map_err(|e| match e {
        Error::VoidComplex => e,
        other => lift(other, last_line),
    })
}

/// Writes the `.cplx` text format with an explicit header.
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = format!("n {}\n", complex.n());
    for facet in complex.facets() {
        if facet.is_empty() {
            out.push_str("-\n");
        } else {
            let vs: Vec<String> = facet.vertices().map(|v| v.to_string()).collect();
            out.push_str(&vs.join(" "));
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Vec<Vec<usize>>,
}

/// Parses `{"n": int, "facets": [[int, ...], ...]}`.
pub fn parse_complex_json(text: &str) -> Result<SimplicialComplex> {
    let raw: ComplexJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    SimplicialComplex::new(&raw.facets, Some(raw.n))
}

pub fn complex_to_json(complex: &SimplicialComplex) -> serde_json::Value {
    serde_json::to_value(ComplexJson {
        n: complex.n(),
        facets: complex.facet_lists(),
    })
    .expect("plain data serializes")
}

/// Parses either format, picking JSON when the first non-blank character is `{`.
pub fn parse_complex_auto(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        parse_complex_json(text)
    } else {
        parse_complex(text)
    }
}

fn parse_monomial(line: &str, lineno: usize) -> Result<Face> {
    let indices: Vec<usize> = if line.contains('x') {
        line.split('*')
            .map(|t| {
                let t = t.trim();
                let digits = t
                    .strip_prefix('x')
                    .ok_or_else(|| parse_err(lineno, format!("`{t}` is not a variable")))?;
                parse_index(digits, lineno)
            })
            .collect::<Result<_>>()?
    } else {
        line.split_whitespace()
            .map(|t| parse_index(t, lineno))
            .collect::<Result<_>>()?
    };
    if indices.is_empty() {
        return Err(parse_err(lineno, "empty monomial"));
    }
    Face::from_vertices(indices).map_err(|e| lift(e, lineno))
}

/// Parses the ideal text format. Without a header, `n` is the largest variable index.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut n = None;
    let mut gens = Vec::new();
    for (idx, (lineno, line)) in content_lines(text).enumerate() {
        if idx == 0 {
            if let Some(value) = parse_header(line, lineno)? {
                n = Some(value);
                continue;
            }
        }
        gens.push(parse_monomial(line, lineno)?);
    }
    if gens.is_empty() {
        return Err(parse_err(0, "ideal has no generators"));
    }
    let n = n.unwrap_or_else(|| gens.iter().map(|g| g.max_vertex()).max().unwrap_or(0));
    MonomialIdeal::new(n, gens)
}

/// Writes the ideal text format, one `x..*x..` monomial per line.
pub fn write_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("n {}\n", ideal.n());
    for g in ideal.generators() {
        let vars: Vec<String> = g.vertices().map(|v| format!("x{v}")).collect();
        let _ = writeln!(out, "{}", vars.join("*"));
    }
    out
}
