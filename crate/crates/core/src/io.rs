//! Facet-list text format, its JSON mirror, and shelling-order files.
//!
//! Text format:
//!
//! ```text
//! # comment
//! n 4
//! 1 2 3
//! 1 4
//! ```
//!
//! The first non-comment line declares the ground set; every further
//! non-empty line is one facet. The facet `∅` of the empty complex `{∅}` is
//! written as `{}`. Writers emit facets in lexicographic order, so
//! `write(read(write(x))) == write(x)` byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, MAX_VERTICES};

const EMPTY_FACET: &str = "{}";

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("bad vertex label `{tok}`") })
}

pub fn parse_text(text: &str) -> Result<SimplicialComplex> {
    let mut n: Option<usize> = None;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let mut toks = line.split_whitespace();
                if toks.next() != Some("n") {
                    return Err(Error::Parse { line: line_no, message: "expected `n <ground_set_size>`".into() });
                }
                let size = toks
                    .next()
                    .ok_or(Error::Parse { line: line_no, message: "missing ground set size".into() })?;
                let size = parse_vertex(size, line_no)?;
                if toks.next().is_some() {
                    return Err(Error::Parse { line: line_no, message: "trailing tokens after size".into() });
                }
                if size > MAX_VERTICES {
                    return Err(Error::GroundSetTooLarge(size));
                }
                n = Some(size);
            }
            Some(size) => {
                if line == EMPTY_FACET {
                    facets.push(Vec::new());
                    continue;
                }
                let mut facet = Vec::new();
                for tok in line.split_whitespace() {
                    let v = parse_vertex(tok, line_no)?;
                    if v == 0 || v > size {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("vertex {v} outside 1..={size}"),
                        });
                    }
                    facet.push(v);
                }
                facets.push(facet);
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "missing `n <ground_set_size>` header".into() })?;
    SimplicialComplex::new(facets, n)
}

pub fn to_text(cx: &SimplicialComplex) -> String {
    let mut out = format!("n {}\n", cx.ground_set_size());
    for f in cx.facets() {
        if f.is_empty() {
            out.push_str(EMPTY_FACET);
        } else {
            out.push_str(&f.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn parse_json(text: &str) -> Result<SimplicialComplex> {
    let raw: JsonComplex = serde_json::from_str(text)?;
    if raw.n > MAX_VERTICES {
        return Err(Error::GroundSetTooLarge(raw.n));
    }
    SimplicialComplex::new(raw.facets, raw.n)
}

pub fn to_json(cx: &SimplicialComplex) -> String {
    let raw = JsonComplex {
        n: cx.ground_set_size(),
        facets: cx.facets().iter().map(|f| f.to_vec()).collect(),
    };
    let mut s = serde_json::to_string(&raw).expect("plain data serializes");
    s.push('\n');
    s
}

fn is_json_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads either format, chosen by the `.json` extension.
pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path)?;
    if is_json_path(path) {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

pub fn save_complex(path: &Path, cx: &SimplicialComplex) -> Result<()> {
    let body = if is_json_path(path) { to_json(cx) } else { to_text(cx) };
    fs::write(path, body)?;
    Ok(())
}

/// SHA-256 of the canonical text form.
pub fn digest(cx: &SimplicialComplex) -> String {
    let hash = Sha256::digest(to_text(cx).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses an order file: one facet per line, labels separated by spaces or
/// commas; square brackets and `#` comments are ignored.
pub fn parse_order(text: &str) -> Result<Vec<Face>> {
    let mut order = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("n ") {
            continue;
        }
        if line == EMPTY_FACET {
            order.push(Face::EMPTY);
            continue;
        }
        let cleaned: String = line.chars().map(|c| if matches!(c, '[' | ']' | ',') { ' ' } else { c }).collect();
        let verts = cleaned
            .split_whitespace()
            .map(|t| parse_vertex(t, idx + 1))
            .collect::<Result<Vec<_>>>()?;
        let face = Face::from_vertices(verts.iter().copied()).ok_or(Error::Parse {
            line: idx + 1,
            message: format!("vertex labels must lie in 1..={MAX_VERTICES}"),
        })?;
        if face.len() != verts.len() {
            return Err(Error::Parse { line: idx + 1, message: "repeated vertex in facet".into() });
        }
        order.push(face);
    }
    Ok(order)
}

pub fn order_to_text(order: &[Face]) -> String {
    let mut out = String::new();
    for f in order {
        if f.is_empty() {
            out.push_str(EMPTY_FACET);
        } else {
            out.push_str(&f.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn load_order(path: &Path) -> Result<Vec<Face>> {
    parse_order(&fs::read_to_string(path)?)
}
