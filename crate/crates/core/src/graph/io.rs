//! Graph file formats.
//!
//! Canonical JSON:
//!
//! ```text
//! {"n": 3,
//!  "edges": [{"u":0,"v":1,"w":1.0,"sigma":1}, ...],
//!  "mu": "degree" | [1.0, ...],
//!  "kappa": 0 | [0.0, ...]}
//! ```
//!
//! `sigma` defaults to 1 and `kappa` to 0. The edge-list text form starts with
//! a header `n <int> mu <degree|unit|values...>`, may carry one
//! `kappa <values...>` line, then one `u v w [sigma]` line per edge. Blank
//! lines and lines starting with `#` are ignored.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Edge, GraphParts, Measure, Sign, WeightedGraph};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum MuField {
    Token(String),
    Values(Vec<f64>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum KappaField {
    Constant(f64),
    Values(Vec<f64>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: usize,
    edges: Vec<Edge>,
    #[serde(default = "degree_token")]
    mu: MuField,
    #[serde(default = "zero_kappa")]
    kappa: KappaField,
}

fn degree_token() -> MuField {
    MuField::Token("degree".into())
}

fn zero_kappa() -> KappaField {
    KappaField::Constant(0.0)
}

fn measure_token(token: &str) -> Result<Measure> {
    match token {
        "degree" => Ok(Measure::Degree),
        "unit" => Ok(Measure::Unit),
        other => Err(Error::Parse(format!(
            "mu: expected \"degree\", \"unit\" or a list, found {other:?}"
        ))),
    }
}

pub fn parse_json(text: &str) -> Result<WeightedGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mu = match doc.mu {
        MuField::Token(t) => measure_token(&t)?,
        MuField::Values(v) => Measure::Explicit(v),
    };
    let kappa = match doc.kappa {
        KappaField::Constant(c) => vec![c; doc.n],
        KappaField::Values(v) => v,
    };
    GraphParts {
        n: doc.n,
        edges: doc.edges,
        mu,
        kappa,
    }
    .try_into()
}

/// Canonical JSON; `mu` is written as `"degree"` when it equals the weighted
/// degree exactly and `kappa` as `0` when it vanishes.
pub fn to_json(g: &WeightedGraph) -> String {
    let mu = if g.mu() == g.degrees() {
        degree_token()
    } else {
        MuField::Values(g.mu().to_vec())
    };
    let kappa = if g.has_zero_potential() {
        KappaField::Constant(0.0)
    } else {
        KappaField::Values(g.kappa().to_vec())
    };
    let doc = GraphDoc {
        n: g.n(),
        edges: g.edges().to_vec(),
        mu,
        kappa,
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("line {line}: invalid {what} {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(usize, Measure)> = None;
    let mut kappa: Option<Vec<f64>> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "n" => {
                if header.is_some() {
                    return Err(Error::Parse(format!("line {line}: duplicate header")));
                }
                if toks.len() < 4 || toks[2] != "mu" {
                    return Err(Error::Parse(format!(
                        "line {line}: expected header `n <int> mu <degree|values>`"
                    )));
                }
                let n = parse_num(toks[1], line, "vertex count")?;
                let mu = if toks.len() == 4 && toks[3].parse::<f64>().is_err() {
                    measure_token(toks[3]).map_err(|e| Error::Parse(format!("line {line}: {e}")))?
                } else {
                    Measure::Explicit(
                        toks[3..]
                            .iter()
                            .map(|t| parse_num(t, line, "measure"))
                            .collect::<Result<_>>()?,
                    )
                };
                header = Some((n, mu));
            }
            "kappa" => {
                kappa = Some(
                    toks[1..]
                        .iter()
                        .map(|t| parse_num(t, line, "potential"))
                        .collect::<Result<_>>()?,
                );
            }
            _ => {
                if header.is_none() {
                    return Err(Error::Parse(format!(
                        "line {line}: edge before the `n <int> mu ...` header"
                    )));
                }
                if !(3..=4).contains(&toks.len()) {
                    return Err(Error::Parse(format!(
                        "line {line}: expected `u v w [sigma]`"
                    )));
                }
                let u = parse_num(toks[0], line, "vertex")?;
                let v = parse_num(toks[1], line, "vertex")?;
                let w = parse_num(toks[2], line, "weight")?;
                let sigma = match toks.get(3) {
                    None => Sign::Positive,
                    Some(t) => Sign::try_from(parse_num::<i64>(t, line, "sign")?)
                        .map_err(|e| Error::Parse(format!("line {line}: {e}")))?,
                };
                edges.push(Edge::signed(u, v, w, sigma));
            }
        }
    }
    let (n, mu) = header.ok_or_else(|| Error::Parse("missing `n <int> mu ...` header".into()))?;
    GraphParts {
        n,
        edges,
        mu,
        kappa: kappa.unwrap_or_else(|| vec![0.0; n]),
    }
    .try_into()
}

pub fn to_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("n {} mu ", g.n());
    if g.mu() == g.degrees() {
        out.push_str("degree");
    } else {
        out.push_str(&join(g.mu()));
    }
    out.push('\n');
    if !g.has_zero_potential() {
        out.push_str(&format!("kappa {}\n", join(g.kappa())));
    }
    for e in g.edges() {
        match e.sigma {
            Sign::Positive => out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w)),
            Sign::Negative => out.push_str(&format!("{} {} {} -1\n", e.u, e.v, e.w)),
        }
    }
    out
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}
