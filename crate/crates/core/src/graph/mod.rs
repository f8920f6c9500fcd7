//! Weighted, optionally signed, graphs with a vertex measure and a potential.
//!
//! Vertices are the contiguous indices `0..n`. Every graph handed out by this
//! module has passed [`validate`]: it is simple, has positive weights and
//! measures, finite potentials and no isolated vertices.

mod generate;
pub mod io;
mod product;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use generate::{generate, Family, GenParams, MeasureKind};
pub use product::product;

/// Edge signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    #[default]
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        match s {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
    #[serde(default)]
    pub sigma: Sign,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge {
            u,
            v,
            w,
            sigma: Sign::Positive,
        }
    }

    pub fn signed(u: usize, v: usize, w: f64, sigma: Sign) -> Self {
        Edge { u, v, w, sigma }
    }
}

/// How the vertex measure is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    /// `mu_i = d(i)`, the weighted degree.
    Degree,
    /// `mu_i = 1` for every vertex.
    Unit,
    Explicit(Vec<f64>),
}

/// One adjacency entry of a vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub v: usize,
    pub w: f64,
    pub sigma: Sign,
}

/// A well-formed weighted graph `(V, E, w, sigma, mu, kappa)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    mu: Vec<f64>,
    kappa: Vec<f64>,
    degree: Vec<f64>,
    adj: Vec<Vec<Neighbor>>,
}

/// An invariant violation reported by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyGraph,
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
    },
    SelfLoop {
        edge: usize,
        vertex: usize,
    },
    DuplicateEdge {
        edge: usize,
        u: usize,
        v: usize,
    },
    NonpositiveWeight {
        edge: usize,
        w: f64,
    },
    NonpositiveMeasure {
        vertex: usize,
        mu: f64,
    },
    NonfinitePotential {
        vertex: usize,
    },
    IsolatedVertex {
        vertex: usize,
    },
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "graph has no vertices"),
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edges[{edge}]: vertex {vertex} out of range")
            }
            Violation::SelfLoop { edge, vertex } => {
                write!(f, "edges[{edge}]: self-loop at vertex {vertex}")
            }
            Violation::DuplicateEdge { edge, u, v } => {
                write!(f, "edges[{edge}]: duplicate edge {{{u},{v}}}")
            }
            Violation::NonpositiveWeight { edge, w } => {
                write!(f, "edges[{edge}]: nonpositive weight {w}")
            }
            Violation::NonpositiveMeasure { vertex, mu } => {
                write!(f, "mu[{vertex}]: nonpositive measure {mu}")
            }
            Violation::NonfinitePotential { vertex } => {
                write!(f, "kappa[{vertex}]: nonfinite potential")
            }
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} is isolated"),
            Violation::LengthMismatch {
                field,
                expected,
                found,
            } => write!(f, "{field}: expected {expected} entries, found {found}"),
        }
    }
}

/// Unvalidated graph data, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphParts {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub mu: Measure,
    pub kappa: Vec<f64>,
}

impl GraphParts {
    pub fn new(n: usize, edges: Vec<Edge>, mu: Measure) -> Self {
        GraphParts {
            n,
            edges,
            mu,
            kappa: vec![0.0; n],
        }
    }
}

fn raw_degrees(n: usize, edges: &[Edge]) -> Vec<f64> {
    let mut d = vec![0.0; n];
    for e in edges {
        if e.u < n && e.v < n && e.u != e.v {
            d[e.u] += e.w;
            d[e.v] += e.w;
        }
    }
    d
}

fn resolve_measure(n: usize, measure: &Measure, degree: &[f64]) -> Vec<f64> {
    match measure {
        Measure::Degree => degree.to_vec(),
        Measure::Unit => vec![1.0; n],
        Measure::Explicit(mu) => mu.clone(),
    }
}

/// Returns every invariant violation of `parts`; empty iff well-formed.
pub fn validate(parts: &GraphParts) -> Vec<Violation> {
    let n = parts.n;
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::EmptyGraph);
    }
    let mut seen = HashSet::new();
    let mut touched = vec![false; n];
    for (i, e) in parts.edges.iter().enumerate() {
        let mut in_range = true;
        for x in [e.u, e.v] {
            if x >= n {
                out.push(Violation::VertexOutOfRange { edge: i, vertex: x });
                in_range = false;
            }
        }
        if e.u == e.v {
            out.push(Violation::SelfLoop {
                edge: i,
                vertex: e.u,
            });
            continue;
        }
        if !(e.w > 0.0 && e.w.is_finite()) {
            out.push(Violation::NonpositiveWeight { edge: i, w: e.w });
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        if !seen.insert(key) {
            out.push(Violation::DuplicateEdge {
                edge: i,
                u: key.0,
                v: key.1,
            });
        }
        if in_range {
            touched[e.u] = true;
            touched[e.v] = true;
        }
    }
    for (x, t) in touched.iter().enumerate() {
        if !t {
            out.push(Violation::IsolatedVertex { vertex: x });
        }
    }
    let degree = raw_degrees(n, &parts.edges);
    let mu = resolve_measure(n, &parts.mu, &degree);
    if mu.len() != n {
        out.push(Violation::LengthMismatch {
            field: "mu",
            expected: n,
            found: mu.len(),
        });
    } else {
        let from_degree = matches!(parts.mu, Measure::Degree);
        for (x, &m) in mu.iter().enumerate() {
            // an isolated vertex has degree measure 0; it is reported once, as isolated
            let bad = !(m > 0.0 && m.is_finite());
            if bad && (touched[x] || !from_degree) {
                out.push(Violation::NonpositiveMeasure { vertex: x, mu: m });
            }
        }
    }
    if parts.kappa.len() != n {
        out.push(Violation::LengthMismatch {
            field: "kappa",
            expected: n,
            found: parts.kappa.len(),
        });
    } else {
        for (x, k) in parts.kappa.iter().enumerate() {
            if !k.is_finite() {
                out.push(Violation::NonfinitePotential { vertex: x });
            }
        }
    }
    out
}

impl TryFrom<GraphParts> for WeightedGraph {
    type Error = Error;

    fn try_from(parts: GraphParts) -> Result<Self> {
        let violations = validate(&parts);
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations));
        }
        let GraphParts {
            n,
            edges,
            mu,
            kappa,
        } = parts;
        let degree = raw_degrees(n, &edges);
        let mu = resolve_measure(n, &mu, &degree);
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(Neighbor {
                v: e.v,
                w: e.w,
                sigma: e.sigma,
            });
            adj[e.v].push(Neighbor {
                v: e.u,
                w: e.w,
                sigma: e.sigma,
            });
        }
        for list in &mut adj {
            list.sort_by_key(|nb| nb.v);
        }
        Ok(WeightedGraph {
            n,
            edges,
            mu,
            kappa,
            degree,
            adj,
        })
    }
}

impl WeightedGraph {
    /// Builds a graph with zero potential.
    pub fn new(n: usize, edges: Vec<Edge>, mu: Measure) -> Result<Self> {
        GraphParts::new(n, edges, mu).try_into()
    }

    /// Unsigned graph from `(u, v, w)` triples.
    pub fn from_weighted_edges(
        n: usize,
        edges: &[(usize, usize, f64)],
        mu: Measure,
    ) -> Result<Self> {
        let edges = edges.iter().map(|&(u, v, w)| Edge::new(u, v, w)).collect();
        Self::new(n, edges, mu)
    }

    /// Unit-weight unsigned graph from vertex pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)], mu: Measure) -> Result<Self> {
        let edges = pairs.iter().map(|&(u, v)| Edge::new(u, v, 1.0)).collect();
        Self::new(n, edges, mu)
    }

    /// Replaces the potential.
    pub fn with_potential(self, kappa: Vec<f64>) -> Result<Self> {
        let parts = GraphParts {
            kappa,
            ..self.to_parts()
        };
        parts.try_into()
    }

    /// Replaces the edge list, keeping `mu` and `kappa`.
    pub fn with_edges(&self, edges: Vec<Edge>) -> Result<Self> {
        GraphParts {
            n: self.n,
            edges,
            mu: Measure::Explicit(self.mu.clone()),
            kappa: self.kappa.clone(),
        }
        .try_into()
    }

    pub fn to_parts(&self) -> GraphParts {
        GraphParts {
            n: self.n,
            edges: self.edges.clone(),
            mu: Measure::Explicit(self.mu.clone()),
            kappa: self.kappa.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Weighted degrees `d(i) = sum_{j~i} w_ij`.
    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    pub fn neighbors(&self, x: usize) -> &[Neighbor] {
        &self.adj[x]
    }

    pub fn is_signed(&self) -> bool {
        self.edges.iter().any(|e| e.sigma.is_negative())
    }

    pub fn has_zero_potential(&self) -> bool {
        self.kappa.iter().all(|&k| k == 0.0)
    }

    pub fn has_nonnegative_potential(&self) -> bool {
        self.kappa.iter().all(|&k| k >= 0.0)
    }

    /// `mu_i == d(i)` up to relative rounding.
    pub fn measure_is_degree(&self) -> bool {
        self.mu
            .iter()
            .zip(&self.degree)
            .all(|(m, d)| (m - d).abs() <= 1e-12 * d.abs().max(1.0))
    }

    pub fn measure_is_unit(&self) -> bool {
        self.mu.iter().all(|&m| m == 1.0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }
}

/// Weighted degrees together with `tau = max d/mu` and `tau_min = min d/mu`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub d: Vec<f64>,
    pub tau: f64,
    pub tau_min: f64,
}

pub fn degree_profile(g: &WeightedGraph) -> DegreeProfile {
    let ratios = g.degree.iter().zip(&g.mu).map(|(d, m)| d / m);
    let (tau, tau_min) = ratios.fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), r| {
        (hi.max(r), lo.min(r))
    });
    DegreeProfile {
        d: g.degree.clone(),
        tau,
        tau_min,
    }
}

/// Connected components of the subgraph keeping the vertices and adjacency
/// entries accepted by the two predicates. Components are numbered in order
/// of their smallest vertex; dropped vertices get `None`.
pub(crate) fn components_where(
    g: &WeightedGraph,
    keep_vertex: impl Fn(usize) -> bool,
    keep_edge: impl Fn(usize, &Neighbor) -> bool,
) -> (Vec<Option<usize>>, usize) {
    let mut labels = vec![None; g.n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..g.n {
        if labels[start].is_some() || !keep_vertex(start) {
            continue;
        }
        labels[start] = Some(count);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for nb in &g.adj[x] {
                if labels[nb.v].is_none() && keep_vertex(nb.v) && keep_edge(x, nb) {
                    labels[nb.v] = Some(count);
                    queue.push_back(nb.v);
                }
            }
        }
        count += 1;
    }
    (labels, count)
}

/// Number of connected components.
pub fn component_count(g: &WeightedGraph) -> usize {
    components_where(g, |_| true, |_, _| true).1
}

/// Cyclomatic number `|E| - |V| + c`, `c` the number of components.
pub fn cyclomatic(g: &WeightedGraph) -> usize {
    g.edges.len() + component_count(g) - g.n
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphClassification {
    pub component_labels: Vec<usize>,
    pub component_count: usize,
    pub is_connected: bool,
    pub is_tree: bool,
    pub is_bipartite: bool,
    /// A proper 2-colouring when one exists; the smallest vertex of every
    /// component gets colour 0.
    pub bipartition_labels: Option<Vec<u8>>,
}

pub fn classify(g: &WeightedGraph) -> GraphClassification {
    let (labels, count) = components_where(g, |_| true, |_, _| true);
    let component_labels: Vec<usize> = labels.into_iter().map(|l| l.unwrap_or(0)).collect();
    let is_connected = count == 1;

    let mut colour: Vec<Option<u8>> = vec![None; g.n];
    let mut bipartite = true;
    let mut queue = VecDeque::new();
    'outer: for start in 0..g.n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(0);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let cx = colour[x].unwrap_or(0);
            for nb in &g.adj[x] {
                match colour[nb.v] {
                    None => {
                        colour[nb.v] = Some(1 - cx);
                        queue.push_back(nb.v);
                    }
                    Some(c) if c == cx => {
                        bipartite = false;
                        break 'outer;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    GraphClassification {
        component_labels,
        component_count: count,
        is_connected,
        is_tree: is_connected && g.edges.len() + 1 == g.n,
        is_bipartite: bipartite,
        bipartition_labels: bipartite.then(|| colour.into_iter().map(|c| c.unwrap_or(0)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)], Measure::Degree).unwrap()
    }

    #[test]
    fn triangle_is_well_formed() {
        let parts = triangle().to_parts();
        assert!(validate(&parts).is_empty());
    }

    #[test]
    fn self_loop_is_reported() {
        let parts = GraphParts::new(
            2,
            vec![Edge::new(0, 0, 1.0), Edge::new(0, 1, 1.0)],
            Measure::Unit,
        );
        let v = validate(&parts);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::SelfLoop { vertex: 0, .. })));
        assert!(v[0].to_string().contains("self-loop"));
    }

    #[test]
    fn nonpositive_measure_is_reported() {
        let parts = GraphParts::new(
            2,
            vec![Edge::new(0, 1, 1.0)],
            Measure::Explicit(vec![1.0, 0.0]),
        );
        let v = validate(&parts);
        assert_eq!(
            v,
            vec![Violation::NonpositiveMeasure { vertex: 1, mu: 0.0 }]
        );
        assert!(v[0].to_string().contains("nonpositive measure"));
    }

    #[test]
    fn duplicates_isolated_and_weights_are_reported() {
        let parts = GraphParts::new(
            4,
            vec![
                Edge::new(0, 1, 1.0),
                Edge::new(1, 0, 2.0),
                Edge::new(1, 2, -1.0),
            ],
            Measure::Unit,
        );
        let v = validate(&parts);
        assert!(v.contains(&Violation::DuplicateEdge {
            edge: 1,
            u: 0,
            v: 1
        }));
        assert!(v.contains(&Violation::NonpositiveWeight { edge: 2, w: -1.0 }));
        assert!(v.contains(&Violation::IsolatedVertex { vertex: 3 }));
        assert!(WeightedGraph::try_from(parts).is_err());
    }

    #[test]
    fn degree_profiles() {
        let p = degree_profile(&triangle());
        assert_eq!(p.d, vec![2.0, 2.0, 2.0]);
        assert_eq!((p.tau, p.tau_min), (1.0, 1.0));

        let path = WeightedGraph::from_pairs(3, &[(0, 1), (1, 2)], Measure::Unit).unwrap();
        let p = degree_profile(&path);
        assert_eq!(p.d, vec![1.0, 2.0, 1.0]);
        assert_eq!((p.tau, p.tau_min), (2.0, 1.0));

        let edge = WeightedGraph::from_weighted_edges(
            2,
            &[(0, 1, 3.0)],
            Measure::Explicit(vec![1.0, 6.0]),
        )
        .unwrap();
        let p = degree_profile(&edge);
        assert_eq!((p.tau, p.tau_min), (3.0, 0.5));
    }

    #[test]
    fn cyclomatic_numbers() {
        let tree =
            WeightedGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)], Measure::Degree).unwrap();
        assert_eq!(cyclomatic(&tree), 0);
        let c5 = WeightedGraph::from_pairs(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
            Measure::Degree,
        )
        .unwrap();
        assert_eq!(cyclomatic(&c5), 1);
        // triangle plus a disjoint edge: additive over components
        let g = WeightedGraph::from_pairs(5, &[(0, 1), (1, 2), (0, 2), (3, 4)], Measure::Degree)
            .unwrap();
        assert_eq!(cyclomatic(&g), 1);
    }

    #[test]
    fn classification() {
        let two = WeightedGraph::from_pairs(4, &[(0, 1), (2, 3)], Measure::Degree).unwrap();
        let c = classify(&two);
        assert_eq!(c.component_count, 2);
        assert!(!c.is_connected && !c.is_tree);
        assert_eq!(c.component_labels, vec![0, 0, 1, 1]);

        let star =
            WeightedGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)], Measure::Degree).unwrap();
        let c = classify(&star);
        assert!(c.is_tree && c.is_bipartite);
        assert_eq!(c.bipartition_labels, Some(vec![0, 1, 1, 1]));

        let c = classify(&triangle());
        assert!(!c.is_bipartite && c.bipartition_labels.is_none());
    }

    #[test]
    fn sign_serde_accepts_only_unit_values() {
        let e: Edge = serde_json::from_str(r#"{"u":0,"v":1,"w":1.5}"#).unwrap();
        assert_eq!(e.sigma, Sign::Positive);
        let e: Edge = serde_json::from_str(r#"{"u":0,"v":1,"w":1.5,"sigma":-1}"#).unwrap();
        assert_eq!(e.sigma, Sign::Negative);
        assert!(serde_json::from_str::<Edge>(r#"{"u":0,"v":1,"w":1.5,"sigma":2}"#).is_err());
    }
}
