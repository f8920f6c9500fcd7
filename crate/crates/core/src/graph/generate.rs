use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Edge, GraphParts, Measure, Sign, WeightedGraph};
use crate::rng::{self, SplitMix64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Cycle of length `2n+1` with graded weights and one pendant vertex.
    Gn,
    Path,
    Cycle,
    /// `K_{1,n-1}` with centre 0.
    Star,
    Complete,
    RandomTree,
    RandomConnected,
    RandomBipartite,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gn,
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Complete,
        Family::RandomTree,
        Family::RandomConnected,
        Family::RandomBipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gn => "gn",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::RandomTree => "random_tree",
            Family::RandomConnected => "random_connected",
            Family::RandomBipartite => "random_bipartite",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(
            self,
            Family::RandomTree | Family::RandomConnected | Family::RandomBipartite
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown graph family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    #[default]
    Degree,
    Unit,
}

impl From<MeasureKind> for Measure {
    fn from(m: MeasureKind) -> Measure {
        match m {
            MeasureKind::Degree => Measure::Degree,
            MeasureKind::Unit => Measure::Unit,
        }
    }
}

/// Generator parameters. Fields a family does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenParams {
    pub n: usize,
    /// Weight base of the `gn` family.
    pub a: f64,
    /// Edge probability of `random_connected` and `random_bipartite`.
    pub p: f64,
    /// Left side size of `random_bipartite`; defaults to `n / 2`.
    pub left: Option<usize>,
    /// Edge weights are uniform in `[w_min, w_max)`; all 1 by default.
    /// Not used by `gn`.
    pub w_min: f64,
    pub w_max: f64,
    pub measure: MeasureKind,
    /// Probability that an edge gets sign -1.
    pub p_negative: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 0,
            a: 1.1,
            p: 0.3,
            left: None,
            w_min: 1.0,
            w_max: 1.0,
            measure: MeasureKind::Degree,
            p_negative: 0.0,
        }
    }
}

impl GenParams {
    pub fn with_n(n: usize) -> Self {
        GenParams {
            n,
            ..Default::default()
        }
    }
}

/// Builds a graph of `family`. A pure function of its arguments; the seed is
/// only consumed by random families, random weights and random signs.
pub fn generate(family: Family, params: &GenParams, seed: u64) -> Result<WeightedGraph> {
    let n = params.n;
    let min_n = match family {
        Family::Gn | Family::Cycle | Family::Complete => 3,
        Family::RandomTree | Family::RandomConnected | Family::RandomBipartite | Family::Path => 2,
        Family::Star => 2,
    };
    if n < min_n {
        return Err(Error::InvalidArgument(format!(
            "family {family} needs n >= {min_n}, got {n}"
        )));
    }
    if !(params.w_min > 0.0 && params.w_max >= params.w_min && params.w_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "weight range [{}, {}] must be positive and ordered",
            params.w_min, params.w_max
        )));
    }
    for (name, p) in [("p", params.p), ("p_negative", params.p_negative)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("{name} must lie in [0, 1]")));
        }
    }

    let mut rng = rng::stream(seed);
    let (count, pairs) = match family {
        Family::Gn => return gn(n, params.a, params.measure),
        Family::Path => (n, (1..n).map(|i| (i - 1, i)).collect()),
        Family::Cycle => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
        Family::Star => (n, (1..n).map(|i| (0, i)).collect()),
        Family::Complete => (
            n,
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
        ),
        Family::RandomTree => (n, random_tree(n, &mut rng)),
        Family::RandomConnected => (n, random_connected(n, params.p, &mut rng)),
        Family::RandomBipartite => {
            let left = params.left.unwrap_or(n / 2);
            if left == 0 || left >= n {
                return Err(Error::InvalidArgument(format!(
                    "bipartite sides must be nonempty (n = {n}, left = {left})"
                )));
            }
            (n, random_bipartite(left, n - left, params.p, &mut rng))
        }
    };

    let edges = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = rng::uniform(&mut rng, params.w_min, params.w_max);
            Edge::new(u, v, w)
        })
        .collect::<Vec<_>>();
    let edges = if params.p_negative > 0.0 {
        edges
            .into_iter()
            .map(|mut e| {
                if rng::unit(&mut rng) < params.p_negative {
                    e.sigma = Sign::Negative;
                }
                e
            })
            .collect()
    } else {
        edges
    };
    GraphParts::new(count, edges, params.measure.into()).try_into()
}

/// The `2n+2`-vertex example family: path `0..=2n` with weights
/// `1, a, ..., a^{n-1}, a^{n-1}, ..., a, 1`, closed into a cycle by a unit
/// edge `{0, 2n}`, plus a unit pendant edge `{n, 2n+1}`.
fn gn(n: usize, a: f64, measure: MeasureKind) -> Result<WeightedGraph> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("gn needs a > 0, got {a}")));
    }
    let mut edges = Vec::with_capacity(2 * n + 2);
    for i in 0..2 * n {
        let exp = if i < n { i } else { 2 * n - 1 - i };
        edges.push(Edge::new(i, i + 1, a.powi(exp as i32)));
    }
    edges.push(Edge::new(0, 2 * n, 1.0));
    edges.push(Edge::new(n, 2 * n + 1, 1.0));
    GraphParts::new(2 * n + 2, edges, measure.into()).try_into()
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
fn random_tree(n: usize, rng: &mut SplitMix64) -> Vec<(usize, usize)> {
    (1..n).map(|i| (rng::index(rng, i), i)).collect()
}

/// Erdős–Rényi `G(n, p)`, then every component after the first is joined to
/// a uniform vertex of the earlier components, forming a random tree over
/// components.
fn random_connected(n: usize, p: f64, rng: &mut SplitMix64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng::unit(rng) < p {
                pairs.push((u, v));
            }
        }
    }
    connect_components(n, &mut pairs, rng);
    pairs
}

fn connect_components(n: usize, pairs: &mut Vec<(usize, usize)>, rng: &mut SplitMix64) {
    // a unit-weight scratch graph is enough to label components; isolated
    // vertices are allowed here, so build adjacency by hand
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs.iter() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut label = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut stack = vec![s];
        let mut comp = Vec::new();
        label[s] = c;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = c;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    let mut earlier: Vec<usize> = members[0].clone();
    for comp in members.iter().skip(1) {
        let a = comp[rng::index(rng, comp.len())];
        let b = earlier[rng::index(rng, earlier.len())];
        pairs.push((a.min(b), a.max(b)));
        earlier.extend_from_slice(comp);
    }
}

/// Connected random bipartite graph on sides `0..left` and `left..left+right`:
/// a random spanning tree alternating sides, plus every other cross pair with
/// probability `p`.
fn random_bipartite(
    left: usize,
    right: usize,
    p: f64,
    rng: &mut SplitMix64,
) -> Vec<(usize, usize)> {
    let mut placed_l = vec![0];
    let mut placed_r = vec![left];
    let mut pairs = vec![(0, left)];
    let mut pending: Vec<usize> = (1..left).chain(left + 1..left + right).collect();
    // random insertion order
    for i in (1..pending.len()).rev() {
        let j = rng::index(rng, i + 1);
        pending.swap(i, j);
    }
    for x in pending {
        if x < left {
            let y = placed_r[rng::index(rng, placed_r.len())];
            pairs.push((x, y));
            placed_l.push(x);
        } else {
            let y = placed_l[rng::index(rng, placed_l.len())];
            pairs.push((y, x));
            placed_r.push(x);
        }
    }
    let tree: std::collections::HashSet<(usize, usize)> = pairs.iter().copied().collect();
    for u in 0..left {
        for v in left..left + right {
            if !tree.contains(&(u, v)) && rng::unit(rng) < p {
                pairs.push((u, v));
            }
        }
    }
    pairs
}
