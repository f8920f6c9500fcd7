//! Test oracles: unpruned enumeration of the exact Cheeger constants with
//! conductance and beta recomputed from the edge list.
#![allow(dead_code)]

use cheeger::cheeger::PartitionCertificate;
use cheeger::WeightedGraph;

/// Lexicographically first labeling reached by scanning all labelings in
/// lexicographic order and keeping strict improvements (ties within 1e-12
/// relative keep the earlier labeling).
#[derive(Debug, Clone, PartialEq)]
pub struct Naive {
    pub value: f64,
    pub labels: Vec<u8>,
    pub visited: u64,
}

fn scan(n: usize, radix: u8, mut eval: impl FnMut(&[u8]) -> Option<f64>) -> Naive {
    let mut labels = vec![0u8; n];
    let mut best: Option<(f64, Vec<u8>)> = None;
    let mut visited = 0u64;
    loop {
        visited += 1;
        if let Some(v) = eval(&labels) {
            let better = match &best {
                None => true,
                Some((b, _)) => v < b - 1e-12 * b,
            };
            if better {
                best = Some((v, labels.clone()));
            }
        }
        // next labeling, last vertex least significant
        let mut i = n;
        loop {
            if i == 0 {
                let (value, labels) = best.expect("some labeling is feasible");
                return Naive {
                    value,
                    labels,
                    visited,
                };
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < radix {
                break;
            }
            labels[i] = 0;
        }
    }
}

/// Conductance of every part `1..=k` of `labels`, from the edge list.
fn part_conductances(g: &WeightedGraph, labels: &[u8], k: usize) -> Vec<f64> {
    let mut cut = vec![0.0; k + 1];
    let mut mu = vec![0.0; k + 1];
    for (x, &l) in labels.iter().enumerate() {
        mu[l as usize] += g.mu()[x];
    }
    for e in g.edges() {
        let (a, b) = (labels[e.u] as usize, labels[e.v] as usize);
        if a != b {
            cut[a] += e.w;
            cut[b] += e.w;
        }
    }
    (1..=k).map(|i| cut[i] / mu[i]).collect()
}

pub fn naive_rho(g: &WeightedGraph, k: usize) -> Naive {
    scan(g.n(), (k + 1) as u8, |labels| {
        let mut opened = 0u8;
        for &l in labels {
            if l > opened + 1 {
                return None;
            }
            opened = opened.max(l);
        }
        if opened as usize != k {
            return None;
        }
        Some(
            part_conductances(g, labels, k)
                .into_iter()
                .fold(0.0, f64::max),
        )
    })
}

/// Signed codes: `2i - 1` / `2i` are side 1 / side 2 of pair `i`.
pub fn naive_rho_signed(g: &WeightedGraph, k: usize) -> Naive {
    scan(g.n(), (2 * k + 1) as u8, |codes| {
        let mut opened = 0u8;
        for &c in codes {
            if c == 0 {
                continue;
            }
            let pair = c.div_ceil(2);
            if pair > opened {
                if pair != opened + 1 || c % 2 == 0 {
                    return None;
                }
                opened = pair;
            }
        }
        if opened as usize != k {
            return None;
        }
        Some(betas(g, codes, k).into_iter().fold(0.0, f64::max))
    })
}

/// `beta` of every pair of `codes`, from the edge list.
pub fn betas(g: &WeightedGraph, codes: &[u8], k: usize) -> Vec<f64> {
    let mut num = vec![0.0; k + 1];
    let mut mu = vec![0.0; k + 1];
    let pair = |c: u8| c.div_ceil(2) as usize;
    for (x, &c) in codes.iter().enumerate() {
        mu[pair(c)] += g.mu()[x];
    }
    for e in g.edges() {
        let (cu, cv) = (codes[e.u], codes[e.v]);
        let (pu, pv) = (pair(cu), pair(cv));
        if pu != pv {
            num[pu] += e.w;
            num[pv] += e.w;
        } else if pu > 0 {
            let same_side = cu == cv;
            if same_side == e.sigma.is_negative() {
                num[pu] += 2.0 * e.w;
            }
        }
    }
    (1..=k).map(|i| num[i] / mu[i]).collect()
}

/// Per-vertex labels of a certificate: part index + 1, 0 outside.
pub fn labels_of(cert: &PartitionCertificate, n: usize) -> Vec<u8> {
    let mut labels = vec![0u8; n];
    for (i, part) in cert.parts.iter().enumerate() {
        for &x in part {
            labels[x] = i as u8 + 1;
        }
    }
    labels
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Largest conductance over `parts`, from the edge list.
pub fn max_conductance(g: &WeightedGraph, parts: &[Vec<usize>]) -> f64 {
    let mut labels = vec![0u8; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            labels[x] = i as u8 + 1;
        }
    }
    part_conductances(g, &labels, parts.len())
        .into_iter()
        .fold(0.0, f64::max)
}

/// Largest `beta` over consecutive pairs of `parts`, from the edge list.
pub fn max_beta(g: &WeightedGraph, parts: &[Vec<usize>]) -> f64 {
    let mut codes = vec![0u8; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            codes[x] = i as u8 + 1;
        }
    }
    betas(g, &codes, parts.len() / 2)
        .into_iter()
        .fold(0.0, f64::max)
}

/// `(max, min)` of weighted degree over measure.
pub fn degree_ratios(g: &WeightedGraph) -> (f64, f64) {
    let mut d = vec![0.0; g.n()];
    for e in g.edges() {
        d[e.u] += e.w;
        d[e.v] += e.w;
    }
    d.iter()
        .zip(g.mu())
        .map(|(d, m)| d / m)
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), r| {
            (hi.max(r), lo.min(r))
        })
}

fn adjacency(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    adj
}

/// Components of the graph restricted to vertices with `keep`, joined
/// through edges with `join`.
fn components(
    g: &WeightedGraph,
    keep: impl Fn(usize) -> bool,
    join: impl Fn(usize, usize) -> bool,
) -> usize {
    let adj = adjacency(g);
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] || !keep(s) {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && keep(y) && join(x, y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// `|E| - |V| + c`.
pub fn cycle_rank(g: &WeightedGraph) -> usize {
    g.edge_count() + components(g, |_| true, |_, _| true) - g.n()
}

pub fn strong_count(g: &WeightedGraph, f: &[f64]) -> usize {
    components(g, |x| f[x] != 0.0, |x, y| f[x] * f[y] > 0.0)
}

pub fn weak_count(g: &WeightedGraph, f: &[f64]) -> usize {
    components(g, |_| true, |x, y| f[x] * f[y] >= 0.0)
}

/// `(M^{-1}(D + K - A^sigma) f)(x)` from the edge list.
pub fn laplacian(g: &WeightedGraph, f: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = (0..g.n()).map(|x| g.kappa()[x] * f[x]).collect();
    for e in g.edges() {
        let s = if e.sigma.is_negative() { -1.0 } else { 1.0 };
        out[e.u] += e.w * (f[e.u] - s * f[e.v]);
        out[e.v] += e.w * (f[e.v] - s * f[e.u]);
    }
    out.iter().zip(g.mu()).map(|(v, m)| v / m).collect()
}
