//! Conductance, exact multi-way Cheeger constants and nodal sweep
//! certificates.
//!
//! The exact constants are found by depth-first search over vertex labelings
//! in vertex order. For the unsigned constant a vertex gets a label in
//! `0..=k` (0 = in no part); for the signed constant a code in `0..=2k`,
//! where code `2i-1` / `2i` puts the vertex on side 1 / side 2 of pair `i`.
//! Labels are canonical: part (pair) `i+1` can only be opened after part `i`,
//! and a pair is opened through its side 1. Subtrees are pruned with
//! conductance lower bounds that only count edges whose fate is already
//! decided, over the largest measure the part can still reach.
//!
//! Among optimal labelings the search returns the lexicographically smallest
//! canonical one. Values are always evaluated with the same summation order
//! as [`conductance`] and [`beta_signed`], so equal families give bitwise
//! equal values.

use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::nodal::{default_zero_tol, strong_nodal};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of search-tree nodes visited.
    pub max_states: u64,
    /// Return the best certificate found (flagged inexact) instead of an
    /// error when the budget runs out.
    pub allow_overflow: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 200_000_000,
            allow_overflow: false,
        }
    }
}

impl SearchBudget {
    pub fn with_max_states(max_states: u64) -> Self {
        SearchBudget {
            max_states,
            ..Default::default()
        }
    }
}

/// Witness for a (signed) k-way Cheeger constant.
///
/// Unsigned: `parts` holds the `k` sets `A_1..A_k`. Signed: `parts` holds
/// `2k` sets, pair `i` being `(parts[2i], parts[2i+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub k: usize,
    pub value: f64,
    pub parts: Vec<Vec<usize>>,
    /// False when the value is only an upper bound (budget overflow, sweeps).
    pub exact: bool,
    pub states: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub signed: bool,
}

/// Cut weight and measure of the set `{x : member(x)}`, summed in vertex
/// order.
fn cut_and_measure(g: &WeightedGraph, member: impl Fn(usize) -> bool) -> (f64, f64) {
    let mut cut = 0.0;
    let mut mu = 0.0;
    for x in 0..g.n() {
        if !member(x) {
            continue;
        }
        mu += g.mu()[x];
        for nb in g.neighbors(x) {
            if !member(nb.v) {
                cut += nb.w;
            }
        }
    }
    (cut, mu)
}

/// Numerator and denominator of `beta` for the pair described by `side`
/// (0 = outside, 1 or 2 = side of the pair).
fn beta_terms(g: &WeightedGraph, side: impl Fn(usize) -> u8) -> (f64, f64) {
    let mut num = 0.0;
    let mut mu = 0.0;
    for x in 0..g.n() {
        let sx = side(x);
        if sx == 0 {
            continue;
        }
        mu += g.mu()[x];
        for nb in g.neighbors(x) {
            let sy = side(nb.v);
            // per ordered pair: boundary once, frustrated inner pairs once
            // each way (both orders are visited)
            let counted = sy == 0 || ((sx == sy) == nb.sigma.is_negative());
            if counted {
                num += nb.w;
            }
        }
    }
    (num, mu)
}

fn membership(g: &WeightedGraph, set: &[usize], what: &str) -> Result<Vec<bool>> {
    let mut member = vec![false; g.n()];
    for &x in set {
        if x >= g.n() {
            return Err(Error::InvalidArgument(format!(
                "{what}: vertex {x} out of range"
            )));
        }
        if member[x] {
            return Err(Error::InvalidArgument(format!(
                "{what}: vertex {x} repeated"
            )));
        }
        member[x] = true;
    }
    Ok(member)
}

/// `Phi(A) = w(A, V \ A) / mu(A)`; edge signs are ignored.
pub fn conductance(g: &WeightedGraph, set: &[usize]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::InvalidArgument(
            "conductance of the empty set".into(),
        ));
    }
    let member = membership(g, set, "set")?;
    let (cut, mu) = cut_and_measure(g, |x| member[x]);
    Ok(cut / mu)
}

/// `beta(V1, V2) = (2|E+(V1,V2)| + |E-(V1)| + |E-(V2)| + |d(V1 u V2)|) / mu(V1 u V2)`,
/// where `|E-(S)|` sums over ordered pairs, so an inner negative edge counts
/// twice.
pub fn beta_signed(g: &WeightedGraph, v1: &[usize], v2: &[usize]) -> Result<f64> {
    if v1.is_empty() && v2.is_empty() {
        return Err(Error::InvalidArgument("beta of two empty sets".into()));
    }
    let a = membership(g, v1, "V1")?;
    let b = membership(g, v2, "V2")?;
    if let Some(x) = (0..g.n()).find(|&x| a[x] && b[x]) {
        return Err(Error::InvalidArgument(format!(
            "V1 and V2 share vertex {x}"
        )));
    }
    let (num, mu) = beta_terms(g, |x| {
        if a[x] {
            1
        } else if b[x] {
            2
        } else {
            0
        }
    });
    Ok(num / mu)
}

fn check_k(g: &WeightedGraph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..={}, got {k}",
            g.n()
        )));
    }
    if k > 120 {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is beyond exact search"
        )));
    }
    Ok(())
}

/// Values within this relative distance count as ties; covers the different
/// summation order of incremental bounds and exact leaf values.
const TIE_SLACK: f64 = 1e-12;

/// Bounds at or above this can no longer lead to a strict improvement.
fn prune_limit(best: Option<f64>) -> f64 {
    match best {
        Some(v) => v - TIE_SLACK * v,
        None => f64::INFINITY,
    }
}

struct Search<'g> {
    g: &'g WeightedGraph,
    k: usize,
    signed: bool,
    /// Label (unsigned) or code (signed) per decided vertex.
    labels: Vec<u8>,
    /// `suffix_mu[v] = sum_{x >= v} mu_x`.
    suffix_mu: Vec<f64>,
    /// Per depth, `k + 1` entries each: measure and irrevocable boundary
    /// (or beta numerator) of every part; entry 0 unused.
    mu_stack: Vec<f64>,
    cut_stack: Vec<f64>,
    /// Per depth, `n` entries: weight from each vertex to decided vertices.
    ext_stack: Vec<f64>,
    scratch: Vec<f64>,
    best: Option<(f64, Vec<u8>)>,
    states: u64,
    max_states: u64,
    overflow: bool,
}

impl<'g> Search<'g> {
    fn new(g: &'g WeightedGraph, k: usize, signed: bool, budget: &SearchBudget) -> Self {
        let n = g.n();
        let mut suffix_mu = vec![0.0; n + 1];
        for x in (0..n).rev() {
            suffix_mu[x] = suffix_mu[x + 1] + g.mu()[x];
        }
        Search {
            g,
            k,
            signed,
            labels: vec![0; n],
            suffix_mu,
            mu_stack: vec![0.0; (n + 1) * (k + 1)],
            cut_stack: vec![0.0; (n + 1) * (k + 1)],
            ext_stack: vec![0.0; (n + 1) * n],
            scratch: Vec::with_capacity(n),
            best: None,
            states: 0,
            max_states: budget.max_states,
            overflow: false,
        }
    }

    fn part_of(&self, code: u8) -> usize {
        if self.signed {
            (code as usize).div_ceil(2)
        } else {
            code as usize
        }
    }

    /// Writes depth `v + 1` state for vertex `v` taking `code`.
    fn assign(&mut self, v: usize, code: u8) {
        let w = self.k + 1;
        let (lo, hi) = self.mu_stack.split_at_mut((v + 1) * w);
        hi[..w].copy_from_slice(&lo[v * w..]);
        let (lo, hi) = self.cut_stack.split_at_mut((v + 1) * w);
        hi[..w].copy_from_slice(&lo[v * w..]);
        let base = (v + 1) * w;

        let part = self.part_of(code);
        self.labels[v] = code;
        if part > 0 {
            self.mu_stack[base + part] += self.g.mu()[v];
        }
        for nb in self.g.neighbors(v) {
            if nb.v >= v {
                break;
            }
            let other_code = self.labels[nb.v];
            let other = self.part_of(other_code);
            if other != part {
                if part > 0 {
                    self.cut_stack[base + part] += nb.w;
                }
                if other > 0 {
                    self.cut_stack[base + other] += nb.w;
                }
            } else if self.signed && part > 0 {
                let same_side = other_code == code;
                if same_side == nb.sigma.is_negative() {
                    self.cut_stack[base + part] += 2.0 * nb.w;
                }
            }
        }
    }

    /// Depth `v + 1` row of `ext_stack`; independent of the code of `v`.
    fn extend(&mut self, v: usize) {
        let n = self.g.n();
        let (lo, hi) = self.ext_stack.split_at_mut((v + 1) * n);
        hi[..n].copy_from_slice(&lo[v * n..]);
        for nb in self.g.neighbors(v) {
            if nb.v > v {
                hi[nb.v] += nb.w;
            }
        }
    }

    /// Lower bound on the final value once `0..=v` are decided and `opened`
    /// parts exist. A part still to be opened lies inside the undecided
    /// suffix, so its conductance is at least the least ratio
    /// `w(x, decided) / mu_x` among its vertices; `k - opened` disjoint such
    /// parts force the `(k - opened)`-th smallest ratio.
    fn lower_bound(&mut self, v: usize, opened: usize) -> f64 {
        let base = (v + 1) * (self.k + 1);
        let reach = self.suffix_mu[v + 1];
        let mut lb = (1..=opened)
            .map(|i| self.cut_stack[base + i] / (self.mu_stack[base + i] + reach))
            .fold(0.0, f64::max);
        let missing = self.k - opened;
        let n = self.g.n();
        if missing > 0 && missing < n - v {
            let ext = &self.ext_stack[(v + 1) * n..(v + 2) * n];
            self.scratch.clear();
            self.scratch
                .extend((v + 1..n).map(|x| ext[x] / self.g.mu()[x]));
            let (_, kth, _) = self
                .scratch
                .select_nth_unstable_by(missing - 1, f64::total_cmp);
            lb = lb.max(*kth);
        }
        lb
    }

    fn leaf_value(&self) -> f64 {
        (1..=self.k)
            .map(|i| {
                if self.signed {
                    let (s1, s2) = (2 * i - 1, 2 * i);
                    let (num, mu) = beta_terms(self.g, |x| {
                        let c = self.labels[x] as usize;
                        if c == s1 {
                            1
                        } else if c == s2 {
                            2
                        } else {
                            0
                        }
                    });
                    num / mu
                } else {
                    let (cut, mu) = cut_and_measure(self.g, |x| self.labels[x] as usize == i);
                    cut / mu
                }
            })
            .fold(0.0, f64::max)
    }

    fn dfs(&mut self, v: usize, opened: usize) {
        if self.overflow {
            return;
        }
        self.states += 1;
        if self.states > self.max_states {
            self.overflow = true;
            return;
        }
        let n = self.g.n();
        if v == n {
            if opened == self.k {
                let incremental = (1..=self.k)
                    .map(|i| {
                        self.cut_stack[n * (self.k + 1) + i] / self.mu_stack[n * (self.k + 1) + i]
                    })
                    .fold(0.0, f64::max);
                let best_value = self.best.as_ref().map(|b| b.0);
                if incremental < prune_limit(best_value) {
                    let value = self.leaf_value();
                    if value < prune_limit(best_value) {
                        self.best = Some((value, self.labels.clone()));
                    }
                }
            }
            return;
        }
        if self.k - opened > n - v {
            return;
        }
        // canonical codes form the range 0..=max_code: unsigned labels up to
        // the next unopened part; signed: both sides of opened pairs, then
        // side 1 of the next pair
        let max_code = if self.signed {
            2 * opened + usize::from(opened < self.k)
        } else {
            (opened + 1).min(self.k)
        };
        self.extend(v);
        for code in 0..=max_code as u8 {
            self.assign(v, code);
            let opened_after = opened.max(self.part_of(code));
            let lb = self.lower_bound(v, opened_after);
            if lb < prune_limit(self.best.as_ref().map(|b| b.0)) {
                self.dfs(v + 1, opened_after);
            }
            if self.overflow {
                return;
            }
        }
        self.labels[v] = 0;
    }

    fn certificate(&self, exact: bool) -> Option<PartitionCertificate> {
        let (value, labels) = self.best.as_ref()?;
        let sets = if self.signed { 2 * self.k } else { self.k };
        let mut parts = vec![Vec::new(); sets];
        for (x, &c) in labels.iter().enumerate() {
            if c > 0 {
                parts[c as usize - 1].push(x);
            }
        }
        Some(PartitionCertificate {
            k: self.k,
            value: *value,
            parts,
            exact,
            states: self.states,
            signed: self.signed,
        })
    }
}

fn run_search(
    g: &WeightedGraph,
    k: usize,
    signed: bool,
    budget: &SearchBudget,
) -> Result<PartitionCertificate> {
    check_k(g, k)?;
    if budget.max_states == 0 {
        return Err(Error::InvalidArgument("max_states must be positive".into()));
    }
    let mut search = Search::new(g, k, signed, budget);
    search.dfs(0, 0);
    if search.overflow {
        let best = search.certificate(false);
        return match best {
            Some(cert) if budget.allow_overflow => Ok(cert),
            best => Err(Error::BudgetExceeded {
                max_states: budget.max_states,
                best: best.map(Box::new),
            }),
        };
    }
    Ok(search
        .certificate(true)
        .expect("k <= n guarantees a feasible labeling"))
}

/// Exact `rho_k(G) = min over k disjoint nonempty sets of max Phi`.
/// The sets need not cover `V`.
pub fn rho_exact(
    g: &WeightedGraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<PartitionCertificate> {
    run_search(g, k, false, budget)
}

/// Exact signed constant `rho^sigma_k`: minimum over k-sub-bipartitions of
/// the largest `beta`.
pub fn rho_signed_exact(
    g: &WeightedGraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<PartitionCertificate> {
    run_search(g, k, true, budget)
}

/// Upper-bound certificate for `rho_m`, `m` the number of strong nodal
/// domains of `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalSweep {
    pub m: usize,
    pub bound: f64,
    pub certificate: PartitionCertificate,
}

/// Sweeps every strong nodal domain `S` of `f` independently over the level
/// sets `{x in S : |f(x)| >= t}` and keeps the one of least conductance.
/// The chosen level sets are disjoint, so `bound >= rho_m`.
pub fn rho_upper_nodal_sweep(g: &WeightedGraph, f: &[f64]) -> Result<NodalSweep> {
    let zero_tol = default_zero_tol(f);
    if f.iter().all(|x| x.abs() <= zero_tol) {
        return Err(Error::InvalidArgument(
            "sweep needs a nonzero function".into(),
        ));
    }
    let domains = strong_nodal(g, f, zero_tol)?.domains();
    let mut parts = Vec::with_capacity(domains.len());
    let mut bound = 0.0f64;
    for domain in &domains {
        let mut levels: Vec<f64> = domain.iter().map(|&x| f[x].abs()).collect();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let mut best: Option<(f64, Vec<usize>)> = None;
        for t in levels {
            let set: Vec<usize> = domain
                .iter()
                .copied()
                .filter(|&x| f[x].abs() >= t)
                .collect();
            let phi = conductance(g, &set)?;
            if best.as_ref().is_none_or(|b| phi < b.0) {
                best = Some((phi, set));
            }
        }
        let (phi, set) = best.expect("domains are nonempty");
        bound = bound.max(phi);
        parts.push(set);
    }
    let m = parts.len();
    Ok(NodalSweep {
        m,
        bound,
        certificate: PartitionCertificate {
            k: m,
            value: bound,
            parts,
            exact: false,
            states: 0,
            signed: false,
        },
    })
}
