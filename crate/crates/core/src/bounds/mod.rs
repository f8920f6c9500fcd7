//! Executable checks of the spectral and nodal inequalities, one
//! [`CheckRecord`] per inequality instance.
//!
//! | check id | inequality |
//! |---|---|
//! | `main` | `rho_{k-l} <= sqrt(2 tau lambda_k)`, `l` the cyclomatic number |
//! | `main_signed` | the same with signed constants and signed spectrum |
//! | `nodal_lower`, `nodal_upper` | `k + r - 1 - l <= S(f_k) <= k + r - 1` |
//! | `nodal_weak` | `W(f_k) <= k + c - 1` |
//! | `nodal_cheeger` | `rho_{S(f_k)} <= sqrt(2 tau lambda_k)` |
//! | `lower` | `(tau_min - eta)(1 - 1/k) <= rho_k` |
//! | `lower_spectral` | `(1 - 1/k) min(lambda_2, 2 - lambda_n) <= rho_k` |
//! | `product` | `rho_{k n2} <= sqrt(2 tau lambda_{k n2})` on a tree times a bipartite graph |
//! | `monotone`, `monotone_signed` | `rho_k <= rho_{k+1}` |
//! | `spectral_lower` | `lambda_k / 2 <= rho_k` |
//! | `cheeger_upper` | `rho_2 <= sqrt(2 lambda_2)` |
//! | `floor` | `0.01 < rho_2` |
//!
//! Every record holds when `lhs <= rhs + 1e-9 max(1, rhs)`.

mod corpus;

pub use corpus::{
    preset, run_corpus, verify_graph, CheckError, CorpusConfig, CorpusGroup, Instance, Report,
    Skipped, Summary, PRESETS,
};

use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cheeger::{
    rho_exact, rho_signed_exact, rho_upper_nodal_sweep, PartitionCertificate, SearchBudget,
};
use crate::graph::{
    classify, cyclomatic, degree_profile, product, DegreeProfile, GraphClassification,
    WeightedGraph,
};
use crate::nodal::{default_zero_tol, strong_nodal, weak_nodal};
use crate::perturb::{genericity_report, perturb, GenericityOptions};
use crate::spectral::{adjacency_eta, laplacian_spectrum, EigenOptions, Spectrum};
use crate::{Error, Result};

/// Seed used whenever none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Lower floor asserted for `rho_2` on the `gn` family.
pub const GN_FLOOR: f64 = 0.01;

/// `1e-9 * max(1, rhs)`.
pub fn tolerance(rhs: f64) -> f64 {
    1e-9 * rhs.max(1.0)
}

/// Clamps round-off negatives in `[-1e-10, 0)` to zero.
pub fn clamp_eigenvalue(lambda: f64) -> f64 {
    if (-1e-10..0.0).contains(&lambda) {
        0.0
    } else {
        lambda
    }
}

fn sqrt_bound(tau: f64, lambda: f64) -> Result<f64> {
    let lambda = clamp_eigenvalue(lambda);
    if lambda < 0.0 {
        return Err(Error::Hypothesis(format!("negative eigenvalue {lambda:e}")));
    }
    Ok((2.0 * tau * lambda).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub instance: String,
    pub check: String,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    pub holds: bool,
    pub meta: Map<String, Value>,
}

impl CheckRecord {
    pub fn new(check: &str, k: usize, lhs: f64, rhs: f64, meta: Value) -> Self {
        let margin = rhs - lhs;
        let meta = match meta {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => Map::from_iter([("value".to_string(), other)]),
        };
        CheckRecord {
            instance: String::new(),
            check: check.to_string(),
            k,
            lhs,
            rhs,
            margin,
            holds: lhs.is_finite() && rhs.is_finite() && margin >= -tolerance(rhs),
            meta,
        }
    }
}

/// Selectable check groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `main` or `main_signed`.
    Main,
    /// `nodal_lower`, `nodal_upper`, `nodal_weak` on a perturbed copy.
    Nodal,
    /// `nodal_cheeger`.
    Lemma,
    /// `lower`, `lower_spectral`.
    Lower,
    /// `monotone`, `monotone_signed`, `spectral_lower`, `cheeger_upper`.
    Basics,
    /// `floor`.
    Floor,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Main,
        CheckKind::Nodal,
        CheckKind::Lemma,
        CheckKind::Lower,
        CheckKind::Basics,
        CheckKind::Floor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Main => "main",
            CheckKind::Nodal => "nodal",
            CheckKind::Lemma => "lemma",
            CheckKind::Lower => "lower",
            CheckKind::Basics => "basics",
            CheckKind::Floor => "floor",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckKind::ALL.iter().map(|c| c.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown check {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Options shared by the checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    /// Perturbation size for the nodal-count checks.
    pub eps: f64,
    pub seed: u64,
    pub budget: SearchBudget,
    /// Run `nodal_cheeger` on a perturbed copy (same `eps`, `seed`) instead
    /// of the graph itself.
    pub perturb_lemma: bool,
    pub genericity: GenericityOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            eps: 0.05,
            seed: DEFAULT_SEED,
            budget: SearchBudget::default(),
            perturb_lemma: false,
            genericity: GenericityOptions::default(),
        }
    }
}

/// Lazily computed quantities of one graph shared by all checks: spectrum,
/// exact Cheeger constants, degree profile, classification.
pub struct Analysis<'g> {
    g: &'g WeightedGraph,
    budget: SearchBudget,
    profile: DegreeProfile,
    classification: GraphClassification,
    ell: usize,
    spectrum: OnceCell<Result<Spectrum>>,
    rho: RefCell<BTreeMap<usize, Result<PartitionCertificate>>>,
    rho_signed: RefCell<BTreeMap<usize, Result<PartitionCertificate>>>,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g WeightedGraph, budget: SearchBudget) -> Self {
        Analysis {
            g,
            budget,
            profile: degree_profile(g),
            classification: classify(g),
            ell: cyclomatic(g),
            spectrum: OnceCell::new(),
            rho: RefCell::new(BTreeMap::new()),
            rho_signed: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.g
    }

    pub fn profile(&self) -> &DegreeProfile {
        &self.profile
    }

    pub fn classification(&self) -> &GraphClassification {
        &self.classification
    }

    pub fn cyclomatic(&self) -> usize {
        self.ell
    }

    pub fn spectrum(&self) -> Result<&Spectrum> {
        self.spectrum
            .get_or_init(|| laplacian_spectrum(self.g, &EigenOptions::default()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `lambda_k` for 1-based `k`.
    pub fn lambda(&self, k: usize) -> Result<f64> {
        Ok(self.spectrum()?.values[k - 1])
    }

    pub fn rho(&self, k: usize) -> Result<PartitionCertificate> {
        self.rho
            .borrow_mut()
            .entry(k)
            .or_insert_with(|| rho_exact(self.g, k, &self.budget))
            .clone()
    }

    pub fn rho_signed(&self, k: usize) -> Result<PartitionCertificate> {
        self.rho_signed
            .borrow_mut()
            .entry(k)
            .or_insert_with(|| rho_signed_exact(self.g, k, &self.budget))
            .clone()
    }

    fn require_connected(&self, what: &str) -> Result<()> {
        if !self.classification.is_connected {
            return Err(Error::Hypothesis(format!("{what} needs a connected graph")));
        }
        Ok(())
    }

    fn require_nonnegative_potential(&self, what: &str) -> Result<()> {
        if !self.g.has_nonnegative_potential() {
            return Err(Error::Hypothesis(format!("{what} needs kappa >= 0")));
        }
        Ok(())
    }

    fn require_unsigned(&self, what: &str) -> Result<()> {
        if self.g.is_signed() {
            return Err(Error::Hypothesis(format!("{what} needs an unsigned graph")));
        }
        Ok(())
    }

    fn require_degree_measure(&self, what: &str) -> Result<()> {
        if !self.g.measure_is_degree() || !self.g.has_zero_potential() || self.g.is_signed() {
            return Err(Error::Hypothesis(format!(
                "{what} needs mu = degree, kappa = 0 and no negative edges"
            )));
        }
        Ok(())
    }

    /// `rho_{k-l} <= sqrt(2 tau lambda_k)` for every `k` in `l+1..=n`,
    /// with the signed constant on signed graphs.
    pub fn check_main(&self) -> Result<Vec<CheckRecord>> {
        self.require_connected("the cyclomatic upper bound")?;
        self.require_nonnegative_potential("the cyclomatic upper bound")?;
        let signed = self.g.is_signed();
        let name = if signed { "main_signed" } else { "main" };
        let tau = self.profile.tau;
        let mut out = Vec::new();
        for k in self.ell + 1..=self.g.n() {
            let lambda = self.lambda(k)?;
            let cert = if signed {
                self.rho_signed(k - self.ell)?
            } else {
                self.rho(k - self.ell)?
            };
            out.push(CheckRecord::new(
                name,
                k,
                cert.value,
                sqrt_bound(tau, lambda)?,
                json!({
                    "ell": self.ell,
                    "tau": tau,
                    "lambda_k": lambda,
                    "rho_index": k - self.ell,
                    "parts": cert.parts,
                }),
            ));
        }
        Ok(out)
    }

    /// `rho_{S(f_k)} <= sqrt(2 tau lambda_k)` for every eigenfunction of the
    /// graph itself, with the nodal sweep bound echoed in `meta`.
    pub fn check_lemma(&self) -> Result<Vec<CheckRecord>> {
        self.require_unsigned("the nodal Cheeger bound")?;
        self.require_nonnegative_potential("the nodal Cheeger bound")?;
        let s = self.spectrum()?;
        let tau = self.profile.tau;
        let mut out = Vec::new();
        for (i, (lambda, f)) in s.values.iter().zip(&s.functions).enumerate() {
            let m = strong_nodal(self.g, f, default_zero_tol(f))?.count;
            let cert = self.rho(m)?;
            let sweep = rho_upper_nodal_sweep(self.g, f)?;
            out.push(CheckRecord::new(
                "nodal_cheeger",
                i + 1,
                cert.value,
                sqrt_bound(tau, *lambda)?,
                json!({
                    "m": m,
                    "tau": tau,
                    "lambda_k": lambda,
                    "sweep_bound": sweep.bound,
                    "parts": cert.parts,
                }),
            ));
        }
        Ok(out)
    }

    /// `(tau_min - eta)(1 - 1/k) <= rho_k` for `k >= 2`, plus the form with
    /// `min(lambda_2, 2 - lambda_n)` when `mu = d` and the graph is not
    /// complete.
    pub fn check_lower(&self) -> Result<Vec<CheckRecord>> {
        self.require_unsigned("the lower bound")?;
        if !self.g.has_zero_potential() {
            return Err(Error::Hypothesis("the lower bound needs kappa = 0".into()));
        }
        let n = self.g.n();
        let eta = adjacency_eta(self.g, &EigenOptions::default())?.eta;
        let tau_min = self.profile.tau_min;
        let spectral = if self.g.measure_is_degree() && !self.g.is_complete() {
            let l2 = self.lambda(2)?;
            let ln = self.lambda(n)?;
            Some((l2, ln, l2.min(2.0 - ln)))
        } else {
            None
        };
        let mut out = Vec::new();
        for k in 2..=n {
            let rho = self.rho(k)?.value;
            let shrink = 1.0 - 1.0 / k as f64;
            out.push(CheckRecord::new(
                "lower",
                k,
                (tau_min - eta) * shrink,
                rho,
                json!({ "tau_min": tau_min, "eta": eta }),
            ));
            if let Some((l2, ln, gap)) = spectral {
                out.push(CheckRecord::new(
                    "lower_spectral",
                    k,
                    gap * shrink,
                    rho,
                    json!({ "lambda_2": l2, "lambda_n": ln }),
                ));
            }
        }
        Ok(out)
    }

    /// `rho_k <= rho_{k+1}` for `k < n`.
    pub fn check_monotone(&self) -> Result<Vec<CheckRecord>> {
        self.monotone("monotone", |k| self.rho(k))
    }

    /// `rho^sigma_k <= rho^sigma_{k+1}` for `k < n`.
    pub fn check_monotone_signed(&self) -> Result<Vec<CheckRecord>> {
        self.require_signed()?;
        self.monotone("monotone_signed", |k| self.rho_signed(k))
    }

    fn require_signed(&self) -> Result<()> {
        if !self.g.is_signed() {
            return Err(Error::Hypothesis(
                "signed monotonicity needs negative edges".into(),
            ));
        }
        Ok(())
    }

    fn monotone(
        &self,
        name: &str,
        rho: impl Fn(usize) -> Result<PartitionCertificate>,
    ) -> Result<Vec<CheckRecord>> {
        (1..self.g.n())
            .map(|k| {
                Ok(CheckRecord::new(
                    name,
                    k,
                    rho(k)?.value,
                    rho(k + 1)?.value,
                    Value::Null,
                ))
            })
            .collect()
    }

    /// `lambda_k / 2 <= rho_k` for all `k` and `rho_2 <= sqrt(2 lambda_2)`;
    /// classical normalization only.
    pub fn check_spectral_basics(&self) -> Result<Vec<CheckRecord>> {
        self.require_degree_measure("the classical Cheeger inequalities")?;
        let mut out = Vec::new();
        for k in 1..=self.g.n() {
            let lambda = self.lambda(k)?;
            out.push(CheckRecord::new(
                "spectral_lower",
                k,
                clamp_eigenvalue(lambda) / 2.0,
                self.rho(k)?.value,
                json!({ "lambda_k": lambda }),
            ));
        }
        let l2 = self.lambda(2)?;
        out.push(CheckRecord::new(
            "cheeger_upper",
            2,
            self.rho(2)?.value,
            sqrt_bound(1.0, l2)?,
            json!({ "lambda_2": l2 }),
        ));
        Ok(out)
    }

    /// Every basic check whose hypotheses hold.
    pub fn check_basics(&self) -> Result<Vec<CheckRecord>> {
        let mut out = self.check_monotone()?;
        for part in [self.check_monotone_signed(), self.check_spectral_basics()] {
            match part {
                Ok(records) => out.extend(records),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// `0.01 < rho_2`, with `lambda_2` echoed.
    pub fn check_floor(&self) -> Result<Vec<CheckRecord>> {
        let rho2 = self.rho(2)?.value;
        let l2 = self.lambda(2)?;
        let mut record = CheckRecord::new(
            "floor",
            2,
            GN_FLOOR,
            rho2,
            json!({ "rho_2": rho2, "lambda_2": l2 }),
        );
        record.holds = rho2 > GN_FLOOR;
        Ok(vec![record])
    }
}

/// Nodal-count sandwich on `perturb(g, eps, seed)`: for every eigenpair,
/// `k + r - 1 - l <= S(f_k) <= k + r - 1` and `W(f_k) <= k`.
pub fn check_nodal_count_bounds(
    g: &WeightedGraph,
    eps: f64,
    seed: u64,
    opts: &GenericityOptions,
) -> Result<Vec<CheckRecord>> {
    if g.is_signed() {
        return Err(Error::Hypothesis(
            "nodal counts need an unsigned graph".into(),
        ));
    }
    if !classify(g).is_connected {
        return Err(Error::Hypothesis(
            "nodal counts need a connected graph".into(),
        ));
    }
    let ell = cyclomatic(g);
    let h = perturb(g, eps, seed)?;
    let report = genericity_report(&h, opts)?;
    if !report.is_generic() {
        return Err(Error::NotGeneric(format!(
            "min gap {:e}, min |entry| {:e} (eps {eps}, seed {seed})",
            report.min_gap, report.min_abs_entry
        )));
    }
    let s = laplacian_spectrum(&h, &EigenOptions::default())?;
    let mut out = Vec::new();
    for (i, f) in s.functions.iter().enumerate() {
        let k = i + 1;
        let r = s.multiplicity(i);
        let zero_tol = default_zero_tol(f);
        let strong = strong_nodal(&h, f, zero_tol)?.count as f64;
        let weak = weak_nodal(&h, f, zero_tol)?.count as f64;
        let upper = (k + r - 1) as f64;
        let meta = json!({ "ell": ell, "r": r, "eps": eps, "seed": seed, "lambda_k": s.values[i] });
        out.push(CheckRecord::new(
            "nodal_lower",
            k,
            upper - ell as f64,
            strong,
            meta.clone(),
        ));
        out.push(CheckRecord::new(
            "nodal_upper",
            k,
            strong,
            upper,
            meta.clone(),
        ));
        out.push(CheckRecord::new("nodal_weak", k, weak, k as f64, meta));
    }
    Ok(out)
}

/// `nodal_cheeger` records, on `perturb(g, eps, seed)` when `eps > 0`.
pub fn check_lemma_nodal_cheeger(
    g: &WeightedGraph,
    eps: f64,
    seed: u64,
    budget: &SearchBudget,
) -> Result<Vec<CheckRecord>> {
    if eps > 0.0 {
        let h = perturb(g, eps, seed)?;
        Analysis::new(&h, *budget).check_lemma()
    } else {
        Analysis::new(g, *budget).check_lemma()
    }
}

pub fn check_theorem_main(g: &WeightedGraph, budget: &SearchBudget) -> Result<Vec<CheckRecord>> {
    Analysis::new(g, *budget).check_main()
}

pub fn check_lower_bound(g: &WeightedGraph, budget: &SearchBudget) -> Result<Vec<CheckRecord>> {
    Analysis::new(g, *budget).check_lower()
}

pub fn check_basics(g: &WeightedGraph, budget: &SearchBudget) -> Result<Vec<CheckRecord>> {
    Analysis::new(g, *budget).check_basics()
}

/// Upper bound for `rho_{k n2}` on the product of a tree `g1` (perturbed by
/// `eps`, `seed`; `eps = 0` keeps it) with a bipartite `g2`, under the gap
/// condition `lambda2_{n2} < lambda1_{k+1} - lambda1_k`.
pub fn check_product_theorem(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
    k: usize,
    eps: f64,
    seed: u64,
    budget: &SearchBudget,
) -> Result<CheckRecord> {
    for (g, name) in [(g1, "first"), (g2, "second")] {
        if !g.measure_is_unit() {
            return Err(Error::Hypothesis(format!("the {name} factor needs mu = 1")));
        }
        if !g.has_nonnegative_potential() {
            return Err(Error::Hypothesis(format!(
                "the {name} factor needs kappa >= 0"
            )));
        }
    }
    if !classify(g1).is_tree {
        return Err(Error::Hypothesis("the first factor must be a tree".into()));
    }
    if !classify(g2).is_bipartite || g2.is_signed() {
        return Err(Error::Hypothesis(
            "the second factor must be bipartite and unsigned".into(),
        ));
    }
    let (n1, n2) = (g1.n(), g2.n());
    if k == 0 || k >= n1 {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..{n1}, got {k}"
        )));
    }
    let g1 = perturb(g1, eps, seed)?;
    let opts = EigenOptions::default();
    let s1 = laplacian_spectrum(&g1, &opts)?;
    let s2 = laplacian_spectrum(g2, &opts)?;
    let gap = s1.values[k] - s1.values[k - 1];
    let top2 = s2.values[n2 - 1];
    if top2 >= gap {
        return Err(Error::Hypothesis(format!(
            "gap condition fails: lambda2_n2 = {top2} >= lambda1_(k+1) - lambda1_k = {gap}"
        )));
    }
    let g = product(&g1, g2)?;
    let a = Analysis::new(&g, *budget);
    let index = k * n2;
    let lambda = a.lambda(index)?;
    let sum = s1.values[k - 1] + top2;
    let tau = a.profile().tau;
    let cert = a.rho(index)?;
    Ok(CheckRecord::new(
        "product",
        k,
        cert.value,
        sqrt_bound(tau, lambda)?,
        json!({
            "n2": n2,
            "rho_index": index,
            "gap": gap,
            "lambda2_n2": top2,
            "lambda_product": lambda,
            "lambda_sum": sum,
            "spectrum_sum_ok": (lambda - sum).abs() <= 1e-8,
            "tau": tau,
            "parts": cert.parts,
        }),
    ))
}
