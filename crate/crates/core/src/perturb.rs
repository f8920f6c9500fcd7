//! Seeded random perturbations that make spectra generic, and frequency
//! experiments measuring how often they do.

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, WeightedGraph};
use crate::rng::{derive_seed, stream, unit};
use crate::spectral::{laplacian_spectrum, EigenOptions};
use crate::{Error, Result};

/// Scales every weight by `1 + eps * u` and adds `eps * u` to every
/// potential, with fresh `u ~ U[0, 1)` per edge (in edge order) and then per
/// vertex. The measure and the signs are kept.
pub fn perturb(g: &WeightedGraph, eps: f64, seed: u64) -> Result<WeightedGraph> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation size must be finite and nonnegative, got {eps}"
        )));
    }
    let mut rng = stream(seed);
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge {
            w: e.w * (1.0 + eps * unit(&mut rng)),
            ..*e
        })
        .collect();
    let kappa: Vec<f64> = g.kappa().iter().map(|k| k + eps * unit(&mut rng)).collect();
    g.with_edges(edges)?.with_potential(kappa)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenericityOptions {
    pub gap_tol: f64,
    pub zero_tol: f64,
}

impl Default for GenericityOptions {
    fn default() -> Self {
        GenericityOptions {
            gap_tol: 1e-10,
            zero_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    /// `min_gap > gap_tol`.
    pub simple: bool,
    /// Smallest gap between consecutive eigenvalues.
    pub min_gap: f64,
    /// `min_abs_entry > zero_tol`.
    pub zero_free: bool,
    /// Smallest `|f_k(x)|` over all `mu`-normalized eigenfunctions.
    pub min_abs_entry: f64,
    pub gap_tol: f64,
    pub zero_tol: f64,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.simple && self.zero_free
    }
}

pub fn genericity_report(g: &WeightedGraph, opts: &GenericityOptions) -> Result<GenericityReport> {
    let s = laplacian_spectrum(g, &EigenOptions::default())?;
    let min_gap = s
        .values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let min_abs_entry = s
        .functions
        .iter()
        .flatten()
        .fold(f64::INFINITY, |m, x| m.min(x.abs()));
    Ok(GenericityReport {
        simple: min_gap > opts.gap_tol,
        min_gap,
        zero_free: min_abs_entry > opts.zero_tol,
        min_abs_entry,
        gap_tol: opts.gap_tol,
        zero_tol: opts.zero_tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityFrequency {
    pub trials: usize,
    pub eps: f64,
    pub seed: u64,
    pub fraction_simple: f64,
    pub fraction_zero_free: f64,
    /// Smallest `min_gap` over all trials.
    pub worst_gap: f64,
    /// Smallest `min_abs_entry` over all trials.
    pub worst_entry: f64,
    pub gap_tol: f64,
    pub zero_tol: f64,
}

/// Runs `trials` independent perturbations; trial `t` uses seed
/// `derive_seed(seed, t)`.
pub fn genericity_frequency(
    g: &WeightedGraph,
    eps: f64,
    trials: usize,
    seed: u64,
    opts: &GenericityOptions,
) -> Result<GenericityFrequency> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is needed".into(),
        ));
    }
    let mut simple = 0usize;
    let mut zero_free = 0usize;
    let mut worst_gap = f64::INFINITY;
    let mut worst_entry = f64::INFINITY;
    for t in 0..trials {
        let h = perturb(g, eps, derive_seed(seed, t as u64))?;
        let r = genericity_report(&h, opts)?;
        simple += usize::from(r.simple);
        zero_free += usize::from(r.zero_free);
        worst_gap = worst_gap.min(r.min_gap);
        worst_entry = worst_entry.min(r.min_abs_entry);
    }
    Ok(GenericityFrequency {
        trials,
        eps,
        seed,
        fraction_simple: simple as f64 / trials as f64,
        fraction_zero_free: zero_free as f64 / trials as f64,
        worst_gap,
        worst_entry,
        gap_tol: opts.gap_tol,
        zero_tol: opts.zero_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, GenParams, Measure};

    fn star3() -> WeightedGraph {
        generate(Family::Star, &GenParams::with_n(4), 0).unwrap()
    }

    fn k3() -> WeightedGraph {
        generate(Family::Complete, &GenParams::with_n(3), 0).unwrap()
    }

    #[test]
    fn perturbation_is_deterministic_and_bounded() {
        let g = star3();
        let a = perturb(&g, 0.1, 7).unwrap();
        assert_eq!(a, perturb(&g, 0.1, 7).unwrap());
        assert_ne!(a, perturb(&g, 0.1, 8).unwrap());
        for e in a.edges() {
            assert!(e.w >= 1.0 && e.w < 1.1);
        }
        assert_eq!(a.mu(), g.mu());
        assert!(a.kappa().iter().all(|&k| (0.0..0.1).contains(&k)));
        assert!(perturb(&g, -0.1, 0).is_err());
        assert!(perturb(&g, f64::NAN, 0).is_err());
    }

    #[test]
    fn reports_on_known_spectra() {
        let edge = WeightedGraph::from_pairs(2, &[(0, 1)], Measure::Degree).unwrap();
        let r = genericity_report(&edge, &GenericityOptions::default()).unwrap();
        assert!(r.simple && r.zero_free);
        assert!((r.min_gap - 2.0).abs() < 1e-12);
        assert!((r.min_abs_entry - 1.0 / 2f64.sqrt()).abs() < 1e-12);

        let opts = GenericityOptions::default();
        assert!(!genericity_report(&star3(), &opts).unwrap().simple);
        assert!(!genericity_report(&k3(), &opts).unwrap().simple);
    }

    #[test]
    fn frequencies() {
        let opts = GenericityOptions::default();
        let f = genericity_frequency(&k3(), 0.05, 50, 1, &opts).unwrap();
        assert_eq!(f.fraction_simple, 1.0);
        assert_eq!(f, genericity_frequency(&k3(), 0.05, 50, 1, &opts).unwrap());
        let f = genericity_frequency(&k3(), 0.0, 1, 1, &opts).unwrap();
        assert_eq!(f.fraction_simple, 0.0);
        assert!(genericity_frequency(&k3(), 0.05, 0, 1, &opts).is_err());
    }

    #[test]
    fn small_perturbations_move_eigenvalues_little() {
        let g = generate(Family::Cycle, &GenParams::with_n(6), 0).unwrap();
        let base = laplacian_spectrum(&g, &EigenOptions::default())
            .unwrap()
            .values;
        for eps in [1e-3, 1e-6] {
            let h = perturb(&g, eps, 3).unwrap();
            let moved = laplacian_spectrum(&h, &EigenOptions::default())
                .unwrap()
                .values;
            let dist = base
                .iter()
                .zip(&moved)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(dist <= 10.0 * eps, "eps {eps}: moved {dist}");
        }
    }
}
