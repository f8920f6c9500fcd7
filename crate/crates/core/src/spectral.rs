//! Dense symmetric eigendecomposition by cyclic Jacobi rotations, and the
//! spectra built on it.
//!
//! Laplacian eigenvalues are reported in ascending order, normalized
//! adjacency eigenvalues in descending order.

use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::{Error, Result};

/// A real symmetric matrix stored densely; [`SymMatrix::set`] writes both
/// triangles so symmetry is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from rows, mirroring the upper triangle.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate().skip(i) {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenOptions {
    /// Convergence threshold on the off-diagonal Frobenius norm, relative to
    /// the Frobenius norm of the input.
    pub off_diag_tol: f64,
    pub max_sweeps: usize,
    /// Consecutive eigenvalues closer than `gap_tol * max(1, max|lambda|)`
    /// are clustered into one multiplicity group.
    pub gap_tol: f64,
    /// Eigenpair residuals must satisfy
    /// `|Lf - lambda f|_inf <= residual_tol * max(1, max|lambda|)`.
    pub residual_tol: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            off_diag_tol: 1e-12,
            max_sweeps: 64,
            gap_tol: 1e-8,
            residual_tol: 1e-8,
        }
    }
}

impl EigenOptions {
    fn check(&self) -> Result<()> {
        let ok = [self.off_diag_tol, self.gap_tol, self.residual_tol]
            .iter()
            .all(|t| *t > 0.0 && t.is_finite())
            && self.max_sweeps > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "eigen tolerances and max_sweeps must be positive".into(),
            ))
        }
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors;
/// `vectors[k]` belongs to `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigendecomposition.
///
/// Eigenvectors are sign-normalized so that their first entry of (nearly)
/// largest magnitude is positive; equal eigenvalues keep the order in which
/// the rotations left them (stable sort).
pub fn eig_sym(m: &SymMatrix, opts: &EigenOptions) -> Result<SymEigen> {
    opts.check()?;
    let n = m.n;
    let mut a = m.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = opts.off_diag_tol * m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off <= threshold {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s, t, apq);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&col| {
            let mut x: Vec<f64> = (0..n).map(|r| v[r * n + col]).collect();
            normalize_sign(&mut x);
            x
        })
        .collect();
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

#[allow(clippy::too_many_arguments)]
fn rotate(a: &mut SymMatrix, v: &mut [f64], p: usize, q: usize, c: f64, s: f64, t: f64, apq: f64) {
    let n = a.n;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, app - t * apq);
    a.set(q, q, aqq + t * apq);
    a.set(p, q, 0.0);
    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}

fn normalize_sign(x: &mut [f64]) {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(lead) = x.iter().find(|v| v.abs() >= max * (1.0 - 1e-9)) {
        if *lead < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Symmetrized (signed) normalized Laplacian `M^{-1/2} (D + K - A^sigma) M^{-1/2}`.
pub fn normalized_laplacian_sym(g: &WeightedGraph) -> SymMatrix {
    let n = g.n();
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, (g.degrees()[i] + g.kappa()[i]) / g.mu()[i]);
    }
    for e in g.edges() {
        let x = -e.sigma.value() * e.w / (g.mu()[e.u] * g.mu()[e.v]).sqrt();
        m.set(e.u, e.v, x);
    }
    m
}

/// Applies the non-symmetric normalized Laplacian `M^{-1}(D + K - A^sigma)`.
pub fn apply_laplacian(g: &WeightedGraph, f: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|i| {
            let off: f64 = g
                .neighbors(i)
                .iter()
                .map(|nb| nb.sigma.value() * nb.w * f[nb.v])
                .sum();
            ((g.degrees()[i] + g.kappa()[i]) * f[i] - off) / g.mu()[i]
        })
        .collect()
}

/// Eigenvalues of the normalized Laplacian with `mu`-orthonormal
/// eigenfunctions and multiplicity clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ascending.
    pub values: Vec<f64>,
    /// `(start, multiplicity)` groups of numerically equal values; `start`
    /// is a 0-based index into `values`.
    pub clusters: Vec<(usize, usize)>,
    /// `functions[k]` is an eigenfunction for `values[k]`, with
    /// `sum_i mu_i f(i)^2 = 1`.
    pub functions: Vec<Vec<f64>>,
}

impl Spectrum {
    /// Multiplicity of the eigenvalue at 0-based index `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.cluster_of(k).1
    }

    /// The cluster containing 0-based index `k`.
    pub fn cluster_of(&self, k: usize) -> (usize, usize) {
        *self
            .clusters
            .iter()
            .find(|(s, r)| (*s..s + r).contains(&k))
            .expect("clusters cover every index")
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Groups sorted `values` into runs whose consecutive gaps are at most
/// `gap_tol * max(1, max|value|)`.
pub fn cluster_values(values: &[f64], gap_tol: f64) -> Vec<(usize, usize)> {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    for (k, &x) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some((_, r)) if x - values[k - 1] <= gap_tol * scale => *r += 1,
            _ => clusters.push((k, 1)),
        }
    }
    clusters
}

pub fn laplacian_spectrum(g: &WeightedGraph, opts: &EigenOptions) -> Result<Spectrum> {
    let eig = eig_sym(&normalized_laplacian_sym(g), opts)?;
    let functions: Vec<Vec<f64>> = eig
        .vectors
        .iter()
        .map(|v| v.iter().zip(g.mu()).map(|(x, m)| x / m.sqrt()).collect())
        .collect();
    let spectrum = Spectrum {
        clusters: cluster_values(&eig.values, opts.gap_tol),
        values: eig.values,
        functions,
    };
    let tolerance = opts.residual_tol * spectrum.max_abs().max(1.0);
    let residual = max_residual(g, &spectrum);
    if residual > tolerance {
        return Err(Error::Residual {
            residual,
            tolerance,
        });
    }
    Ok(spectrum)
}

/// `max_k |L f_k - lambda_k f_k|_inf` for the non-symmetric Laplacian.
pub fn max_residual(g: &WeightedGraph, s: &Spectrum) -> f64 {
    s.values
        .iter()
        .zip(&s.functions)
        .map(|(&lambda, f)| {
            apply_laplacian(g, f)
                .iter()
                .zip(f)
                .fold(0.0f64, |m, (lf, x)| m.max((lf - lambda * x).abs()))
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjacencySpectrum {
    /// Eigenvalues of `M^{-1} A`, descending.
    pub eta_values: Vec<f64>,
    /// `max(|eta_2|, |eta_n|)`.
    pub eta: f64,
}

/// Spectrum of the normalized adjacency `M^{-1} A` for an unsigned graph
/// with zero potential on at least three vertices.
pub fn adjacency_eta(g: &WeightedGraph, opts: &EigenOptions) -> Result<AdjacencySpectrum> {
    if g.is_signed() {
        return Err(Error::Hypothesis(
            "normalized adjacency needs an unsigned graph".into(),
        ));
    }
    if !g.has_zero_potential() {
        return Err(Error::Hypothesis(
            "normalized adjacency needs kappa = 0".into(),
        ));
    }
    if g.n() < 3 {
        return Err(Error::Hypothesis(
            "normalized adjacency needs at least 3 vertices".into(),
        ));
    }
    let mut m = SymMatrix::zeros(g.n());
    for e in g.edges() {
        m.set(e.u, e.v, e.w / (g.mu()[e.u] * g.mu()[e.v]).sqrt());
    }
    let mut eta_values = eig_sym(&m, opts)?.values;
    eta_values.reverse();
    let n = eta_values.len();
    let eta = eta_values[1].abs().max(eta_values[n - 1].abs());
    Ok(AdjacencySpectrum { eta_values, eta })
}
