//! Strong and weak nodal domains of vertex functions.

use serde::{Deserialize, Serialize};

use crate::graph::{components_where, WeightedGraph};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodalKind {
    Strong,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalDecomposition {
    pub kind: NodalKind,
    /// Domain id per vertex, numbered by smallest vertex. `None` marks a
    /// zero vertex of a strong decomposition.
    pub labels: Vec<Option<usize>>,
    pub count: usize,
}

impl NodalDecomposition {
    /// The vertex sets of the domains.
    pub fn domains(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                out[*l].push(x);
            }
        }
        out
    }
}

/// `1e-10 * max|f|`, the zero threshold used for numerically computed
/// eigenfunctions.
pub fn default_zero_tol(f: &[f64]) -> f64 {
    1e-10 * f.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn check_len(g: &WeightedGraph, f: &[f64]) -> Result<()> {
    if f.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "vertex function has {} entries, graph has {} vertices",
            f.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Sign of `x` after rounding `|x| <= zero_tol` to zero.
fn rounded_sign(x: f64, zero_tol: f64) -> i8 {
    if x.abs() <= zero_tol {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}

/// Strong nodal domains: components of the nonzero vertices joined by edges
/// with `sigma_xy f(x) f(y) > 0`. With all signs positive this is the usual
/// same-sign rule.
pub fn strong_nodal(g: &WeightedGraph, f: &[f64], zero_tol: f64) -> Result<NodalDecomposition> {
    check_len(g, f)?;
    let sign: Vec<i8> = f.iter().map(|&x| rounded_sign(x, zero_tol)).collect();
    let (labels, count) = components_where(
        g,
        |x| sign[x] != 0,
        |x, nb| {
            let s = if nb.sigma.is_negative() { -1 } else { 1 };
            s * sign[x] * sign[nb.v] > 0
        },
    );
    Ok(NodalDecomposition {
        kind: NodalKind::Strong,
        labels,
        count,
    })
}

/// Weak nodal domains: components of all vertices joined by edges whose
/// zero-rounded product `f(x) f(y)` is nonnegative. Unsigned graphs only.
pub fn weak_nodal(g: &WeightedGraph, f: &[f64], zero_tol: f64) -> Result<NodalDecomposition> {
    check_len(g, f)?;
    if g.is_signed() {
        return Err(Error::InvalidArgument(
            "weak nodal domains are defined for unsigned graphs only".into(),
        ));
    }
    let sign: Vec<i8> = f.iter().map(|&x| rounded_sign(x, zero_tol)).collect();
    let (labels, count) = components_where(g, |_| true, |x, nb| sign[x] * sign[nb.v] >= 0);
    Ok(NodalDecomposition {
        kind: NodalKind::Weak,
        labels,
        count,
    })
}

/// `h(x, y) = f(x) g(y)` on the product vertex set, indexed `x * n2 + y`.
pub fn product_function(f: &[f64], g: &[f64]) -> Vec<f64> {
    f.iter()
        .flat_map(|&a| g.iter().map(move |&b| a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{product, Edge, Measure, Sign};

    fn path(n: usize) -> WeightedGraph {
        let p: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_pairs(n, &p, Measure::Degree).unwrap()
    }

    #[test]
    fn alternating_signs_on_a_path() {
        let f = [1.0, -1.0, 1.0, -1.0, 1.0];
        assert_eq!(strong_nodal(&path(5), &f, 0.0).unwrap().count, 5);
        assert_eq!(weak_nodal(&path(5), &f, 0.0).unwrap().count, 5);
    }

    #[test]
    fn zero_vertex_splits_strong_but_joins_weak() {
        let f = [1.0, 0.0, -1.0];
        let s = strong_nodal(&path(3), &f, 0.0).unwrap();
        assert_eq!(s.count, 2);
        assert_eq!(s.labels, vec![Some(0), None, Some(1)]);
        assert_eq!(s.domains(), vec![vec![0], vec![2]]);
        assert_eq!(weak_nodal(&path(3), &f, 0.0).unwrap().count, 1);
    }

    #[test]
    fn positive_function_has_one_domain() {
        let f = [0.3, 2.0, 1.0, 0.1];
        assert_eq!(weak_nodal(&path(4), &f, 0.0).unwrap().count, 1);
        assert_eq!(strong_nodal(&path(4), &f, 0.0).unwrap().count, 1);
    }

    #[test]
    fn zero_tolerance_rounds_small_entries() {
        let f = [1.0, 1e-14, 1.0];
        assert_eq!(strong_nodal(&path(3), &f, 0.0).unwrap().count, 1);
        assert_eq!(
            strong_nodal(&path(3), &f, default_zero_tol(&f))
                .unwrap()
                .count,
            2
        );
    }

    #[test]
    fn product_functions() {
        assert_eq!(
            product_function(&[1.0, -1.0], &[1.0, -1.0]),
            vec![1.0, -1.0, -1.0, 1.0]
        );
        assert_eq!(
            product_function(&[2.0, 0.0], &[3.0, -1.0]),
            vec![6.0, -2.0, 0.0, 0.0]
        );
        assert_eq!(
            product_function(&[0.5, -2.0], &[1.0, 1.0, 1.0]),
            vec![0.5, 0.5, 0.5, -2.0, -2.0, -2.0]
        );
    }

    #[test]
    fn c4_from_product_has_four_domains() {
        let k2 = WeightedGraph::from_pairs(2, &[(0, 1)], Measure::Unit).unwrap();
        let c4 = product(&k2, &k2).unwrap();
        let h = product_function(&[1.0, -1.0], &[1.0, -1.0]);
        assert_eq!(strong_nodal(&c4, &h, 0.0).unwrap().count, 4);
    }

    #[test]
    fn signed_edges_flip_the_rule() {
        let g = WeightedGraph::new(
            3,
            vec![
                Edge::signed(0, 1, 1.0, Sign::Negative),
                Edge::new(1, 2, 1.0),
            ],
            Measure::Degree,
        )
        .unwrap();
        // across the negative edge opposite signs are consistent
        assert_eq!(strong_nodal(&g, &[1.0, -1.0, -1.0], 0.0).unwrap().count, 1);
        assert_eq!(strong_nodal(&g, &[1.0, 1.0, 1.0], 0.0).unwrap().count, 2);
        assert!(weak_nodal(&g, &[1.0, 1.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(strong_nodal(&path(3), &[1.0], 0.0).is_err());
    }
}
