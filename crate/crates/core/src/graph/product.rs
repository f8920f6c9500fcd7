use super::{Edge, GraphParts, Measure, WeightedGraph};
use crate::{Error, Result};

/// Cartesian product of two unsigned graphs with unit measure.
///
/// Vertex `(x, y)` has index `x * n2 + y`. Edges `(x,y)~(x,y')` carry
/// `w2(y,y')`, edges `(x,y)~(x',y)` carry `w1(x,x')`, and the potential is
/// `kappa1(x) + kappa2(y)`.
pub fn product(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<WeightedGraph> {
    for (name, g) in [("first", g1), ("second", g2)] {
        if !g.measure_is_unit() {
            return Err(Error::InvalidArgument(format!(
                "product requires mu = 1 on the {name} factor"
            )));
        }
        if g.is_signed() {
            return Err(Error::InvalidArgument(format!(
                "product requires an unsigned {name} factor"
            )));
        }
    }
    let (n1, n2) = (g1.n(), g2.n());
    let idx = |x: usize, y: usize| x * n2 + y;
    let mut edges = Vec::with_capacity(n1 * g2.edge_count() + n2 * g1.edge_count());
    for x in 0..n1 {
        for e in g2.edges() {
            edges.push(Edge::new(idx(x, e.u), idx(x, e.v), e.w));
        }
    }
    for e in g1.edges() {
        for y in 0..n2 {
            edges.push(Edge::new(idx(e.u, y), idx(e.v, y), e.w));
        }
    }
    let mut kappa = Vec::with_capacity(n1 * n2);
    for x in 0..n1 {
        for y in 0..n2 {
            kappa.push(g1.kappa()[x] + g2.kappa()[y]);
        }
    }
    GraphParts {
        n: n1 * n2,
        edges,
        mu: Measure::Unit,
        kappa,
    }
    .try_into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{classify, cyclomatic};

    fn k2() -> WeightedGraph {
        WeightedGraph::from_pairs(2, &[(0, 1)], Measure::Unit).unwrap()
    }

    #[test]
    fn k2_squared_is_c4() {
        let c4 = product(&k2(), &k2()).unwrap();
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2.0));
        assert_eq!(cyclomatic(&c4), 1);
        assert!(classify(&c4).is_bipartite);
        assert!(c4.has_zero_potential());
    }

    #[test]
    fn potentials_add() {
        let a = k2().with_potential(vec![1.0, 0.0]).unwrap();
        let b = k2().with_potential(vec![0.0, 2.0]).unwrap();
        let p = product(&a, &b).unwrap();
        assert_eq!(p.kappa(), &[1.0, 3.0, 0.0, 2.0]);
    }

    #[test]
    fn rejects_non_unit_measure_and_signs() {
        let deg = WeightedGraph::from_weighted_edges(2, &[(0, 1, 2.0)], Measure::Degree).unwrap();
        assert!(product(&deg, &k2()).is_err());
        let signed = WeightedGraph::new(
            2,
            vec![Edge::signed(0, 1, 1.0, crate::Sign::Negative)],
            Measure::Unit,
        )
        .unwrap();
        assert!(product(&k2(), &signed).is_err());
    }
}
