mod common;

use cheeger::graph::product;
use cheeger::nodal::{product_function, strong_nodal, weak_nodal};
use cheeger::perturb::perturb;
use cheeger::spectral::{laplacian_spectrum, EigenOptions};
use cheeger::{Edge, Measure, Sign, WeightedGraph};
use common::{laplacian, strong_count};
use proptest::prelude::*;

fn build(n: usize, pairs: &[(bool, f64, bool)], mu: Measure, kappa: &[f64]) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut touched = vec![false; n];
    let mut it = pairs.iter();
    for u in 0..n {
        for v in u + 1..n {
            let &(on, w, neg) = it.next().unwrap();
            // keep a path so every vertex has an edge
            if on || v == u + 1 {
                let sigma = if neg { Sign::Negative } else { Sign::Positive };
                edges.push(Edge::signed(u, v, w, sigma));
                touched[u] = true;
                touched[v] = true;
            }
        }
    }
    assert!(touched.iter().all(|&t| t));
    WeightedGraph::new(n, edges, mu)
        .unwrap()
        .with_potential(kappa[..n].to_vec())
        .unwrap()
}

prop_compose! {
    fn graph(max_n: usize, p_negative: f64, unit: bool)(n in 2..=max_n)(
        n in Just(n),
        pairs in prop::collection::vec(
            (prop::bool::weighted(0.4), 0.25f64..4.0, prop::bool::weighted(p_negative)),
            n * (n - 1) / 2,
        ),
        explicit in prop::bool::ANY,
        mus in prop::collection::vec(0.5f64..3.0, n),
        kappa in prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..2.0], n),
    ) -> WeightedGraph {
        let mu = if unit {
            Measure::Unit
        } else if explicit {
            Measure::Explicit(mus)
        } else {
            Measure::Degree
        };
        build(n, &pairs, mu, &kappa)
    }
}

fn zero_free(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        (prop::bool::ANY, 0.1f64..2.0).prop_map(|(neg, m)| if neg { -m } else { m }),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigenpairs_are_orthonormal_and_solve(g in graph(9, 0.3, false)) {
        let s = laplacian_spectrum(&g, &EigenOptions::default()).unwrap();
        let scale = s.max_abs().max(1.0);
        for (k, f) in s.functions.iter().enumerate() {
            let lf = laplacian(&g, f);
            let res = lf.iter().zip(f).map(|(a, b)| (a - s.values[k] * b).abs()).fold(0.0, f64::max);
            prop_assert!(res <= 1e-9 * scale, "residual {}", res);
            for (j, h) in s.functions.iter().enumerate() {
                let ip: f64 = (0..g.n()).map(|x| g.mu()[x] * f[x] * h[x]).sum();
                let want = if j == k { 1.0 } else { 0.0 };
                prop_assert!((ip - want).abs() <= 1e-10, "<f{},f{}> = {}", k, j, ip);
            }
        }
        prop_assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = (0..g.n()).map(|x| (g.degrees()[x] + g.kappa()[x]) / g.mu()[x]).sum();
        let sum: f64 = s.values.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-9 * trace.max(1.0));
        prop_assert!(s.values[0] >= -1e-10);
    }

    #[test]
    fn degree_measure_spectrum_lies_in_zero_two(g in graph(9, 0.5, false)) {
        let g = WeightedGraph::new(g.n(), g.edges().to_vec(), Measure::Degree).unwrap();
        let s = laplacian_spectrum(&g, &EigenOptions::default()).unwrap();
        prop_assert!(s.values.iter().all(|&v| (-1e-10..=2.0 + 1e-10).contains(&v)));
    }

    #[test]
    fn product_spectrum_is_pairwise_sums(
        g1 in graph(5, 0.0, true),
        g2 in graph(5, 0.0, true),
    ) {
        let p = product(&g1, &g2).unwrap();
        let opts = EigenOptions::default();
        let a = laplacian_spectrum(&g1, &opts).unwrap().values;
        let b = laplacian_spectrum(&g2, &opts).unwrap().values;
        let mut sums: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
        sums.sort_by(f64::total_cmp);
        let got = laplacian_spectrum(&p, &opts).unwrap().values;
        for (x, y) in got.iter().zip(&sums) {
            prop_assert!((x - y).abs() <= 1e-8, "{} vs {}", x, y);
        }
    }

    #[test]
    fn product_domains_multiply(
        (g1, f) in graph(6, 0.0, true).prop_flat_map(|g| { let n = g.n(); (Just(g), zero_free(n)) }),
        (g2, h) in graph(6, 0.0, true).prop_flat_map(|g| { let n = g.n(); (Just(g), zero_free(n)) }),
    ) {
        let p = product(&g1, &g2).unwrap();
        let fh = product_function(&f, &h);
        let a = strong_nodal(&g1, &f, 0.0).unwrap().count;
        let b = strong_nodal(&g2, &h, 0.0).unwrap().count;
        let c = strong_nodal(&p, &fh, 0.0).unwrap().count;
        prop_assert_eq!(a, strong_count(&g1, &f));
        prop_assert_eq!(c, strong_count(&p, &fh));
        prop_assert_eq!(c, a * b);
    }

    #[test]
    fn weak_domains_never_exceed_strong(g in graph(8, 0.0, false), f in zero_free(8), zeros in prop::collection::vec(prop::bool::weighted(0.3), 8)) {
        let f: Vec<f64> = (0..g.n()).map(|x| if zeros[x] { 0.0 } else { f[x] }).collect();
        let strong = strong_nodal(&g, &f, 0.0).unwrap();
        let weak = weak_nodal(&g, &f, 0.0).unwrap();
        prop_assert!(weak.count <= strong.count.max(1));
        prop_assert_eq!(strong.count, strong_count(&g, &f));
        for d in weak.domains() {
            prop_assert!(!d.is_empty());
        }
    }

    #[test]
    fn perturbation_stays_in_range(g in graph(8, 0.3, false), eps in 0.0f64..0.5, seed in any::<u64>()) {
        let h = perturb(&g, eps, seed).unwrap();
        prop_assert_eq!(h.mu(), g.mu());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for (a, b) in g.edges().iter().zip(h.edges()) {
            prop_assert_eq!((a.u, a.v, a.sigma), (b.u, b.v, b.sigma));
            prop_assert!(b.w >= a.w && b.w <= a.w * (1.0 + eps));
        }
        for (a, b) in g.kappa().iter().zip(h.kappa()) {
            prop_assert!(*b >= *a && *b <= a + eps);
        }
        prop_assert_eq!(&h, &perturb(&g, eps, seed).unwrap());
    }
}
