use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use randic_core::bounds::{r4_diag, s_value};
use randic_core::charpoly::DeletionMode;
use randic_core::charpoly::{even_coefficients, randic_char_poly};
use randic_core::coulson::{coulson_integrand, coulson_vertex_energy, QuadratureConfig};
use randic_core::energy::{
    series_energies, vertex_energies_by, RandicSpectrum, Route, SERIES_MAX_TERMS,
};
use randic_core::families::{random_connected_graph, Family};
use randic_core::spectral::{matrix_abs, power_diag, randic_matrix};
use randic_core::{parse_edge_list, Graph};

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.2f64..0.9).prop_map(|(n, seed, p)| {
        random_connected_graph(n, p, &mut StdRng::seed_from_u64(seed)).expect("valid parameters")
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in connected(16)) {
        prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn handshake_and_deletion(g in connected(16), pick in any::<prop::sample::Index>()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        let v = pick.index(g.vertex_count());
        let h = g.delete_vertex(v).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - 1);
        prop_assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
    }

    #[test]
    fn relabelling_permutes_energies((g, perm) in with_permutation(14)) {
        let e = RandicSpectrum::of(&g).unwrap().vertex_energies().energies;
        let f = RandicSpectrum::of(&g.permuted(&perm).unwrap()).unwrap().vertex_energies().energies;
        for v in 0..g.vertex_count() {
            prop_assert!((e[v] - f[perm[v]]).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_invariants(g in connected(20)) {
        let s = RandicSpectrum::of(&g).unwrap();
        let l = &s.eigen.eigenvalues;
        prop_assert!((l[0] - 1.0).abs() < 1e-9);
        prop_assert!(l[0] - l[1] > 1e-8);
        prop_assert!(l.iter().sum::<f64>().abs() < 1e-9);
        prop_assert_eq!(s.matrix.trace(), 0.0);
        // sqrt(d_i / 2m) is the Perron vector.
        let two_m = 2.0 * g.edge_count() as f64;
        let u: Vec<f64> = g.degrees().iter().map(|&d| (d as f64 / two_m).sqrt()).collect();
        let ru = s.matrix.mul_vec(&u);
        prop_assert!(ru.iter().zip(&u).all(|(a, b)| (a - b).abs() <= 1e-10));
        if g.bipartition().unwrap().is_some() {
            let n = l.len();
            for j in 0..n {
                prop_assert!((l[j] + l[n - 1 - j]).abs() < 1e-9);
            }
        }
        let abs = matrix_abs(&s.matrix).unwrap();
        let sq = s.matrix.mul_commuting(&s.matrix);
        prop_assert!(abs.mul_commuting(&abs).max_abs_diff(&sq) < 1e-8);
    }

    #[test]
    fn energies_are_in_unit_interval_and_sum(g in connected(20)) {
        let s = RandicSpectrum::of(&g).unwrap();
        let e = s.vertex_energies();
        prop_assert!(e.energies.iter().all(|&x| x > 0.0 && x <= 1.0 + 1e-12));
        prop_assert!((e.total - s.graph_energy()).abs() < 1e-9);
    }

    #[test]
    fn routes_agree(g in connected(20)) {
        let eigen = vertex_energies_by(&g, Route::EigenWeights).unwrap();
        let abs = vertex_energies_by(&g, Route::AbsDiagonal).unwrap();
        prop_assert!(eigen.max_abs_diff(&abs) < 1e-6);
        let series = series_energies(&g, 1e-10, SERIES_MAX_TERMS).unwrap();
        for (a, b) in series.energies.iter().zip(&eigen.energies) {
            // Partial sums decrease towards the energy and stay within the remainder bound.
            prop_assert!(a - b >= -1e-9);
            prop_assert!(a - b <= series.remainder_bound + 1e-9);
            if series.contraction < 1.0 && series.remainder_bound <= 1e-10 {
                prop_assert!((a - b).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn combinatorial_moments_match_powers(g in connected(16)) {
        let r = randic_matrix(&g).unwrap();
        for i in 0..g.vertex_count() {
            prop_assert!((s_value(&g, i).unwrap() - power_diag(&r, 2, i).unwrap()).abs() < 1e-10);
            prop_assert!((r4_diag(&g, i).unwrap() - power_diag(&r, 4, i).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn polynomial_vanishes_on_spectrum(g in connected(12)) {
        let p = randic_char_poly(&g).unwrap();
        let n = g.vertex_count() as i32;
        prop_assert!(p.a(1).abs() < 1e-10);
        for l in RandicSpectrum::of(&g).unwrap().eigen.eigenvalues {
            prop_assert!(p.eval(l).abs() <= 1e-6 * (1.0 + l.abs()).powi(n));
        }
        if g.bipartition().unwrap().is_some() {
            let b = even_coefficients(&p).unwrap();
            prop_assert!(b.b.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn coulson_integrand_is_even(g in connected(10), x in 0.01f64..50.0) {
        for i in 0..g.vertex_count() {
            let f = coulson_integrand(&g, i, DeletionMode::PrincipalSubmatrix).unwrap();
            let (plus, minus) = (f.evaluate(x), f.evaluate(-x));
            prop_assert!((plus.0 - minus.0).abs() <= 1e-9);
            prop_assert!((plus.1 + minus.1).abs() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coulson_sums_to_graph_energy(g in connected(10)) {
        let cfg = QuadratureConfig::default();
        let total: f64 = (0..g.vertex_count())
            .map(|i| coulson_vertex_energy(&g, i, &cfg).unwrap().value)
            .sum();
        let n = g.vertex_count() as f64;
        prop_assert!((total - RandicSpectrum::of(&g).unwrap().graph_energy()).abs() <= n * 1e-5);
    }
}

#[test]
fn vertex_transitive_families_are_uniform() {
    for n in 3..=20 {
        for fam in [Family::Complete { n }, Family::Cycle { n }] {
            let s = RandicSpectrum::of(&fam.generate().unwrap()).unwrap();
            let each = s.graph_energy() / n as f64;
            for e in s.vertex_energies().energies {
                assert!((e - each).abs() < 1e-10, "{fam:?}");
            }
        }
    }
}

#[test]
fn tighter_quadrature_never_loses_accuracy() {
    let graphs = [
        Family::Star { n: 7 }.generate().unwrap(),
        Family::Friendship { triangles: 3 }.generate().unwrap(),
        random_connected_graph(9, 0.4, &mut StdRng::seed_from_u64(11)).unwrap(),
    ];
    for g in &graphs {
        let s = RandicSpectrum::of(g).unwrap();
        for i in 0..g.vertex_count() {
            let mut cfg = QuadratureConfig::new(16, 1e-4, 12).unwrap();
            let mut previous = f64::INFINITY;
            for _ in 0..5 {
                let err =
                    (coulson_vertex_energy(g, i, &cfg).unwrap().value - s.vertex_energy(i)).abs();
                assert!(
                    err <= previous + 1e-12,
                    "vertex {i}: {err} after {previous}"
                );
                previous = err;
                cfg = cfg.with_tolerance(cfg.tolerance() / 2.0).unwrap();
            }
        }
    }
}

#[test]
fn bipartition_matches_odd_cycle_search() {
    // A graph is bipartite iff no odd closed walk exists, i.e. (A^k)_ii = 0 for odd k <= n.
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let n = 2 + (rand::Rng::random_range(&mut rng, 0..7));
        let g = random_connected_graph(n, 0.35, &mut rng).unwrap();
        let r = randic_matrix(&g).unwrap();
        let has_odd = (1..=n as u32)
            .step_by(2)
            .any(|k| (0..n).any(|i| power_diag(&r, k, i).unwrap() > 1e-12));
        assert_eq!(g.bipartition().unwrap().is_some(), !has_odd);
    }
}
