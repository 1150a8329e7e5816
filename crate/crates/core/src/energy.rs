//! Vertex and graph Randić energies.
//!
//! Three independent routes are provided:
//!
//! * eigen-weights: `RE_G(v_i) = sum_j y_ij^2 |lambda_j|` from one decomposition (the default),
//! * abs-diagonal: the diagonal of the assembled matrix `|R(G)|`,
//! * series: the binomial expansion `sum_k C(1/2, k) ((R^2 - I)^k)_ii`, using only matrix products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{eigen_symmetric, randic_matrix, EigenDecomposition, SymmetricMatrix};

/// Hard cap on binomial-series terms.
pub const SERIES_MAX_TERMS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    EigenWeights,
    AbsDiagonal,
    Series,
}

/// Per-vertex energies and their sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexEnergyVector {
    pub energies: Vec<f64>,
    pub total: f64,
    pub route: Route,
}

impl VertexEnergyVector {
    fn new(energies: Vec<f64>, route: Route) -> Self {
        let total = energies.iter().sum();
        VertexEnergyVector {
            energies,
            total,
            route,
        }
    }

    pub fn max_abs_diff(&self, other: &VertexEnergyVector) -> f64 {
        self.energies
            .iter()
            .zip(&other.energies)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The Randić matrix of a connected graph together with its decomposition.
#[derive(Debug, Clone)]
pub struct RandicSpectrum {
    pub matrix: SymmetricMatrix,
    pub eigen: EigenDecomposition,
}

impl RandicSpectrum {
    pub fn of(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        let matrix = randic_matrix(g)?;
        let eigen = eigen_symmetric(&matrix)?;
        Ok(RandicSpectrum { matrix, eigen })
    }

    pub fn vertex_energy(&self, i: usize) -> f64 {
        self.eigen.weighted_diagonal(i, f64::abs)
    }

    pub fn vertex_energies(&self) -> VertexEnergyVector {
        let energies = (0..self.matrix.dim())
            .map(|i| self.vertex_energy(i))
            .collect();
        VertexEnergyVector::new(energies, Route::EigenWeights)
    }

    pub fn graph_energy(&self) -> f64 {
        (0..self.eigen.dim())
            .map(|j| self.eigen.clamped_eigenvalue(j).abs())
            .sum()
    }
}

/// Per-vertex energies by the eigen-weight route.
pub fn vertex_energies(g: &Graph) -> Result<VertexEnergyVector> {
    Ok(RandicSpectrum::of(g)?.vertex_energies())
}

/// Per-vertex energies by the requested route. The series route runs to a
/// remainder bound of `1e-12` or the term cap, whichever comes first.
pub fn vertex_energies_by(g: &Graph, route: Route) -> Result<VertexEnergyVector> {
    match route {
        Route::EigenWeights => vertex_energies(g),
        Route::AbsDiagonal => {
            let spectrum = RandicSpectrum::of(g)?;
            let abs = spectrum.eigen.reconstruct(f64::abs);
            Ok(VertexEnergyVector::new(abs.diagonal(), Route::AbsDiagonal))
        }
        Route::Series => {
            let s = series_energies(g, 1e-12, SERIES_MAX_TERMS)?;
            Ok(VertexEnergyVector::new(s.energies, Route::Series))
        }
    }
}

/// `RE(G) = sum_j |lambda_j|`.
pub fn graph_energy(g: &Graph) -> Result<f64> {
    Ok(RandicSpectrum::of(g)?.graph_energy())
}

/// Energy sums over the two sides of a connected bipartite graph, `side_a` first.
pub fn partition_energies(g: &Graph) -> Result<(f64, f64)> {
    let parts = g.bipartition()?.ok_or(Error::NotBipartite)?;
    let energies = vertex_energies(g)?.energies;
    let sum = |side: &[usize]| side.iter().map(|&v| energies[v]).sum::<f64>();
    Ok((sum(&parts.side_a), sum(&parts.side_b)))
}

/// `C(1/2, k)` for `k = 0..count`.
pub fn half_binomials(count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 1.0;
    for k in 0..count {
        out.push(c);
        c *= (0.5 - k as f64) / (k as f64 + 1.0);
    }
    out
}

/// Bound on `sum_{k >= terms} |C(1/2, k)| rho^k`, which dominates the series
/// tail at every vertex when `rho = ||R^2 - I||_2`. `coeffs` must hold at
/// least `terms + 1` coefficients.
fn series_remainder(coeffs: &[f64], terms: usize, rho: f64) -> f64 {
    // sum_{k>=1} |c_k| = 1, so the untruncated tail is 1 - sum_{k=1}^{terms-1} |c_k|.
    let universal = 1.0 - coeffs[1..terms].iter().map(|c| c.abs()).sum::<f64>();
    geometric_or(universal.max(0.0), coeffs[terms], terms, rho)
}

fn geometric_or(universal: f64, next_coeff: f64, terms: usize, rho: f64) -> f64 {
    if rho < 1.0 {
        let geometric = next_coeff.abs() * rho.powi(terms as i32) / (1.0 - rho);
        universal.min(geometric)
    } else {
        universal
    }
}

/// A truncated series value. The true energy lies in `[value - remainder_bound, value]`:
/// every correction term past the first is non-positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEstimate {
    pub value: f64,
    pub terms: usize,
    pub remainder_bound: f64,
}

/// Series values for every vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesEnergies {
    pub energies: Vec<f64>,
    pub terms: usize,
    pub remainder_bound: f64,
    /// `||R^2 - I||_2 = 1 - min_j lambda_j^2`; equals 1 when `R(G)` is singular.
    pub contraction: f64,
}

fn shifted_square(g: &Graph) -> Result<SymmetricMatrix> {
    g.require_connected()?;
    let r = randic_matrix(g)?;
    Ok(r.mul_commuting(&r).scaled_add_identity(-1.0))
}

fn contraction(x: &SymmetricMatrix) -> Result<f64> {
    let e = eigen_symmetric(x)?;
    let rho = e.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(rho.min(1.0))
}

/// Partial sum of the binomial series through index `terms - 1` at vertex `i`.
pub fn vertex_energy_series(g: &Graph, i: usize, terms: usize) -> Result<SeriesEstimate> {
    g.check_vertex(i)?;
    if terms == 0 {
        return Err(Error::InvalidParameter(
            "series needs at least one term".into(),
        ));
    }
    let x = shifted_square(g)?;
    let coeffs = half_binomials(terms);
    let mut v = vec![0.0; x.dim()];
    v[i] = 1.0;
    let mut value = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            v = x.mul_vec(&v);
        }
        value += c * v[i];
    }
    Ok(SeriesEstimate {
        value,
        terms,
        remainder_bound: series_remainder(&half_binomials(terms + 1), terms, contraction(&x)?),
    })
}

/// Runs the series at all vertices until the remainder bound drops below
/// `tolerance` or `max_terms` (capped at [`SERIES_MAX_TERMS`]) is reached.
pub fn series_energies(g: &Graph, tolerance: f64, max_terms: usize) -> Result<SeriesEnergies> {
    let x = shifted_square(g)?;
    let rho = contraction(&x)?;
    let max_terms = max_terms.clamp(1, SERIES_MAX_TERMS);
    let coeffs = half_binomials(max_terms + 1);
    let n = x.dim();

    let mut power = SymmetricMatrix::identity(n);
    let mut energies = vec![1.0; n];
    let mut terms = 1;
    let mut universal = 1.0;
    let remainder =
        |universal: f64, terms: usize| geometric_or(universal, coeffs[terms], terms, rho);
    while terms < max_terms && remainder(universal, terms) > tolerance {
        power = power.mul_commuting(&x);
        let c = coeffs[terms];
        for (i, e) in energies.iter_mut().enumerate() {
            *e += c * power.get(i, i);
        }
        universal = (universal - c.abs()).max(0.0);
        terms += 1;
    }
    Ok(SeriesEnergies {
        energies,
        terms,
        remainder_bound: remainder(universal, terms),
        contraction: rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    const SAMPLE7: &str = "n 7\n1 2\n2 3\n3 4\n2 4\n1 4\n4 5\n5 6\n4 6\n4 7\n";
    const SAMPLE7_ENERGIES: [f64; 7] = [0.3382, 0.5847, 0.3382, 0.6990, 0.5468, 0.5468, 0.3172];
    // Independent reference, more digits than the published four.
    const SAMPLE7_REFERENCE: [f64; 7] = [
        0.338183, 0.584842, 0.338183, 0.699002, 0.546788, 0.546788, 0.317244,
    ];

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn k2() -> Graph {
        path(2)
    }

    #[test]
    fn seven_vertex_energies() {
        let g = parse_edge_list(SAMPLE7).unwrap();
        let e = vertex_energies(&g).unwrap();
        assert_eq!(e.route, Route::EigenWeights);
        for (got, want) in e.energies.iter().zip(SAMPLE7_ENERGIES) {
            assert!((got - want).abs() < 5e-4, "{got} vs {want}");
        }
        for (got, want) in e.energies.iter().zip(SAMPLE7_REFERENCE) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
        assert!((e.total - e.energies.iter().sum::<f64>()).abs() < 1e-10);
        let abs = vertex_energies_by(&g, Route::AbsDiagonal).unwrap();
        assert!(e.max_abs_diff(&abs) < 1e-10);
        let want: f64 = [0.6855, 0.5, 0.4999, 0.0, 0.1518, 0.5336, 1.0].iter().sum();
        assert!((graph_energy(&g).unwrap() - want).abs() < 5e-4);
    }

    #[test]
    fn k2_energies() {
        let e = vertex_energies(&k2()).unwrap();
        assert!((e.energies[0] - 1.0).abs() < 1e-14 && (e.energies[1] - 1.0).abs() < 1e-14);
        for terms in [1, 2, 40] {
            assert_eq!(vertex_energy_series(&k2(), 0, terms).unwrap().value, 1.0);
        }
    }

    #[test]
    fn p4_energies() {
        // P_4 has Randić spectrum cos(pi k / 3) = +-1, +-1/2; the frozen values come
        // from an independent numpy eigendecomposition of its 4x4 Randić matrix.
        let e = vertex_energies(&path(4)).unwrap();
        let end = 2.0 / 3.0;
        let mid = 5.0 / 6.0;
        for (got, want) in e.energies.iter().zip([end, mid, mid, end]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!((e.total - 3.0).abs() < 1e-12);
    }

    #[test]
    fn series_truncations() {
        let g = parse_edge_list(SAMPLE7).unwrap();
        for i in 0..7 {
            assert_eq!(vertex_energy_series(&g, i, 1).unwrap().value, 1.0);
        }
        let two = vertex_energy_series(&g, 6, 2).unwrap();
        assert!((two.value - 7.0 / 12.0).abs() < 1e-15);
        // Partial sums decrease towards the energy.
        let mut last = f64::INFINITY;
        for terms in 1..30 {
            let s = vertex_energy_series(&g, 3, terms).unwrap();
            assert!(s.value <= last + 1e-15);
            assert!(s.value + 1e-12 >= SAMPLE7_ENERGIES[3] - 5e-5);
            last = s.value;
        }
        assert!(vertex_energy_series(&g, 0, 0).is_err());
    }

    #[test]
    fn series_reports_slow_convergence_on_singular_matrices() {
        // R(the 7-vertex sample) has a zero eigenvalue, so the contraction factor is 1.
        let g = parse_edge_list(SAMPLE7).unwrap();
        let s = series_energies(&g, 1e-9, 500).unwrap();
        assert_eq!(s.contraction, 1.0);
        assert_eq!(s.terms, 500);
        assert!(s.remainder_bound > 1e-3);
        let exact = vertex_energies(&g).unwrap();
        for (a, b) in s.energies.iter().zip(&exact.energies) {
            assert!(a + 1e-12 >= *b && a - b <= s.remainder_bound);
        }
    }

    #[test]
    fn half_binomial_coefficients() {
        let c = half_binomials(5);
        assert_eq!(c, vec![1.0, 0.5, -0.125, 0.0625, -0.0390625]);
    }

    #[test]
    fn bipartite_split() {
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let (a, b) = partition_energies(&star).unwrap();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let (a, b) = partition_energies(&k23).unwrap();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let (a, b) = partition_energies(&c6).unwrap();
        let total = graph_energy(&c6).unwrap();
        assert!((a - total / 2.0).abs() < 1e-9 && (b - total / 2.0).abs() < 1e-9);
        let c3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(partition_energies(&c3), Err(Error::NotBipartite));
    }

    #[test]
    fn rejects_disconnected_and_trivial() {
        let g = parse_edge_list("1 2\n3 4").unwrap();
        assert_eq!(
            vertex_energies(&g),
            Err(Error::Disconnected { components: 2 })
        );
        assert_eq!(vertex_energies(&Graph::empty(1)), Err(Error::SingleVertex));
    }
}
