//! Closed-form bounds on vertex energies and equality-case detection.
//!
//! Two combinatorial quantities drive every bound:
//!
//! * `S_i = (1/d_i) sum_{j ~ i} 1/d_j`, the diagonal of `R^2`,
//! * `Q_i = sum_j (1/(d_i d_j)) (sum_{k ~ i & j} 1/d_k)^2`, the diagonal of `R^4`.

use serde::Serialize;

use crate::energy::RandicSpectrum;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tolerance for equality flags.
pub const EQUALITY_TOLERANCE: f64 = 1e-7;

/// Negative radicands above this are clamped to zero in the refined bound.
const RADICAND_CLAMP: f64 = 1e-12;

fn inv_degree(g: &Graph, v: usize) -> f64 {
    1.0 / g.degree(v) as f64
}

/// `S_i`, computed from degrees only.
pub fn s_value(g: &Graph, i: usize) -> Result<f64> {
    g.check_vertex(i)?;
    let d = g.degree(i);
    if d == 0 {
        return Err(Error::DegenerateDegree { vertex: i });
    }
    let sum: f64 = g.neighbors(i).iter().map(|&j| inv_degree(g, j)).sum();
    Ok(sum / d as f64)
}

/// `Q_i`, computed from degrees and common neighbourhoods only.
pub fn r4_diag(g: &Graph, i: usize) -> Result<f64> {
    g.check_vertex(i)?;
    if g.degree(i) == 0 {
        return Err(Error::DegenerateDegree { vertex: i });
    }
    // Only vertices within distance two contribute.
    let mut reach: Vec<usize> = g
        .neighbors(i)
        .iter()
        .flat_map(|&k| g.neighbors(k).iter().copied())
        .collect();
    reach.sort_unstable();
    reach.dedup();
    let di = g.degree(i) as f64;
    let mut total = 0.0;
    for j in reach {
        let inner: f64 = g
            .common_neighbors(i, j)?
            .into_iter()
            .map(|k| inv_degree(g, k))
            .sum();
        total += inner * inner / (di * g.degree(j) as f64);
    }
    Ok(total)
}

pub fn upper_unit() -> f64 {
    1.0
}

/// `sqrt(S_i)`.
pub fn upper_cauchy_schwarz(g: &Graph, i: usize) -> Result<f64> {
    Ok(s_value(g, i)?.sqrt())
}

/// `d_i/2m + sqrt((S_i - d_i/2m)(1 - d_i/2m))`, using that `sqrt(d)/sqrt(2m)`
/// is the unit eigenvector of eigenvalue 1.
pub fn upper_refined(g: &Graph, i: usize) -> Result<f64> {
    let s = s_value(g, i)?;
    let w = g.degree(i) as f64 / (2 * g.edge_count()) as f64;
    let mut radicand = (s - w) * (1.0 - w);
    if radicand < 0.0 && radicand >= -RADICAND_CLAMP {
        radicand = 0.0;
    }
    Ok(w + radicand.sqrt())
}

/// The refined bound specialised to a `k`-regular graph on `n` vertices.
pub fn upper_regular(n: usize, k: usize) -> Result<f64> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "regular degree {k} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let (n, k) = (n as f64, k as f64);
    Ok(1.0 / n + ((1.0 / k - 1.0 / n) * (1.0 - 1.0 / n)).sqrt())
}

/// `S_i` as a lower bound (`|lambda| >= lambda^2` on `[-1, 1]`).
pub fn lower_r2(g: &Graph, i: usize) -> Result<f64> {
    s_value(g, i)
}

/// `S_i^{3/2} / sqrt(Q_i)`.
pub fn lower_holder(g: &Graph, i: usize) -> Result<f64> {
    let s = s_value(g, i)?;
    let q = r4_diag(g, i)?;
    Ok(s.powf(1.5) / q.sqrt())
}

/// Two-term truncation of the binomial series: `(S_i + 1) / 2`.
pub fn upper_series2(g: &Graph, i: usize) -> Result<f64> {
    Ok(0.5 * (s_value(g, i)? + 1.0))
}

/// Three-term truncation: `3/8 + (3/4) S_i - Q_i / 8`.
pub fn upper_series3(g: &Graph, i: usize) -> Result<f64> {
    Ok(0.375 + 0.75 * s_value(g, i)? - 0.125 * r4_diag(g, i)?)
}

/// `1/(d_i d_j)`, a lower bound on `RE(v_i) RE(v_j)` for adjacent vertices.
pub fn adjacent_product_lower(g: &Graph, i: usize, j: usize) -> Result<f64> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if !g.has_edge(i, j) {
        return Err(Error::NotAdjacent { i, j });
    }
    Ok(1.0 / (g.degree(i) * g.degree(j)) as f64)
}

/// `R^(alpha)(G) = sum over edges of (d_i d_j)^alpha`.
pub fn general_randic_index(g: &Graph, alpha: f64) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| ((g.degree(u) * g.degree(v)) as f64).powf(alpha))
        .sum())
}

/// `(2 R^(-1)(G), sum_i sqrt(S_i))`, bracketing `RE(G)`.
pub fn graph_energy_bounds(g: &Graph) -> Result<(f64, f64)> {
    let lower = 2.0 * general_randic_index(g, -1.0)?;
    let mut upper = 0.0;
    for i in 0..g.vertex_count() {
        upper += upper_cauchy_schwarz(g, i)?;
    }
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Unit,
    CauchySchwarz,
    Refined,
    Series2,
    Series3,
    LowerR2,
    LowerHolder,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Unit,
        BoundKind::CauchySchwarz,
        BoundKind::Refined,
        BoundKind::Series2,
        BoundKind::Series3,
        BoundKind::LowerR2,
        BoundKind::LowerHolder,
    ];

    pub fn is_upper(self) -> bool {
        !matches!(self, BoundKind::LowerR2 | BoundKind::LowerHolder)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Unit => "unit",
            BoundKind::CauchySchwarz => "cauchy_schwarz",
            BoundKind::Refined => "refined",
            BoundKind::Series2 => "series2",
            BoundKind::Series3 => "series3",
            BoundKind::LowerR2 => "lower_r2",
            BoundKind::LowerHolder => "lower_holder",
        }
    }

    /// Structural cases known to attain this bound.
    pub fn equality_cases(self) -> &'static [StructuralCase] {
        use StructuralCase::*;
        match self {
            BoundKind::Unit | BoundKind::CauchySchwarz => &[K2, StarCenter],
            BoundKind::Refined => &[CompleteGraph, StarCenter],
            // Every correction term of the series vanishes only when all spectral
            // weight at the vertex sits on eigenvalues +-1.
            BoundKind::Series2 | BoundKind::Series3 => &[K2, StarCenter],
            // Both lower bounds are tight when every |eigenvalue| carrying weight
            // at the vertex is equal, as for the spectrum {1, 0, -1}.
            BoundKind::LowerR2 | BoundKind::LowerHolder => &[CompleteBipartite],
        }
    }
}

/// Named structural situations of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructuralCase {
    K2,
    StarCenter,
    StarLeaf,
    CompleteGraph,
    CompleteBipartite,
}

/// Structural cases of every vertex of a connected graph.
pub fn structural_cases(g: &Graph) -> Result<Vec<Vec<StructuralCase>>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut cases = vec![Vec::new(); n];
    if n == 2 {
        for c in &mut cases {
            c.push(StructuralCase::K2);
        }
    }
    let is_star = m + 1 == n && (0..n).any(|v| g.degree(v) + 1 == n);
    if is_star {
        for (v, c) in cases.iter_mut().enumerate() {
            if g.degree(v) + 1 == n {
                c.push(StructuralCase::StarCenter);
            } else {
                c.push(StructuralCase::StarLeaf);
            }
        }
    }
    if 2 * m == n * (n - 1) {
        for c in &mut cases {
            c.push(StructuralCase::CompleteGraph);
        }
    }
    if let Some(parts) = g.bipartition()? {
        if parts.side_a.len() * parts.side_b.len() == m {
            for c in &mut cases {
                c.push(StructuralCase::CompleteBipartite);
            }
        }
    }
    Ok(cases)
}

/// A single bound evaluated at a vertex. `slack` is positive when the bound holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub value: f64,
    pub slack: f64,
    pub equality: bool,
    /// Whether a named equality case of this bound applies to the vertex.
    pub explained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexBounds {
    pub vertex: usize,
    pub degree: usize,
    pub energy: f64,
    pub s: f64,
    pub q: f64,
    pub cases: Vec<StructuralCase>,
    pub bounds: Vec<BoundValue>,
}

impl VertexBounds {
    pub fn bound(&self, kind: BoundKind) -> &BoundValue {
        self.bounds
            .iter()
            .find(|b| b.kind == kind)
            .expect("every kind is evaluated")
    }

    pub fn has_case(&self, case: StructuralCase) -> bool {
        self.cases.contains(&case)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdjacentProduct {
    pub i: usize,
    pub j: usize,
    pub bound: f64,
    pub product: f64,
    pub slack: f64,
}

/// Per-vertex bounds, edge products and graph-level brackets for one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub tolerance: f64,
    pub vertices: Vec<VertexBounds>,
    pub adjacent: Vec<AdjacentProduct>,
    pub graph_energy: f64,
    /// `2 R^(-1)(G)`.
    pub graph_lower: f64,
    /// `sum_i sqrt(S_i)`.
    pub graph_upper: f64,
    /// `(k, bound)` when the graph is `k`-regular.
    pub regular: Option<(usize, f64)>,
}

/// Whether the Hölder lower bound participates in hard checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HolderStatus {
    Asserted,
    Reported,
}

impl BoundsReport {
    /// Every `(vertex, bound)` pair that fails by more than `slack`. The Hölder
    /// bound is included only when `holder` is [`HolderStatus::Asserted`].
    pub fn sandwich_violations(&self, slack: f64, holder: HolderStatus) -> Vec<(usize, BoundKind)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            for b in &v.bounds {
                if b.kind == BoundKind::LowerHolder && holder == HolderStatus::Reported {
                    continue;
                }
                if b.slack < -slack {
                    out.push((v.vertex, b.kind));
                }
            }
        }
        out
    }

    /// Equality flags that no named case accounts for.
    pub fn unexplained_equalities(&self) -> Vec<(usize, BoundKind)> {
        self.vertices
            .iter()
            .flat_map(|v| {
                v.bounds
                    .iter()
                    .filter(|b| b.equality && !b.explained)
                    .map(move |b| (v.vertex, b.kind))
            })
            .collect()
    }
}

pub fn bounds_report(g: &Graph) -> Result<BoundsReport> {
    bounds_report_with_tolerance(g, EQUALITY_TOLERANCE)
}

/// Builds the full report; `tolerance` decides equality flags.
pub fn bounds_report_with_tolerance(g: &Graph, tolerance: f64) -> Result<BoundsReport> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tolerance} must be positive"
        )));
    }
    let spectrum = RandicSpectrum::of(g)?;
    let energies = spectrum.vertex_energies().energies;
    let cases = structural_cases(g)?;

    let mut vertices = Vec::with_capacity(g.vertex_count());
    for (i, cases) in cases.into_iter().enumerate() {
        let energy = energies[i];
        let s = s_value(g, i)?;
        let q = r4_diag(g, i)?;
        let mut bounds = Vec::with_capacity(BoundKind::ALL.len());
        for kind in BoundKind::ALL {
            let value = match kind {
                BoundKind::Unit => upper_unit(),
                BoundKind::CauchySchwarz => upper_cauchy_schwarz(g, i)?,
                BoundKind::Refined => upper_refined(g, i)?,
                BoundKind::Series2 => upper_series2(g, i)?,
                BoundKind::Series3 => upper_series3(g, i)?,
                BoundKind::LowerR2 => lower_r2(g, i)?,
                BoundKind::LowerHolder => lower_holder(g, i)?,
            };
            let slack = if kind.is_upper() {
                value - energy
            } else {
                energy - value
            };
            bounds.push(BoundValue {
                kind,
                value,
                slack,
                equality: slack.abs() <= tolerance,
                explained: kind.equality_cases().iter().any(|c| cases.contains(c)),
            });
        }
        vertices.push(VertexBounds {
            vertex: i,
            degree: g.degree(i),
            energy,
            s,
            q,
            cases,
            bounds,
        });
    }

    let mut adjacent = Vec::with_capacity(g.edge_count());
    for &(i, j) in g.edges() {
        let bound = adjacent_product_lower(g, i, j)?;
        let product = energies[i] * energies[j];
        adjacent.push(AdjacentProduct {
            i,
            j,
            bound,
            product,
            slack: product - bound,
        });
    }

    let (graph_lower, graph_upper) = graph_energy_bounds(g)?;
    let k = g.degree(0);
    let regular = if (0..g.vertex_count()).all(|v| g.degree(v) == k) {
        Some((k, upper_regular(g.vertex_count(), k)?))
    } else {
        None
    };

    Ok(BoundsReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        tolerance,
        vertices,
        adjacent,
        graph_energy: spectrum.graph_energy(),
        graph_lower,
        graph_upper,
        regular,
    })
}

/// One vertex where the Hölder lower bound exceeds the energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderViolation {
    pub graph: String,
    pub vertex: usize,
    pub bound: f64,
    pub energy: f64,
}

/// Collects Hölder-bound violations over a suite of reports. The bound stays
/// asserted only while no violation beyond the slack has been seen.
#[derive(Debug, Clone, Default, Serialize)]
pub struct HolderAudit {
    pub checked: usize,
    pub violations: Vec<HolderViolation>,
}

impl HolderAudit {
    pub fn record(&mut self, label: &str, report: &BoundsReport, slack: f64) {
        for v in &report.vertices {
            self.checked += 1;
            let b = v.bound(BoundKind::LowerHolder);
            if b.slack < -slack {
                self.violations.push(HolderViolation {
                    graph: label.to_owned(),
                    vertex: v.vertex,
                    bound: b.value,
                    energy: v.energy,
                });
            }
        }
    }

    pub fn status(&self) -> HolderStatus {
        if self.violations.is_empty() {
            HolderStatus::Asserted
        } else {
            HolderStatus::Reported
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;
    use crate::spectral::{power_diag, randic_matrix};

    const SAMPLE7: &str = "n 7\n1 2\n2 3\n3 4\n2 4\n1 4\n4 5\n5 6\n4 6\n4 7\n";

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
        Graph::from_edges(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k23() -> Graph {
        Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn s_values() {
        assert!(close(s_value(&star(6), 0).unwrap(), 1.0, 1e-15));
        assert!(close(
            s_value(&parse_edge_list(SAMPLE7).unwrap(), 6).unwrap(),
            1.0 / 6.0,
            1e-15
        ));
        assert!(close(s_value(&complete(5), 2).unwrap(), 0.25, 1e-15));
    }

    #[test]
    fn r4_matches_matrix_powers() {
        let k2 = complete(2);
        assert!(close(r4_diag(&k2, 0).unwrap(), 1.0, 1e-15));
        // (R^2)_{ii} = (R^2)_{i,i+2} = 1/2 on C_4, so (R^4)_{ii} = 1/4 + 1/4.
        assert!(close(r4_diag(&cycle(4), 1).unwrap(), 0.5, 1e-15));
        let sample = parse_edge_list(SAMPLE7).unwrap();
        let r = randic_matrix(&sample).unwrap();
        for i in 0..7 {
            assert!(close(
                r4_diag(&sample, i).unwrap(),
                power_diag(&r, 4, i).unwrap(),
                1e-12
            ));
            assert!(close(
                s_value(&sample, i).unwrap(),
                power_diag(&r, 2, i).unwrap(),
                1e-12
            ));
        }
        // numpy: (R^4)_{77} of the seven-vertex example.
        assert!(close(
            r4_diag(&sample, 6).unwrap(),
            0.092_592_592_592_592_6,
            1e-12
        ));
    }

    #[test]
    fn upper_bounds_on_examples() {
        let sample = parse_edge_list(SAMPLE7).unwrap();
        assert!(close(
            upper_cauchy_schwarz(&star(5), 0).unwrap(),
            1.0,
            1e-15
        ));
        assert!(close(
            upper_cauchy_schwarz(&sample, 6).unwrap(),
            0.408_248_290_463_863,
            1e-12
        ));
        assert!(close(upper_refined(&complete(4), 0).unwrap(), 0.5, 1e-12));
        assert!(close(upper_refined(&star(7), 0).unwrap(), 1.0, 1e-12));
        assert!(close(
            upper_refined(&sample, 6).unwrap(),
            0.379_497_327_491_405_5,
            1e-12
        ));
        assert!(close(upper_series2(&sample, 6).unwrap(), 7.0 / 12.0, 1e-15));
        assert!(close(upper_series2(&star(4), 0).unwrap(), 1.0, 1e-15));
        assert!(close(upper_series3(&complete(2), 0).unwrap(), 1.0, 1e-15));
    }

    #[test]
    fn regular_specialisation() {
        assert!(close(upper_regular(4, 3).unwrap(), 0.5, 1e-15));
        let want = 1.0 / 6.0 + ((0.5 - 1.0 / 6.0) * (5.0 / 6.0_f64)).sqrt();
        assert!(close(upper_regular(6, 2).unwrap(), want, 1e-15));
        assert!(want >= 4.0 / 6.0);
        assert!(close(upper_regular(2, 1).unwrap(), 1.0, 1e-15));
        assert!(upper_regular(4, 4).is_err());
        assert!(upper_regular(4, 0).is_err());
        // Agrees with the general refined bound on a regular graph.
        assert!(close(
            upper_regular(6, 2).unwrap(),
            upper_refined(&cycle(6), 0).unwrap(),
            1e-15
        ));
    }

    #[test]
    fn lower_bounds_on_examples() {
        assert!(close(lower_r2(&k23(), 0).unwrap(), 0.5, 1e-15));
        assert!(close(lower_r2(&star(6), 3).unwrap(), 0.2, 1e-15));
        assert!(close(lower_holder(&complete(2), 0).unwrap(), 1.0, 1e-15));
        assert!(close(lower_holder(&star(5), 0).unwrap(), 1.0, 1e-15));
        assert!(close(lower_holder(&cycle(4), 0).unwrap(), 0.5, 1e-15));
    }

    #[test]
    fn products_and_indices() {
        assert_eq!(adjacent_product_lower(&complete(2), 0, 1).unwrap(), 1.0);
        assert!(close(
            adjacent_product_lower(&star(5), 0, 3).unwrap(),
            0.25,
            1e-15
        ));
        let sample = parse_edge_list(SAMPLE7).unwrap();
        assert!(close(
            adjacent_product_lower(&sample, 3, 6).unwrap(),
            1.0 / 6.0,
            1e-15
        ));
        assert_eq!(
            adjacent_product_lower(&sample, 0, 6),
            Err(Error::NotAdjacent { i: 0, j: 6 })
        );
        assert_eq!(general_randic_index(&complete(2), -1.0).unwrap(), 1.0);
        assert!(close(
            general_randic_index(&k23(), -1.0).unwrap(),
            1.0,
            1e-15
        ));
        assert!(close(
            general_randic_index(&sample, -1.0).unwrap(),
            41.0 / 36.0,
            1e-14
        ));
        assert_eq!(
            general_randic_index(&Graph::empty(3), -1.0),
            Err(Error::NoEdges)
        );
    }

    #[test]
    fn star_report_flags() {
        let r = bounds_report(&star(6)).unwrap();
        let centre = &r.vertices[0];
        assert!(centre.has_case(StructuralCase::StarCenter));
        for kind in [
            BoundKind::Unit,
            BoundKind::CauchySchwarz,
            BoundKind::Refined,
            BoundKind::Series2,
        ] {
            let b = centre.bound(kind);
            assert!(b.equality && b.explained, "{kind:?}");
        }
        for leaf in &r.vertices[1..] {
            let b = leaf.bound(BoundKind::LowerR2);
            assert!(b.equality && b.explained);
            assert!(!leaf.bound(BoundKind::Unit).equality);
        }
        assert!(
            r.unexplained_equalities().is_empty(),
            "{:?}",
            r.unexplained_equalities()
        );
    }

    #[test]
    fn complete_graph_report_flags() {
        let r = bounds_report(&complete(5)).unwrap();
        for v in &r.vertices {
            assert!(v.bound(BoundKind::Refined).equality);
            assert!(v.has_case(StructuralCase::CompleteGraph));
        }
        assert_eq!(r.regular.map(|(k, _)| k), Some(4));
        assert!(close(r.regular.unwrap().1, 0.4, 1e-12));
    }

    #[test]
    fn seven_vertex_report() {
        let r = bounds_report(&parse_edge_list(SAMPLE7).unwrap()).unwrap();
        assert!(r
            .sandwich_violations(1e-9, HolderStatus::Asserted)
            .is_empty());
        for v in &r.vertices {
            assert!(v.bounds.iter().all(|b| !b.equality), "vertex {}", v.vertex);
        }
        assert!(r.adjacent.iter().all(|a| a.slack >= -1e-9));
        assert!(r.graph_lower <= r.graph_energy && r.graph_energy <= r.graph_upper);
        assert_eq!(r.regular, None);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(bounds_report_with_tolerance(&star(3), 0.0).is_err());
    }
}
