//! Characteristic polynomials of Randić matrices.
//!
//! Two independent routes compute `psi(x) = det(xI - R)`: the Faddeev–LeVerrier
//! trace recurrence on the matrix, and an exact sum over elementary subgraphs
//! (disjoint unions of single edges and cycles). For bipartite graphs the
//! polynomial has only even-offset terms, which gives a quasi-order used to
//! compare vertex energies.

use serde::Serialize;

use crate::energy::RandicSpectrum;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{randic_matrix, randic_matrix_lenient, SymmetricMatrix};

/// Largest graph the elementary-subgraph enumeration accepts.
pub const MAX_ENUMERATION_VERTICES: usize = 12;

const ODD_COEFFICIENT_TOL: f64 = 1e-8;
const EVEN_CLAMP_TOL: f64 = 1e-10;
const QUASI_ORDER_TOL: f64 = 1e-8;
const ENERGY_ORDER_TOL: f64 = 1e-9;

/// Monic real polynomial, coefficients by descending power: `coeffs[k]`
/// multiplies `x^(degree - k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn from_coefficients(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.first() != Some(&1.0) {
            return Err(Error::InvalidParameter("polynomial must be monic".into()));
        }
        Ok(Polynomial { coeffs })
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Polynomial { coeffs: vec![1.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_k`, the coefficient of `x^(n-k)`.
    pub fn a(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `p(ix)` as `(re, im)`, by Horner passes in `-x^2` over the even- and
    /// odd-power coefficients separately.
    pub fn eval_imaginary(&self, x: f64) -> (f64, f64) {
        let d = self.degree();
        let y = -x * x;
        let (mut even, mut odd) = (0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if (d - k) % 2 == 0 {
                even = even * y + c;
            } else {
                odd = odd * y + c;
            }
        }
        (even, x * odd)
    }

    /// Product by coefficient convolution.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }

    pub fn max_coefficient_diff(&self, other: &Polynomial) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `det(xI - M)` by the Faddeev–LeVerrier recurrence
/// `N_k = M N_{k-1} + a_{k-1} I`, `a_k = -tr(M N_k) / k`.
pub fn char_poly_numeric(m: &SymmetricMatrix) -> Result<Polynomial> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut coeffs = vec![0.0; n + 1];
    coeffs[0] = 1.0;
    let mut work = vec![0.0; n * n];
    let mut next = vec![0.0; n * n];
    for k in 1..=n {
        // next = M * work + a_{k-1} I
        for i in 0..n {
            let row = m.row(i);
            for j in 0..n {
                let mut s = 0.0;
                for (l, &ril) in row.iter().enumerate() {
                    s += ril * work[l * n + j];
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += coeffs[k - 1];
        }
        std::mem::swap(&mut work, &mut next);
        let mut trace = 0.0;
        for i in 0..n {
            let row = m.row(i);
            for (l, &ril) in row.iter().enumerate() {
                trace += ril * work[l * n + i];
            }
        }
        coeffs[k] = -trace / k as f64;
    }
    Ok(Polynomial { coeffs })
}

/// `psi_R(G; x)` by the trace recurrence.
pub fn randic_char_poly(g: &Graph) -> Result<Polynomial> {
    char_poly_numeric(&randic_matrix(g)?)
}

/// A subgraph whose components are single edges or cycles of length at least 3.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ElementarySubgraph {
    pub edges: Vec<(usize, usize)>,
    /// Each cycle lists its vertices in traversal order, smallest first.
    pub cycles: Vec<Vec<usize>>,
    pub order: usize,
}

impl ElementarySubgraph {
    pub fn components(&self) -> usize {
        self.edges.len() + self.cycles.len()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.cycles.iter().flatten().copied())
            .collect();
        vs.sort_unstable();
        vs
    }
}

struct Enumerator<'g, F> {
    g: &'g Graph,
    used: Vec<bool>,
    current: ElementarySubgraph,
    visit: F,
}

impl<F: FnMut(&ElementarySubgraph)> Enumerator<'_, F> {
    fn run(&mut self, pos: usize) {
        let n = self.g.vertex_count();
        let Some(v) = (pos..n).find(|&v| !self.used[v]) else {
            (self.visit)(&self.current);
            return;
        };

        // v stays uncovered.
        self.run(v + 1);

        self.used[v] = true;
        // v pairs with a later neighbour.
        for &u in self.g.neighbors(v) {
            if u > v && !self.used[u] {
                self.used[u] = true;
                self.current.edges.push((v, u));
                self.current.order += 2;
                self.run(v + 1);
                self.current.order -= 2;
                self.current.edges.pop();
                self.used[u] = false;
            }
        }
        // v is the smallest vertex of a cycle.
        let mut path = vec![v];
        self.extend_cycle(v, &mut path);
        self.used[v] = false;
    }

    fn extend_cycle(&mut self, start: usize, path: &mut Vec<usize>) {
        let last = *path.last().expect("path starts at the cycle root");
        let neighbours: Vec<usize> = self.g.neighbors(last).to_vec();
        for u in neighbours {
            if u <= start || self.used[u] {
                continue;
            }
            path.push(u);
            self.used[u] = true;
            // Close the cycle; fixing path[1] < last vertex picks one direction.
            if path.len() >= 3 && self.g.has_edge(u, start) && path[1] < u {
                self.current.cycles.push(path.clone());
                self.current.order += path.len();
                self.run(start + 1);
                self.current.order -= path.len();
                self.current.cycles.pop();
            }
            self.extend_cycle(start, path);
            self.used[u] = false;
            path.pop();
        }
    }
}

/// Calls `visit` once for every elementary subgraph of `g`, including the empty one.
pub fn for_each_elementary_subgraph<F>(g: &Graph, visit: F) -> Result<()>
where
    F: FnMut(&ElementarySubgraph),
{
    if g.vertex_count() > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            n: g.vertex_count(),
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut e = Enumerator {
        g,
        used: vec![false; g.vertex_count()],
        current: ElementarySubgraph::default(),
        visit,
    };
    e.run(0);
    Ok(())
}

/// Number of elementary subgraphs of each order `0..=n`.
pub fn elementary_subgraph_counts(g: &Graph) -> Result<Vec<usize>> {
    let mut counts = vec![0; g.vertex_count() + 1];
    for_each_elementary_subgraph(g, |h| counts[h.order] += 1)?;
    Ok(counts)
}

/// `psi_R(G; x)` from `(-1)^k a_k = sum over elementary subgraphs H of order k of
/// (-1)^(k - c(H)) 2^(s(H)) prod_{v in H} 1/d_v`.
pub fn char_poly_combinatorial(g: &Graph) -> Result<Polynomial> {
    g.require_connected()?;
    let n = g.vertex_count();
    let inv: Vec<f64> = (0..n).map(|v| 1.0 / g.degree(v) as f64).collect();
    let mut signed = vec![0.0; n + 1];
    for_each_elementary_subgraph(g, |h| {
        let weight: f64 = h.vertices().iter().map(|&v| inv[v]).product();
        let sign = if (h.order - h.components()) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        signed[h.order] += sign * f64::powi(2.0, h.cycle_count() as i32) * weight;
    })?;
    let coeffs = signed
        .into_iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { s } else { -s })
        .collect();
    Ok(Polynomial { coeffs })
}

/// `b_0, b_1, ...` of a polynomial of the form `sum_k (-1)^k b_k x^(n-2k)`,
/// where `b[k]` is the coefficient usually written `b_{2k}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenCoefficients {
    pub b: Vec<f64>,
}

/// Extracts the even coefficients, failing if an odd-offset coefficient is not
/// negligible. Values in `[-1e-10, 0)` are clamped to zero.
pub fn even_coefficients(p: &Polynomial) -> Result<EvenCoefficients> {
    let n = p.degree();
    let mut b = Vec::with_capacity(n / 2 + 1);
    for (k, &c) in p.coefficients().iter().enumerate() {
        if k % 2 == 1 {
            if c.abs() > ODD_COEFFICIENT_TOL {
                return Err(Error::OddCoefficient {
                    power: n - k,
                    value: c,
                });
            }
            continue;
        }
        let value = if (k / 2) % 2 == 0 { c } else { -c };
        if value < -EVEN_CLAMP_TOL {
            return Err(Error::NegativeEvenCoefficient { index: k, value });
        }
        b.push(value.max(0.0));
    }
    Ok(EvenCoefficients { b })
}

/// Coefficient-wise relation of the first argument to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuasiOrder {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
}

/// Compares two even-coefficient vectors, padding the shorter with zeros.
pub fn quasi_order_compare(p1: &EvenCoefficients, p2: &EvenCoefficients) -> QuasiOrder {
    let len = p1.b.len().max(p2.b.len());
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
    let (mut le, mut ge) = (true, true);
    for k in 0..len {
        let d = at(&p1.b, k) - at(&p2.b, k);
        le &= d <= QUASI_ORDER_TOL;
        ge &= d >= -QUASI_ORDER_TOL;
    }
    match (le, ge) {
        (true, true) => QuasiOrder::Equal,
        (true, false) => QuasiOrder::LessEq,
        (false, true) => QuasiOrder::GreaterEq,
        (false, false) => QuasiOrder::Incomparable,
    }
}

/// Which polynomial stands in for "G minus a vertex".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionMode {
    /// Principal submatrix of `R(G)` with the vertex's row and column removed.
    PrincipalSubmatrix,
    /// Randić matrix of the graph `G - v` with degrees recomputed; isolated
    /// vertices contribute zero rows.
    RecomputedDegrees,
}

/// The deleted-vertex polynomial of `g` under `mode`.
pub fn deleted_vertex_poly(g: &Graph, v: usize, mode: DeletionMode) -> Result<Polynomial> {
    g.check_vertex(v)?;
    if g.vertex_count() == 1 {
        return Ok(Polynomial::one());
    }
    let m = match mode {
        DeletionMode::PrincipalSubmatrix => randic_matrix(g)?.principal_submatrix(v)?,
        DeletionMode::RecomputedDegrees => randic_matrix_lenient(&g.delete_vertex(v)?),
    };
    char_poly_numeric(&m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderOutcome {
    /// The polynomials are comparable and the energies are ordered accordingly.
    Witnessed,
    /// The polynomials are incomparable; nothing is predicted.
    Vacuous,
    /// The polynomials are comparable but the energies disagree.
    Violated,
}

fn outcome(relation: QuasiOrder, energy_v: f64, energy_w: f64) -> OrderOutcome {
    // relation is that of the w-deleted polynomial to the v-deleted one; a
    // larger deleted polynomial means a smaller energy.
    let holds = match relation {
        QuasiOrder::GreaterEq => energy_w <= energy_v + ENERGY_ORDER_TOL,
        QuasiOrder::LessEq => energy_v <= energy_w + ENERGY_ORDER_TOL,
        QuasiOrder::Equal => (energy_v - energy_w).abs() <= ENERGY_ORDER_TOL,
        QuasiOrder::Incomparable => return OrderOutcome::Vacuous,
    };
    if holds {
        OrderOutcome::Witnessed
    } else {
        OrderOutcome::Violated
    }
}

/// Outcome of comparing two vertices through their deleted polynomials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub v: usize,
    pub w: usize,
    pub mode: DeletionMode,
    /// Relation of `G - w` to `G - v`.
    pub relation: QuasiOrder,
    pub energy_v: f64,
    pub energy_w: f64,
    pub outcome: OrderOutcome,
}

/// Checks `G - w >= G - v  =>  RE(w) <= RE(v)` on a connected bipartite graph,
/// with deleted polynomials from principal submatrices.
pub fn vertex_order_check(g: &Graph, v: usize, w: usize) -> Result<OrderVerdict> {
    vertex_order_check_with(g, v, w, DeletionMode::PrincipalSubmatrix)
}

pub fn vertex_order_check_with(
    g: &Graph,
    v: usize,
    w: usize,
    mode: DeletionMode,
) -> Result<OrderVerdict> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    g.bipartition()?.ok_or(Error::NotBipartite)?;
    let spectrum = RandicSpectrum::of(g)?;
    let bv = even_coefficients(&deleted_vertex_poly(g, v, mode)?)?;
    let bw = even_coefficients(&deleted_vertex_poly(g, w, mode)?)?;
    let relation = quasi_order_compare(&bw, &bv);
    let (energy_v, energy_w) = (spectrum.vertex_energy(v), spectrum.vertex_energy(w));
    Ok(OrderVerdict {
        v,
        w,
        mode,
        relation,
        energy_v,
        energy_w,
        outcome: outcome(relation, energy_v, energy_w),
    })
}

/// Outcome of comparing `v` in `G1` with `w` in `G2` through the disjoint union.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionVerdict {
    /// Relation of `G1 u (G2 - w)` to `G2 u (G1 - v)`.
    pub relation: QuasiOrder,
    pub energy_v: f64,
    pub energy_w: f64,
    pub outcome: OrderOutcome,
}

/// Checks `G1 u (G2 - w) >= G2 u (G1 - v)  =>  RE_G2(w) <= RE_G1(v)` for two
/// connected bipartite graphs. Union polynomials are products of component polynomials.
pub fn union_order_check(g1: &Graph, v: usize, g2: &Graph, w: usize) -> Result<UnionVerdict> {
    for g in [g1, g2] {
        g.bipartition()?.ok_or(Error::NotBipartite)?;
    }
    let s1 = RandicSpectrum::of(g1)?;
    let s2 = RandicSpectrum::of(g2)?;
    let mode = DeletionMode::PrincipalSubmatrix;
    let minus_w = char_poly_numeric(&s1.matrix)?.mul(&deleted_vertex_poly(g2, w, mode)?);
    let minus_v = char_poly_numeric(&s2.matrix)?.mul(&deleted_vertex_poly(g1, v, mode)?);
    let relation =
        quasi_order_compare(&even_coefficients(&minus_w)?, &even_coefficients(&minus_v)?);
    let (energy_v, energy_w) = (s1.vertex_energy(v), s2.vertex_energy(w));
    Ok(UnionVerdict {
        relation,
        energy_v,
        energy_w,
        outcome: outcome(relation, energy_v, energy_w),
    })
}
