//! Vertex energy from the Coulson-type integral
//! `RE(v_i) = (1/pi) * integral over R of Re(1 - ix psi_i(ix) / psi(ix)) dx`,
//! where `psi` is the characteristic polynomial of `R(G)` and `psi_i` that of a
//! vertex-deleted matrix.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::charpoly::{deleted_vertex_poly, randic_char_poly, DeletionMode, Polynomial};
use crate::energy::RandicSpectrum;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Adaptive composite Gauss–Legendre settings for the `x = tan t` integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    nodes: usize,
    tolerance: f64,
    max_levels: u32,
}

impl QuadratureConfig {
    pub fn new(nodes: usize, tolerance: f64, max_levels: u32) -> Result<Self> {
        if nodes < 8 {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs at least 8 nodes, got {nodes}"
            )));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerance must be positive, got {tolerance}"
            )));
        }
        if max_levels == 0 {
            return Err(Error::InvalidParameter(
                "quadrature needs at least one refinement level".into(),
            ));
        }
        Ok(QuadratureConfig {
            nodes,
            tolerance,
            max_levels,
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_levels(&self) -> u32 {
        self.max_levels
    }

    pub fn with_tolerance(self, tolerance: f64) -> Result<Self> {
        Self::new(self.nodes, tolerance, self.max_levels)
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes: 32,
            tolerance: 1e-7,
            max_levels: 12,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n.div_ceil(2) {
            let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_n(x) and its derivative.
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
                let step = pn / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            weights[k] = w;
            weights[n - 1 - k] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

fn eval_imaginary(coeffs: &[f64], x: f64) -> (f64, f64) {
    let d = coeffs.len() - 1;
    let y = -x * x;
    let (mut even, mut odd) = (0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        if (d - k) % 2 == 0 {
            even = even * y + c;
        } else {
            odd = odd * y + c;
        }
    }
    (even, x * odd)
}

/// The integrand `h(ix) / q(ix)` with `h(z) = q(z) - z p(z)`, after removing
/// the common factor `z^r` at a zero eigenvalue of multiplicity `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoulsonIntegrand {
    /// Numerator, padded to the denominator's length, descending powers.
    numerator: Vec<f64>,
    denominator: Vec<f64>,
    /// Common power of `z` removed from both sides.
    pub deflation: usize,
    /// Zero eigenvalues of the full matrix not matched by the numerator; the
    /// integrand is singular at the origin when this is positive.
    pub residual_pole: usize,
}

const COEFFICIENT_SNAP: f64 = 1e-10;

impl CoulsonIntegrand {
    /// `q` is `psi(R)`, `p` the deleted-vertex polynomial and `nullity` the
    /// multiplicity of the eigenvalue 0 in `R`.
    pub fn new(q: &Polynomial, p: &Polynomial, nullity: usize) -> Result<Self> {
        let n = q.degree();
        if p.degree() + 1 != n {
            return Err(Error::InvalidParameter(format!(
                "deleted-vertex polynomial has degree {}, expected {}",
                p.degree(),
                n.saturating_sub(1)
            )));
        }
        // z p(z) shares length n + 1 with q; the leading coefficients cancel.
        let mut h: Vec<f64> = q
            .coefficients()
            .iter()
            .zip(p.coefficients().iter().chain([&0.0]))
            .map(|(a, b)| a - b)
            .collect();
        h[0] = 0.0;
        let mut q = q.coefficients().to_vec();
        let trailing_h = h
            .iter()
            .rev()
            .take_while(|c| c.abs() <= COEFFICIENT_SNAP)
            .count();
        let r = nullity.min(n);
        let deflation = r.min(trailing_h);
        h.truncate(h.len() - deflation);
        q.truncate(q.len() - deflation);
        Ok(CoulsonIntegrand {
            numerator: h,
            denominator: q,
            deflation,
            residual_pole: r - deflation,
        })
    }

    /// `(re, im)` of `1 - ix p(ix) / q(ix)`.
    pub fn evaluate(&self, x: f64) -> (f64, f64) {
        let ((a, b), (c, d)) = if x.abs() <= 1.0 {
            (
                eval_imaginary(&self.numerator, x),
                eval_imaginary(&self.denominator, x),
            )
        } else {
            // Divide through by (ix)^D and evaluate in w = 1 / (ix) = i * (-1/x).
            let s = -1.0 / x;
            (
                eval_reversed(&self.numerator, s),
                eval_reversed(&self.denominator, s),
            )
        };
        let den = c * c + d * d;
        ((a * c + b * d) / den, (b * c - a * d) / den)
    }

    /// Real part of the integrand.
    pub fn real(&self, x: f64) -> f64 {
        self.evaluate(x).0
    }
}

fn eval_reversed(coeffs: &[f64], s: f64) -> (f64, f64) {
    let rev: Vec<f64> = coeffs.iter().rev().copied().collect();
    eval_imaginary(&rev, s)
}

/// Builds the integrand for vertex `i` of a connected graph.
pub fn coulson_integrand(g: &Graph, i: usize, mode: DeletionMode) -> Result<CoulsonIntegrand> {
    g.check_vertex(i)?;
    let spectrum = RandicSpectrum::of(g)?;
    let q = randic_char_poly(g)?;
    let p = deleted_vertex_poly(g, i, mode)?;
    CoulsonIntegrand::new(&q, &p, spectrum.eigen.nullity())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulsonEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// False when some panel hit the refinement limit without meeting the tolerance.
    pub converged: bool,
    pub evaluations: usize,
}

struct Adaptive<'a, F> {
    rule: &'a GaussLegendre,
    f: F,
    cfg: QuadratureConfig,
    width: f64,
    error: f64,
    converged: bool,
    evaluations: usize,
}

impl<F: Fn(f64) -> f64> Adaptive<'_, F> {
    fn panel(&mut self, a: f64, b: f64) -> f64 {
        self.evaluations += self.rule.nodes().len();
        self.rule.integrate(&self.f, a, b)
    }

    fn refine(&mut self, a: f64, b: f64, coarse: f64, level: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (left, right) = (self.panel(a, m), self.panel(m, b));
        let fine = left + right;
        let diff = (fine - coarse).abs();
        if diff <= self.cfg.tolerance * (b - a) / self.width {
            self.error += diff;
            return fine;
        }
        if level >= self.cfg.max_levels {
            self.error += diff;
            self.converged = false;
            return fine;
        }
        self.refine(a, m, left, level + 1) + self.refine(m, b, right, level + 1)
    }
}

/// Integrates `f(tan t) sec^2 t` over `(-pi/2, pi/2)`, i.e. `f` over the real line.
pub fn integrate_real_line(f: impl Fn(f64) -> f64, cfg: &QuadratureConfig) -> CoulsonEstimate {
    let rule = GaussLegendre::new(cfg.nodes());
    let g = |t: f64| {
        let x = t.tan();
        f(x) * (1.0 + x * x)
    };
    let mut q = Adaptive {
        rule: &rule,
        f: g,
        cfg: *cfg,
        width: PI,
        error: 0.0,
        converged: true,
        evaluations: 0,
    };
    let mut total = 0.0;
    for (a, b) in [(-FRAC_PI_2, 0.0), (0.0, FRAC_PI_2)] {
        let coarse = q.panel(a, b);
        total += q.refine(a, b, coarse, 1);
    }
    CoulsonEstimate {
        value: total,
        error_estimate: q.error,
        converged: q.converged,
        evaluations: q.evaluations,
    }
}

/// Energy of vertex `i` by the Coulson integral, using the principal submatrix
/// of `R(G)` for the deleted vertex.
pub fn coulson_vertex_energy(
    g: &Graph,
    i: usize,
    cfg: &QuadratureConfig,
) -> Result<CoulsonEstimate> {
    coulson_vertex_energy_with(g, i, cfg, DeletionMode::PrincipalSubmatrix)
}

pub fn coulson_vertex_energy_with(
    g: &Graph,
    i: usize,
    cfg: &QuadratureConfig,
    mode: DeletionMode,
) -> Result<CoulsonEstimate> {
    let integrand = coulson_integrand(g, i, mode)?;
    let mut est = integrate_real_line(|x| integrand.real(x), cfg);
    est.value /= PI;
    est.error_estimate /= PI;
    if integrand.residual_pole > 0 {
        est.converged = false;
    }
    Ok(est)
}

/// Coulson energies of every vertex.
pub fn coulson_energies(g: &Graph, cfg: &QuadratureConfig) -> Result<Vec<CoulsonEstimate>> {
    (0..g.vertex_count())
        .map(|i| coulson_vertex_energy(g, i, cfg))
        .collect()
}

/// Side-by-side comparison of the two deleted-vertex interpretations at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiteralComparison {
    pub vertex: usize,
    pub eigen: f64,
    pub principal: CoulsonEstimate,
    pub literal: CoulsonEstimate,
}

impl LiteralComparison {
    pub fn principal_error(&self) -> f64 {
        (self.principal.value - self.eigen).abs()
    }

    pub fn literal_discrepancy(&self) -> f64 {
        (self.literal.value - self.eigen).abs()
    }
}

pub fn compare_deletion_modes(
    g: &Graph,
    i: usize,
    cfg: &QuadratureConfig,
) -> Result<LiteralComparison> {
    let eigen = RandicSpectrum::of(g)?.vertex_energy(i);
    Ok(LiteralComparison {
        vertex: i,
        eigen,
        principal: coulson_vertex_energy_with(g, i, cfg, DeletionMode::PrincipalSubmatrix)?,
        literal: coulson_vertex_energy_with(g, i, cfg, DeletionMode::RecomputedDegrees)?,
    })
}
