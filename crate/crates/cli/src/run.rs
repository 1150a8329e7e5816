use std::collections::BTreeMap;

use anyhow::{bail, Context};
use randic_core::bounds::{
    bounds_report_with_tolerance, BoundKind, HolderAudit, EQUALITY_TOLERANCE,
};
use randic_core::charpoly::{
    char_poly_combinatorial, even_coefficients, randic_char_poly, union_order_check,
    vertex_order_check_with, DeletionMode, MAX_ENUMERATION_VERTICES,
};
use randic_core::coulson::{compare_deletion_modes, coulson_energies, QuadratureConfig};
use randic_core::energy::{
    series_energies, vertex_energies_by, RandicSpectrum, Route, SERIES_MAX_TERMS,
};
use randic_core::families::{friendship_hub_weights, friendship_spectrum, Family, VertexClass};
use randic_core::{Error, Graph};
use serde::Serialize;

use crate::report::*;
use crate::request::{AnalysisRequest, CommandKind, RouteName};

const SERIES_DEFAULT_TOL: f64 = 1e-10;

/// A connected piece of the input with its vertex ids in the original graph.
struct Part {
    component: Option<usize>,
    graph: Graph,
    original: Vec<usize>,
}

impl Part {
    fn id(&self, local: usize) -> usize {
        self.original[local] + 1
    }

    fn local(&self, external: usize) -> Option<usize> {
        self.original.iter().position(|&v| v + 1 == external)
    }
}

#[derive(Default)]
struct Builder {
    results: Vec<Row>,
    routes: RouteSummaries,
    warnings: Vec<String>,
}

impl Builder {
    fn stat(&mut self, route: &str, key: &str, value: f64) {
        self.routes
            .entry(route.to_owned())
            .or_default()
            .insert(key.to_owned(), value);
    }

    fn add(&mut self, route: &str, key: &str, value: f64) {
        *self
            .routes
            .entry(route.to_owned())
            .or_default()
            .entry(key.to_owned())
            .or_insert(0.0) += value;
    }

    fn max(&mut self, route: &str, key: &str, value: f64) {
        let slot = self
            .routes
            .entry(route.to_owned())
            .or_default()
            .entry(key.to_owned())
            .or_insert(value);
        *slot = slot.max(value);
    }
}

/// Serialized name of a unit enum variant, e.g. `QuasiOrder::GreaterEq` as `greater-eq`.
fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn split(g: &Graph, per_component: bool, warnings: &mut Vec<String>) -> anyhow::Result<Vec<Part>> {
    let components = g.components();
    if components.len() == 1 {
        g.require_connected()?;
        return Ok(vec![Part {
            component: None,
            graph: g.clone(),
            original: (0..g.vertex_count()).collect(),
        }]);
    }
    if !per_component {
        let err = Error::Disconnected {
            components: components.len(),
        };
        bail!("{err}; pass --per-component to analyse each component separately");
    }
    let mut parts = Vec::new();
    for (k, vertices) in components.into_iter().enumerate() {
        if vertices.len() == 1 {
            warnings.push(format!(
                "component {} is the isolated vertex {}; skipped",
                k + 1,
                vertices[0] + 1
            ));
            continue;
        }
        parts.push(Part {
            component: Some(k + 1),
            graph: g.induced_subgraph(&vertices)?,
            original: vertices,
        });
    }
    if parts.is_empty() {
        bail!("no component has an edge");
    }
    Ok(parts)
}

/// Runs one analysis and returns its report.
pub fn run(req: &AnalysisRequest) -> anyhow::Result<Report> {
    req.validate()?;
    let g = req.source.load()?;
    let n = g.vertex_count();
    for &v in req
        .vertices
        .iter()
        .flatten()
        .chain(req.pair.iter().flat_map(|(v, w)| [v, w]))
    {
        if v > n {
            bail!("vertex {v} out of range for a graph on {n} vertices");
        }
    }
    let mut out = Builder::default();
    if g.duplicate_edges() > 0 {
        out.warnings
            .push(format!("{} duplicate edges ignored", g.duplicate_edges()));
    }
    let parts = split(&g, req.per_component, &mut out.warnings)?;
    match req.command {
        CommandKind::Energy => energy(req, &parts, &mut out)?,
        CommandKind::Bounds => bounds(req, &parts, &mut out)?,
        CommandKind::Charpoly => charpoly(&parts, &mut out)?,
        CommandKind::Coulson => coulson(req, &parts, &mut out)?,
        CommandKind::Compare => compare(req, &parts, &mut out)?,
        CommandKind::FamilyInfo => family_info(req, &g, &mut out)?,
    }
    Ok(Report {
        graph: GraphInfo {
            n,
            m: g.edge_count(),
        },
        command: req.command,
        results: out.results,
        routes: out.routes,
        warnings: out.warnings,
    })
}

fn selected(req: &AnalysisRequest, id: usize) -> bool {
    req.vertices.as_ref().is_none_or(|vs| vs.contains(&id))
}

fn quadrature(req: &AnalysisRequest) -> anyhow::Result<QuadratureConfig> {
    let cfg = QuadratureConfig::default();
    Ok(match req.tolerance {
        Some(tol) => cfg.with_tolerance(tol)?,
        None => cfg,
    })
}

fn energy(req: &AnalysisRequest, parts: &[Part], out: &mut Builder) -> anyhow::Result<()> {
    let wants = |r: RouteName| req.routes.contains(&r);
    for part in parts {
        let g = &part.graph;
        let eigen = vertex_energies_by(g, Route::EigenWeights)?;
        out.add("eigen", "total", eigen.total);
        let abs = if wants(RouteName::Abs) {
            Some(vertex_energies_by(g, Route::AbsDiagonal)?)
        } else {
            None
        };
        if let Some(a) = &abs {
            out.add("abs", "total", a.total);
            out.max("abs", "max_delta", a.max_abs_diff(&eigen));
        }
        let series = if wants(RouteName::Series) {
            let tol = req.tolerance.unwrap_or(SERIES_DEFAULT_TOL);
            let s = series_energies(g, tol, SERIES_MAX_TERMS)?;
            out.add("series", "total", s.energies.iter().sum());
            let delta = s
                .energies
                .iter()
                .zip(&eigen.energies)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            out.max("series", "max_delta", delta);
            out.max("series", "terms", s.terms as f64);
            out.max("series", "remainder_bound", s.remainder_bound);
            if s.remainder_bound > tol {
                out.warnings.push(format!(
                    "series route stopped after {} terms with remainder bound {:e} (zero eigenvalues slow the series)",
                    s.terms, s.remainder_bound
                ));
            }
            Some(s)
        } else {
            None
        };
        let coulson = if wants(RouteName::Coulson) {
            let est = coulson_energies(g, &quadrature(req)?)?;
            out.add("coulson", "total", est.iter().map(|e| e.value).sum());
            let delta = est
                .iter()
                .zip(&eigen.energies)
                .map(|(e, b)| (e.value - b).abs())
                .fold(0.0, f64::max);
            out.max("coulson", "max_delta", delta);
            out.max(
                "coulson",
                "max_error_estimate",
                est.iter().map(|e| e.error_estimate).fold(0.0, f64::max),
            );
            let unconverged = est.iter().filter(|e| !e.converged).count();
            out.add("coulson", "unconverged", unconverged as f64);
            if unconverged > 0 {
                out.warnings.push(format!(
                    "coulson quadrature hit the refinement limit at {unconverged} vertices"
                ));
            }
            Some(est)
        } else {
            None
        };
        for v in 0..g.vertex_count() {
            if !selected(req, part.id(v)) {
                continue;
            }
            out.results.push(Row::Vertex(VertexRow {
                component: part.component,
                vertex: part.id(v),
                degree: g.degree(v),
                energy: eigen.energies[v],
                abs: abs.as_ref().map(|a| a.energies[v]),
                series: series.as_ref().map(|s| s.energies[v]),
                coulson: coulson.as_ref().map(|c| c[v].value),
                coulson_error: coulson.as_ref().map(|c| c[v].error_estimate),
            }));
        }
    }
    Ok(())
}

fn bounds(req: &AnalysisRequest, parts: &[Part], out: &mut Builder) -> anyhow::Result<()> {
    let tol = req.tolerance.unwrap_or(EQUALITY_TOLERANCE);
    for part in parts {
        let r = bounds_report_with_tolerance(&part.graph, tol)?;
        let mut audit = HolderAudit::default();
        audit.record("input", &r, 1e-9);
        for v in &audit.violations {
            out.warnings.push(format!(
                "lower_holder exceeds the energy at vertex {} ({} > {}); reported, not asserted",
                part.id(v.vertex),
                v.bound,
                v.energy
            ));
        }
        for v in &r.vertices {
            if !selected(req, part.id(v.vertex)) {
                continue;
            }
            let value = |k: BoundKind| v.bound(k).value;
            let equalities = v
                .bounds
                .iter()
                .filter(|b| b.equality)
                .map(|b| {
                    let case = b.kind.equality_cases().iter().find(|c| v.cases.contains(c));
                    match case {
                        Some(c) => format!("{}:{}", b.kind.name(), label(c)),
                        None => b.kind.name().to_owned(),
                    }
                })
                .collect();
            out.results.push(Row::Bound(BoundRow {
                component: part.component,
                vertex: part.id(v.vertex),
                degree: v.degree,
                energy: v.energy,
                s: v.s,
                q: v.q,
                unit: value(BoundKind::Unit),
                cauchy_schwarz: value(BoundKind::CauchySchwarz),
                refined: value(BoundKind::Refined),
                series2: value(BoundKind::Series2),
                series3: value(BoundKind::Series3),
                lower_r2: value(BoundKind::LowerR2),
                lower_holder: value(BoundKind::LowerHolder),
                equalities,
            }));
        }
        for a in &r.adjacent {
            let (i, j) = (part.id(a.i), part.id(a.j));
            if req.vertices.is_none() || selected(req, i) || selected(req, j) {
                out.results.push(Row::Edge(EdgeRow {
                    component: part.component,
                    i,
                    j,
                    bound: a.bound,
                    product: a.product,
                    slack: a.slack,
                }));
            }
        }
        out.results.push(Row::Graph(GraphRow {
            component: part.component,
            n: r.n,
            m: r.m,
            energy: r.graph_energy,
            lower: r.graph_lower,
            upper: r.graph_upper,
            regular_bound: r.regular.map(|(_, b)| b),
            holder: label(&audit.status()),
        }));
    }
    Ok(())
}

fn charpoly(parts: &[Part], out: &mut Builder) -> anyhow::Result<()> {
    for part in parts {
        let g = &part.graph;
        let numeric = randic_char_poly(g)?;
        let exact = if g.vertex_count() <= MAX_ENUMERATION_VERTICES {
            let p = char_poly_combinatorial(g)?;
            out.max(
                "charpoly",
                "max_coefficient_delta",
                p.max_coefficient_diff(&numeric),
            );
            Some(p)
        } else {
            out.warnings.push(format!(
                "elementary-subgraph enumeration skipped: {} vertices exceeds the cap of {MAX_ENUMERATION_VERTICES}",
                g.vertex_count()
            ));
            None
        };
        let even = if g.bipartition()?.is_some() {
            Some(even_coefficients(&numeric)?)
        } else {
            out.warnings
                .push("graph is not bipartite; no even-coefficient form".to_owned());
            None
        };
        let n = numeric.degree();
        for k in 0..=n {
            out.results.push(Row::Coefficient(CoefficientRow {
                component: part.component,
                power: n - k,
                numeric: numeric.a(k),
                combinatorial: exact.as_ref().map(|p| p.a(k)),
                b: even.as_ref().filter(|_| k % 2 == 0).map(|e| e.b[k / 2]),
            }));
        }
    }
    Ok(())
}

fn coulson(req: &AnalysisRequest, parts: &[Part], out: &mut Builder) -> anyhow::Result<()> {
    let cfg = quadrature(req)?;
    for part in parts {
        for v in 0..part.graph.vertex_count() {
            if !selected(req, part.id(v)) {
                continue;
            }
            let c = compare_deletion_modes(&part.graph, v, &cfg)?;
            out.max("coulson", "max_delta", c.principal_error());
            out.max("coulson-literal", "max_delta", c.literal_discrepancy());
            if !c.principal.converged {
                out.warnings.push(format!(
                    "coulson quadrature hit the refinement limit at vertex {}",
                    part.id(v)
                ));
            }
            out.results.push(Row::Coulson(CoulsonRow {
                component: part.component,
                vertex: part.id(v),
                eigen: c.eigen,
                coulson: c.principal.value,
                error_estimate: c.principal.error_estimate,
                converged: c.principal.converged,
                delta: c.principal_error(),
                literal: c.literal.value,
                literal_delta: c.literal_discrepancy(),
                literal_converged: c.literal.converged,
            }));
        }
    }
    Ok(())
}

fn compare(req: &AnalysisRequest, parts: &[Part], out: &mut Builder) -> anyhow::Result<()> {
    let (v, w) = req.pair.context("compare needs --v and --w")?;
    let locate = |id: usize| {
        parts
            .iter()
            .find_map(|p| p.local(id).map(|l| (p, l)))
            .with_context(|| format!("vertex {id} lies in a skipped component"))
    };
    let ((pv, lv), (pw, lw)) = (locate(v)?, locate(w)?);
    if std::ptr::eq(pv, pw) {
        for mode in [
            DeletionMode::PrincipalSubmatrix,
            DeletionMode::RecomputedDegrees,
        ] {
            let verdict = vertex_order_check_with(&pv.graph, lv, lw, mode)?;
            out.results.push(Row::Comparison(ComparisonRow {
                mode: label(&mode),
                v,
                w,
                relation: label(&verdict.relation),
                energy_v: verdict.energy_v,
                energy_w: verdict.energy_w,
                outcome: label(&verdict.outcome),
            }));
        }
    } else {
        let verdict = union_order_check(&pv.graph, lv, &pw.graph, lw)?;
        out.results.push(Row::Comparison(ComparisonRow {
            mode: "disjoint-union".to_owned(),
            v,
            w,
            relation: label(&verdict.relation),
            energy_v: verdict.energy_v,
            energy_w: verdict.energy_w,
            outcome: label(&verdict.outcome),
        }));
    }
    Ok(())
}

fn family_info(req: &AnalysisRequest, g: &Graph, out: &mut Builder) -> anyhow::Result<()> {
    let family = req.source.family().context("family-info needs --family")?;
    let spectrum = RandicSpectrum::of(g)?;
    let mut classes: BTreeMap<String, (VertexClass, Vec<usize>)> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let class = family.vertex_class(v)?;
        classes
            .entry(label(&class))
            .or_insert((class, Vec::new()))
            .1
            .push(v);
    }
    for (name, (class, vertices)) in classes {
        let numeric = spectrum.vertex_energy(vertices[0]);
        let cf = match family.closed_form_energy(class) {
            Ok(cf) => cf,
            Err(e) => {
                out.warnings.push(format!("{name}: {e}"));
                continue;
            }
        };
        if !cf.exact {
            out.warnings.push(format!(
                "{name}: no closed form for this family member; value is spectral"
            ));
        }
        out.results.push(Row::Class(ClassRow {
            class: name,
            vertices: vertices.iter().map(|v| v + 1).collect(),
            closed_form: cf.value,
            exact: cf.exact,
            numeric,
            delta: (cf.value - numeric).abs(),
        }));
    }
    if let Family::Friendship { triangles } = family {
        for (value, multiplicity) in friendship_spectrum(triangles) {
            out.results.push(Row::Eigenvalue(EigenvalueRow {
                value,
                multiplicity,
                numeric_multiplicity: spectrum
                    .eigen
                    .eigenvalues
                    .iter()
                    .filter(|l| (*l - value).abs() <= 1e-9)
                    .count(),
            }));
        }
        for (eigenvalue, weight) in [1.0, 0.5, -0.5].into_iter().zip(friendship_hub_weights()) {
            out.results
                .push(Row::HubWeight(HubWeightRow { eigenvalue, weight }));
        }
    }
    out.stat("eigen", "total", spectrum.graph_energy());
    Ok(())
}
