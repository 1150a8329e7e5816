//! Plain-text tables. Reals are rounded to 4 decimal places; route statistics
//! that measure small differences use scientific notation.

use std::fmt::Write;

use crate::report::{Report, Row};

enum Cell {
    Int(usize),
    Real(f64),
    Flag(bool),
    Text(String),
    Missing,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => real(*v),
            Cell::Flag(b) => if *b { "yes" } else { "no" }.to_owned(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => "-".to_owned(),
        }
    }

    fn numeric(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Real(_))
    }
}

fn real(v: f64) -> String {
    let s = format!("{v:.4}");
    // Avoid printing "-0.0000" for tiny negative values.
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_owned()
    } else {
        s
    }
}

fn opt(v: Option<f64>) -> Cell {
    v.map_or(Cell::Missing, Cell::Real)
}

fn opt_int(v: Option<usize>) -> Cell {
    v.map_or(Cell::Missing, Cell::Int)
}

fn ids(vs: &[usize]) -> String {
    vs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cells(row: &Row) -> (&'static str, Vec<(&'static str, Cell)>) {
    use Cell::*;
    match row {
        Row::Vertex(r) => (
            "vertex energies",
            vec![
                ("component", opt_int(r.component)),
                ("vertex", Int(r.vertex)),
                ("degree", Int(r.degree)),
                ("energy", Real(r.energy)),
                ("abs", opt(r.abs)),
                ("series", opt(r.series)),
                ("coulson", opt(r.coulson)),
                (
                    "coulson_error",
                    r.coulson_error
                        .map_or(Missing, |e| Text(format!("{e:.1e}"))),
                ),
            ],
        ),
        Row::Bound(r) => (
            "vertex bounds",
            vec![
                ("component", opt_int(r.component)),
                ("vertex", Int(r.vertex)),
                ("degree", Int(r.degree)),
                ("energy", Real(r.energy)),
                ("s", Real(r.s)),
                ("q", Real(r.q)),
                ("lower_r2", Real(r.lower_r2)),
                ("lower_holder", Real(r.lower_holder)),
                ("unit", Real(r.unit)),
                ("cauchy_schwarz", Real(r.cauchy_schwarz)),
                ("refined", Real(r.refined)),
                ("series2", Real(r.series2)),
                ("series3", Real(r.series3)),
                (
                    "equalities",
                    Text(if r.equalities.is_empty() {
                        "-".to_owned()
                    } else {
                        r.equalities.join(" ")
                    }),
                ),
            ],
        ),
        Row::Edge(r) => (
            "adjacent products",
            vec![
                ("component", opt_int(r.component)),
                ("i", Int(r.i)),
                ("j", Int(r.j)),
                ("bound", Real(r.bound)),
                ("product", Real(r.product)),
                ("slack", Real(r.slack)),
            ],
        ),
        Row::Graph(r) => (
            "graph energy",
            vec![
                ("component", opt_int(r.component)),
                ("n", Int(r.n)),
                ("m", Int(r.m)),
                ("lower", Real(r.lower)),
                ("energy", Real(r.energy)),
                ("upper", Real(r.upper)),
                ("regular_bound", opt(r.regular_bound)),
                ("holder", Text(r.holder.clone())),
            ],
        ),
        Row::Coefficient(r) => (
            "characteristic polynomial",
            vec![
                ("component", opt_int(r.component)),
                ("power", Int(r.power)),
                ("numeric", Real(r.numeric)),
                ("combinatorial", opt(r.combinatorial)),
                ("b", opt(r.b)),
            ],
        ),
        Row::Coulson(r) => (
            "coulson integral",
            vec![
                ("component", opt_int(r.component)),
                ("vertex", Int(r.vertex)),
                ("eigen", Real(r.eigen)),
                ("coulson", Real(r.coulson)),
                ("delta", Text(format!("{:.1e}", r.delta))),
                ("converged", Flag(r.converged)),
                ("literal", Real(r.literal)),
                ("literal_delta", Real(r.literal_delta)),
            ],
        ),
        Row::Comparison(r) => (
            "vertex comparison",
            vec![
                ("mode", Text(r.mode.clone())),
                ("v", Int(r.v)),
                ("w", Int(r.w)),
                ("relation", Text(r.relation.clone())),
                ("energy_v", Real(r.energy_v)),
                ("energy_w", Real(r.energy_w)),
                ("outcome", Text(r.outcome.clone())),
            ],
        ),
        Row::Class(r) => (
            "vertex classes",
            vec![
                ("class", Text(r.class.clone())),
                ("vertices", Text(ids(&r.vertices))),
                ("closed_form", Real(r.closed_form)),
                ("exact", Flag(r.exact)),
                ("numeric", Real(r.numeric)),
                ("delta", Text(format!("{:.1e}", r.delta))),
            ],
        ),
        Row::Eigenvalue(r) => (
            "spectrum",
            vec![
                ("value", Real(r.value)),
                ("multiplicity", Int(r.multiplicity)),
                ("numeric_multiplicity", Int(r.numeric_multiplicity)),
            ],
        ),
        Row::HubWeight(r) => (
            "hub spectral weights",
            vec![
                ("eigenvalue", Real(r.eigenvalue)),
                ("weight", Real(r.weight)),
            ],
        ),
    }
}

fn write_section(out: &mut String, title: &str, rows: &[Vec<(&'static str, Cell)>]) {
    let columns: Vec<usize> = (0..rows[0].len())
        .filter(|&c| rows.iter().any(|r| !matches!(r[c].1, Cell::Missing)))
        .collect();
    let rendered: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|&c| r[c].1.render()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            rendered
                .iter()
                .map(|r| r[k].len())
                .chain([rows[0][c].0.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let _ = writeln!(out, "\n{title}");
    let header: Vec<String> = columns
        .iter()
        .zip(&widths)
        .map(|(&c, &w)| format!("{:<w$}", rows[0][c].0))
        .collect();
    let _ = writeln!(out, "{}", header.join("  ").trim_end());
    for (row, cells) in rendered.iter().zip(rows) {
        let line: Vec<String> = row
            .iter()
            .zip(&columns)
            .zip(&widths)
            .map(|((s, &c), &w)| {
                if cells[c].1.numeric() {
                    format!("{s:>w$}")
                } else {
                    format!("{s:<w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let command = serde_json::to_value(report.command)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "graph: n={} m={}  command: {command}",
        report.graph.n, report.graph.m
    );
    let mut pending: Vec<Vec<(&'static str, Cell)>> = Vec::new();
    let mut title = "";
    for row in &report.results {
        let (t, c) = cells(row);
        if t != title && !pending.is_empty() {
            write_section(&mut out, title, &pending);
            pending.clear();
        }
        title = t;
        pending.push(c);
    }
    if !pending.is_empty() {
        write_section(&mut out, title, &pending);
    }
    if !report.routes.is_empty() {
        let _ = writeln!(out, "\nroutes");
        for (route, stats) in &report.routes {
            for (key, value) in stats {
                let shown = if key.contains("delta")
                    || key.contains("error")
                    || key.contains("remainder")
                {
                    format!("{value:.3e}")
                } else if value.fract() == 0.0 && key != "total" {
                    format!("{value}")
                } else {
                    real(*value)
                };
                let _ = writeln!(out, "{route:<16}{key:<22}{shown}");
            }
        }
    }
    out
}
