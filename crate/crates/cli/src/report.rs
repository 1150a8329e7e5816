use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::request::CommandKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
}

/// Per-route summary values, keyed by route and then by statistic.
pub type RouteSummaries = BTreeMap<String, BTreeMap<String, f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphInfo,
    pub command: CommandKind,
    pub results: Vec<Row>,
    pub routes: RouteSummaries,
    pub warnings: Vec<String>,
}

/// One result record. Vertex ids are 1-based; `component` is set only with
/// `--per-component` and counts components from 1 in order of their smallest vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Row {
    Vertex(VertexRow),
    Bound(BoundRow),
    Edge(EdgeRow),
    Graph(GraphRow),
    Coefficient(CoefficientRow),
    Coulson(CoulsonRow),
    Comparison(ComparisonRow),
    Class(ClassRow),
    Eigenvalue(EigenvalueRow),
    HubWeight(HubWeightRow),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub vertex: usize,
    pub degree: usize,
    pub energy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coulson: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coulson_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub vertex: usize,
    pub degree: usize,
    pub energy: f64,
    pub s: f64,
    pub q: f64,
    pub unit: f64,
    pub cauchy_schwarz: f64,
    pub refined: f64,
    pub series2: f64,
    pub series3: f64,
    pub lower_r2: f64,
    pub lower_holder: f64,
    /// `bound` or `bound:case` for every flagged equality.
    pub equalities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub i: usize,
    pub j: usize,
    pub bound: f64,
    pub product: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub n: usize,
    pub m: usize,
    pub energy: f64,
    /// `2 R^(-1)(G)`.
    pub lower: f64,
    /// `sum_i sqrt(S_i)`.
    pub upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_bound: Option<f64>,
    pub holder: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    /// Exponent of `x`.
    pub power: usize,
    pub numeric: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combinatorial: Option<f64>,
    /// Even coefficient `b_{n - power}` for bipartite graphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoulsonRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub vertex: usize,
    pub eigen: f64,
    pub coulson: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub delta: f64,
    pub literal: f64,
    pub literal_delta: f64,
    pub literal_converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub mode: String,
    pub v: usize,
    pub w: usize,
    /// Relation of the `w`-deleted polynomial to the `v`-deleted one.
    pub relation: String,
    pub energy_v: f64,
    pub energy_w: f64,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: String,
    pub vertices: Vec<usize>,
    pub closed_form: f64,
    pub exact: bool,
    pub numeric: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRow {
    pub value: f64,
    pub multiplicity: usize,
    /// Computed eigenvalues within 1e-9 of `value`.
    pub numeric_multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HubWeightRow {
    pub eigenvalue: f64,
    pub weight: f64,
}
