use std::path::PathBuf;

use anyhow::{bail, Context};
use randic_core::{parse_edge_list, Family, Graph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    /// Edge-list text supplied directly, mainly for tests.
    Text(String),
    Family(Family),
}

impl Source {
    pub fn load(&self) -> anyhow::Result<Graph> {
        match self {
            Source::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))
            }
            Source::Text(text) => Ok(parse_edge_list(text)?),
            Source::Family(f) => Ok(f.generate()?),
        }
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            Source::Family(f) => Some(*f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Energy,
    Bounds,
    Charpoly,
    Coulson,
    Compare,
    FamilyInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteName {
    Eigen,
    Abs,
    Series,
    Coulson,
}

impl RouteName {
    pub fn key(self) -> &'static str {
        match self {
            RouteName::Eigen => "eigen",
            RouteName::Abs => "abs",
            RouteName::Series => "series",
            RouteName::Coulson => "coulson",
        }
    }
}

/// One fully specified analysis. Vertex ids are 1-based, as in edge-list files.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRequest {
    pub source: Source,
    pub command: CommandKind,
    pub format: Format,
    pub tolerance: Option<f64>,
    pub vertices: Option<Vec<usize>>,
    pub per_component: bool,
    pub routes: Vec<RouteName>,
    /// `(v, w)` for the compare command.
    pub pair: Option<(usize, usize)>,
}

impl AnalysisRequest {
    pub fn new(source: Source, command: CommandKind) -> Self {
        AnalysisRequest {
            source,
            command,
            format: Format::Table,
            tolerance: None,
            vertices: None,
            per_component: false,
            routes: vec![RouteName::Eigen],
            pair: None,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0 && tol.is_finite()) {
                bail!("tolerance must be a positive number, got {tol}");
            }
        }
        if let Some(vs) = &self.vertices {
            if vs.contains(&0) {
                bail!("vertex ids are 1-based; 0 is not a vertex");
            }
        }
        if self.command == CommandKind::Compare {
            match self.pair {
                None => bail!("compare needs --v and --w"),
                Some((v, w)) if v == 0 || w == 0 => {
                    bail!("vertex ids are 1-based; 0 is not a vertex")
                }
                _ => {}
            }
        }
        if self.command == CommandKind::FamilyInfo && self.source.family().is_none() {
            bail!("family-info needs --family");
        }
        Ok(())
    }
}
