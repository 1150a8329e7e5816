use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use randic_cli::{exit_code, render, run, AnalysisRequest, CommandKind, Format, RouteName, Source};
use randic_core::Family;

#[derive(Parser)]
#[command(name = "randic", version, about = "Randić energy of graph vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex energies by one or more routes.
    Energy(Common),
    /// Closed-form bounds, equality flags and graph-level brackets.
    Bounds(Common),
    /// Characteristic polynomial of the Randić matrix.
    Charpoly(Common),
    /// Vertex energies from the Coulson integral, with the literal deleted-graph variant.
    Coulson(Common),
    /// Quasi-order comparison of two vertices of a bipartite graph.
    Compare {
        #[command(flatten)]
        common: Common,
        /// First vertex (1-based).
        #[arg(long)]
        v: usize,
        /// Second vertex (1-based).
        #[arg(long)]
        w: usize,
    },
    /// Closed forms for a generated family member.
    FamilyInfo(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Complete,
    Cycle,
    Star,
    CompleteBipartite,
    Friendship,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Eigen,
    Abs,
    Series,
    Coulson,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["file", "family"]))]
struct Common {
    /// Edge-list file: optional `n <count>` header, then one `u v` pair per line (1-based).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generate a family member instead of reading a file.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    triangles: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    /// Numerical tolerance (series stop, quadrature, equality flags).
    #[arg(long, env = "RANDIC_TOL")]
    tol: Option<f64>,
    /// Restrict vertex rows to these ids (1-based).
    #[arg(long, value_delimiter = ',')]
    vertex: Vec<usize>,
    /// Analyse each connected component of a disconnected input separately.
    #[arg(long)]
    per_component: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "eigen")]
    routes: Vec<RouteArg>,
}

impl Common {
    fn source(&self) -> anyhow::Result<Source> {
        if let Some(path) = &self.file {
            return Ok(Source::File(path.clone()));
        }
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| anyhow::anyhow!("this family needs --{name}"))
        };
        let family = match self.family.expect("clap enforces one input") {
            FamilyKind::Complete => Family::Complete {
                n: need(self.n, "n")?,
            },
            FamilyKind::Cycle => Family::Cycle {
                n: need(self.n, "n")?,
            },
            FamilyKind::Star => Family::Star {
                n: need(self.n, "n")?,
            },
            FamilyKind::Path => Family::Path {
                n: need(self.n, "n")?,
            },
            FamilyKind::CompleteBipartite => Family::CompleteBipartite {
                n1: need(self.n1, "n1")?,
                n2: need(self.n2, "n2")?,
            },
            FamilyKind::Friendship => Family::Friendship {
                triangles: need(self.triangles, "triangles")?,
            },
        };
        Ok(Source::Family(family))
    }

    fn request(&self, command: CommandKind) -> anyhow::Result<AnalysisRequest> {
        let mut req = AnalysisRequest::new(self.source()?, command);
        req.format = match self.format {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
        };
        req.tolerance = self.tol;
        req.vertices = (!self.vertex.is_empty()).then(|| self.vertex.clone());
        req.per_component = self.per_component;
        req.routes = self
            .routes
            .iter()
            .map(|r| match r {
                RouteArg::Eigen => RouteName::Eigen,
                RouteArg::Abs => RouteName::Abs,
                RouteArg::Series => RouteName::Series,
                RouteArg::Coulson => RouteName::Coulson,
            })
            .collect();
        req.routes.sort();
        req.routes.dedup();
        Ok(req)
    }
}

fn request(cli: &Cli) -> anyhow::Result<AnalysisRequest> {
    match &cli.command {
        Command::Energy(c) => c.request(CommandKind::Energy),
        Command::Bounds(c) => c.request(CommandKind::Bounds),
        Command::Charpoly(c) => c.request(CommandKind::Charpoly),
        Command::Coulson(c) => c.request(CommandKind::Coulson),
        Command::FamilyInfo(c) => c.request(CommandKind::FamilyInfo),
        Command::Compare { common, v, w } => {
            let mut req = common.request(CommandKind::Compare)?;
            req.pair = Some((*v, *w));
            Ok(req)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = request(&cli).and_then(|req| {
        let report = run(&req)?;
        Ok((render(&report, req.format)?, report, req.format))
    });
    match result {
        Ok((text, report, format)) => {
            if format == Format::Table {
                for w in &report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
