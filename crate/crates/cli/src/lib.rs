//! Library side of the `randic` command: request model, analysis runner and renderers.

pub mod report;
pub mod request;
mod run;
mod table;

pub use report::{Report, Row};
pub use request::{AnalysisRequest, CommandKind, Format, RouteName, Source};
pub use run::run;
pub use table::render_table;

/// Exit status for a failed run: 3 for numerical failures, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<randic_core::Error>() {
        Some(e) if e.is_numerical() => 3,
        _ => 2,
    }
}

/// Serialises a report in the requested format, newline-terminated.
pub fn render(report: &Report, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Table => render_table(report),
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
    })
}
