//! Command-line front end: scenario documents, raster export, reports.

mod document;
mod raster;
mod report;
mod run;

use std::path::PathBuf;

use thiserror::Error;

use crate::model::ValidationError;
use crate::sam::RequestError;

pub use document::{
    load_document, load_scenario, LoadedDocument, PolicyParams, ScenarioDocument, DEFAULT_SENSITIVITY_DBM,
    OBSERVED_NETWORK,
};
pub use raster::export_field;
pub use report::{sig12, Quantity, ReportDocument, QUANTITY_UNIT};
pub use run::{run, run_with};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario:\n{}", join(.0))]
    Validation(Vec<ValidationError>),
    #[error("invalid requests:\n{}", join(.0))]
    Requests(Vec<RequestError>),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|e| format!("  {}", e.to_string()))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}
