//! File ingestion, subcommand logic and deterministic rendering for the
//! `stk` binary.

pub mod input;
pub mod report;

use stk_graph::GraphError;
use stk_peak::PeakError;
use stk_stabilizer::StabError;
use stk_whitehead::WhiteheadError;
use stk_word::WordError;

pub use input::{load, parse_edge_list, parse_graph, Format, GraphDocument};
pub use report::{analyze, apply, certify, decompose, present, OutputFormat, RunConfig};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Invalid(String),
    #[error("search bound exceeded: {0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Bound(_) => 4,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::LengthBound { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<WhiteheadError> for CliError {
    fn from(e: WhiteheadError) -> Self {
        match e {
            WhiteheadError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<StabError> for CliError {
    fn from(e: StabError) -> Self {
        match e {
            StabError::SearchBound { .. } => CliError::Bound(e.to_string()),
            StabError::Whitehead(w) => w.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<PeakError> for CliError {
    fn from(e: PeakError) -> Self {
        match e {
            PeakError::Parse(_) => CliError::Parse(e.to_string()),
            PeakError::Stabilizer(s) => s.into(),
            PeakError::Whitehead(w) => w.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
