//! Peak reduction inside Ω_x and a certifying solver for the word problem
//! of ⟨Ω_x | R_x⟩.

mod derive;
mod lower;
mod reduce;
mod system;
mod tuple;

pub use derive::{RawStep, RelatorTable, Step, StepParams};
pub use lower::{CaseLabel, Lowering, PeakCaseTrace};
pub use reduce::{Certificate, Rewritten, Triviality, WordProblem};
pub use system::{is_peak, Factorization, PeakSystem, TypeClass};
pub use tuple::{build_c2, ConjTuple};

use stk_stabilizer::StabError;
use stk_whitehead::WhiteheadError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PeakError {
    #[error("class of `{0}` is abelian")]
    AbelianClass(String),
    #[error("not a peak: {0}")]
    NotPeak(String),
    #[error("not in Ω_x: {0}")]
    OutsideOmega(String),
    #[error("lowering failed: {0}")]
    NotLowered(String),
    #[error("move not justified by R_x: {0}")]
    Unjustified(String),
    #[error("generator `{0}` increases |C₂|∼")]
    Unclassifiable(String),
    #[error("word is not in normal order: {0}")]
    NotNormalized(String),
    #[error("cancellation stuck: {0}")]
    Stuck(String),
    #[error("certificate rejected: {0}")]
    Replay(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Stabilizer(#[from] StabError),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
}
