use thiserror::Error;

use crate::param_map::DegeneracySet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("divisor enumeration of a {bits}-bit constant term exceeds the budget of {budget} trial divisions")]
    DivisorOverflow { bits: u64, budget: u64 },
}

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("degenerate parameter pair: {0} vanishes")]
    DegenerateParameter(DegeneracySet),

    #[error(transparent)]
    Root(#[from] RootError),

    #[error("invalid rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),

    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error("malformed checkpoint: {0}")]
    MalformedCheckpoint(String),

    #[error("sweep interrupted at index {next_index}; resume from the checkpoint")]
    Interrupted { next_index: u64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
