use thiserror::Error;

use crate::entangle::EntanglementReport;

/// Structural errors raised by the abstract calculus.
///
/// Law violations are never errors: they are collected into
/// [`Report`](crate::validation::Report)s. An error means the inputs do not
/// even describe a well-formed object (unknown names, partial maps, mismatched
/// state spaces, ...).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GqtError {
    #[error("state space must contain at least one state")]
    EmptySpace,
    #[error("invalid state name {0:?}")]
    InvalidStateName(String),
    #[error("duplicate {kind} name {name:?}")]
    DuplicateName { kind: &'static str, name: String },
    #[error("reserved name {0:?} cannot be redefined")]
    ReservedName(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown proposition {0:?}")]
    UnknownProposition(String),
    #[error("unknown observable {0:?}")]
    UnknownObservable(String),
    #[error("observable {observable:?} has no spectrum value {value:?}")]
    UnknownValue { observable: String, value: String },
    #[error("map is not total: expected {expected} entries, got {got}")]
    NotTotal { expected: usize, got: usize },
    #[error("map entry for state index {0} points outside the state space")]
    TargetOutOfRange(usize),
    #[error("operands live on different state spaces")]
    SpaceMismatch,
    #[error("the zero state has no modal status")]
    ZeroState,
    #[error("observable {observable:?}: spectrum must be non-empty")]
    EmptySpectrum { observable: String },
    #[error("observable {observable:?}: duplicate spectrum value {value:?}")]
    DuplicateValue { observable: String, value: String },
    #[error("observable {observable:?}: family has no proposition for spectrum value {value:?}")]
    MissingFamilyValue { observable: String, value: String },
    #[error("observable {observable:?}: family entry {value:?} is not in the spectrum")]
    ExtraFamilyValue { observable: String, value: String },
    #[error("observable {observable:?}: family member {proposition:?} does not match the model proposition of that name")]
    FamilyMismatch {
        observable: String,
        proposition: String,
    },
    #[error("{left:?} and {right:?} are not compatible")]
    IncompatibleOperands { left: String, right: String },
    #[error("ambiguous realization, candidates: {}", .0.join(", "))]
    AmbiguousRealization(Vec<String>),
    #[error("model has no partition")]
    MissingPartition,
    #[error("observable {name:?} is not tagged as {expected}")]
    TagMismatch {
        name: String,
        expected: &'static str,
    },
    #[error("entanglement preconditions fail: {0}")]
    EntanglementPrecondition(Box<EntanglementReport>),
}

pub type Result<T, E = GqtError> = std::result::Result<T, E>;
