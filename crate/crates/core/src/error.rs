use alloc::string::String;
use core::fmt;

/// Errors surfaced by the engine.
///
/// All operations are total over their documented preconditions; anything
/// else is reported through one of these variants rather than panicking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values live in incompatible spaces (dimension or shape mismatch).
    Shape(String),
    /// The operation is not defined for this representation (e.g. asking the
    /// finite polyhedral engine about a sequence-space cone).
    UnsupportedForm(String),
    /// A documented precondition does not hold for the given arguments.
    Precondition(String),
    /// A theorem hypothesis required by the operation fails (reported
    /// distinctly from plain precondition violations).
    Hypothesis(String),
    /// Malformed input data (bad rational literal, inconsistent cone record).
    InvalidInput(String),
    /// An internal consistency check failed. This signals an implementation
    /// bug, never a property of the instance.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::UnsupportedForm(m) => write!(f, "unsupported form: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Hypothesis(m) => write!(f, "hypothesis violated: {m}"),
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl core::error::Error for Error {}
