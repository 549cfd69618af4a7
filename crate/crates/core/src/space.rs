//! Space descriptors for the two vector-space shapes of the engine.

use core::fmt;

/// Describes which space a vector or cone lives in.
///
/// `Dense(n)` is the coordinate space of dimension `n`. `FiniteSupport` is
/// the space of real sequences with finitely many nonzero terms, and
/// `Sequences` is the space of all real sequences; the two are paired by the
/// termwise bilinear form, each acting as the dual of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Space {
    Dense(usize),
    FiniteSupport,
    Sequences,
}

impl Space {
    /// The dual space under the pairings used by the engine.
    pub fn dual(self) -> Space {
        match self {
            Space::Dense(n) => Space::Dense(n),
            Space::FiniteSupport => Space::Sequences,
            Space::Sequences => Space::FiniteSupport,
        }
    }

    /// Dimension of a dense space, if this is one.
    pub fn dim(self) -> Option<usize> {
        match self {
            Space::Dense(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_dense(self) -> bool {
        matches!(self, Space::Dense(_))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Dense(n) => write!(f, "R^{n}"),
            Space::FiniteSupport => write!(f, "R^(N)"),
            Space::Sequences => write!(f, "R^N"),
        }
    }
}
