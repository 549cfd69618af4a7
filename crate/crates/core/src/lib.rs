//! Exact rational engine for conic linear programming duality analysis.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point anywhere. The crate provides:
//!
//! * [`rational`], [`vector`], [`linmap`]: exact scalars, vectors over dense
//!   and finite-support sequence spaces, linear maps and adjoints;
//! * [`cone`]: polyhedral cone representations with membership, dual and
//!   bidual cones, and algebraic-core membership;
//! * [`lp`]: a Fourier–Motzkin elimination oracle (strict inequalities
//!   supported) and an independent exact simplex solver, each usable to
//!   cross-check the other;
//! * [`perturb`]: conic programs together with their perturbed optimal value
//!   functions, the hypergraphical/epigraphical sets `H`, `K`, `N`, `M` and
//!   their membership oracles, slice conditions and separating functionals;
//! * [`farkas`]: Farkas-alternative deciders and strong duality reports with
//!   certificates;
//! * [`conditions`]: global condition (D)/(D*) deciders and the
//!   algebraic-core sufficient conditions;
//! * [`gale`]: the parametric Gale sequence-space family with analytic
//!   closed forms and a truncation oracle;
//! * [`sample`]: seeded random instance and point generators used by the
//!   sweep-style checks.
//!
//! Every value is immutable after construction and every operation is a
//! pure function, so concurrent callers need no coordination. The crate is
//! `no_std` (alloc only); IO, file formats and the command line live in the
//! companion `conelab-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conditions;
pub mod cone;
pub mod error;
pub mod farkas;
pub mod gale;
pub mod linmap;
pub mod lp;
pub mod perturb;
pub mod rational;
pub mod sample;
pub mod space;
pub mod vector;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
