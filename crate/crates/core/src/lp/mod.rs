//! Exact linear optimization over rational polyhedra.
//!
//! Two independent engines live here: [`fm`] is the Fourier–Motzkin
//! projection oracle (the ground truth, with strict-inequality support), and
//! [`simplex`] is the pivoting solver used on the performance path. They
//! cross-check each other in the test suites.

pub mod fm;
pub mod simplex;
pub mod system;

pub use fm::{fm_eliminate, fm_eliminate_all, fm_feasible, fm_optimize, Bound, FmOptimum, Sense};
pub use simplex::{lp_solve, verify_outcome, LpOutcome, LpStatus};
pub use system::{AffExpr, Constraint, LinearSystem, Relation, SystemBuilder};
