//! Farkas-alternative deciders and strong duality reports.
//!
//! Each Farkas decider evaluates the two sides of an alternative:
//!
//! * the primal-existence form at perturbation `z`: "(a) every dual-feasible
//!   `w` has `⟨b + z, w⟩ <= α`" against "(b) some `x ∈ P` has
//!   `Ax - b - z ∈ Q` and `⟨x, c⟩ <= α`";
//! * the dual-existence form at perturbation `y`: "(a) every primal-feasible
//!   `x` has `⟨x, c - y⟩ >= α`" against "(b) some `w ∈ Q*` has
//!   `c - A*w - y ∈ P*` and `⟨b, w⟩ >= α`".
//!
//! (b) implies (a) unconditionally; the converse holds exactly on slices
//! where the graphical set matches the corresponding value-function set, so
//! `equivalent` can honestly come out false (the sequence-space family does
//! exactly that). Strong duality reports bundle the perturbed optimal
//! values, the gap, attainment flags and the slice condition, and
//! machine-check the characterization linking them.

use num_traits::Zero;

use crate::perturb::{ExtendedValue, Problem, SetPoint};
use crate::rational::Rational;
use crate::vector::Vector;
use crate::{Error, Result};

/// Verdict on one Farkas alternative at a fixed perturbation and level.
///
/// `certificate_a_fail` carries the point refuting side (a) when it fails
/// (a dual point beating the level for the primal-existence form, a primal
/// point undercutting it for the dual-existence form). `certificate_b`
/// carries the existence witness for side (b) when it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasVerdict {
    pub a_holds: bool,
    pub b_holds: bool,
    pub equivalent: bool,
    pub certificate_a_fail: Option<Vector>,
    pub certificate_b: Option<Vector>,
}

/// The perturbed Farkas alternative in primal-existence form.
pub fn farkas_primal(problem: &Problem, z: &Vector, alpha: &Rational) -> Result<FarkasVerdict> {
    let dual_value = problem.dual_value(z)?;
    let a_holds = dual_value.at_most(alpha);
    let certificate_a_fail = if a_holds {
        None
    } else {
        Some(problem.dual_point_above(z, alpha)?)
    };
    let certificate_b = problem.h_witness(&SetPoint::new(z.clone(), alpha.clone()))?;
    let b_holds = certificate_b.is_some();
    if b_holds && !a_holds {
        return Err(Error::Internal(
            "one-directional Farkas failed: (b) held without (a)".into(),
        ));
    }
    Ok(FarkasVerdict {
        a_holds,
        b_holds,
        equivalent: a_holds == b_holds,
        certificate_a_fail,
        certificate_b,
    })
}

/// The perturbed Farkas alternative in dual-existence form.
pub fn farkas_dual(problem: &Problem, y: &Vector, alpha: &Rational) -> Result<FarkasVerdict> {
    let primal_value = problem.primal_value(y)?;
    let a_holds = primal_value.at_least(alpha);
    let certificate_a_fail = if a_holds {
        None
    } else {
        Some(problem.primal_point_below(y, alpha)?)
    };
    let certificate_b = problem.k_witness(&SetPoint::new(y.clone(), alpha.clone()))?;
    let b_holds = certificate_b.is_some();
    if b_holds && !a_holds {
        return Err(Error::Internal(
            "one-directional Farkas failed: (b) held without (a)".into(),
        ));
    }
    Ok(FarkasVerdict {
        a_holds,
        b_holds,
        equivalent: a_holds == b_holds,
        certificate_a_fail,
        certificate_b,
    })
}

/// The duality gap, primal value minus dual value in the extended order.
/// Identical extended values (including two equal infinities) count as zero;
/// a gap is a result, never an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    Zero,
    Positive(Rational),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub primal: ExtendedValue,
    pub dual: ExtendedValue,
    pub gap: Gap,
    pub primal_attained: bool,
    pub dual_attained: bool,
    pub slice_condition: bool,
    /// Nonemptiness of the feasible set behind the primal value.
    pub primal_feasible: bool,
    /// Nonemptiness of the feasible set behind the dual value.
    pub dual_feasible: bool,
}

fn gap_between(primal: &ExtendedValue, dual: &ExtendedValue) -> Result<Gap> {
    if !dual.leq(primal) {
        return Err(Error::Internal(
            "weak duality violated: dual value exceeds primal value".into(),
        ));
    }
    if primal.same_value(dual) {
        return Ok(Gap::Zero);
    }
    match (primal, dual) {
        (ExtendedValue::Finite { value: p, .. }, ExtendedValue::Finite { value: d, .. }) => {
            let diff = p - d;
            Ok(if diff.is_zero() {
                Gap::Zero
            } else {
                Gap::Positive(diff)
            })
        }
        _ => Ok(Gap::Infinite),
    }
}

/// Strong duality at a constraint perturbation `z`: compares the perturbed
/// primal minimum against the perturbed dual supremum and records whether
/// the `H`/`N` slices over `z` agree.
///
/// When the dual is consistent, the characterization "nonempty equal slice
/// exactly when the primal is attained at the dual value" is re-checked; a
/// violation is an implementation bug and reported as an internal error.
pub fn strong_duality_primal(problem: &Problem, z: &Vector) -> Result<DualityReport> {
    let primal = problem.primal_optimum(Some(z), None)?.value;
    let dual = problem.dual_optimum(Some(z), None)?.value;
    let slice = problem.slice_equal_h_n(z)?;
    let primal_feasible = !matches!(primal, ExtendedValue::PlusInfinity);
    let dual_feasible = problem.dual_feasible_at(None)?;
    let report = DualityReport {
        gap: gap_between(&primal, &dual)?,
        primal_attained: primal.is_attained(),
        dual_attained: dual.is_attained(),
        slice_condition: slice.equal,
        primal_feasible,
        dual_feasible,
        primal,
        dual,
    };
    if report.dual_feasible {
        let lhs = report.primal_feasible && report.slice_condition;
        let rhs = report.primal_attained && report.primal.same_value(&report.dual);
        if lhs != rhs {
            return Err(Error::Internal(
                "perturbed strong duality characterization failed its check".into(),
            ));
        }
    }
    Ok(report)
}

/// Strong duality at a cost perturbation `y`: compares the perturbed primal
/// infimum against the perturbed dual maximum and records whether the
/// `K`/`M` slices over `y` agree. Mirror of [`strong_duality_primal`], with
/// the attainment demand on the dual side.
pub fn strong_duality_dual(problem: &Problem, y: &Vector) -> Result<DualityReport> {
    let primal = problem.primal_optimum(None, Some(y))?.value;
    let dual = problem.dual_optimum(None, Some(y))?.value;
    let slice = problem.slice_equal_k_m(y)?;
    let primal_feasible = problem.primal_feasible_at(None)?;
    let dual_feasible = !matches!(dual, ExtendedValue::MinusInfinity);
    let report = DualityReport {
        gap: gap_between(&primal, &dual)?,
        primal_attained: primal.is_attained(),
        dual_attained: dual.is_attained(),
        slice_condition: slice.equal,
        primal_feasible,
        dual_feasible,
        primal,
        dual,
    };
    if report.primal_feasible {
        let lhs = report.dual_feasible && report.slice_condition;
        let rhs = report.dual_attained && report.primal.same_value(&report.dual);
        if lhs != rhs {
            return Err(Error::Internal(
                "perturbed strong duality characterization failed its check".into(),
            ));
        }
    }
    Ok(report)
}
