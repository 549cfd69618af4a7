//! Exact two-phase simplex over rationals, independent of the
//! Fourier–Motzkin oracle.
//!
//! Free variables are split into positive and negative parts, `>=` rows get
//! surplus columns, and every row gets an artificial for phase one. Bland's
//! rule guarantees termination under exact arithmetic. Every verdict is
//! re-verified by substitution before being returned; a verification failure
//! is reported as an internal error rather than a wrong answer.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

use super::fm::Sense;
use super::system::{LinearSystem, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Infeasible,
    Unbounded,
    Optimal,
}

/// Solver verdict with certificates.
///
/// * optimal: `value` and `witness` are present; the witness satisfies every
///   constraint exactly and attains the value;
/// * unbounded: `ray` is a feasible direction that strictly improves the
///   objective;
/// * infeasible: `infeasibility_certificate` holds one multiplier per
///   constraint (nonnegative on inequality rows, any sign on equality rows)
///   combining the system into a contradiction `0 >= positive`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub witness: Option<Vec<Rational>>,
    pub ray: Option<Vec<Rational>>,
    pub infeasibility_certificate: Option<Vec<Rational>>,
}

impl LpOutcome {
    fn optimal(value: Rational, witness: Vec<Rational>) -> LpOutcome {
        LpOutcome {
            status: LpStatus::Optimal,
            value: Some(value),
            witness: Some(witness),
            ray: None,
            infeasibility_certificate: None,
        }
    }

    fn unbounded(ray: Vec<Rational>) -> LpOutcome {
        LpOutcome {
            status: LpStatus::Unbounded,
            value: None,
            witness: None,
            ray: Some(ray),
            infeasibility_certificate: None,
        }
    }

    fn infeasible(certificate: Vec<Rational>) -> LpOutcome {
        LpOutcome {
            status: LpStatus::Infeasible,
            value: None,
            witness: None,
            ray: None,
            infeasibility_certificate: Some(certificate),
        }
    }
}

/// Re-checks an outcome against the instance by direct substitution.
pub fn verify_outcome(
    objective: &[Rational],
    system: &LinearSystem,
    sense: Sense,
    outcome: &LpOutcome,
) -> bool {
    match outcome.status {
        LpStatus::Optimal => {
            let (Some(value), Some(witness)) = (&outcome.value, &outcome.witness) else {
                return false;
            };
            if system.satisfied_by(witness) != Ok(true) {
                return false;
            }
            dot(objective, witness) == *value
        }
        LpStatus::Unbounded => {
            let Some(ray) = &outcome.ray else {
                return false;
            };
            let improving = match sense {
                Sense::Min => dot(objective, ray).is_negative(),
                Sense::Max => dot(objective, ray).is_positive(),
            };
            improving
                && system.constraints.iter().all(|c| {
                    let along = dot(&c.normal, ray);
                    match c.relation {
                        Relation::Ge => !along.is_negative(),
                        Relation::Eq => along.is_zero(),
                        Relation::Gt => false,
                    }
                })
        }
        LpStatus::Infeasible => {
            let Some(cert) = &outcome.infeasibility_certificate else {
                return false;
            };
            if cert.len() != system.constraints.len() {
                return false;
            }
            for (lambda, c) in cert.iter().zip(&system.constraints) {
                if c.relation != Relation::Eq && lambda.is_negative() {
                    return false;
                }
            }
            let mut combined = alloc::vec![Rational::zero(); system.num_vars];
            let mut combined_rhs = Rational::zero();
            for (lambda, c) in cert.iter().zip(&system.constraints) {
                for (slot, a) in combined.iter_mut().zip(&c.normal) {
                    *slot += lambda * a;
                }
                combined_rhs += lambda * &c.rhs;
            }
            combined.iter().all(Zero::is_zero) && combined_rhs.is_positive()
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact simplex solve. Strict inequalities are not supported here; strict
/// queries go through the Fourier–Motzkin path.
pub fn lp_solve(objective: &[Rational], system: &LinearSystem, sense: Sense) -> Result<LpOutcome> {
    if objective.len() != system.num_vars {
        return Err(Error::Shape(alloc::format!(
            "objective over {} variables for a system over {}",
            objective.len(),
            system.num_vars
        )));
    }
    if system.has_strict() {
        return Err(Error::Precondition(
            "the pivoting solver handles only non-strict systems".into(),
        ));
    }

    let minimize: Vec<Rational> = match sense {
        Sense::Min => objective.to_vec(),
        Sense::Max => objective.iter().map(|c| -c).collect(),
    };

    let outcome = solve_min(&minimize, system)?;
    let outcome = match (sense, outcome) {
        (
            Sense::Max,
            LpOutcome {
                status: LpStatus::Optimal,
                value: Some(v),
                witness,
                ..
            },
        ) => LpOutcome {
            status: LpStatus::Optimal,
            value: Some(-v),
            witness,
            ray: None,
            infeasibility_certificate: None,
        },
        (_, o) => o,
    };

    if !verify_outcome(objective, system, sense, &outcome) {
        return Err(Error::Internal(alloc::format!(
            "simplex verdict failed re-verification on:\n{}",
            system.dump()
        )));
    }
    Ok(outcome)
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // m x (total_cols + 1), last column is rhs
    cost: Vec<Rational>,      // reduced costs, last entry = -objective value
    basis: Vec<usize>,
    n: usize,          // original free variables
    total_cols: usize, // structural + artificial
    art_start: usize,
    row_sign: Vec<bool>, // row was negated relative to the input constraint
}

fn solve_min(objective: &[Rational], system: &LinearSystem) -> Result<LpOutcome> {
    let n = system.num_vars;
    let m = system.constraints.len();

    // trivial systems: decide directly
    if m == 0 {
        return Ok(unconstrained_min(objective, n));
    }

    let n_ge = system
        .constraints
        .iter()
        .filter(|c| c.relation == Relation::Ge)
        .count();
    let struct_cols = 2 * n + n_ge;
    let total_cols = struct_cols + m;
    let art_start = struct_cols;

    let mut rows = Vec::with_capacity(m);
    let mut row_sign = Vec::with_capacity(m);
    let mut next_slack = 2 * n;
    for (i, c) in system.constraints.iter().enumerate() {
        let mut row = alloc::vec![Rational::zero(); total_cols + 1];
        for (j, a) in c.normal.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        if c.relation == Relation::Ge {
            row[next_slack] = -Rational::one();
            next_slack += 1;
        }
        let mut rhs = c.rhs.clone();
        let negate = rhs.is_negative();
        if negate {
            for entry in row.iter_mut() {
                *entry = -entry.clone();
            }
            rhs = -rhs;
        }
        row[art_start + i] = Rational::one();
        row[total_cols] = rhs;
        rows.push(row);
        row_sign.push(negate);
    }

    // phase-one reduced costs with the artificial basis
    let mut cost = alloc::vec![Rational::zero(); total_cols + 1];
    for row in &rows {
        for (j, slot) in cost.iter_mut().enumerate() {
            *slot -= &row[j];
        }
    }
    for i in 0..m {
        cost[art_start + i] = Rational::zero();
    }

    let mut t = Tableau {
        rows,
        cost,
        basis: (art_start..total_cols).collect(),
        n,
        total_cols,
        art_start,
        row_sign,
    };

    let entering_limit = t.art_start;
    if pivot_to_optimum(&mut t, entering_limit)?.is_some() {
        return Err(Error::Internal(
            "phase one of the simplex reported an unbounded column".into(),
        ));
    }

    let phase1_value = -t.cost[t.total_cols].clone();
    if phase1_value.is_positive() {
        // infeasible: multipliers from the phase-one duals
        let mut cert = Vec::with_capacity(m);
        for i in 0..m {
            // reduced cost of artificial i is 1 - y_i
            let y_i = Rational::one() - &t.cost[t.art_start + i];
            let lambda = if t.row_sign[i] { -y_i } else { y_i };
            cert.push(lambda / &phase1_value);
        }
        return Ok(LpOutcome::infeasible(cert));
    }

    drive_out_artificials(&mut t);

    // phase-two costs from the real objective
    let col_cost = |j: usize| -> Rational {
        if j < t.n {
            objective[j].clone()
        } else if j < 2 * t.n {
            -objective[j - t.n].clone()
        } else {
            Rational::zero()
        }
    };
    let mut cost = alloc::vec![Rational::zero(); t.total_cols + 1];
    for (j, slot) in cost.iter_mut().enumerate().take(t.total_cols) {
        *slot = col_cost(j);
    }
    for (r, &b) in t.basis.iter().enumerate() {
        let cb = col_cost(b);
        if cb.is_zero() {
            continue;
        }
        let row = t.rows[r].clone();
        for (j, slot) in cost.iter_mut().enumerate() {
            *slot -= &cb * &row[j];
        }
    }
    t.cost = cost;

    if let Some(entering) = pivot_to_optimum(&mut t, entering_limit)? {
        // unbounded: build the improving ray
        let mut direction = alloc::vec![Rational::zero(); t.total_cols];
        direction[entering] = Rational::one();
        for (r, &b) in t.basis.iter().enumerate() {
            direction[b] = -t.rows[r][entering].clone();
        }
        let ray: Vec<Rational> = (0..t.n)
            .map(|j| &direction[j] - &direction[t.n + j])
            .collect();
        return Ok(LpOutcome::unbounded(ray));
    }

    let mut values = alloc::vec![Rational::zero(); t.total_cols];
    for (r, &b) in t.basis.iter().enumerate() {
        values[b] = t.rows[r][t.total_cols].clone();
    }
    let witness: Vec<Rational> = (0..t.n).map(|j| &values[j] - &values[t.n + j]).collect();
    let value = dot(objective, &witness);
    Ok(LpOutcome::optimal(value, witness))
}

fn unconstrained_min(objective: &[Rational], n: usize) -> LpOutcome {
    match objective.iter().position(|c| !c.is_zero()) {
        None => LpOutcome::optimal(Rational::zero(), alloc::vec![Rational::zero(); n]),
        Some(j) => {
            let mut ray = alloc::vec![Rational::zero(); n];
            ray[j] = if objective[j].is_positive() {
                -Rational::one()
            } else {
                Rational::one()
            };
            LpOutcome::unbounded(ray)
        }
    }
}

/// Bland pivoting until optimality (returns `None`) or detection of an
/// unbounded entering column (returns it). Artificial columns never enter.
fn pivot_to_optimum(t: &mut Tableau, entering_limit: usize) -> Result<Option<usize>> {
    loop {
        let entering = (0..entering_limit).find(|&j| t.cost[j].is_negative());
        let Some(e) = entering else {
            return Ok(None);
        };
        let mut leaving: Option<(usize, Rational)> = None;
        for r in 0..t.rows.len() {
            let coef = &t.rows[r][e];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &t.rows[r][t.total_cols] / coef;
            match &leaving {
                None => leaving = Some((r, ratio)),
                Some((best_r, best)) => {
                    if ratio < *best || (ratio == *best && t.basis[r] < t.basis[*best_r]) {
                        leaving = Some((r, ratio));
                    }
                }
            }
        }
        match leaving {
            None => return Ok(Some(e)),
            Some((r, _)) => pivot(t, r, e),
        }
    }
}

fn pivot(t: &mut Tableau, r: usize, c: usize) {
    let pivot_value = t.rows[r][c].clone();
    for entry in t.rows[r].iter_mut() {
        *entry /= &pivot_value;
    }
    let pivot_row = t.rows[r].clone();
    for (i, row) in t.rows.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let factor = row[c].clone();
        if factor.is_zero() {
            continue;
        }
        for (slot, p) in row.iter_mut().zip(&pivot_row) {
            *slot -= &factor * p;
        }
    }
    let factor = t.cost[c].clone();
    if !factor.is_zero() {
        for (slot, p) in t.cost.iter_mut().zip(&pivot_row) {
            *slot -= &factor * p;
        }
    }
    t.basis[r] = c;
}

/// After a zero phase-one optimum, removes artificials from the basis by
/// pivoting where possible and dropping redundant rows otherwise.
fn drive_out_artificials(t: &mut Tableau) {
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] < t.art_start {
            r += 1;
            continue;
        }
        let col = (0..t.art_start).find(|&j| !t.rows[r][j].is_zero());
        match col {
            Some(c) => {
                pivot(t, r, c);
                r += 1;
            }
            None => {
                // the row reads 0 = 0: redundant
                t.rows.remove(r);
                t.basis.remove(r);
            }
        }
    }
}
