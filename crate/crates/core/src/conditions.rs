//! Global deciders for the set identities `H = N` and `K = M`, the
//! algebraic-core sufficient conditions, and their sufficiency sweeps.
//!
//! On finite polyhedral instances `H` is an affine image of the polyhedral
//! cone `P x Q x R_+`, hence closed, and closedness settles `H = N` whenever
//! the dual side is consistent; the verdict is still cross-validated on
//! sampled slices. When the dual side is inconsistent the epigraph set
//! degenerates to the whole space and the identity is decided outright from
//! a Fourier–Motzkin description of `H`. The sequence-space family falsifies
//! the identity with its canonical witness.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cone::extensionally_equal;
use crate::lp::{
    fm_eliminate_all, lp_solve, AffExpr, Constraint, LinearSystem, LpStatus, Relation, Sense,
    SystemBuilder,
};
use crate::perturb::{Problem, ProblemKind, SetPoint};
use crate::rational::Rational;
use crate::sample;
use crate::vector::Vector;
use crate::{Error, Result};

/// Slice samples drawn by the cross-validation and sufficiency sweeps.
pub const SLICE_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Holds {
    True,
    False,
    /// Reserved for representations the engine cannot decide; the current
    /// forms never produce it.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    PolyhedralClosedness,
    CoreCondition,
    AnalyticGale,
    SampledOnly,
}

/// Verdict on a global set identity. A `False` verdict always carries a
/// witness that re-verifies against the membership oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: Holds,
    pub justification: Justification,
    pub witness: Option<SetPoint>,
}

/// Decides the identity `H = N`, with a seed for the sampled
/// cross-validation.
pub fn check_condition_d(problem: &Problem, seed: u64) -> Result<ConditionVerdict> {
    match problem.kind() {
        ProblemKind::Gale(g) => {
            let witness = g.gap_witness();
            if !problem.member_n(&witness)? || problem.member_h(&witness)? {
                return Err(Error::Internal(
                    "the canonical epigraph witness failed its membership checks".into(),
                ));
            }
            Ok(ConditionVerdict {
                holds: Holds::False,
                justification: Justification::AnalyticGale,
                witness: Some(witness),
            })
        }
        ProblemKind::Finite => {
            if problem.dual_feasible_at(None)? {
                let mut rng = sample::rng_from_seed(seed);
                for _ in 0..SLICE_SAMPLES {
                    let z = sample::z_perturbation(&mut rng, problem)?;
                    if !problem.slice_equal_h_n(&z)?.equal {
                        return Err(Error::Internal(
                            "a sampled slice contradicts the closedness argument for H = N".into(),
                        ));
                    }
                }
                return Ok(ConditionVerdict {
                    holds: Holds::True,
                    justification: Justification::PolyhedralClosedness,
                    witness: None,
                });
            }
            // inconsistent dual: N is all of Z x R, so the identity holds
            // exactly when the projected description of H is vacuous
            let description = h_description(problem)?;
            match escape_point(&description) {
                None => Ok(ConditionVerdict {
                    holds: Holds::True,
                    justification: Justification::PolyhedralClosedness,
                    witness: None,
                }),
                Some(point) => {
                    let base_dim = point.len() - 1;
                    let witness = SetPoint::new(
                        Vector::dense(point[..base_dim].to_vec()),
                        point[base_dim].clone(),
                    );
                    if !problem.member_n(&witness)? || problem.member_h(&witness)? {
                        return Err(Error::Internal(
                            "the escape point failed its membership checks".into(),
                        ));
                    }
                    Ok(ConditionVerdict {
                        holds: Holds::False,
                        justification: Justification::PolyhedralClosedness,
                        witness: Some(witness),
                    })
                }
            }
        }
    }
}

/// Decides the identity `K = M` on finite instances (the sequence-space `M`
/// ranges over arbitrary sequence perturbations and is out of computational
/// reach).
pub fn check_condition_d_star(problem: &Problem, seed: u64) -> Result<ConditionVerdict> {
    match problem.kind() {
        ProblemKind::Gale(_) => Err(Error::UnsupportedForm(
            "the K = M identity is decided on finite instances only".into(),
        )),
        ProblemKind::Finite => {
            if problem.primal_feasible_at(None)? {
                let mut rng = sample::rng_from_seed(seed);
                for _ in 0..SLICE_SAMPLES {
                    let y = sample::y_perturbation(&mut rng, problem)?;
                    if !problem.slice_equal_k_m(&y)?.equal {
                        return Err(Error::Internal(
                            "a sampled slice contradicts the closedness argument for K = M".into(),
                        ));
                    }
                }
                return Ok(ConditionVerdict {
                    holds: Holds::True,
                    justification: Justification::PolyhedralClosedness,
                    witness: None,
                });
            }
            let description = k_description(problem)?;
            match escape_point(&description) {
                None => Ok(ConditionVerdict {
                    holds: Holds::True,
                    justification: Justification::PolyhedralClosedness,
                    witness: None,
                }),
                Some(point) => {
                    let base_dim = point.len() - 1;
                    let witness = SetPoint::new(
                        Vector::dense(point[..base_dim].to_vec()),
                        point[base_dim].clone(),
                    );
                    if !problem.member_m(&witness)? || problem.member_k(&witness)? {
                        return Err(Error::Internal(
                            "the escape point failed its membership checks".into(),
                        ));
                    }
                    Ok(ConditionVerdict {
                        holds: Holds::False,
                        justification: Justification::PolyhedralClosedness,
                        witness: Some(witness),
                    })
                }
            }
        }
    }
}

/// A finite inequality description of `H` over `(z, r)`, projected with
/// Fourier–Motzkin from the parameterization `(Ax - b - q, ⟨x, c⟩ + a)`.
fn h_description(problem: &Problem) -> Result<LinearSystem> {
    let rows = matrix_rows(problem)?;
    let nz = rows.len();
    let nx = rows[0].len();
    let b = problem.b().dense_entries()?;
    let c = problem.c().dense_entries()?;
    // variables: z (0..nz), r (nz), x, q, slack a, then cone auxiliaries
    let mut builder = SystemBuilder::new(nz + 1);
    let x_vars = builder.fresh_vars(nx);
    let q_vars = builder.fresh_vars(nz);
    let a_var = builder.fresh_vars(1).start;
    let x_exprs: Vec<AffExpr> = x_vars.clone().map(AffExpr::variable).collect();
    problem.p().constrain_membership(&mut builder, &x_exprs)?;
    let q_exprs: Vec<AffExpr> = q_vars.clone().map(AffExpr::variable).collect();
    problem.q().constrain_membership(&mut builder, &q_exprs)?;
    builder.require(&AffExpr::variable(a_var), Relation::Ge);
    for i in 0..nz {
        // (Ax)_i - b_i - q_i - z_i = 0
        let mut expr = AffExpr::constant(-b[i].clone());
        for (j, coef) in rows[i].iter().enumerate() {
            expr.add_term(x_vars.start + j, coef.clone());
        }
        expr.add_term(q_vars.start + i, -crate::rational::int(1));
        expr.add_term(i, -crate::rational::int(1));
        builder.require(&expr, Relation::Eq);
    }
    // ⟨x, c⟩ + a - r = 0
    let mut expr = AffExpr::constant(Rational::zero());
    for (j, coef) in c.iter().enumerate() {
        expr.add_term(x_vars.start + j, coef.clone());
    }
    expr.add_term(a_var, crate::rational::int(1));
    expr.add_term(nz, -crate::rational::int(1));
    builder.require(&expr, Relation::Eq);
    let system = builder.finish();
    let eliminate: Vec<usize> = (nz + 1..system.num_vars).collect();
    let projected = fm_eliminate_all(&system, &eliminate)?;
    Ok(restrict_to_prefix(projected, nz + 1))
}

/// A finite inequality description of `K` over `(y, r)`, projected from the
/// parameterization `(c - A*w - p*, ⟨b, w⟩ - a)`.
fn k_description(problem: &Problem) -> Result<LinearSystem> {
    let rows = matrix_rows(problem)?;
    let nz = rows.len();
    let nx = rows[0].len();
    let b = problem.b().dense_entries()?;
    let c = problem.c().dense_entries()?;
    // variables: y (0..nx), r (nx), w, p*, slack a, then cone auxiliaries
    let mut builder = SystemBuilder::new(nx + 1);
    let w_vars = builder.fresh_vars(nz);
    let pstar_vars = builder.fresh_vars(nx);
    let a_var = builder.fresh_vars(1).start;
    let w_exprs: Vec<AffExpr> = w_vars.clone().map(AffExpr::variable).collect();
    problem
        .q_star()
        .constrain_membership(&mut builder, &w_exprs)?;
    let pstar_exprs: Vec<AffExpr> = pstar_vars.clone().map(AffExpr::variable).collect();
    problem
        .p_star()
        .constrain_membership(&mut builder, &pstar_exprs)?;
    builder.require(&AffExpr::variable(a_var), Relation::Ge);
    for j in 0..nx {
        // c_j - (A*w)_j - p*_j - y_j = 0
        let mut expr = AffExpr::constant(c[j].clone());
        for (i, row) in rows.iter().enumerate() {
            expr.add_term(w_vars.start + i, -row[j].clone());
        }
        expr.add_term(pstar_vars.start + j, -crate::rational::int(1));
        expr.add_term(j, -crate::rational::int(1));
        builder.require(&expr, Relation::Eq);
    }
    // ⟨b, w⟩ - a - r = 0
    let mut expr = AffExpr::constant(Rational::zero());
    for (i, coef) in b.iter().enumerate() {
        expr.add_term(w_vars.start + i, coef.clone());
    }
    expr.add_term(a_var, -crate::rational::int(1));
    expr.add_term(nx, -crate::rational::int(1));
    builder.require(&expr, Relation::Eq);
    let system = builder.finish();
    let eliminate: Vec<usize> = (nx + 1..system.num_vars).collect();
    let projected = fm_eliminate_all(&system, &eliminate)?;
    Ok(restrict_to_prefix(projected, nx + 1))
}

fn restrict_to_prefix(system: LinearSystem, keep: usize) -> LinearSystem {
    let mut out = LinearSystem::new(keep);
    for c in system.constraints {
        debug_assert!(c.normal[keep..].iter().all(Zero::is_zero));
        out.push(Constraint::new(
            c.normal[..keep].to_vec(),
            c.relation,
            c.rhs,
        ));
    }
    out
}

/// A point violating some constraint of the description, or `None` when the
/// description is vacuous. An absurd marker means the described set is
/// empty, so any point escapes; otherwise scaling the negated normal far
/// enough escapes a nontrivial constraint.
fn escape_point(description: &LinearSystem) -> Option<Vec<Rational>> {
    if description.has_absurd_marker() {
        return Some(alloc::vec![Rational::zero(); description.num_vars]);
    }
    let c = description.constraints.iter().find(|c| !c.is_trivial())?;
    let norm_sq: Rational = c.normal.iter().map(|v| v * v).sum();
    debug_assert!(norm_sq.is_positive());
    // ⟨normal, -t normal⟩ = -t |normal|^2 < rhs for large t
    let t = (c.rhs.clone().abs() + crate::rational::int(1)) / norm_sq;
    Some(c.normal.iter().map(|v| -(v * &t)).collect())
}

fn matrix_rows(problem: &Problem) -> Result<&[Vec<Rational>]> {
    match problem.map() {
        crate::linmap::LinearMap::Matrix { rows } => Ok(rows),
        crate::linmap::LinearMap::Gale => Err(Error::UnsupportedForm(
            "this check runs on finite instances only".into(),
        )),
    }
}

/// Outcome of one algebraic-core condition, with the certifying point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreConditionReport {
    pub holds: bool,
    pub witness: Option<Vector>,
}

/// The dual-side core condition: some `w ∈ Q*` puts `c - A*w` in the
/// algebraic core of `P*`.
///
/// Decided by maximizing a uniform slack `t` below the inequality
/// description of `P*`: a positive (or unbounded) optimum is exactly strict
/// feasibility, and implicit-equality rows empty the core outright.
pub fn core_dual_condition(problem: &Problem) -> Result<CoreConditionReport> {
    let rows = matrix_rows(problem)?;
    let nz = rows.len();
    let c = problem.c().dense_entries()?;
    let facet_rows = problem.p_star().inequality_rows()?;
    if facet_rows
        .iter()
        .any(|row| row.equality && row.normal.iter().any(|v| !v.is_zero()))
    {
        return Ok(CoreConditionReport {
            holds: false,
            witness: None,
        });
    }
    let mut builder = SystemBuilder::new(nz + 1);
    let t_var = nz;
    let w_exprs: Vec<AffExpr> = (0..nz).map(AffExpr::variable).collect();
    problem
        .q_star()
        .constrain_membership(&mut builder, &w_exprs)?;
    for row in &facet_rows {
        // ⟨m, c - A*w⟩ - t >= 0
        let constant: Rational = row.normal.iter().zip(c).map(|(m, cj)| m * cj).sum();
        let mut expr = AffExpr::constant(constant);
        for (i, a_row) in rows.iter().enumerate() {
            let coef: Rational = row
                .normal
                .iter()
                .zip(a_row)
                .map(|(m, aij)| -(m * aij))
                .sum();
            expr.add_term(i, coef);
        }
        expr.add_term(t_var, -crate::rational::int(1));
        builder.require(&expr, Relation::Ge);
    }
    strict_slack_witness(builder, t_var, nz)
}

/// The primal-side core condition: some `x ∈ P` puts `Ax - b` in the
/// algebraic core of `Q`.
pub fn core_primal_condition(problem: &Problem) -> Result<CoreConditionReport> {
    let rows = matrix_rows(problem)?;
    let nx = rows[0].len();
    let b = problem.b().dense_entries()?;
    let facet_rows = problem.q().inequality_rows()?;
    if facet_rows
        .iter()
        .any(|row| row.equality && row.normal.iter().any(|v| !v.is_zero()))
    {
        return Ok(CoreConditionReport {
            holds: false,
            witness: None,
        });
    }
    let mut builder = SystemBuilder::new(nx + 1);
    let t_var = nx;
    let x_exprs: Vec<AffExpr> = (0..nx).map(AffExpr::variable).collect();
    problem.p().constrain_membership(&mut builder, &x_exprs)?;
    for row in &facet_rows {
        // ⟨m, Ax - b⟩ - t >= 0
        let constant: Rational = row.normal.iter().zip(b).map(|(m, bi)| -(m * bi)).sum();
        let mut expr = AffExpr::constant(constant);
        for (j, _) in rows[0].iter().enumerate() {
            let coef: Rational = row
                .normal
                .iter()
                .zip(rows.iter())
                .map(|(m, a_row)| m * &a_row[j])
                .sum();
            expr.add_term(j, coef);
        }
        expr.add_term(t_var, -crate::rational::int(1));
        builder.require(&expr, Relation::Ge);
    }
    strict_slack_witness(builder, t_var, nx)
}

/// Maximizes the slack variable; a strictly positive value certifies the
/// condition with the optimizing point, unboundedness is resolved to a
/// concrete point at slack one.
fn strict_slack_witness(
    builder: SystemBuilder,
    t_var: usize,
    point_dim: usize,
) -> Result<CoreConditionReport> {
    let system = builder.finish();
    let mut objective = alloc::vec![Rational::zero(); system.num_vars];
    objective[t_var] = crate::rational::int(1);
    let outcome = lp_solve(&objective, &system, Sense::Max)?;
    match outcome.status {
        LpStatus::Optimal => {
            let value = outcome.value.expect("optimal");
            if value.is_positive() {
                Ok(CoreConditionReport {
                    holds: true,
                    witness: Some(Vector::dense(
                        outcome.witness.expect("optimal")[..point_dim].to_vec(),
                    )),
                })
            } else {
                Ok(CoreConditionReport {
                    holds: false,
                    witness: None,
                })
            }
        }
        LpStatus::Unbounded => {
            let mut pinned = system;
            let mut pin = alloc::vec![Rational::zero(); pinned.num_vars];
            pin[t_var] = crate::rational::int(1);
            pinned.push(Constraint::new(pin, Relation::Ge, crate::rational::int(1)));
            let zero = alloc::vec![Rational::zero(); pinned.num_vars];
            let outcome = lp_solve(&zero, &pinned, Sense::Min)?;
            outcome
                .witness
                .map(|w| CoreConditionReport {
                    holds: true,
                    witness: Some(Vector::dense(w[..point_dim].to_vec())),
                })
                .ok_or_else(|| Error::Internal("unbounded slack refused to produce a point".into()))
        }
        LpStatus::Infeasible => Err(Error::Internal(
            "the slack system excluded the origin of its cone".into(),
        )),
    }
}

/// Whether the bidual of `P` equals `P` extensionally; in the finite engine
/// this holds for every closed polyhedral cone and the check documents it.
pub fn bidual_embedding(problem: &Problem) -> Result<bool> {
    match problem.kind() {
        ProblemKind::Finite => {
            let bidual = problem.p().dual()?.dual()?;
            extensionally_equal(&bidual, problem.p())
        }
        ProblemKind::Gale(_) => Err(Error::UnsupportedForm(
            "the bidual embedding check runs on finite instances only".into(),
        )),
    }
}

/// Premise-and-conclusion verification of the dual-side sufficiency: when
/// the core condition and the bidual embedding both hold, `H = N` must hold,
/// and every sampled slice is required to agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSufficiencyReport {
    pub premise_core: bool,
    pub premise_bidual: bool,
    pub conclusion_checked: bool,
    pub core_witness: Option<Vector>,
}

pub fn verify_core_dual_sufficiency(problem: &Problem, seed: u64) -> Result<DualSufficiencyReport> {
    let core = core_dual_condition(problem)?;
    let bidual = bidual_embedding(problem)?;
    let mut checked = false;
    if core.holds && bidual {
        let mut rng = sample::rng_from_seed(seed);
        for _ in 0..SLICE_SAMPLES {
            let z = sample::z_perturbation(&mut rng, problem)?;
            if !problem.slice_equal_h_n(&z)?.equal {
                return Err(Error::Internal(
                    "a slice violated H = N although the core premises hold".into(),
                ));
            }
        }
        checked = true;
    }
    Ok(DualSufficiencyReport {
        premise_core: core.holds,
        premise_bidual: bidual,
        conclusion_checked: checked,
        core_witness: core.witness,
    })
}

/// Premise-and-conclusion verification of the primal-side sufficiency: when
/// the primal core condition holds, `K = M` must hold on every sampled
/// slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalSufficiencyReport {
    pub premise: bool,
    pub conclusion_checked: bool,
    pub core_witness: Option<Vector>,
}

pub fn verify_core_primal_sufficiency(
    problem: &Problem,
    seed: u64,
) -> Result<PrimalSufficiencyReport> {
    let core = core_primal_condition(problem)?;
    let mut checked = false;
    if core.holds {
        let mut rng = sample::rng_from_seed(seed);
        for _ in 0..SLICE_SAMPLES {
            let y = sample::y_perturbation(&mut rng, problem)?;
            if !problem.slice_equal_k_m(&y)?.equal {
                return Err(Error::Internal(
                    "a slice violated K = M although the core premise holds".into(),
                ));
            }
        }
        checked = true;
    }
    Ok(PrimalSufficiencyReport {
        premise: core.holds,
        conclusion_checked: checked,
        core_witness: core.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;
    use crate::gale::GaleInstance;
    use crate::linmap::LinearMap;
    use crate::rational::{frac, int};
    use rand::Rng;

    fn instance_i1() -> Problem {
        Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 1]]),
            Vector::dense_from_i64(&[2]),
            Vector::dense_from_i64(&[1, 2]),
            Cone::orthant(2),
            Cone::orthant(1),
        )
        .unwrap()
    }

    #[test]
    fn condition_d_holds_on_i1() {
        let verdict = check_condition_d(&instance_i1(), 0).unwrap();
        assert_eq!(verdict.holds, Holds::True);
        assert_eq!(verdict.justification, Justification::PolyhedralClosedness);
    }

    #[test]
    fn condition_d_fails_on_the_gale_family() {
        let p = GaleInstance::new(int(1), int(0)).problem();
        let verdict = check_condition_d(&p, 0).unwrap();
        assert_eq!(verdict.holds, Holds::False);
        assert_eq!(verdict.justification, Justification::AnalyticGale);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.base, Vector::dense(alloc::vec![int(0), int(0)]));
        assert_eq!(witness.height, frac(1, 2));
    }

    #[test]
    fn condition_d_star_holds_on_i1_and_rejects_gale() {
        let verdict = check_condition_d_star(&instance_i1(), 0).unwrap();
        assert_eq!(verdict.holds, Holds::True);
        let p = GaleInstance::new(int(1), int(0)).problem();
        assert!(matches!(
            check_condition_d_star(&p, 0),
            Err(Error::UnsupportedForm(_))
        ));
    }

    #[test]
    fn core_conditions_on_i1() {
        let p = instance_i1();
        let dual = core_dual_condition(&p).unwrap();
        assert!(dual.holds);
        let primal = core_primal_condition(&p).unwrap();
        assert!(primal.holds);
    }

    #[test]
    fn boundary_cost_fails_the_dual_core_condition() {
        // c = (0, 1) with Q* = {0}: the only reduced cost is c itself, which
        // sits on the boundary of the orthant
        let p = Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 1]]),
            Vector::dense_from_i64(&[2]),
            Vector::dense_from_i64(&[0, 1]),
            Cone::orthant(2),
            Cone::full(1),
        )
        .unwrap();
        assert!(!core_dual_condition(&p).unwrap().holds);
    }

    #[test]
    fn unpointed_p_fails_the_dual_core_condition() {
        // P = full line x orthant: P* is not full-dimensional
        let p = Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 1]]),
            Vector::dense_from_i64(&[2]),
            Vector::dense_from_i64(&[1, 2]),
            Cone::product(alloc::vec![Cone::full(1), Cone::orthant(1)]).unwrap(),
            Cone::orthant(1),
        )
        .unwrap();
        assert!(!core_dual_condition(&p).unwrap().holds);
    }

    #[test]
    fn zero_q_fails_the_primal_core_condition() {
        let p = Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 1]]),
            Vector::dense_from_i64(&[2]),
            Vector::dense_from_i64(&[1, 2]),
            Cone::orthant(2),
            Cone::zero(1),
        )
        .unwrap();
        assert!(!core_primal_condition(&p).unwrap().holds);
    }

    #[test]
    fn bidual_embedding_on_sampled_cones() {
        let p = instance_i1();
        assert!(bidual_embedding(&p).unwrap());
        let half = Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 0]]),
            Vector::dense_from_i64(&[0]),
            Vector::dense_from_i64(&[1, 0]),
            Cone::inequalities(alloc::vec![Vector::dense_from_i64(&[1, 0])], 2).unwrap(),
            Cone::orthant(1),
        )
        .unwrap();
        assert!(bidual_embedding(&half).unwrap());
    }

    #[test]
    fn sufficiency_sweeps_on_i1() {
        let p = instance_i1();
        let dual = verify_core_dual_sufficiency(&p, 0).unwrap();
        assert!(dual.premise_core && dual.premise_bidual && dual.conclusion_checked);
        let primal = verify_core_primal_sufficiency(&p, 0).unwrap();
        assert!(primal.premise && primal.conclusion_checked);
    }

    #[test]
    fn premise_failure_asserts_nothing() {
        let p = Problem::finite(
            LinearMap::matrix_from_i64(&[&[1, 1]]),
            Vector::dense_from_i64(&[2]),
            Vector::dense_from_i64(&[1, 2]),
            Cone::orthant(2),
            Cone::zero(1),
        )
        .unwrap();
        let report = verify_core_primal_sufficiency(&p, 0).unwrap();
        assert!(!report.premise && !report.conclusion_checked);
    }

    #[test]
    fn h_description_matches_the_membership_oracle() {
        // the projected inequality description of H and the LP membership
        // oracle are independent routes to the same set
        let mut rng = crate::sample::rng_from_seed(70);
        let mut instances = alloc::vec![instance_i1()];
        for _ in 0..6 {
            instances.push(crate::sample::consistent_problem(&mut rng));
        }
        for p in &instances {
            let description = h_description(p).unwrap();
            let nz = description.num_vars - 1;
            for _ in 0..30 {
                let pt = if rng.gen_range(0..2) == 0 {
                    crate::sample::h_point(&mut rng, p).unwrap()
                } else {
                    SetPoint::new(
                        crate::sample::dense_vector(&mut rng, nz, 3),
                        crate::sample::rational(&mut rng, 3),
                    )
                };
                let mut coords = pt.base.dense_entries().unwrap().to_vec();
                coords.push(pt.height.clone());
                assert_eq!(
                    description.satisfied_by(&coords).unwrap(),
                    p.member_h(&pt).unwrap()
                );
            }
        }
    }

    #[test]
    fn k_description_matches_the_membership_oracle() {
        let mut rng = crate::sample::rng_from_seed(71);
        let mut instances = alloc::vec![instance_i1()];
        for _ in 0..6 {
            instances.push(crate::sample::consistent_problem(&mut rng));
        }
        for p in &instances {
            let description = k_description(p).unwrap();
            let ny = description.num_vars - 1;
            for _ in 0..30 {
                let pt = if rng.gen_range(0..2) == 0 {
                    crate::sample::k_point(&mut rng, p).unwrap()
                } else {
                    SetPoint::new(
                        crate::sample::dense_vector(&mut rng, ny, 3),
                        crate::sample::rational(&mut rng, 3),
                    )
                };
                let mut coords = pt.base.dense_entries().unwrap().to_vec();
                coords.push(pt.height.clone());
                assert_eq!(
                    description.satisfied_by(&coords).unwrap(),
                    p.member_k(&pt).unwrap()
                );
            }
        }
    }

    #[test]
    fn inconsistent_dual_still_gets_a_verdict() {
        // no w satisfies -1 - 0*w >= 0: the dual side is empty, N is the
        // whole space, and H is a proper subset
        let p = Problem::finite(
            LinearMap::matrix_from_i64(&[&[0]]),
            Vector::dense_from_i64(&[0]),
            Vector::dense_from_i64(&[-1]),
            Cone::orthant(1),
            Cone::zero(1),
        )
        .unwrap();
        assert!(!p.dual_feasible_at(None).unwrap());
        let verdict = check_condition_d(&p, 0).unwrap();
        assert_eq!(verdict.holds, Holds::False);
        let witness = verdict.witness.unwrap();
        assert!(p.member_n(&witness).unwrap());
        assert!(!p.member_h(&witness).unwrap());
    }
}
