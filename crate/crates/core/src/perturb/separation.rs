//! Separating functionals for points outside `N` and `M`.
//!
//! For `(z, r) ∉ N` the construction picks a dual-feasible `w` whose
//! perturbed objective beats `r`, and returns the functional `(w, -1)` with
//! threshold `γ = -⟨b, w⟩`; the strict separation against all of `H` is then
//! certified by one LP maximization. The mirror construction for `M` uses a
//! primal-feasible `x`, the functional `(x, +1)` and `γ = ⟨x, c⟩`, and
//! requires the bidual embedding of `P`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cone::extensionally_equal;
use crate::lp::{lp_solve, AffExpr, Bound, LpStatus, Relation, Sense, SystemBuilder};
use crate::rational::Rational;
use crate::vector::{pair, Vector};
use crate::{Error, Result};

use super::{ExtendedValue, Problem, ProblemKind, SetPoint};

/// A separating functional `(functional, beta)` with threshold `gamma`:
/// every point of the separated set pairs to at most `gamma`, while the
/// separated-from point pairs strictly above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub functional: Vector,
    pub beta: Rational,
    pub gamma: Rational,
}

impl Problem {
    /// Separates a point outside `N` from the whole of `H`.
    pub fn separate_from_n(&self, pt: &SetPoint) -> Result<Separator> {
        if self.member_n(pt)? {
            return Err(Error::Precondition(
                "separate_from_n requires a point outside N".into(),
            ));
        }
        let w = self.dual_point_above(&pt.base, &pt.height)?;
        let gamma = -pair(&self.b, &w)?;
        let separator = Separator {
            functional: w,
            beta: -Rational::one(),
            gamma,
        };
        if !self.verify_separator_n(&separator, pt)? {
            return Err(Error::Internal(
                "constructed N-separator failed its certification LP".into(),
            ));
        }
        Ok(separator)
    }

    /// Separates a point outside `M` from the whole of `K`. Requires a
    /// finite instance whose cone `P` equals its bidual.
    pub fn separate_from_m(&self, pt: &SetPoint) -> Result<Separator> {
        match &self.kind {
            ProblemKind::Finite => {}
            ProblemKind::Gale(_) => {
                return Err(Error::Precondition(
                    "separate_from_m runs on finite instances only".into(),
                ))
            }
        }
        if !extensionally_equal(&self.p.bidual()?, &self.p)? {
            return Err(Error::Hypothesis(
                "separate_from_m requires P to equal its bidual cone".into(),
            ));
        }
        if self.member_m(pt)? {
            return Err(Error::Precondition(
                "separate_from_m requires a point outside M".into(),
            ));
        }
        let x = self.primal_point_below(&pt.base, &pt.height)?;
        let gamma = pair(&x, &self.c)?;
        let separator = Separator {
            functional: x,
            beta: Rational::one(),
            gamma,
        };
        if !self.verify_separator_m(&separator, pt)? {
            return Err(Error::Internal(
                "constructed M-separator failed its certification LP".into(),
            ));
        }
        Ok(separator)
    }

    /// A dual-feasible `w` with `⟨b + z, w⟩ > r`. Exists exactly when
    /// `r < v_D(z)`.
    pub(crate) fn dual_point_above(&self, z: &Vector, r: &Rational) -> Result<Vector> {
        let optimum = self.dual_optimum(Some(z), None)?;
        match &optimum.value {
            ExtendedValue::Finite { value, .. } if value > r => {
                Ok(optimum.witness.expect("finite dual optima carry witnesses"))
            }
            ExtendedValue::PlusInfinity => {
                let target = r + Rational::one();
                let pt = SetPoint::new(Vector::zero(self.y_space()), target);
                // any w certifying K_z-membership at base 0 with that height
                match &self.kind {
                    ProblemKind::Finite => {
                        let (mut builder, nw) = self.finite_dual_builder(None)?;
                        let b_entries = self.b.dense_entries()?;
                        let z_entries = z.dense_entries()?;
                        let mut gain = AffExpr::constant(-pt.height.clone());
                        for i in 0..nw {
                            gain.add_term(i, &b_entries[i] + &z_entries[i]);
                        }
                        builder.require(&gain, Relation::Ge);
                        let system = builder.finish();
                        let objective = alloc::vec![Rational::zero(); system.num_vars];
                        let outcome = lp_solve(&objective, &system, Sense::Min)?;
                        outcome
                            .witness
                            .map(|w| Vector::dense(w[..nw].to_vec()))
                            .ok_or_else(|| {
                                Error::Internal(
                                    "unbounded dual refused to produce a point above the target"
                                        .into(),
                                )
                            })
                    }
                    ProblemKind::Gale(g) => g
                        .k_z_witness(
                            Some(z),
                            &SetPoint::new(Vector::zero(self.y_space()), pt.height.clone()),
                        )?
                        .ok_or_else(|| {
                            Error::Internal(
                                "unbounded sequence dual refused to produce a point".into(),
                            )
                        }),
                }
            }
            _ => Err(Error::Precondition(
                "no dual point exceeds the height: the point lies in N".into(),
            )),
        }
    }

    /// A primal-feasible `x` with `⟨x, c - y⟩ < r`. Exists exactly when
    /// `v_P(y) < r`.
    pub(crate) fn primal_point_below(&self, y: &Vector, r: &Rational) -> Result<Vector> {
        let optimum = self.primal_optimum(None, Some(y))?;
        match &optimum.value {
            ExtendedValue::Finite { value, .. } if value < r => Ok(optimum
                .witness
                .expect("finite primal optima carry witnesses")),
            ExtendedValue::MinusInfinity => {
                let (mut builder, nx) = self.finite_primal_builder(None)?;
                let c_entries = self.c.dense_entries()?;
                let y_entries = y.dense_entries()?;
                let target = r - Rational::one();
                let mut cost = AffExpr::constant(target);
                for j in 0..nx {
                    cost.add_term(j, &y_entries[j] - &c_entries[j]);
                }
                // ⟨x, c - y⟩ <= r - 1
                builder.require(&cost, Relation::Ge);
                let system = builder.finish();
                let objective = alloc::vec![Rational::zero(); system.num_vars];
                let outcome = lp_solve(&objective, &system, Sense::Min)?;
                outcome
                    .witness
                    .map(|w| Vector::dense(w[..nx].to_vec()))
                    .ok_or_else(|| {
                        Error::Internal(
                            "unbounded primal refused to produce a point below the target".into(),
                        )
                    })
            }
            _ => Err(Error::Precondition(
                "no primal point undercuts the height: the point lies in M".into(),
            )),
        }
    }

    /// Certifies an `N`-separator: the supremum of `⟨(z', r'), (w, beta)⟩`
    /// over `H` stays at or below `gamma`, and the separated point pairs
    /// strictly above `gamma`.
    pub fn verify_separator_n(&self, sep: &Separator, pt: &SetPoint) -> Result<bool> {
        if sep.beta != -Rational::one() {
            return Ok(false);
        }
        let at_point = pair(&pt.base, &sep.functional)? + &sep.beta * &pt.height;
        if at_point <= sep.gamma {
            return Ok(false);
        }
        let sup = self.sup_over_h(&sep.functional)?;
        Ok(match sup {
            Bound::PlusInfinity => false,
            Bound::Finite(v) => v <= sep.gamma,
            Bound::MinusInfinity => true,
        })
    }

    /// Certifies an `M`-separator: the supremum of `⟨(x, beta), (y', r')⟩`
    /// over `K` stays at or below `gamma`, and the separated point pairs
    /// strictly above `gamma`.
    pub fn verify_separator_m(&self, sep: &Separator, pt: &SetPoint) -> Result<bool> {
        if sep.beta != Rational::one() {
            return Ok(false);
        }
        let at_point = pair(&pt.base, &sep.functional)? + &sep.beta * &pt.height;
        if at_point <= sep.gamma {
            return Ok(false);
        }
        let sup = self.sup_over_k(&sep.functional)?;
        Ok(match sup {
            Bound::PlusInfinity => false,
            Bound::Finite(v) => v <= sep.gamma,
            Bound::MinusInfinity => true,
        })
    }

    /// `sup{⟨z', w⟩ - r' : (z', r') ∈ H}`. The height coefficient is -1, so
    /// the supremum sits at the bottom edge `r' = ⟨x, c⟩` of each fiber.
    fn sup_over_h(&self, w: &Vector) -> Result<Bound> {
        match &self.kind {
            ProblemKind::Finite => {
                let (nx, nz) = self.primal_dims();
                let rows = self.matrix_rows();
                let w_entries = w.dense_entries()?;
                let c_entries = self.c.dense_entries()?;
                let mut builder = SystemBuilder::new(nx + nz);
                let x_exprs: Vec<AffExpr> = (0..nx).map(AffExpr::variable).collect();
                self.p.constrain_membership(&mut builder, &x_exprs)?;
                let q_exprs: Vec<AffExpr> = (nx..nx + nz).map(AffExpr::variable).collect();
                self.q.constrain_membership(&mut builder, &q_exprs)?;
                let system = builder.finish();
                // objective: ⟨Ax - q, w⟩ - ⟨x, c⟩, constant part -⟨b, w⟩
                let mut objective = alloc::vec![Rational::zero(); system.num_vars];
                for (j, slot) in objective.iter_mut().enumerate().take(nx) {
                    let mut coef = -c_entries[j].clone();
                    for (i, row) in rows.iter().enumerate() {
                        coef += &row[j] * &w_entries[i];
                    }
                    *slot = coef;
                }
                for i in 0..nz {
                    objective[nx + i] = -w_entries[i].clone();
                }
                let outcome = lp_solve(&objective, &system, Sense::Max)?;
                let constant = -pair(&self.b, w)?;
                Ok(match outcome.status {
                    LpStatus::Optimal => Bound::Finite(outcome.value.expect("optimal") + constant),
                    LpStatus::Unbounded => Bound::PlusInfinity,
                    LpStatus::Infeasible => Bound::MinusInfinity,
                })
            }
            ProblemKind::Gale(g) => g.sup_over_h(w),
        }
    }

    /// `sup{⟨x, y'⟩ + r' : (y', r') ∈ K}`. The height coefficient is +1, so
    /// the supremum sits at the top edge `r' = ⟨b, w⟩` of each fiber.
    fn sup_over_k(&self, x: &Vector) -> Result<Bound> {
        let (nx, nz) = self.primal_dims();
        let x_entries = x.dense_entries()?;
        let b_entries = self.b.dense_entries()?;
        let mut builder = SystemBuilder::new(nz + nx);
        let w_exprs: Vec<AffExpr> = (0..nz).map(AffExpr::variable).collect();
        self.q_star.constrain_membership(&mut builder, &w_exprs)?;
        let pstar_exprs: Vec<AffExpr> = (nz..nz + nx).map(AffExpr::variable).collect();
        self.p_star
            .constrain_membership(&mut builder, &pstar_exprs)?;
        let system = builder.finish();
        // objective: ⟨b - Ax, w⟩ - ⟨x, p*⟩, constant part ⟨x, c⟩
        let image = self.a.apply(x)?;
        let image_entries = image.dense_entries()?;
        let mut objective = alloc::vec![Rational::zero(); system.num_vars];
        for i in 0..nz {
            objective[i] = &b_entries[i] - &image_entries[i];
        }
        for j in 0..nx {
            objective[nz + j] = -x_entries[j].clone();
        }
        let outcome = lp_solve(&objective, &system, Sense::Max)?;
        let constant = pair(x, &self.c)?;
        Ok(match outcome.status {
            LpStatus::Optimal => Bound::Finite(outcome.value.expect("optimal") + constant),
            LpStatus::Unbounded => Bound::PlusInfinity,
            LpStatus::Infeasible => Bound::MinusInfinity,
        })
    }
}
