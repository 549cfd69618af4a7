//! The parametric Gale sequence-space family.
//!
//! The instance with parameters `(alpha, beta)` minimizes `x_0` over
//! finitely supported `x >= 0` subject to `x_0 + Σ_{i>=1} i x_i = alpha` and
//! `Σ_{i>=1} x_i = beta`. The pair is consistent exactly when
//! `alpha >= beta >= 0`, and exhibits a positive duality gap exactly when
//! `beta = 0 < alpha`.
//!
//! Everything the engine needs about the family is answered through analytic
//! closed forms plus small exact LPs:
//!
//! * the infinitely many dual constraints `i w_1 + w_2 <= 0` collapse to
//!   `w_1 <= 0` and `w_1 + w_2 <= 0` (with the explicit `w_1 <= 1` row),
//!   because an increasing tail binds at its smallest index;
//! * a primal point is a truncation part `x_0..x_k` plus a tail carrying
//!   mass `s` and weighted mass `m` on indices above `k`; the realizable
//!   tails are exactly `s > 0, m >= (k+1) s` together with the empty tail,
//!   so primal questions split into two small systems, one of them strict.
//!
//! A finite truncation oracle cross-checks every closed form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::linmap::LinearMap;
use crate::lp::{
    fm_optimize, lp_solve, Bound, Constraint, FmOptimum, LinearSystem, LpStatus, Relation, Sense,
};
use crate::perturb::{ExtendedValue, Optimum, Problem, SetPoint};
use crate::rational::Rational;
use crate::vector::Vector;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleInstance {
    pub alpha: Rational,
    pub beta: Rational,
}

impl GaleInstance {
    pub fn new(alpha: Rational, beta: Rational) -> GaleInstance {
        GaleInstance { alpha, beta }
    }

    /// Primal feasibility of the pair: `alpha >= beta >= 0`.
    pub fn consistent(&self) -> bool {
        self.alpha >= self.beta && !self.beta.is_negative()
    }

    /// The wired conic program: `P = R_+^(N)`, `Q = {0}` in `R^2`,
    /// `b = (alpha, beta)`, `c = (1, 0, 0, ...)`.
    pub fn problem(&self) -> Problem {
        Problem::gale_wired(self.clone())
    }

    /// The finite truncation to variables `x_0 .. x_n`, as a polyhedral
    /// instance with the same two equality rows.
    pub fn truncate(&self, n: usize) -> Result<Problem> {
        if n == 0 {
            return Err(Error::Precondition(
                "truncations need at least one sequence variable".into(),
            ));
        }
        let mut first = Vec::with_capacity(n + 1);
        let mut second = Vec::with_capacity(n + 1);
        first.push(Rational::one());
        second.push(Rational::zero());
        for i in 1..=n {
            first.push(Rational::from_integer(BigInt::from(i)));
            second.push(Rational::one());
        }
        let mut c = alloc::vec![Rational::zero(); n + 1];
        c[0] = Rational::one();
        Problem::finite(
            LinearMap::matrix(alloc::vec![first, second])?,
            Vector::dense(alloc::vec![self.alpha.clone(), self.beta.clone()]),
            Vector::dense(c),
            Cone::orthant(n + 1),
            Cone::zero(2),
        )
    }

    fn shifted(&self, z: Option<&Vector>) -> Result<(Rational, Rational)> {
        match z {
            None => Ok((self.alpha.clone(), self.beta.clone())),
            Some(z) => {
                let entries = z.dense_entries()?;
                if entries.len() != 2 {
                    return Err(Error::Shape(alloc::format!(
                        "sequence-family perturbations live in R^2, found dimension {}",
                        entries.len()
                    )));
                }
                Ok((&self.alpha + &entries[0], &self.beta + &entries[1]))
            }
        }
    }

    /// Membership of `z` in the domain of the perturbed dual value function:
    /// `z_1 + alpha >= z_2 + beta >= 0`.
    pub fn dual_domain_member(&self, z: &Vector) -> Result<bool> {
        let (a, b) = self.shifted(Some(z))?;
        Ok(a >= b && !b.is_negative())
    }

    /// Closed form of the perturbed dual value function: zero on its domain,
    /// `+∞` outside.
    pub fn dual_value_closed(&self, z: &Vector) -> Result<ExtendedValue> {
        Ok(if self.dual_domain_member(z)? {
            ExtendedValue::finite(Rational::zero(), true)
        } else {
            ExtendedValue::PlusInfinity
        })
    }

    /// Closed form of `H`-membership. The set splits into the tail-free
    /// branch (second base coordinate pinned at `-beta`, height dominating
    /// the forced `x_0`) and the positive-tail branch (any nonnegative
    /// height).
    pub fn member_h_closed(&self, pt: &SetPoint) -> Result<bool> {
        let base = pt.base.dense_entries()?;
        let (b1, b2) = (&base[0], &base[1]);
        let t1 = b1 + &self.alpha;
        // branch with no tail: x_0 = b1 + alpha, base_2 forced to -beta
        if *b2 == -self.beta.clone() && !t1.is_negative() && pt.height >= t1 {
            return Ok(true);
        }
        // branch with positive tail mass t2 = b2 + beta
        let t2 = b2 + &self.beta;
        Ok(t2.is_positive() && b1 + &self.alpha >= t2 && !pt.height.is_negative())
    }

    /// Closed form of `N`-membership: the base lies in the dual domain and
    /// the height is nonnegative.
    pub fn member_n_closed(&self, pt: &SetPoint) -> Result<bool> {
        Ok(self.dual_domain_member(&pt.base)? && !pt.height.is_negative())
    }

    /// Closed form of the closure of `H`, which coincides with `N`.
    pub fn closure_h_member(&self, pt: &SetPoint) -> Result<bool> {
        self.member_n_closed(pt)
    }

    /// Duality analytics of the unperturbed pair: values, attainment,
    /// gap, and the slice condition at the origin.
    pub fn values(&self) -> Result<crate::farkas::DualityReport> {
        crate::farkas::strong_duality_primal(
            &self.problem(),
            &Vector::zero(crate::space::Space::Dense(2)),
        )
    }

    /// The canonical point of `N \ H` (the witness family at `m = 1`).
    pub fn gap_witness(&self) -> SetPoint {
        SetPoint::new(
            Vector::dense(alloc::vec![
                Rational::one() - &self.alpha,
                -self.beta.clone()
            ]),
            crate::rational::frac(1, 2),
        )
    }

    // ------------------------------------------------------------------
    // dual side: a two-variable LP over the collapsed constraint rows
    // ------------------------------------------------------------------

    /// The finitely many rows equivalent to `c - A*w - y ∈ R_+^N` for a
    /// finitely supported `y`: explicit rows for index 0 and every index up
    /// to the largest support index, then `w_1 <= 0` and the row at the
    /// first free index, which dominate the entire tail.
    fn dual_rows(&self, y: Option<&BTreeMap<usize, Rational>>) -> LinearSystem {
        let empty = BTreeMap::new();
        let y = y.unwrap_or(&empty);
        let top = y.keys().copied().max().unwrap_or(0);
        let mut system = LinearSystem::new(2);
        let y_at = |i: usize| y.get(&i).cloned().unwrap_or_else(Rational::zero);
        // index 0: 1 - w1 - y0 >= 0
        system.push(Constraint::new(
            alloc::vec![-Rational::one(), Rational::zero()],
            Relation::Ge,
            y_at(0) - Rational::one(),
        ));
        // indices 1..=top: -i w1 - w2 - y_i >= 0
        for i in 1..=top {
            system.push(Constraint::new(
                alloc::vec![-Rational::from_integer(BigInt::from(i)), -Rational::one()],
                Relation::Ge,
                y_at(i),
            ));
        }
        // tail beyond the support: w1 <= 0 and the first free index
        system.push(Constraint::new(
            alloc::vec![-Rational::one(), Rational::zero()],
            Relation::Ge,
            Rational::zero(),
        ));
        system.push(Constraint::new(
            alloc::vec![
                -Rational::from_integer(BigInt::from(top + 1)),
                -Rational::one()
            ],
            Relation::Ge,
            Rational::zero(),
        ));
        system
    }

    fn y_support<'a>(
        &self,
        y: Option<&'a Vector>,
    ) -> Result<Option<&'a BTreeMap<usize, Rational>>> {
        match y {
            None => Ok(None),
            Some(v) => match v {
                Vector::FiniteSupport(m) => Ok(Some(m)),
                _ => Err(Error::Precondition(
                    "sequence-family perturbations of c must be finitely supported".into(),
                )),
            },
        }
    }

    /// `sup{⟨b + z, w⟩ : w dual-feasible for c - y}` with maximizer.
    pub fn dual_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        let (a, b) = self.shifted(z)?;
        let y_map = self.y_support(y)?;
        if y_map.is_none() {
            // closed form: zero on the domain, attained at the origin
            return Ok(if a >= b && !b.is_negative() {
                Optimum::new(
                    ExtendedValue::finite(Rational::zero(), true),
                    Some(Vector::dense(alloc::vec![
                        Rational::zero(),
                        Rational::zero()
                    ])),
                )
            } else {
                Optimum::new(ExtendedValue::PlusInfinity, None)
            });
        }
        let system = self.dual_rows(y_map);
        let objective = alloc::vec![a, b];
        let outcome = lp_solve(&objective, &system, Sense::Max)?;
        Ok(match outcome.status {
            LpStatus::Optimal => Optimum::new(
                ExtendedValue::finite(outcome.value.expect("optimal"), true),
                Some(Vector::dense(outcome.witness.expect("optimal"))),
            ),
            LpStatus::Unbounded => Optimum::new(ExtendedValue::PlusInfinity, None),
            LpStatus::Infeasible => Optimum::new(ExtendedValue::MinusInfinity, None),
        })
    }

    /// A `w` certifying perturbed `K`-membership: dual-feasible for
    /// `c - base` with `⟨b + z, w⟩ >= height`.
    pub fn k_z_witness(&self, z: Option<&Vector>, pt: &SetPoint) -> Result<Option<Vector>> {
        let (a, b) = self.shifted(z)?;
        let y_map = match &pt.base {
            Vector::FiniteSupport(m) => Some(m),
            _ => {
                return Err(Error::Precondition(
                    "K-membership for the sequence family needs finitely supported bases".into(),
                ))
            }
        };
        let mut system = self.dual_rows(y_map);
        system.push(Constraint::new(
            alloc::vec![a, b],
            Relation::Ge,
            pt.height.clone(),
        ));
        let objective = alloc::vec![Rational::zero(), Rational::zero()];
        let outcome = lp_solve(&objective, &system, Sense::Min)?;
        Ok(outcome.witness.map(Vector::dense))
    }

    // ------------------------------------------------------------------
    // primal side: truncation variables plus a two-parameter tail
    // ------------------------------------------------------------------

    /// Closed-form primal optimum (no cost perturbation): value `alpha'`
    /// carried by `x_0` when `beta' = 0`, value zero carried by a two-point
    /// tail at the mean `alpha'/beta'` when `beta' > 0`.
    fn primal_closed(&self, a: &Rational, b: &Rational) -> Optimum {
        if !(a >= b && !b.is_negative()) {
            return Optimum::new(ExtendedValue::PlusInfinity, None);
        }
        if b.is_zero() {
            return Optimum::new(
                ExtendedValue::finite(a.clone(), true),
                Some(Vector::finite_support([(0, a.clone())])),
            );
        }
        Optimum::new(
            ExtendedValue::finite(Rational::zero(), true),
            Some(mass_with_moment(b, a, 1)),
        )
    }

    /// `inf{⟨x, c - y⟩ : x primal-feasible for b + z}` with minimizer when
    /// attained. Infima can be finite yet unattained here: the tail mass may
    /// need to escape to ever larger indices.
    pub fn primal_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        let (a, b) = self.shifted(z)?;
        let y_map = self.y_support(y)?;
        match y_map {
            None => Ok(self.primal_closed(&a, &b)),
            Some(m) if m.is_empty() => Ok(self.primal_closed(&a, &b)),
            Some(m) => self.tail_lp_optimum(&a, &b, m),
        }
    }

    /// Branch systems over `x_0..x_k, s, m`: the closed truncation branch
    /// (`s = m = 0`) and the strict positive-tail branch (`s > 0`).
    fn branch_systems(
        &self,
        a: &Rational,
        b: &Rational,
        k: usize,
    ) -> (LinearSystem, LinearSystem, usize, usize) {
        let s_var = k + 1;
        let m_var = k + 2;
        let nv = k + 3;
        let mut common = LinearSystem::new(nv);
        for i in 0..=k {
            let mut normal = alloc::vec![Rational::zero(); nv];
            normal[i] = Rational::one();
            common.push(Constraint::new(normal, Relation::Ge, Rational::zero()));
        }
        let mut s_nonneg = alloc::vec![Rational::zero(); nv];
        s_nonneg[s_var] = Rational::one();
        common.push(Constraint::new(s_nonneg, Relation::Ge, Rational::zero()));
        // x0 + Σ i x_i + m = a
        let mut moment = alloc::vec![Rational::zero(); nv];
        moment[0] = Rational::one();
        for i in 1..=k {
            moment[i] = Rational::from_integer(BigInt::from(i));
        }
        moment[m_var] = Rational::one();
        common.push(Constraint::new(moment, Relation::Eq, a.clone()));
        // Σ x_i + s = b
        let mut mass = alloc::vec![Rational::zero(); nv];
        for i in 1..=k {
            mass[i] = Rational::one();
        }
        mass[s_var] = Rational::one();
        common.push(Constraint::new(mass, Relation::Eq, b.clone()));
        // m >= (k+1) s
        let mut tail = alloc::vec![Rational::zero(); nv];
        tail[m_var] = Rational::one();
        tail[s_var] = -Rational::from_integer(BigInt::from(k + 1));
        common.push(Constraint::new(tail, Relation::Ge, Rational::zero()));

        let mut closed = common.clone();
        let mut s_zero = alloc::vec![Rational::zero(); nv];
        s_zero[s_var] = Rational::one();
        closed.push(Constraint::new(s_zero, Relation::Eq, Rational::zero()));
        let mut m_zero = alloc::vec![Rational::zero(); nv];
        m_zero[m_var] = Rational::one();
        closed.push(Constraint::new(m_zero, Relation::Eq, Rational::zero()));

        let mut tailed = common;
        let mut s_pos = alloc::vec![Rational::zero(); nv];
        s_pos[s_var] = Rational::one();
        tailed.push(Constraint::new(s_pos, Relation::Gt, Rational::zero()));

        (closed, tailed, s_var, m_var)
    }

    fn tail_objective(&self, y: &BTreeMap<usize, Rational>, k: usize) -> Vec<Rational> {
        let mut objective = alloc::vec![Rational::zero(); k + 3];
        objective[0] = Rational::one() - y.get(&0).cloned().unwrap_or_else(Rational::zero);
        for i in 1..=k {
            if let Some(v) = y.get(&i) {
                objective[i] = -v.clone();
            }
        }
        objective
    }

    fn tail_lp_optimum(
        &self,
        a: &Rational,
        b: &Rational,
        y: &BTreeMap<usize, Rational>,
    ) -> Result<Optimum> {
        let k = y.keys().copied().max().unwrap_or(0);
        let (closed, tailed, s_var, m_var) = self.branch_systems(a, b, k);
        let objective = self.tail_objective(y, k);

        let no_tail = fm_optimize(&objective, &closed, Sense::Min)?;
        let with_tail = fm_optimize(&objective, &tailed, Sense::Min)?;
        let (value, attained_via) = combine_minima(&no_tail, &with_tail);

        let value_rational = match &value {
            Bound::Finite(v) => v.clone(),
            Bound::PlusInfinity => return Ok(Optimum::new(ExtendedValue::PlusInfinity, None)),
            Bound::MinusInfinity => {
                return Err(Error::Internal(
                    "sequence-family primal reported an unbounded value".into(),
                ))
            }
        };
        let attained = attained_via.is_some();
        let witness = match attained_via {
            Some(BranchChoice::NoTail) => {
                let outcome = lp_solve(&objective, &closed, Sense::Min)?;
                outcome.witness.map(|w| truncation_vector(&w, k))
            }
            Some(BranchChoice::WithTail) => {
                // pin the objective, then push the tail mass up to find an
                // attaining point with s > 0
                let mut pinned = tailed.clone();
                pinned.constraints.retain(|c| c.relation != Relation::Gt);
                let mut obj_row = objective.clone();
                obj_row.resize(pinned.num_vars, Rational::zero());
                pinned.push(Constraint::new(
                    obj_row,
                    Relation::Eq,
                    value_rational.clone(),
                ));
                let mut maximize_s = alloc::vec![Rational::zero(); pinned.num_vars];
                maximize_s[s_var] = Rational::one();
                let outcome = lp_solve(&maximize_s, &pinned, Sense::Max)?;
                match outcome.witness {
                    Some(w) if w[s_var].is_positive() => Some(tail_vector(&w, k, s_var, m_var)),
                    _ => {
                        return Err(Error::Internal(
                            "positive-tail attainment lost its witness".into(),
                        ))
                    }
                }
            }
            None => None,
        };
        Ok(Optimum::new(
            ExtendedValue::finite(value_rational, attained),
            witness,
        ))
    }

    /// A primal witness for the cost-perturbed `H`-membership question, or
    /// `None` when the point is outside the set.
    pub fn h_y_witness(&self, y: Option<&Vector>, pt: &SetPoint) -> Result<Option<Vector>> {
        let base = pt.base.dense_entries()?;
        let a = &self.alpha + &base[0];
        let b = &self.beta + &base[1];
        let y_map = self.y_support(y)?;
        match y_map {
            None => Ok(self.h_witness_closed(&a, &b, &pt.height)),
            Some(m) if m.is_empty() => Ok(self.h_witness_closed(&a, &b, &pt.height)),
            Some(m) => {
                let k = m.keys().copied().max().unwrap_or(0);
                let (mut closed, mut tailed, s_var, m_var) = self.branch_systems(&a, &b, k);
                let objective = self.tail_objective(m, k);
                // ⟨x, c - y⟩ <= height
                let mut bound = objective.iter().map(|v| -v.clone()).collect::<Vec<_>>();
                bound.resize(closed.num_vars, Rational::zero());
                closed.push(Constraint::new(
                    bound.clone(),
                    Relation::Ge,
                    -pt.height.clone(),
                ));
                tailed.push(Constraint::new(bound, Relation::Ge, -pt.height.clone()));

                let zero_obj = alloc::vec![Rational::zero(); closed.num_vars];
                let outcome = lp_solve(&zero_obj, &closed, Sense::Min)?;
                if let Some(w) = outcome.witness {
                    return Ok(Some(truncation_vector(&w, k)));
                }
                // strict branch: decide by projection, then recover a point
                if !crate::lp::fm_feasible(&tailed)? {
                    return Ok(None);
                }
                tailed.constraints.retain(|c| c.relation != Relation::Gt);
                let mut maximize_s = alloc::vec![Rational::zero(); tailed.num_vars];
                maximize_s[s_var] = Rational::one();
                let outcome = lp_solve(&maximize_s, &tailed, Sense::Max)?;
                match outcome.witness {
                    Some(w) if w[s_var].is_positive() => Ok(Some(tail_vector(&w, k, s_var, m_var))),
                    _ => Err(Error::Internal(
                        "strictly feasible tail branch lost its witness".into(),
                    )),
                }
            }
        }
    }

    fn h_witness_closed(&self, a: &Rational, b: &Rational, height: &Rational) -> Option<Vector> {
        // tail-free branch: x_0 = a, requires b = 0 and height >= a
        if b.is_zero() && !a.is_negative() && height >= a {
            return Some(Vector::finite_support([(0, a.clone())]));
        }
        // positive-tail branch: x_0 = 0, mass b > 0, moment a >= b
        if b.is_positive() && a >= b && !height.is_negative() {
            return Some(mass_with_moment(b, a, 1));
        }
        None
    }

    /// `sup{⟨z', w⟩ - r' : (z', r') ∈ H}` over the two closed-form branches.
    /// Suprema are insensitive to the strictness of the tail branch, so both
    /// branches are optimized as closed systems.
    pub fn sup_over_h(&self, w: &Vector) -> Result<Bound> {
        let w_entries = w.dense_entries()?;
        let (w1, w2) = (&w_entries[0], &w_entries[1]);
        let constant = -(&self.alpha * w1) - &self.beta * w2;

        // branch 1 over t1, t2 >= 0: t1 (w1 - 1) - t2
        let mut b1 = LinearSystem::new(2);
        for i in 0..2 {
            let mut normal = alloc::vec![Rational::zero(); 2];
            normal[i] = Rational::one();
            b1.push(Constraint::new(normal, Relation::Ge, Rational::zero()));
        }
        let o1 = alloc::vec![w1 - Rational::one(), -Rational::one()];
        let r1 = lp_solve(&o1, &b1, Sense::Max)?;

        // branch 2 (closure) over t1, t2, t3 >= 0: t1 w1 + t2 (w1 + w2) - t3
        let mut b2 = LinearSystem::new(3);
        for i in 0..3 {
            let mut normal = alloc::vec![Rational::zero(); 3];
            normal[i] = Rational::one();
            b2.push(Constraint::new(normal, Relation::Ge, Rational::zero()));
        }
        let o2 = alloc::vec![w1.clone(), w1 + w2, -Rational::one()];
        let r2 = lp_solve(&o2, &b2, Sense::Max)?;

        let to_bound = |outcome: &crate::lp::LpOutcome| match outcome.status {
            LpStatus::Optimal => Bound::Finite(outcome.value.clone().expect("optimal") + &constant),
            LpStatus::Unbounded => Bound::PlusInfinity,
            LpStatus::Infeasible => Bound::MinusInfinity,
        };
        let s1 = to_bound(&r1);
        let s2 = to_bound(&r2);
        Ok(max_bound(s1, s2))
    }
}

enum BranchChoice {
    NoTail,
    WithTail,
}

fn combine_minima(no_tail: &FmOptimum, with_tail: &FmOptimum) -> (Bound, Option<BranchChoice>) {
    let le = |a: &Bound, b: &Bound| -> bool {
        match (a, b) {
            (Bound::MinusInfinity, _) | (_, Bound::PlusInfinity) => true,
            (Bound::Finite(x), Bound::Finite(y)) => x <= y,
            _ => false,
        }
    };
    let value = if le(&no_tail.value, &with_tail.value) {
        no_tail.value.clone()
    } else {
        with_tail.value.clone()
    };
    let via = if no_tail.attained && no_tail.value == value {
        Some(BranchChoice::NoTail)
    } else if with_tail.attained && with_tail.value == value {
        Some(BranchChoice::WithTail)
    } else {
        None
    };
    (value, via)
}

fn max_bound(a: Bound, b: Bound) -> Bound {
    match (a, b) {
        (Bound::PlusInfinity, _) | (_, Bound::PlusInfinity) => Bound::PlusInfinity,
        (Bound::MinusInfinity, x) | (x, Bound::MinusInfinity) => x,
        (Bound::Finite(x), Bound::Finite(y)) => Bound::Finite(if x >= y { x } else { y }),
    }
}

/// Finitely supported nonnegative mass `s > 0` with weighted mass `m`,
/// placed on at most two adjacent indices around the mean `m/s`, all indices
/// at least `min_index`. Requires `m >= min_index * s`.
fn mass_with_moment(s: &Rational, m: &Rational, min_index: usize) -> Vector {
    debug_assert!(s.is_positive());
    let mean = m / s;
    debug_assert!(mean >= Rational::from_integer(BigInt::from(min_index)));
    let lower = crate::rational::floor_int(&mean);
    if crate::rational::is_integer(&mean) {
        let idx = big_to_usize(&lower);
        return Vector::finite_support([(idx, s.clone())]);
    }
    let low_idx = big_to_usize(&lower);
    let high_idx = low_idx + 1;
    let low_rat = Rational::from_integer(lower);
    // weights solving mass and moment exactly
    let high_weight = m - &low_rat * s;
    let low_weight = (&low_rat + Rational::one()) * s - m;
    Vector::finite_support([(low_idx, low_weight), (high_idx, high_weight)])
}

fn big_to_usize(v: &BigInt) -> usize {
    use num_traits::ToPrimitive;
    v.to_usize().expect("tail index fits in usize")
}

fn truncation_vector(witness: &[Rational], k: usize) -> Vector {
    Vector::finite_support((0..=k).map(|i| (i, witness[i].clone())))
}

fn tail_vector(witness: &[Rational], k: usize, s_var: usize, m_var: usize) -> Vector {
    let head = Vector::finite_support((0..=k).map(|i| (i, witness[i].clone())));
    let tail = mass_with_moment(&witness[s_var], &witness[m_var], k + 1);
    head.add(&tail).expect("disjoint supports")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn gale(a: i64, b: i64) -> GaleInstance {
        GaleInstance::new(int(a), int(b))
    }

    fn z2(a: i64, b: i64) -> Vector {
        Vector::dense_from_i64(&[a, b])
    }

    #[test]
    fn problem_wiring_matches_the_family() {
        let p = gale(1, 0).problem();
        assert_eq!(p.b(), &z2(1, 0));
        assert_eq!(p.c(), &Vector::finite_support([(0, int(1))]));
        assert_eq!(p.q(), &Cone::zero(2));
    }

    #[test]
    fn dual_domain_and_value() {
        let g = gale(1, 0);
        assert!(g.dual_domain_member(&z2(0, 0)).unwrap());
        assert_eq!(
            g.dual_value_closed(&z2(0, 0)).unwrap(),
            ExtendedValue::finite(int(0), true)
        );
        assert_eq!(
            g.dual_value_closed(&z2(0, -1)).unwrap(),
            ExtendedValue::PlusInfinity
        );
        // alpha < beta: the origin leaves the domain
        let g = GaleInstance::new(int(1), int(2));
        assert_eq!(
            g.dual_value_closed(&z2(0, 0)).unwrap(),
            ExtendedValue::PlusInfinity
        );
    }

    #[test]
    fn primal_closed_forms() {
        assert_eq!(
            gale(1, 0).primal_optimum(None, None).unwrap().value,
            ExtendedValue::finite(int(1), true)
        );
        let opt = gale(2, 1).primal_optimum(None, None).unwrap();
        assert_eq!(opt.value, ExtendedValue::finite(int(0), true));
        assert_eq!(opt.witness, Some(Vector::finite_support([(2, int(1))])));
        let opt = GaleInstance::new(frac(5, 2), int(1))
            .primal_optimum(None, None)
            .unwrap();
        assert_eq!(opt.value, ExtendedValue::finite(int(0), true));
        assert_eq!(
            opt.witness,
            Some(Vector::finite_support([(2, frac(1, 2)), (3, frac(1, 2))]))
        );
    }

    #[test]
    fn dual_closed_form_agrees_with_the_collapsed_lp() {
        for (a, b) in [(1, 0), (2, 1), (3, 3), (0, 0), (1, 2), (2, -1)] {
            let g = gale(a, b);
            let closed = g.dual_optimum(None, None).unwrap().value;
            let via_lp = g
                .dual_optimum(None, Some(&Vector::finite_support([(5, int(0))])))
                .unwrap()
                .value;
            // the support entry is zero, so the perturbation is trivial
            assert!(closed.same_value(&via_lp), "({a},{b})");
        }
    }

    #[test]
    fn h_membership_closed_form() {
        let g = gale(1, 0);
        // (m - alpha, -beta, m/2) lies outside H for m = 1
        assert!(!g.member_h_closed(&g.gap_witness()).unwrap());
        assert!(g.member_n_closed(&g.gap_witness()).unwrap());
        // (-alpha, -beta, 0) lies in H with x = 0
        let origin = SetPoint::new(z2(-1, 0), int(0));
        assert!(g.member_h_closed(&origin).unwrap());
    }

    #[test]
    fn unattained_infimum_from_a_cost_perturbation() {
        // minimize x_0 - x_1 over alpha = 2, beta = 1: rewarding index 1
        // forces the remaining moment onto an escaping tail, so the infimum
        // -1 is approached but never reached
        let g = gale(2, 1);
        let y = Vector::finite_support([(1, int(1))]);
        let opt = g.primal_optimum(None, Some(&y)).unwrap();
        assert_eq!(
            opt.value,
            ExtendedValue::Finite {
                value: int(-1),
                attained: false
            }
        );
        assert_eq!(opt.witness, None);

        // the same objective with beta = 0 is rigid and attained
        let g0 = gale(2, 0);
        let opt = g0.primal_optimum(None, Some(&y)).unwrap();
        assert_eq!(
            opt.value,
            ExtendedValue::Finite {
                value: int(2),
                attained: true
            }
        );
        assert_eq!(opt.witness, Some(Vector::finite_support([(0, int(2))])));
    }

    #[test]
    fn perturbed_primal_matches_shifted_family() {
        let g = gale(1, 0);
        let shifted = g.primal_optimum(Some(&z2(1, 1)), None).unwrap();
        let direct = gale(2, 1).primal_optimum(None, None).unwrap();
        assert_eq!(shifted.value, direct.value);
    }

    #[test]
    fn truncation_values() {
        let cases = [
            (gale(2, 1), 2usize, int(0)),
            (gale(1, 0), 1, int(1)),
            (gale(1, 0), 6, int(1)),
            (GaleInstance::new(frac(5, 2), int(1)), 1, frac(3, 2)),
            (GaleInstance::new(frac(5, 2), int(1)), 3, int(0)),
        ];
        for (g, n, expected) in cases {
            let truncated = g.truncate(n).unwrap();
            let value = truncated.val_primal().unwrap();
            assert_eq!(
                value,
                ExtendedValue::finite(expected.clone(), true),
                "alpha={} beta={} n={}",
                g.alpha,
                g.beta,
                n
            );
        }
    }

    #[test]
    fn mass_with_moment_solves_the_two_equations() {
        let v = mass_with_moment(&int(1), &frac(5, 2), 1);
        assert_eq!(
            v,
            Vector::finite_support([(2, frac(1, 2)), (3, frac(1, 2))])
        );
        let v = mass_with_moment(&frac(1, 3), &int(2), 1);
        // mean 6: single index
        assert_eq!(v, Vector::finite_support([(6, frac(1, 3))]));
    }
}
