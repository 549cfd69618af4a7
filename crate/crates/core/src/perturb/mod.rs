//! Conic programs with their perturbed optimal value functions and the
//! four associated sets.
//!
//! A [`Problem`] is the full datum of a primal/dual pair: minimize `⟨x, c⟩`
//! over `x ∈ P` with `Ax - b ∈ Q`, against maximize `⟨b, w⟩` over `w ∈ Q*`
//! with `c - A*w ∈ P*`. Two kinds exist: finite polyhedral instances solved
//! by the exact LP engines, and the parametric Gale sequence-space family
//! answered through its analytic closed forms.
//!
//! The four sets are queried through membership oracles:
//!
//! * `H`: pairs `(z, r)` carrying a primal-feasible point for the
//!   `z`-perturbed constraint with cost at most `r`;
//! * `K`: pairs `(y, r)` carrying a dual-feasible point for the
//!   `y`-perturbed dual with objective at least `r`;
//! * `N`: the epigraph of the perturbed dual value function;
//! * `M`: the hypograph of the perturbed primal value function.

mod separation;

pub use separation::Separator;

use alloc::vec::Vec;

use num_traits::Zero;

use crate::cone::Cone;
use crate::gale::GaleInstance;
use crate::linmap::LinearMap;
use crate::lp::{lp_solve, AffExpr, LpStatus, Relation, Sense, SystemBuilder};
use crate::rational::Rational;
use crate::space::Space;
use crate::vector::Vector;
use crate::{Error, Result};

/// An optimal value in the extended reals. The attainment flag is meaningful
/// only for finite values. Empty feasible sets follow `inf ∅ = +∞` and
/// `sup ∅ = -∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedValue {
    MinusInfinity,
    Finite { value: Rational, attained: bool },
    PlusInfinity,
}

impl ExtendedValue {
    pub fn finite(value: Rational, attained: bool) -> ExtendedValue {
        ExtendedValue::Finite { value, attained }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_attained(&self) -> bool {
        matches!(self, ExtendedValue::Finite { attained: true, .. })
    }

    /// `self <= r` in the extended order.
    pub fn at_most(&self, r: &Rational) -> bool {
        match self {
            ExtendedValue::MinusInfinity => true,
            ExtendedValue::Finite { value, .. } => value <= r,
            ExtendedValue::PlusInfinity => false,
        }
    }

    /// `self >= r` in the extended order.
    pub fn at_least(&self, r: &Rational) -> bool {
        match self {
            ExtendedValue::MinusInfinity => false,
            ExtendedValue::Finite { value, .. } => value >= r,
            ExtendedValue::PlusInfinity => true,
        }
    }

    /// Extended order comparison, ignoring attainment flags.
    pub fn leq(&self, other: &ExtendedValue) -> bool {
        match (self, other) {
            (ExtendedValue::MinusInfinity, _) | (_, ExtendedValue::PlusInfinity) => true,
            (ExtendedValue::Finite { value: a, .. }, ExtendedValue::Finite { value: b, .. }) => {
                a <= b
            }
            _ => false,
        }
    }

    /// Equality of values in the extended reals, ignoring attainment flags.
    pub fn same_value(&self, other: &ExtendedValue) -> bool {
        match (self, other) {
            (ExtendedValue::MinusInfinity, ExtendedValue::MinusInfinity) => true,
            (ExtendedValue::PlusInfinity, ExtendedValue::PlusInfinity) => true,
            (ExtendedValue::Finite { value: a, .. }, ExtendedValue::Finite { value: b, .. }) => {
                a == b
            }
            _ => false,
        }
    }
}

/// An optimal value together with an attaining witness when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: ExtendedValue,
    pub witness: Option<Vector>,
}

impl Optimum {
    pub fn new(value: ExtendedValue, witness: Option<Vector>) -> Optimum {
        Optimum { value, witness }
    }
}

/// Tally of one oracle cross-check run: verdict counts by status, with
/// every round having agreed between the two engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub rounds: usize,
    pub optimal: usize,
    pub unbounded: usize,
    pub infeasible: usize,
}

/// A point of `Z x R` (for `H`/`N`) or of `Y x R` (for `K`/`M`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPoint {
    pub base: Vector,
    pub height: Rational,
}

impl SetPoint {
    pub fn new(base: Vector, height: Rational) -> SetPoint {
        SetPoint { base, height }
    }
}

/// Report of a fiberwise slice comparison (`H` against `N` over a fixed `z`,
/// or `K` against `M` over a fixed `y`). The witness is the attaining primal
/// (resp. dual) point when the slices agree at a finite value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceReport {
    pub equal: bool,
    pub witness: Option<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemKind {
    Finite,
    Gale(GaleInstance),
}

/// The full datum of a primal/dual pair.
#[derive(Debug, Clone)]
pub struct Problem {
    kind: ProblemKind,
    a: LinearMap,
    b: Vector,
    c: Vector,
    p: Cone,
    q: Cone,
    p_star: Cone,
    q_star: Cone,
}

impl Problem {
    /// Builds a finite polyhedral instance. Shapes are validated here, and
    /// the dual cones are computed (and machine-certified) once.
    pub fn finite(a: LinearMap, b: Vector, c: Vector, p: Cone, q: Cone) -> Result<Problem> {
        let LinearMap::Matrix { rows } = &a else {
            return Err(Error::UnsupportedForm(
                "finite instances require a matrix map".into(),
            ));
        };
        if rows.is_empty() {
            return Err(Error::InvalidInput("the map needs at least one row".into()));
        }
        let nz = rows.len();
        let nx = rows[0].len();
        if nx == 0 {
            return Err(Error::InvalidInput(
                "the map needs at least one column".into(),
            ));
        }
        if !b.fits(Space::Dense(nz)) {
            return Err(Error::Shape(alloc::format!(
                "b must live in R^{nz}, found {}",
                b.space()
            )));
        }
        if !c.fits(Space::Dense(nx)) {
            return Err(Error::Shape(alloc::format!(
                "c must live in R^{nx}, found {}",
                c.space()
            )));
        }
        if p.ambient() != Space::Dense(nx) {
            return Err(Error::Shape(alloc::format!(
                "P must be a cone in R^{nx}, found one in {}",
                p.ambient()
            )));
        }
        if q.ambient() != Space::Dense(nz) {
            return Err(Error::Shape(alloc::format!(
                "Q must be a cone in R^{nz}, found one in {}",
                q.ambient()
            )));
        }
        if !p.is_polyhedral() || !q.is_polyhedral() {
            return Err(Error::UnsupportedForm(
                "finite instances require polyhedral cones".into(),
            ));
        }
        let p_star = p.dual()?;
        let q_star = q.dual()?;
        Ok(Problem {
            kind: ProblemKind::Finite,
            a,
            b,
            c,
            p,
            q,
            p_star,
            q_star,
        })
    }

    /// Wires the sequence-space family instance; used by [`GaleInstance`].
    pub(crate) fn gale_wired(instance: GaleInstance) -> Problem {
        let b = Vector::dense(alloc::vec![instance.alpha.clone(), instance.beta.clone()]);
        Problem {
            kind: ProblemKind::Gale(instance),
            a: LinearMap::Gale,
            b,
            c: Vector::finite_support([(0, crate::rational::int(1))]),
            p: Cone::Orthant(Space::FiniteSupport),
            q: Cone::zero(2),
            p_star: Cone::Orthant(Space::Sequences),
            q_star: Cone::full(2),
        }
    }

    pub fn kind(&self) -> &ProblemKind {
        &self.kind
    }

    pub fn map(&self) -> &LinearMap {
        &self.a
    }

    pub fn b(&self) -> &Vector {
        &self.b
    }

    pub fn c(&self) -> &Vector {
        &self.c
    }

    pub fn p(&self) -> &Cone {
        &self.p
    }

    pub fn q(&self) -> &Cone {
        &self.q
    }

    pub fn p_star(&self) -> &Cone {
        &self.p_star
    }

    pub fn q_star(&self) -> &Cone {
        &self.q_star
    }

    pub fn x_space(&self) -> Space {
        self.p.ambient()
    }

    pub fn y_space(&self) -> Space {
        self.p.ambient().dual()
    }

    pub fn z_space(&self) -> Space {
        self.q.ambient()
    }

    pub fn w_space(&self) -> Space {
        self.q.ambient().dual()
    }

    fn expect_z(&self, z: &Vector, what: &str) -> Result<()> {
        if z.fits(self.z_space()) {
            Ok(())
        } else {
            Err(Error::Shape(alloc::format!(
                "{what} must live in {}, found a vector in {}",
                self.z_space(),
                z.space()
            )))
        }
    }

    fn expect_y(&self, y: &Vector, what: &str) -> Result<()> {
        match self.kind {
            ProblemKind::Finite => {
                if y.fits(self.y_space()) {
                    return Ok(());
                }
            }
            // sequence-space perturbations are restricted to finite support
            ProblemKind::Gale(_) => {
                if matches!(y, Vector::FiniteSupport(_)) {
                    return Ok(());
                }
                if y.fits(self.y_space()) {
                    return Err(Error::Precondition(alloc::format!(
                        "{what} must be finitely supported for the sequence-space family"
                    )));
                }
            }
        }
        Err(Error::Shape(alloc::format!(
            "{what} must live in {}, found a vector in {}",
            self.y_space(),
            y.space()
        )))
    }

    // ------------------------------------------------------------------
    // finite-kind LP encoders
    // ------------------------------------------------------------------

    fn matrix_rows(&self) -> &[Vec<Rational>] {
        match &self.a {
            LinearMap::Matrix { rows } => rows,
            LinearMap::Gale => unreachable!("finite encoders run on matrix instances"),
        }
    }

    fn primal_dims(&self) -> (usize, usize) {
        let rows = self.matrix_rows();
        (rows[0].len(), rows.len())
    }

    /// System over `x` (variables `0..nx`) requiring `x ∈ P` and
    /// `Ax - b - z ∈ Q`.
    fn finite_primal_builder(&self, z: Option<&Vector>) -> Result<(SystemBuilder, usize)> {
        let (nx, nz) = self.primal_dims();
        let rows = self.matrix_rows();
        let mut builder = SystemBuilder::new(nx);
        let x_exprs: Vec<AffExpr> = (0..nx).map(AffExpr::variable).collect();
        self.p.constrain_membership(&mut builder, &x_exprs)?;
        let b_entries = self.b.dense_entries()?;
        let mut image = Vec::with_capacity(nz);
        for i in 0..nz {
            let mut shift = -b_entries[i].clone();
            if let Some(z) = z {
                shift -= &z.dense_entries()?[i];
            }
            let mut expr = AffExpr::constant(shift);
            for (j, coef) in rows[i].iter().enumerate() {
                expr.add_term(j, coef.clone());
            }
            image.push(expr);
        }
        self.q.constrain_membership(&mut builder, &image)?;
        Ok((builder, nx))
    }

    /// System over `w` (variables `0..nz`) requiring `w ∈ Q*` and
    /// `c - y - A*w ∈ P*`.
    fn finite_dual_builder(&self, y: Option<&Vector>) -> Result<(SystemBuilder, usize)> {
        let (nx, nz) = self.primal_dims();
        let rows = self.matrix_rows();
        let mut builder = SystemBuilder::new(nz);
        let w_exprs: Vec<AffExpr> = (0..nz).map(AffExpr::variable).collect();
        self.q_star.constrain_membership(&mut builder, &w_exprs)?;
        let c_entries = self.c.dense_entries()?;
        let mut reduced = Vec::with_capacity(nx);
        for j in 0..nx {
            let mut constant = c_entries[j].clone();
            if let Some(y) = y {
                constant -= &y.dense_entries()?[j];
            }
            let mut expr = AffExpr::constant(constant);
            for (i, row) in rows.iter().enumerate() {
                expr.add_term(i, -row[j].clone());
            }
            reduced.push(expr);
        }
        self.p_star.constrain_membership(&mut builder, &reduced)?;
        Ok((builder, nz))
    }

    fn finite_primal_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        let (builder, nx) = self.finite_primal_builder(z)?;
        let system = builder.finish();
        let c_entries = self.c.dense_entries()?;
        let mut objective = alloc::vec![Rational::zero(); system.num_vars];
        for j in 0..nx {
            objective[j] = c_entries[j].clone();
            if let Some(y) = y {
                objective[j] -= &y.dense_entries()?[j];
            }
        }
        let outcome = lp_solve(&objective, &system, Sense::Min)?;
        Ok(match outcome.status {
            LpStatus::Optimal => Optimum::new(
                ExtendedValue::finite(outcome.value.expect("optimal"), true),
                Some(Vector::dense(
                    outcome.witness.expect("optimal")[..nx].to_vec(),
                )),
            ),
            LpStatus::Unbounded => Optimum::new(ExtendedValue::MinusInfinity, None),
            LpStatus::Infeasible => Optimum::new(ExtendedValue::PlusInfinity, None),
        })
    }

    fn finite_dual_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        let (builder, nw) = self.finite_dual_builder(y)?;
        let system = builder.finish();
        let b_entries = self.b.dense_entries()?;
        let mut objective = alloc::vec![Rational::zero(); system.num_vars];
        for i in 0..nw {
            objective[i] = b_entries[i].clone();
            if let Some(z) = z {
                objective[i] += &z.dense_entries()?[i];
            }
        }
        let outcome = lp_solve(&objective, &system, Sense::Max)?;
        Ok(match outcome.status {
            LpStatus::Optimal => Optimum::new(
                ExtendedValue::finite(outcome.value.expect("optimal"), true),
                Some(Vector::dense(
                    outcome.witness.expect("optimal")[..nw].to_vec(),
                )),
            ),
            LpStatus::Unbounded => Optimum::new(ExtendedValue::PlusInfinity, None),
            LpStatus::Infeasible => Optimum::new(ExtendedValue::MinusInfinity, None),
        })
    }

    // ------------------------------------------------------------------
    // optimal values
    // ------------------------------------------------------------------

    /// Optimal value of the primal problem, with attainment flag.
    pub fn val_primal(&self) -> Result<ExtendedValue> {
        Ok(self.primal_optimum(None, None)?.value)
    }

    /// Optimal value of the dual problem, with attainment flag.
    pub fn val_dual(&self) -> Result<ExtendedValue> {
        Ok(self.dual_optimum(None, None)?.value)
    }

    /// Minimum of `⟨x, c - y⟩` over primal points feasible for `b + z`,
    /// together with a minimizer when the value is attained.
    pub fn primal_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        if let Some(z) = z {
            self.expect_z(z, "the perturbation z")?;
        }
        if let Some(y) = y {
            self.expect_y(y, "the perturbation y")?;
        }
        match &self.kind {
            ProblemKind::Finite => self.finite_primal_optimum(z, y),
            ProblemKind::Gale(g) => g.primal_optimum(z, y),
        }
    }

    /// Maximum of `⟨b + z, w⟩` over dual points feasible for `c - y`,
    /// together with a maximizer when the value is attained.
    pub fn dual_optimum(&self, z: Option<&Vector>, y: Option<&Vector>) -> Result<Optimum> {
        if let Some(z) = z {
            self.expect_z(z, "the perturbation z")?;
        }
        if let Some(y) = y {
            self.expect_y(y, "the perturbation y")?;
        }
        match &self.kind {
            ProblemKind::Finite => self.finite_dual_optimum(z, y),
            ProblemKind::Gale(g) => g.dual_optimum(z, y),
        }
    }

    /// The perturbed dual value function: `sup{⟨b + z, w⟩ : w ∈ F(D)}`.
    pub fn dual_value(&self, z: &Vector) -> Result<ExtendedValue> {
        Ok(self.dual_optimum(Some(z), None)?.value)
    }

    /// The perturbed primal value function: `inf{⟨x, c - y⟩ : x ∈ F(P)}`.
    pub fn primal_value(&self, y: &Vector) -> Result<ExtendedValue> {
        Ok(self.primal_optimum(None, Some(y))?.value)
    }

    /// Whether the primal feasible set for `b + z` is nonempty (equivalently,
    /// whether the `H`-slice over `z` is nonempty).
    pub fn primal_feasible_at(&self, z: Option<&Vector>) -> Result<bool> {
        Ok(!matches!(
            self.primal_optimum(z, None)?.value,
            ExtendedValue::PlusInfinity
        ))
    }

    /// Whether the dual feasible set for `c - y` is nonempty (equivalently,
    /// whether the `K`-slice over `y` is nonempty).
    pub fn dual_feasible_at(&self, y: Option<&Vector>) -> Result<bool> {
        Ok(!matches!(
            self.dual_optimum(None, y)?.value,
            ExtendedValue::MinusInfinity
        ))
    }

    // ------------------------------------------------------------------
    // set membership
    // ------------------------------------------------------------------

    /// Membership in `H`: some `x ∈ P` has `Ax - b - base ∈ Q` and
    /// `⟨x, c⟩ <= height`.
    pub fn member_h(&self, pt: &SetPoint) -> Result<bool> {
        Ok(self.h_witness(pt)?.is_some())
    }

    /// The primal point witnessing `H`-membership, when the point is in `H`.
    pub fn h_witness(&self, pt: &SetPoint) -> Result<Option<Vector>> {
        self.h_y_witness(None, pt)
    }

    /// Membership in the cost-perturbed set `H_y` (`c` replaced by `c - y`).
    pub fn member_h_y(&self, y: &Vector, pt: &SetPoint) -> Result<bool> {
        Ok(self.h_y_witness(Some(y), pt)?.is_some())
    }

    /// The primal point witnessing perturbed `H`-membership, when inside.
    pub fn h_y_witness(&self, y: Option<&Vector>, pt: &SetPoint) -> Result<Option<Vector>> {
        self.expect_z(&pt.base, "the base of an H point")?;
        if let Some(y) = y {
            self.expect_y(y, "the perturbation y")?;
        }
        match &self.kind {
            ProblemKind::Finite => {
                let (mut builder, nx) = self.finite_primal_builder(Some(&pt.base))?;
                let c_entries = self.c.dense_entries()?;
                let mut cost = AffExpr::constant(pt.height.clone());
                for j in 0..nx {
                    let mut coef = -c_entries[j].clone();
                    if let Some(y) = y {
                        coef += &y.dense_entries()?[j];
                    }
                    cost.add_term(j, coef);
                }
                // height - ⟨x, c - y⟩ >= 0
                builder.require(&cost, Relation::Ge);
                let system = builder.finish();
                let objective = alloc::vec![Rational::zero(); system.num_vars];
                let outcome = lp_solve(&objective, &system, Sense::Min)?;
                Ok(outcome.witness.map(|w| Vector::dense(w[..nx].to_vec())))
            }
            ProblemKind::Gale(g) => g.h_y_witness(y, pt),
        }
    }

    /// Membership in `N`, the epigraph of the perturbed dual value function.
    pub fn member_n(&self, pt: &SetPoint) -> Result<bool> {
        self.expect_z(&pt.base, "the base of an N point")?;
        Ok(self.dual_value(&pt.base)?.at_most(&pt.height))
    }

    /// Membership in `K`: some `w ∈ Q*` has `c - A*w - base ∈ P*` and
    /// `⟨b, w⟩ >= height`.
    pub fn member_k(&self, pt: &SetPoint) -> Result<bool> {
        Ok(self.k_witness(pt)?.is_some())
    }

    /// The dual point witnessing `K`-membership, when the point is in `K`.
    pub fn k_witness(&self, pt: &SetPoint) -> Result<Option<Vector>> {
        self.k_z_witness(None, pt)
    }

    /// Membership in the perturbed set `K_z` (`b` replaced by `b + z` in the
    /// height bound).
    pub fn member_k_z(&self, z: &Vector, pt: &SetPoint) -> Result<bool> {
        Ok(self.k_z_witness(Some(z), pt)?.is_some())
    }

    /// The dual point witnessing perturbed `K`-membership, when inside.
    pub fn k_z_witness(&self, z: Option<&Vector>, pt: &SetPoint) -> Result<Option<Vector>> {
        self.expect_y(&pt.base, "the base of a K point")?;
        if let Some(z) = z {
            self.expect_z(z, "the perturbation z")?;
        }
        match &self.kind {
            ProblemKind::Finite => {
                let (mut builder, nw) = self.finite_dual_builder(Some(&pt.base))?;
                let b_entries = self.b.dense_entries()?;
                let mut gain = AffExpr::constant(-pt.height.clone());
                for i in 0..nw {
                    let mut coef = b_entries[i].clone();
                    if let Some(z) = z {
                        coef += &z.dense_entries()?[i];
                    }
                    gain.add_term(i, coef);
                }
                // ⟨b + z, w⟩ - height >= 0
                builder.require(&gain, Relation::Ge);
                let system = builder.finish();
                let objective = alloc::vec![Rational::zero(); system.num_vars];
                let outcome = lp_solve(&objective, &system, Sense::Min)?;
                Ok(outcome.witness.map(|w| Vector::dense(w[..nw].to_vec())))
            }
            ProblemKind::Gale(g) => g.k_z_witness(z, pt),
        }
    }

    /// Membership in `M`, the hypograph of the perturbed primal value
    /// function.
    pub fn member_m(&self, pt: &SetPoint) -> Result<bool> {
        self.expect_y(&pt.base, "the base of an M point")?;
        Ok(self.primal_value(&pt.base)?.at_least(&pt.height))
    }

    /// Membership in the translated set `H' = H + {(b, 0)}`.
    pub fn member_h_translated(&self, pt: &SetPoint) -> Result<bool> {
        self.expect_z(&pt.base, "the base of an H' point")?;
        let shifted = SetPoint::new(pt.base.sub(&self.b)?, pt.height.clone());
        self.member_h(&shifted)
    }

    /// Membership in the translated set `K' = K - {(c, 0)}`.
    pub fn member_k_translated(&self, pt: &SetPoint) -> Result<bool> {
        self.expect_y(&pt.base, "the base of a K' point")?;
        let shifted = SetPoint::new(pt.base.add(&self.c)?, pt.height.clone());
        self.member_k(&shifted)
    }

    /// Membership in the algebraic closure of `H`.
    ///
    /// For finite instances `H` is an affine image of a polyhedral cone,
    /// hence closed, and the algebraic closure is `H` itself. For the
    /// sequence-space family the closure has the analytic form of the
    /// epigraph set `N`.
    pub fn member_acl_h(&self, pt: &SetPoint) -> Result<bool> {
        match &self.kind {
            ProblemKind::Finite => self.member_h(pt),
            ProblemKind::Gale(g) => {
                self.expect_z(&pt.base, "the base of an acl H point")?;
                g.closure_h_member(pt)
            }
        }
    }

    // ------------------------------------------------------------------
    // slice conditions
    // ------------------------------------------------------------------

    /// Whether the `H` and `N` slices over `z` agree.
    ///
    /// Both slices are upward-closed rays with `H ⊆ N`, so equality reduces
    /// to one membership test at the bottom of the `N`-slice: either the
    /// `N`-slice is empty, or `(z, v_D(z))` lies in `H`. When the dual is
    /// inconsistent (`v_D ≡ -∞`) the `N`-slice is the whole line and equality
    /// asks the perturbed primal to be unbounded below.
    pub fn slice_equal_h_n(&self, z: &Vector) -> Result<SliceReport> {
        self.expect_z(z, "the slice coordinate z")?;
        match self.dual_value(z)? {
            ExtendedValue::PlusInfinity => Ok(SliceReport {
                equal: true,
                witness: None,
            }),
            ExtendedValue::Finite { value, .. } => {
                let pt = SetPoint::new(z.clone(), value);
                let witness = self.h_witness(&pt)?;
                Ok(SliceReport {
                    equal: witness.is_some(),
                    witness,
                })
            }
            ExtendedValue::MinusInfinity => Ok(SliceReport {
                equal: matches!(
                    self.primal_optimum(Some(z), None)?.value,
                    ExtendedValue::MinusInfinity
                ),
                witness: None,
            }),
        }
    }

    /// Cross-checks the two LP engines on systems derived from this
    /// instance: the primal and dual feasibility systems under the real
    /// objectives and under randomly drawn ones. Any disagreement is an
    /// implementation bug and surfaces as an internal error. For the
    /// sequence-space family the analogue compares closed forms against the
    /// finite truncations instead.
    pub fn oracle_check(&self, seed: u64, rounds: usize) -> Result<OracleReport> {
        match &self.kind {
            ProblemKind::Finite => self.finite_oracle_check(seed, rounds),
            ProblemKind::Gale(g) => {
                let closed = g.problem().val_primal()?;
                let mut agreements = 0;
                for n in 1..=rounds.max(1).min(10) {
                    let truncated = g.truncate(n)?.val_primal()?;
                    match (&closed, &truncated) {
                        (ExtendedValue::PlusInfinity, t) => {
                            if !matches!(t, ExtendedValue::PlusInfinity) {
                                return Err(Error::Internal(
                                    "a truncation of an infeasible family was feasible".into(),
                                ));
                            }
                        }
                        (ExtendedValue::Finite { value, .. }, t) => {
                            if !t.at_least(value) {
                                return Err(Error::Internal(
                                    "a truncation dipped below the family value".into(),
                                ));
                            }
                        }
                        (ExtendedValue::MinusInfinity, _) => {
                            return Err(Error::Internal(
                                "the family value cannot be unbounded below".into(),
                            ))
                        }
                    }
                    agreements += 1;
                }
                Ok(OracleReport {
                    rounds: agreements,
                    optimal: agreements,
                    unbounded: 0,
                    infeasible: 0,
                })
            }
        }
    }

    fn finite_oracle_check(&self, seed: u64, rounds: usize) -> Result<OracleReport> {
        use crate::lp::{fm_optimize, verify_outcome, Bound};
        let mut rng = crate::sample::rng_from_seed(seed);
        let (nx, nz) = self.primal_dims();
        let mut report = OracleReport {
            rounds: 0,
            optimal: 0,
            unbounded: 0,
            infeasible: 0,
        };
        for round in 0..rounds {
            let (system, objective, sense) = if round % 2 == 0 {
                let (builder, _) = self.finite_primal_builder(None)?;
                let system = builder.finish();
                let mut objective = alloc::vec![Rational::zero(); system.num_vars];
                let c = self.c.dense_entries()?;
                for j in 0..nx {
                    objective[j] = if round == 0 {
                        c[j].clone()
                    } else {
                        crate::sample::rational(&mut rng, 3)
                    };
                }
                (system, objective, Sense::Min)
            } else {
                let (builder, _) = self.finite_dual_builder(None)?;
                let system = builder.finish();
                let mut objective = alloc::vec![Rational::zero(); system.num_vars];
                let b = self.b.dense_entries()?;
                for i in 0..nz {
                    objective[i] = if round == 1 {
                        b[i].clone()
                    } else {
                        crate::sample::rational(&mut rng, 3)
                    };
                }
                (system, objective, Sense::Max)
            };
            let fm = fm_optimize(&objective, &system, sense)?;
            let lp = lp_solve(&objective, &system, sense)?;
            if !verify_outcome(&objective, &system, sense, &lp) {
                return Err(Error::Internal(
                    "a pivoting certificate failed re-verification".into(),
                ));
            }
            let agreed = match lp.status {
                LpStatus::Optimal => {
                    report.optimal += 1;
                    fm.value == Bound::Finite(lp.value.clone().expect("optimal"))
                }
                LpStatus::Unbounded => {
                    report.unbounded += 1;
                    fm.value
                        == match sense {
                            Sense::Min => Bound::MinusInfinity,
                            Sense::Max => Bound::PlusInfinity,
                        }
                }
                LpStatus::Infeasible => {
                    report.infeasible += 1;
                    fm.value
                        == match sense {
                            Sense::Min => Bound::PlusInfinity,
                            Sense::Max => Bound::MinusInfinity,
                        }
                }
            };
            if !agreed {
                return Err(Error::Internal(alloc::format!(
                    "the two engines disagree on round {round}"
                )));
            }
            report.rounds += 1;
        }
        Ok(report)
    }

    /// Whether the `K` and `M` slices over `y` agree (mirror of
    /// [`Problem::slice_equal_h_n`] with downward-closed rays).
    pub fn slice_equal_k_m(&self, y: &Vector) -> Result<SliceReport> {
        self.expect_y(y, "the slice coordinate y")?;
        match self.primal_value(y)? {
            ExtendedValue::MinusInfinity => Ok(SliceReport {
                equal: true,
                witness: None,
            }),
            ExtendedValue::Finite { value, .. } => {
                let pt = SetPoint::new(y.clone(), value);
                let witness = self.k_witness(&pt)?;
                Ok(SliceReport {
                    equal: witness.is_some(),
                    witness,
                })
            }
            ExtendedValue::PlusInfinity => Ok(SliceReport {
                equal: matches!(
                    self.dual_optimum(None, Some(y))?.value,
                    ExtendedValue::PlusInfinity
                ),
                witness: None,
            }),
        }
    }
}
