//! Polyhedral cone representations, membership, dual and bidual cones, and
//! algebraic-core membership.
//!
//! Every cone contains the origin. The finite engine works with dense
//! polyhedral forms; the sequence-space orthants (`R_+^(N)` and its dual
//! `R_+^N`) are represented symbolically and support membership only.
//!
//! The dual of a generators-form cone is the inequalities-form cone with the
//! same data, which holds by the definition of the dual cone. The converse
//! identification (inequalities to generators) is certified at construction
//! time by two Fourier–Motzkin inclusion checks instead of being assumed.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::lp::{
    fm_eliminate_all, fm_optimize, lp_solve, AffExpr, Bound, LinearSystem, LpStatus, Relation,
    Sense, SystemBuilder,
};
use crate::rational::Rational;
use crate::space::Space;
use crate::vector::{pair, Vector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cone {
    /// Nonnegative combinations of finitely many dense vectors.
    Generators {
        gens: Vec<Vector>,
        ambient: Space,
    },
    /// `{x : ⟨x, n_j⟩ >= 0 for all j}` with dense normals.
    Inequalities {
        normals: Vec<Vector>,
        ambient: Space,
    },
    Orthant(Space),
    Zero(Space),
    Full(Space),
    /// Cartesian product of dense cones.
    Product(Vec<Cone>),
}

/// One row of an inequality description: `⟨normal, x⟩ >= 0`, or `= 0` when
/// `equality` is set. Cone descriptions are homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRow {
    pub normal: Vec<Rational>,
    pub equality: bool,
}

impl Cone {
    pub fn generators(gens: Vec<Vector>, dim: usize) -> Result<Cone> {
        for g in &gens {
            if !g.fits(Space::Dense(dim)) {
                return Err(Error::Shape(alloc::format!(
                    "generator {} does not live in R^{dim}",
                    g.describe()
                )));
            }
        }
        Ok(Cone::Generators {
            gens,
            ambient: Space::Dense(dim),
        })
    }

    pub fn inequalities(normals: Vec<Vector>, dim: usize) -> Result<Cone> {
        for n in &normals {
            if !n.fits(Space::Dense(dim)) {
                return Err(Error::Shape(alloc::format!(
                    "normal {} does not live in R^{dim}",
                    n.describe()
                )));
            }
        }
        Ok(Cone::Inequalities {
            normals,
            ambient: Space::Dense(dim),
        })
    }

    pub fn orthant(dim: usize) -> Cone {
        Cone::Orthant(Space::Dense(dim))
    }

    pub fn zero(dim: usize) -> Cone {
        Cone::Zero(Space::Dense(dim))
    }

    pub fn full(dim: usize) -> Cone {
        Cone::Full(Space::Dense(dim))
    }

    pub fn product(components: Vec<Cone>) -> Result<Cone> {
        for c in &components {
            if !c.ambient().is_dense() {
                return Err(Error::UnsupportedForm(
                    "product cones require dense components".into(),
                ));
            }
        }
        Ok(Cone::Product(components))
    }

    pub fn ambient(&self) -> Space {
        match self {
            Cone::Generators { ambient, .. } | Cone::Inequalities { ambient, .. } => *ambient,
            Cone::Orthant(s) | Cone::Zero(s) | Cone::Full(s) => *s,
            Cone::Product(cs) => {
                Space::Dense(cs.iter().map(|c| c.ambient().dim().unwrap_or(0)).sum())
            }
        }
    }

    /// Whether this cone is handled by the finite polyhedral engine.
    pub fn is_polyhedral(&self) -> bool {
        match self {
            Cone::Product(cs) => cs.iter().all(Cone::is_polyhedral),
            other => other.ambient().is_dense(),
        }
    }

    /// Exact membership.
    pub fn member(&self, x: &Vector) -> Result<bool> {
        if !x.fits(self.ambient()) {
            return Err(Error::Shape(alloc::format!(
                "membership of a vector in {} tested against a cone in {}",
                x.space(),
                self.ambient()
            )));
        }
        match self {
            Cone::Full(_) => Ok(true),
            Cone::Zero(_) => Ok(x.is_zero()),
            Cone::Orthant(Space::Dense(_)) => {
                Ok(x.dense_entries()?.iter().all(|v| !v.is_negative()))
            }
            Cone::Orthant(Space::FiniteSupport) => {
                Ok(x.support()?.values().all(|v| !v.is_negative()))
            }
            Cone::Orthant(Space::Sequences) => sequence_orthant_member(x),
            Cone::Inequalities { normals, .. } => {
                for n in normals {
                    if pair(x, n)?.is_negative() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Cone::Generators { gens, .. } => {
                let dim = self.ambient().dim().expect("dense ambient");
                let entries = x.dense_entries()?;
                let mut builder = SystemBuilder::new(gens.len());
                for lambda in 0..gens.len() {
                    builder.require(&AffExpr::variable(lambda), Relation::Ge);
                }
                for j in 0..dim {
                    let mut expr = AffExpr::constant(-entries[j].clone());
                    for (i, g) in gens.iter().enumerate() {
                        expr.add_term(i, g.dense_entries()?[j].clone());
                    }
                    builder.require(&expr, Relation::Eq);
                }
                let system = builder.finish();
                let objective = alloc::vec![Rational::zero(); system.num_vars];
                let outcome = lp_solve(&objective, &system, Sense::Min)?;
                Ok(outcome.status == LpStatus::Optimal)
            }
            Cone::Product(cs) => {
                let entries = x.dense_entries()?;
                let mut offset = 0;
                for c in cs {
                    let d = c.ambient().dim().ok_or_else(|| {
                        Error::UnsupportedForm("product components must be dense".into())
                    })?;
                    let piece = Vector::dense(entries[offset..offset + d].to_vec());
                    if !c.member(&piece)? {
                        return Ok(false);
                    }
                    offset += d;
                }
                Ok(true)
            }
        }
    }

    /// The dual cone in the dual space.
    pub fn dual(&self) -> Result<Cone> {
        match self {
            Cone::Generators { gens, ambient } => Ok(Cone::Inequalities {
                normals: gens.clone(),
                ambient: ambient.dual(),
            }),
            Cone::Inequalities { normals, ambient } => {
                certify_inequalities_dual(normals, ambient.dim().expect("dense"))?;
                Ok(Cone::Generators {
                    gens: normals.clone(),
                    ambient: ambient.dual(),
                })
            }
            Cone::Orthant(s) => Ok(Cone::Orthant(s.dual())),
            Cone::Zero(s) => Ok(Cone::Full(s.dual())),
            Cone::Full(s) => Ok(Cone::Zero(s.dual())),
            Cone::Product(cs) => Ok(Cone::Product(
                cs.iter().map(Cone::dual).collect::<Result<Vec<_>>>()?,
            )),
        }
    }

    /// Dual applied twice. For closed polyhedral cones the result equals the
    /// input extensionally; this is verified by mutual inclusion before
    /// returning.
    pub fn bidual(&self) -> Result<Cone> {
        let bidual = self.dual()?.dual()?;
        if !self.is_polyhedral() {
            return Ok(bidual);
        }
        if !extensionally_equal(self, &bidual)? {
            return Err(Error::Internal(
                "bidual of a closed polyhedral cone differs from the cone".into(),
            ));
        }
        Ok(bidual)
    }

    /// Generators, when this representation carries them directly.
    /// `None` for inequalities-form and sequence-space cones.
    pub fn generator_list(&self) -> Option<Vec<Vector>> {
        match self {
            Cone::Generators { gens, .. } => Some(gens.clone()),
            Cone::Orthant(Space::Dense(n)) => Some((0..*n).map(|i| Vector::basis(*n, i)).collect()),
            Cone::Zero(Space::Dense(_)) => Some(Vec::new()),
            Cone::Full(Space::Dense(n)) => Some(
                (0..*n)
                    .flat_map(|i| [Vector::basis(*n, i), Vector::basis(*n, i).neg()])
                    .collect(),
            ),
            Cone::Product(cs) => {
                let total = self.ambient().dim()?;
                let mut out = Vec::new();
                let mut offset = 0;
                for c in cs {
                    let d = c.ambient().dim()?;
                    for g in c.generator_list()? {
                        let entries = g.dense_entries().ok()?;
                        let mut padded = alloc::vec![Rational::zero(); total];
                        padded[offset..offset + d].clone_from_slice(entries);
                        out.push(Vector::dense(padded));
                    }
                    offset += d;
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// A finite homogeneous inequality description of a dense polyhedral
    /// cone. Generators-form cones are converted by projecting the lifted
    /// system `{x = Σ λ_i g_i, λ >= 0}` with Fourier–Motzkin.
    pub fn inequality_rows(&self) -> Result<Vec<ConeRow>> {
        let dim = self.ambient().dim().ok_or_else(|| {
            Error::UnsupportedForm(alloc::format!(
                "no finite inequality description for a cone in {}",
                self.ambient()
            ))
        })?;
        match self {
            Cone::Full(_) => Ok(Vec::new()),
            Cone::Zero(_) => Ok((0..dim)
                .map(|i| ConeRow {
                    normal: basis_row(dim, i),
                    equality: true,
                })
                .collect()),
            Cone::Orthant(_) => Ok((0..dim)
                .map(|i| ConeRow {
                    normal: basis_row(dim, i),
                    equality: false,
                })
                .collect()),
            Cone::Inequalities { normals, .. } => {
                let mut rows = Vec::with_capacity(normals.len());
                for n in normals {
                    // a zero normal is the vacuous constraint 0 >= 0
                    if n.is_zero() {
                        continue;
                    }
                    rows.push(ConeRow {
                        normal: n.dense_entries()?.to_vec(),
                        equality: false,
                    });
                }
                Ok(rows)
            }
            Cone::Generators { gens, .. } => generator_rows(gens, dim),
            Cone::Product(cs) => {
                let mut out = Vec::new();
                let mut offset = 0;
                for c in cs {
                    let d = c.ambient().dim().expect("dense component");
                    for row in c.inequality_rows()? {
                        let mut padded = alloc::vec![Rational::zero(); dim];
                        padded[offset..offset + d].clone_from_slice(&row.normal);
                        out.push(ConeRow {
                            normal: padded,
                            equality: row.equality,
                        });
                    }
                    offset += d;
                }
                Ok(out)
            }
        }
    }

    /// Algebraic-core membership.
    ///
    /// In finite dimensions the algebraic core coincides with the interior,
    /// which is exactly the set of points satisfying every inequality of a
    /// finite description strictly. The finite-support orthant has empty core
    /// in `R^(N)`: a candidate fails along directions of ever larger support.
    /// The same escalation argument empties the core of the sequence orthant.
    pub fn core_member(&self, x: &Vector) -> Result<bool> {
        if !x.fits(self.ambient()) {
            return Err(Error::Shape(alloc::format!(
                "core membership of a vector in {} tested against a cone in {}",
                x.space(),
                self.ambient()
            )));
        }
        match self {
            Cone::Orthant(Space::FiniteSupport) | Cone::Orthant(Space::Sequences) => Ok(false),
            Cone::Product(cs) => {
                let entries = x.dense_entries()?;
                let mut offset = 0;
                for c in cs {
                    let d = c.ambient().dim().ok_or_else(|| {
                        Error::UnsupportedForm("product components must be dense".into())
                    })?;
                    let piece = Vector::dense(entries[offset..offset + d].to_vec());
                    if !c.core_member(&piece)? {
                        return Ok(false);
                    }
                    offset += d;
                }
                Ok(true)
            }
            _ => {
                let entries = x.dense_entries()?;
                for row in self.inequality_rows()? {
                    let value: Rational = row.normal.iter().zip(entries).map(|(a, v)| a * v).sum();
                    let strict_ok = if row.equality {
                        // an implicit equality leaves no interior
                        false
                    } else {
                        value.is_positive()
                    };
                    if !strict_ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Constrains `exprs` (one affine expression per ambient coordinate) to
    /// lie in this cone, extending `builder` with auxiliary variables as the
    /// representation requires.
    pub fn constrain_membership(
        &self,
        builder: &mut SystemBuilder,
        exprs: &[AffExpr],
    ) -> Result<()> {
        let dim = self.ambient().dim().ok_or_else(|| {
            Error::UnsupportedForm(alloc::format!(
                "cannot encode membership in a cone over {}",
                self.ambient()
            ))
        })?;
        if exprs.len() != dim {
            return Err(Error::Shape(alloc::format!(
                "{} expressions constrained into a cone of dimension {dim}",
                exprs.len()
            )));
        }
        match self {
            Cone::Full(_) => Ok(()),
            Cone::Zero(_) => {
                for e in exprs {
                    builder.require(e, Relation::Eq);
                }
                Ok(())
            }
            Cone::Orthant(_) => {
                for e in exprs {
                    builder.require(e, Relation::Ge);
                }
                Ok(())
            }
            Cone::Inequalities { normals, .. } => {
                for n in normals {
                    let coefs = n.dense_entries()?;
                    let mut combined = AffExpr::constant(Rational::zero());
                    for (e, c) in exprs.iter().zip(coefs) {
                        combined = combined.plus(&e.scale(c));
                    }
                    builder.require(&combined, Relation::Ge);
                }
                Ok(())
            }
            Cone::Generators { gens, .. } => {
                let lambdas = builder.fresh_vars(gens.len());
                for l in lambdas.clone() {
                    builder.require(&AffExpr::variable(l), Relation::Ge);
                }
                for (j, e) in exprs.iter().enumerate() {
                    let mut eq = e.clone();
                    for (g, l) in gens.iter().zip(lambdas.clone()) {
                        eq.add_term(l, -g.dense_entries()?[j].clone());
                    }
                    builder.require(&eq, Relation::Eq);
                }
                Ok(())
            }
            Cone::Product(cs) => {
                let mut offset = 0;
                for c in cs {
                    let d = c.ambient().dim().expect("dense component");
                    c.constrain_membership(builder, &exprs[offset..offset + d])?;
                    offset += d;
                }
                Ok(())
            }
        }
    }
}

fn basis_row(dim: usize, index: usize) -> Vec<Rational> {
    let mut row = alloc::vec![Rational::zero(); dim];
    row[index] = crate::rational::int(1);
    row
}

/// Membership of a sequence-shaped vector in the full nonnegative orthant
/// `R_+^N`. Affine tails are decided from the sign of the slope.
fn sequence_orthant_member(x: &Vector) -> Result<bool> {
    match x {
        Vector::FiniteSupport(m) => Ok(m.values().all(|v| !v.is_negative())),
        Vector::AffineTail {
            at_zero,
            slope,
            intercept,
        } => {
            if at_zero.is_negative() {
                return Ok(false);
            }
            Ok(if slope.is_negative() {
                false
            } else if slope.is_zero() {
                !intercept.is_negative()
            } else {
                // increasing tail: the minimum over i >= 1 sits at i = 1
                !(slope + intercept).is_negative()
            })
        }
        Vector::Dense(_) => Err(Error::Shape(
            "dense vector tested against the sequence orthant".into(),
        )),
    }
}

/// Inequality description of `cone(gens)` by projecting out the multipliers.
fn generator_rows(gens: &[Vector], dim: usize) -> Result<Vec<ConeRow>> {
    let k = gens.len();
    let mut system = LinearSystem::new(dim + k);
    for (i, g) in gens.iter().enumerate() {
        let mut normal = alloc::vec![Rational::zero(); dim + k];
        normal[dim + i] = crate::rational::int(1);
        let _ = g;
        system.push(crate::lp::Constraint::new(
            normal,
            Relation::Ge,
            Rational::zero(),
        ));
    }
    for j in 0..dim {
        let mut normal = alloc::vec![Rational::zero(); dim + k];
        normal[j] = crate::rational::int(1);
        for (i, g) in gens.iter().enumerate() {
            normal[dim + i] = -g.dense_entries()?[j].clone();
        }
        system.push(crate::lp::Constraint::new(
            normal,
            Relation::Eq,
            Rational::zero(),
        ));
    }
    let lambdas: Vec<usize> = (dim..dim + k).collect();
    let projected = fm_eliminate_all(&system, &lambdas)?;
    let mut rows = Vec::new();
    for c in &projected.constraints {
        if c.is_trivial() {
            continue;
        }
        if !c.rhs.is_zero() || c.normal[dim..].iter().any(|v| !v.is_zero()) {
            return Err(Error::Internal(
                "projection of a lifted cone produced an inhomogeneous row".into(),
            ));
        }
        rows.push(ConeRow {
            normal: c.normal[..dim].to_vec(),
            equality: c.relation == Relation::Eq,
        });
    }
    Ok(rows)
}

/// The two construction-time inclusion checks for the identification
/// `{x : N x >= 0}* = cone(N)`.
///
/// The first verifies `cone(N) ⊆ C*`: each normal pairs nonnegatively with
/// the whole cone. The second verifies `C* ⊆ cone(N)`: every facet normal of
/// the projected description of `cone(N)` must itself satisfy `N m >= 0`,
/// which places `C*` inside each facet halfspace.
fn certify_inequalities_dual(normals: &[Vector], dim: usize) -> Result<()> {
    let mut cone_system = LinearSystem::new(dim);
    for n in normals {
        cone_system.push(crate::lp::Constraint::new(
            n.dense_entries()?.to_vec(),
            Relation::Ge,
            Rational::zero(),
        ));
    }
    for n in normals {
        let opt = fm_optimize(n.dense_entries()?, &cone_system, Sense::Min)?;
        if opt.value == Bound::MinusInfinity
            || matches!(&opt.value, Bound::Finite(v) if v.is_negative())
        {
            return Err(Error::Internal(
                "a defining normal pairs negatively with its own cone".into(),
            ));
        }
    }
    let facet_rows = generator_rows(normals, dim)?;
    let in_primal = |candidate: &[Rational]| -> Result<bool> {
        for n in normals {
            let value: Rational = n
                .dense_entries()?
                .iter()
                .zip(candidate)
                .map(|(a, v)| a * v)
                .sum();
            if value.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for row in &facet_rows {
        let negated: Vec<Rational> = row.normal.iter().map(|v| -v).collect();
        let ok = if row.equality {
            in_primal(&row.normal)? && in_primal(&negated)?
        } else {
            in_primal(&row.normal)?
        };
        if !ok {
            return Err(Error::Internal(
                "a facet of the generated dual cone escapes the primal cone".into(),
            ));
        }
    }
    Ok(())
}

/// Mutual inclusion of two dense polyhedral cones, decided exactly.
pub fn extensionally_equal(a: &Cone, b: &Cone) -> Result<bool> {
    Ok(includes(a, b)? && includes(b, a)?)
}

/// Whether `sub ⊆ sup`, for dense polyhedral cones.
pub fn includes(sup: &Cone, sub: &Cone) -> Result<bool> {
    if sup.ambient() != sub.ambient() {
        return Err(Error::Shape(alloc::format!(
            "inclusion of a cone in {} inside a cone in {}",
            sub.ambient(),
            sup.ambient()
        )));
    }
    if let Some(gens) = sub.generator_list() {
        for g in &gens {
            if !sup.member(g)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    // sub carries an inequality description; bound each facet of sup over it
    let dim = sub.ambient().dim().expect("dense");
    let mut sub_system = LinearSystem::new(dim);
    for row in sub.inequality_rows()? {
        let relation = if row.equality {
            Relation::Eq
        } else {
            Relation::Ge
        };
        sub_system.push(crate::lp::Constraint::new(
            row.normal,
            relation,
            Rational::zero(),
        ));
    }
    for row in sup.inequality_rows()? {
        let min = fm_optimize(&row.normal, &sub_system, Sense::Min)?;
        let below = min.value == Bound::MinusInfinity
            || matches!(&min.value, Bound::Finite(v) if v.is_negative());
        if below {
            return Ok(false);
        }
        if row.equality {
            let max = fm_optimize(&row.normal, &sub_system, Sense::Max)?;
            let above = max.value == Bound::PlusInfinity
                || matches!(&max.value, Bound::Finite(v) if v.is_positive());
            if above {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
