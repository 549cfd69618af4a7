//! Fourier–Motzkin elimination over exact rationals.
//!
//! Strict inequalities are first-class: pairing a strict bound with any other
//! bound yields a strict combination, and the optimizer reports whether the
//! extremal value is actually attained. Equality constraints are eliminated
//! by substitution, which keeps encoder-generated systems small.
//!
//! Projection blow-up is controlled by exact duplicate removal plus the
//! Kohler/Imbert ancestry rule: after `k` eliminations a derived constraint
//! combining more than `k + 1` original constraints is redundant and can be
//! dropped. The rule is only engaged above a size threshold and never applied
//! to strict constraints.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

use super::system::{Constraint, LinearSystem, Relation};

/// An extended bound: the value of an optimization that may be infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    MinusInfinity,
    Finite(Rational),
    PlusInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

/// Result of [`fm_optimize`]: exact optimal value and attainment flag. The
/// flag is meaningful only for finite values; infima over empty sets follow
/// the conventions `inf ∅ = +∞`, `sup ∅ = -∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmOptimum {
    pub value: Bound,
    pub attained: bool,
}

#[derive(Clone)]
struct Tracked {
    constraint: Constraint,
    ancestors: AncestorSet,
}

/// Small bitset over original constraint indices.
#[derive(Clone, PartialEq, Eq)]
struct AncestorSet {
    words: Vec<u64>,
    count: u32,
}

impl AncestorSet {
    fn singleton(index: usize, universe: usize) -> AncestorSet {
        let mut words = alloc::vec![0u64; universe.div_ceil(64)];
        words[index / 64] |= 1 << (index % 64);
        AncestorSet { words, count: 1 }
    }

    fn union(&self, other: &AncestorSet) -> AncestorSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        let count = words.iter().map(|w| w.count_ones()).sum();
        AncestorSet { words, count }
    }
}

/// Number of constraints above which the ancestry pruning rule engages.
const PRUNE_THRESHOLD: usize = 48;

struct Eliminator {
    tracked: Vec<Tracked>,
    eliminated: usize,
    all_nonstrict: bool,
}

impl Eliminator {
    fn new(system: &LinearSystem) -> Eliminator {
        let universe = system.constraints.len().max(1);
        let tracked = system
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| Tracked {
                constraint: c.clone(),
                ancestors: AncestorSet::singleton(i, universe),
            })
            .collect();
        Eliminator {
            tracked,
            eliminated: 0,
            all_nonstrict: !system.has_strict(),
        }
    }

    fn absurd_marker(&self) -> Option<&Constraint> {
        self.tracked
            .iter()
            .map(|t| &t.constraint)
            .find(|c| c.is_absurd())
    }

    /// Removes exact duplicates and trivial rows. Among a `Ge`/`Gt` pair with
    /// identical data the strict one is kept: the intersection of the two
    /// halfspaces is the strict one.
    fn normalize(&mut self) {
        let mut seen: BTreeMap<(Vec<num_bigint::BigInt>, num_bigint::BigInt, bool), usize> =
            BTreeMap::new();
        let mut kept: Vec<Tracked> = Vec::with_capacity(self.tracked.len());
        for t in self.tracked.drain(..) {
            if t.constraint.is_trivial() {
                continue;
            }
            let (normal, rhs, relation) = t.constraint.canonical_key();
            let key = (normal, rhs, relation == Relation::Eq);
            match seen.get(&key) {
                Some(&at) => {
                    let existing = &mut kept[at];
                    if t.constraint.relation == Relation::Gt
                        && existing.constraint.relation == Relation::Ge
                    {
                        *existing = t;
                    } else if t.ancestors.count < existing.ancestors.count {
                        existing.ancestors = t.ancestors;
                    }
                }
                None => {
                    seen.insert(key, kept.len());
                    kept.push(t);
                }
            }
        }
        self.tracked = kept;
    }

    fn eliminate(&mut self, var: usize) {
        // an absurd marker makes everything else irrelevant
        if let Some(marker) = self.absurd_marker() {
            self.tracked = alloc::vec![Tracked {
                constraint: marker.clone(),
                ancestors: AncestorSet {
                    words: Vec::new(),
                    count: 0
                },
            }];
            self.eliminated += 1;
            return;
        }

        // substitution step when an equality mentions the variable
        let pivot_idx = self.tracked.iter().position(|t| {
            t.constraint.relation == Relation::Eq && !t.constraint.normal[var].is_zero()
        });
        if let Some(pi) = pivot_idx {
            let pivot = self.tracked.swap_remove(pi);
            let pcoef = pivot.constraint.normal[var].clone();
            for t in self.tracked.iter_mut() {
                let coef = t.constraint.normal[var].clone();
                if coef.is_zero() {
                    continue;
                }
                let factor = &coef / &pcoef;
                for (slot, p) in t.constraint.normal.iter_mut().zip(&pivot.constraint.normal) {
                    *slot -= &factor * p;
                }
                t.constraint.rhs -= &factor * &pivot.constraint.rhs;
                t.constraint.normal[var] = Rational::zero();
                t.ancestors = t.ancestors.union(&pivot.ancestors);
            }
            self.eliminated += 1;
            self.normalize();
            return;
        }

        let mut lower: Vec<Tracked> = Vec::new();
        let mut upper: Vec<Tracked> = Vec::new();
        let mut rest: Vec<Tracked> = Vec::new();
        for t in self.tracked.drain(..) {
            let coef = &t.constraint.normal[var];
            if coef.is_zero() {
                rest.push(t);
            } else if coef.is_positive() {
                lower.push(t);
            } else {
                upper.push(t);
            }
        }

        self.eliminated += 1;
        let allowance = self.eliminated as u32 + 1;
        let prune = self.all_nonstrict && rest.len() + lower.len() * upper.len() > PRUNE_THRESHOLD;

        for lo in &lower {
            for up in &upper {
                let ancestors = lo.ancestors.union(&up.ancestors);
                if prune && ancestors.count > allowance {
                    continue;
                }
                let a = &lo.constraint.normal[var]; // > 0
                let b = &up.constraint.normal[var]; // < 0
                                                    // (-b) * lo + a * up eliminates the variable
                let scale_lo = -b.clone();
                let scale_up = a.clone();
                let normal: Vec<Rational> = lo
                    .constraint
                    .normal
                    .iter()
                    .zip(&up.constraint.normal)
                    .map(|(l, u)| l * &scale_lo + u * &scale_up)
                    .collect();
                let rhs = &lo.constraint.rhs * &scale_lo + &up.constraint.rhs * &scale_up;
                let relation = if lo.constraint.relation == Relation::Gt
                    || up.constraint.relation == Relation::Gt
                {
                    Relation::Gt
                } else {
                    Relation::Ge
                };
                rest.push(Tracked {
                    constraint: Constraint::new(normal, relation, rhs),
                    ancestors,
                });
            }
        }
        self.tracked = rest;
        self.normalize();
    }

    fn into_system(self, num_vars: usize) -> LinearSystem {
        LinearSystem {
            num_vars,
            constraints: self
                .tracked
                .into_iter()
                .map(|t| {
                    let mut c = t.constraint;
                    c.normal.resize(num_vars, Rational::zero());
                    c
                })
                .collect(),
        }
    }
}

/// Eliminates one variable. The result keeps the same variable count; the
/// eliminated coordinate no longer appears in any constraint, so the solution
/// set is the exact projection cylinder.
pub fn fm_eliminate(system: &LinearSystem, var: usize) -> Result<LinearSystem> {
    if var >= system.num_vars {
        return Err(Error::Precondition(alloc::format!(
            "cannot eliminate variable {var} from a system over {} variables",
            system.num_vars
        )));
    }
    let mut elim = Eliminator::new(system);
    elim.normalize();
    elim.eliminate(var);
    Ok(elim.into_system(system.num_vars))
}

/// Eliminates several variables, choosing the cheapest variable first.
pub fn fm_eliminate_all(system: &LinearSystem, vars: &[usize]) -> Result<LinearSystem> {
    for &v in vars {
        if v >= system.num_vars {
            return Err(Error::Precondition(alloc::format!(
                "cannot eliminate variable {v} from a system over {} variables",
                system.num_vars
            )));
        }
    }
    let mut elim = Eliminator::new(system);
    elim.normalize();
    let mut remaining: Vec<usize> = vars.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    while !remaining.is_empty() {
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| elimination_cost(&elim, v))
            .expect("nonempty");
        let _ = pos;
        remaining.retain(|&v| v != var);
        elim.eliminate(var);
    }
    Ok(elim.into_system(system.num_vars))
}

fn elimination_cost(elim: &Eliminator, var: usize) -> i64 {
    let mut pos = 0i64;
    let mut neg = 0i64;
    for t in &elim.tracked {
        let coef = &t.constraint.normal[var];
        if coef.is_zero() {
            continue;
        }
        if t.constraint.relation == Relation::Eq {
            // substitution is essentially free
            return i64::MIN;
        }
        if coef.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    pos * neg - pos - neg
}

/// Whether the system has any solution, decided by eliminating every
/// variable and checking for an absurd marker.
pub fn fm_feasible(system: &LinearSystem) -> Result<bool> {
    let all: Vec<usize> = (0..system.num_vars).collect();
    let projected = fm_eliminate_all(system, &all)?;
    Ok(!projected.has_absurd_marker())
}

/// Exact optimization by projection.
///
/// Introduces `t = objective · x`, eliminates all original variables and
/// reads the feasible interval of `t`. Infeasible systems give the empty-set
/// conventions `inf ∅ = +∞`, `sup ∅ = -∞`.
pub fn fm_optimize(
    objective: &[Rational],
    system: &LinearSystem,
    sense: Sense,
) -> Result<FmOptimum> {
    if objective.len() != system.num_vars {
        return Err(Error::Shape(alloc::format!(
            "objective over {} variables for a system over {}",
            objective.len(),
            system.num_vars
        )));
    }
    let n = system.num_vars;
    let mut extended = LinearSystem::new(n + 1);
    for c in &system.constraints {
        let mut normal = c.normal.clone();
        normal.push(Rational::zero());
        extended.push(Constraint::new(normal, c.relation, c.rhs.clone()));
    }
    // objective · x - t = 0
    let mut defining = objective.to_vec();
    defining.push(crate::rational::int(-1));
    extended.push(Constraint::new(defining, Relation::Eq, Rational::zero()));

    let vars: Vec<usize> = (0..n).collect();
    let projected = fm_eliminate_all(&extended, &vars)?;
    let empty = FmOptimum {
        value: match sense {
            Sense::Min => Bound::PlusInfinity,
            Sense::Max => Bound::MinusInfinity,
        },
        attained: false,
    };
    if projected.has_absurd_marker() {
        return Ok(empty);
    }

    // one-variable interval scan over t
    let mut lower: Option<(Rational, bool)> = None; // (value, open)
    let mut upper: Option<(Rational, bool)> = None;
    let raise_lower = |slot: &mut Option<(Rational, bool)>, value: Rational, open: bool| match slot
    {
        Some((v, o)) => {
            if value > *v {
                *slot = Some((value, open));
            } else if value == *v && open {
                *o = true;
            }
        }
        None => *slot = Some((value, open)),
    };
    let drop_upper = |slot: &mut Option<(Rational, bool)>, value: Rational, open: bool| match slot {
        Some((v, o)) => {
            if value < *v {
                *slot = Some((value, open));
            } else if value == *v && open {
                *o = true;
            }
        }
        None => *slot = Some((value, open)),
    };
    for c in &projected.constraints {
        let coef = &c.normal[n];
        if coef.is_zero() {
            debug_assert!(c.is_trivial());
            continue;
        }
        let bound = &c.rhs / coef;
        match c.relation {
            Relation::Eq => {
                raise_lower(&mut lower, bound.clone(), false);
                drop_upper(&mut upper, bound, false);
            }
            rel => {
                let open = rel == Relation::Gt;
                if coef.is_positive() {
                    raise_lower(&mut lower, bound, open);
                } else {
                    drop_upper(&mut upper, bound, open);
                }
            }
        }
    }

    // emptiness of the interval
    if let (Some((lo, lo_open)), Some((hi, hi_open))) = (&lower, &upper) {
        if lo > hi || (lo == hi && (*lo_open || *hi_open)) {
            return Ok(empty);
        }
    }

    let (bound, other) = match sense {
        Sense::Min => (&lower, &upper),
        Sense::Max => (&upper, &lower),
    };
    match bound {
        None => Ok(FmOptimum {
            value: match sense {
                Sense::Min => Bound::MinusInfinity,
                Sense::Max => Bound::PlusInfinity,
            },
            attained: false,
        }),
        Some((value, open)) => {
            // the extremum is attained when its own side is closed; the other
            // side cannot exclude it once the interval is nonempty
            let _ = other;
            Ok(FmOptimum {
                value: Bound::Finite(value.clone()),
                attained: !open,
            })
        }
    }
}
