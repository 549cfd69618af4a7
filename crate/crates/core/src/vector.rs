//! Vectors over the engine's space shapes, and the bilinear pairing.
//!
//! Three shapes are supported:
//!
//! * `Dense`: a coordinate vector in `R^n`;
//! * `FiniteSupport`: a sequence with finitely many nonzero terms, stored as
//!   an index → value map with no explicit zeros;
//! * `AffineTail`: a sequence whose entry at index 0 is an arbitrary value
//!   and whose entries at indices `i >= 1` follow the affine law
//!   `slope * i + intercept`. This is the lazy representation of the adjoint
//!   image of the Gale operator, which in general has infinite support.
//!
//! Dense vectors and sequence-shaped vectors live in different spaces; there
//! is no implicit conversion between them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::Rational;
use crate::space::Space;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Vector {
    Dense(Vec<Rational>),
    FiniteSupport(BTreeMap<usize, Rational>),
    AffineTail {
        at_zero: Rational,
        slope: Rational,
        intercept: Rational,
    },
}

impl Vector {
    pub fn dense(entries: Vec<Rational>) -> Vector {
        Vector::Dense(entries)
    }

    pub fn dense_from_i64(entries: &[i64]) -> Vector {
        Vector::Dense(entries.iter().map(|&n| crate::rational::int(n)).collect())
    }

    /// Finite-support vector; explicit zeros are dropped.
    pub fn finite_support<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> Vector {
        let map: BTreeMap<usize, Rational> =
            entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Vector::FiniteSupport(map)
    }

    /// Lazily represented sequence with affine entries past index 0.
    ///
    /// Collapses to a finite-support vector when the tail is identically
    /// zero, so that equal sequences compare equal across representations.
    pub fn affine_tail(at_zero: Rational, slope: Rational, intercept: Rational) -> Vector {
        if slope.is_zero() && intercept.is_zero() {
            Vector::finite_support([(0, at_zero)])
        } else {
            Vector::AffineTail {
                at_zero,
                slope,
                intercept,
            }
        }
    }

    pub fn zero(space: Space) -> Vector {
        match space {
            Space::Dense(n) => Vector::Dense(alloc::vec![Rational::zero(); n]),
            Space::FiniteSupport | Space::Sequences => Vector::FiniteSupport(BTreeMap::new()),
        }
    }

    /// Standard basis vector of a dense space.
    pub fn basis(dim: usize, index: usize) -> Vector {
        let mut entries = alloc::vec![Rational::zero(); dim];
        entries[index] = crate::rational::int(1);
        Vector::Dense(entries)
    }

    /// The space this vector naturally belongs to. Finite-support vectors
    /// report `FiniteSupport`; they are also valid members of `Sequences`.
    pub fn space(&self) -> Space {
        match self {
            Vector::Dense(v) => Space::Dense(v.len()),
            Vector::FiniteSupport(_) => Space::FiniteSupport,
            Vector::AffineTail { .. } => Space::Sequences,
        }
    }

    /// Whether the vector can stand for an element of `space`.
    pub fn fits(&self, space: Space) -> bool {
        match (self, space) {
            (Vector::Dense(v), Space::Dense(n)) => v.len() == n,
            (Vector::FiniteSupport(_), Space::FiniteSupport | Space::Sequences) => true,
            (Vector::AffineTail { .. }, Space::Sequences) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Vector::Dense(v) => v.iter().all(Zero::is_zero),
            Vector::FiniteSupport(m) => m.is_empty(),
            // at least one of slope/intercept is nonzero by construction
            Vector::AffineTail { .. } => false,
        }
    }

    /// Entry at an index, defined for every shape.
    pub fn entry(&self, i: usize) -> Rational {
        match self {
            Vector::Dense(v) => v.get(i).cloned().unwrap_or_else(Rational::zero),
            Vector::FiniteSupport(m) => m.get(&i).cloned().unwrap_or_else(Rational::zero),
            Vector::AffineTail {
                at_zero,
                slope,
                intercept,
            } => {
                if i == 0 {
                    at_zero.clone()
                } else {
                    slope * Rational::from_integer(BigInt::from(i)) + intercept
                }
            }
        }
    }

    pub fn dense_entries(&self) -> Result<&[Rational]> {
        match self {
            Vector::Dense(v) => Ok(v),
            other => Err(Error::Shape(alloc::format!(
                "expected a dense vector, found one in {}",
                other.space()
            ))),
        }
    }

    pub fn support(&self) -> Result<&BTreeMap<usize, Rational>> {
        match self {
            Vector::FiniteSupport(m) => Ok(m),
            other => Err(Error::Shape(alloc::format!(
                "expected a finite-support vector, found one in {}",
                other.space()
            ))),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        if factor.is_zero() {
            return Vector::zero(match self.space() {
                Space::Dense(n) => Space::Dense(n),
                _ => Space::FiniteSupport,
            });
        }
        match self {
            Vector::Dense(v) => Vector::Dense(v.iter().map(|x| x * factor).collect()),
            Vector::FiniteSupport(m) => {
                Vector::finite_support(m.iter().map(|(&i, v)| (i, v * factor)))
            }
            Vector::AffineTail {
                at_zero,
                slope,
                intercept,
            } => Vector::affine_tail(at_zero * factor, slope * factor, intercept * factor),
        }
    }

    pub fn neg(&self) -> Vector {
        self.scale(&crate::rational::int(-1))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        match (self, other) {
            (Vector::Dense(a), Vector::Dense(b)) => {
                if a.len() != b.len() {
                    return Err(Error::Shape(alloc::format!(
                        "cannot add vectors of dimensions {} and {}",
                        a.len(),
                        b.len()
                    )));
                }
                Ok(Vector::Dense(
                    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
                ))
            }
            (Vector::FiniteSupport(a), Vector::FiniteSupport(b)) => {
                let mut out = a.clone();
                for (&i, v) in b {
                    let sum = out.get(&i).cloned().unwrap_or_else(Rational::zero) + v;
                    if sum.is_zero() {
                        out.remove(&i);
                    } else {
                        out.insert(i, sum);
                    }
                }
                Ok(Vector::FiniteSupport(out))
            }
            (
                Vector::AffineTail {
                    at_zero: a0,
                    slope: s0,
                    intercept: i0,
                },
                Vector::AffineTail {
                    at_zero: a1,
                    slope: s1,
                    intercept: i1,
                },
            ) => Ok(Vector::affine_tail(a0 + a1, s0 + s1, i0 + i1)),
            _ => Err(Error::Shape(alloc::format!(
                "cannot add vectors in {} and {}",
                self.space(),
                other.space()
            ))),
        }
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add(&other.neg())
    }

    /// Renders the vector using the `"p/q"` scalar form, mainly for
    /// diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Vector::Dense(v) => {
                let parts: Vec<String> = v.iter().map(crate::rational::render_rational).collect();
                alloc::format!("({})", parts.join(", "))
            }
            Vector::FiniteSupport(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(i, v)| alloc::format!("{i}:{}", crate::rational::render_rational(v)))
                    .collect();
                alloc::format!("{{{}}}", parts.join(", "))
            }
            Vector::AffineTail {
                at_zero,
                slope,
                intercept,
            } => alloc::format!(
                "(at0={}, i>=1: {}*i+{})",
                crate::rational::render_rational(at_zero),
                crate::rational::render_rational(slope),
                crate::rational::render_rational(intercept)
            ),
        }
    }
}

/// Exact bilinear pairing.
///
/// Defined for dense-dense of equal dimension, and for a finite-support
/// vector against any sequence shape (the sum is finite). Everything else is
/// a shape error.
pub fn pair(x: &Vector, y: &Vector) -> Result<Rational> {
    match (x, y) {
        (Vector::Dense(a), Vector::Dense(b)) => {
            if a.len() != b.len() {
                return Err(Error::Shape(alloc::format!(
                    "pairing of dense vectors of dimensions {} and {}",
                    a.len(),
                    b.len()
                )));
            }
            Ok(a.iter().zip(b.iter()).map(|(u, v)| u * v).sum())
        }
        (
            Vector::FiniteSupport(m),
            other @ (Vector::FiniteSupport(_) | Vector::AffineTail { .. }),
        )
        | (other @ Vector::AffineTail { .. }, Vector::FiniteSupport(m)) => {
            Ok(m.iter().map(|(&i, v)| v * other.entry(i)).sum())
        }
        _ => Err(Error::Shape(alloc::format!(
            "pairing of vectors in {} and {}",
            x.space(),
            y.space()
        ))),
    }
}
