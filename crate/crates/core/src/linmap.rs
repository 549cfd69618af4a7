//! Linear maps between the engine's spaces, with adjoints.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::Rational;
use crate::space::Space;
use crate::vector::{pair, Vector};
use crate::{Error, Result};

/// A linear map `A` together with its adjoint action.
///
/// The matrix form stores rows; row `i` encodes the functional
/// `x ↦ ⟨x, row_i⟩`, so `A x` is the vector of row pairings and `A* w` is the
/// row combination `Σ w_i row_i`.
///
/// `Gale` is the fixed operator of the sequence-space family: it maps a
/// finitely supported `x` to `(x_0 + Σ_{i≥1} i x_i, Σ_{i≥1} x_i)` in `R^2`,
/// and its adjoint sends `w ∈ R^2` to the sequence with entry `w_1` at index
/// 0 and `i w_1 + w_2` at indices `i ≥ 1`, kept lazy because it has infinite
/// support in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearMap {
    Matrix { rows: Vec<Vec<Rational>> },
    Gale,
}

impl LinearMap {
    /// Matrix map from rows; all rows must share one length.
    pub fn matrix(rows: Vec<Vec<Rational>>) -> Result<LinearMap> {
        if let Some(first) = rows.first() {
            let n = first.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidInput(
                    "matrix rows have inconsistent lengths".into(),
                ));
            }
        }
        Ok(LinearMap::Matrix { rows })
    }

    pub fn matrix_from_i64(rows: &[&[i64]]) -> LinearMap {
        LinearMap::Matrix {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&n| crate::rational::int(n)).collect())
                .collect(),
        }
    }

    pub fn domain(&self) -> Option<Space> {
        match self {
            LinearMap::Matrix { rows } => rows.first().map(|r| Space::Dense(r.len())),
            LinearMap::Gale => Some(Space::FiniteSupport),
        }
    }

    pub fn codomain(&self) -> Space {
        match self {
            LinearMap::Matrix { rows } => Space::Dense(rows.len()),
            LinearMap::Gale => Space::Dense(2),
        }
    }

    /// Exact image `A x`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        match self {
            LinearMap::Matrix { rows } => {
                let entries = x.dense_entries()?;
                if let Some(first) = rows.first() {
                    if first.len() != entries.len() {
                        return Err(Error::Shape(alloc::format!(
                            "matrix with {}-dimensional rows applied to a vector of dimension {}",
                            first.len(),
                            entries.len()
                        )));
                    }
                }
                Ok(Vector::dense(
                    rows.iter()
                        .map(|row| row.iter().zip(entries).map(|(a, v)| a * v).sum())
                        .collect(),
                ))
            }
            LinearMap::Gale => {
                let support = x.support()?;
                let mut weighted = Rational::zero();
                let mut total = Rational::zero();
                for (&i, v) in support {
                    if i == 0 {
                        weighted += v;
                    } else {
                        weighted += v * Rational::from_integer(BigInt::from(i));
                        total += v;
                    }
                }
                Ok(Vector::dense(alloc::vec![weighted, total]))
            }
        }
    }

    /// Exact adjoint image `A* w`, satisfying `⟨x, A*w⟩ = ⟨Ax, w⟩`.
    pub fn adjoint_apply(&self, w: &Vector) -> Result<Vector> {
        match self {
            LinearMap::Matrix { rows } => {
                let entries = w.dense_entries()?;
                if entries.len() != rows.len() {
                    return Err(Error::Shape(alloc::format!(
                        "adjoint of a {}-row matrix applied to a vector of dimension {}",
                        rows.len(),
                        entries.len()
                    )));
                }
                let n = rows.first().map(|r| r.len()).unwrap_or(0);
                let mut out = alloc::vec![Rational::zero(); n];
                for (row, wi) in rows.iter().zip(entries) {
                    for (slot, a) in out.iter_mut().zip(row) {
                        *slot += a * wi;
                    }
                }
                Ok(Vector::dense(out))
            }
            LinearMap::Gale => {
                let entries = w.dense_entries()?;
                if entries.len() != 2 {
                    return Err(Error::Shape(alloc::format!(
                        "gale adjoint applied to a vector of dimension {}",
                        entries.len()
                    )));
                }
                Ok(Vector::affine_tail(
                    entries[0].clone(),
                    entries[0].clone(),
                    entries[1].clone(),
                ))
            }
        }
    }
}

/// Checks the defining adjoint identity `⟨x, A*w⟩ = ⟨Ax, w⟩` on a concrete
/// pair, exactly.
pub fn adjoint_identity_holds(a: &LinearMap, x: &Vector, w: &Vector) -> Result<bool> {
    let lhs = pair(x, &a.adjoint_apply(w)?)?;
    let rhs = pair(&a.apply(x)?, w)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn matrix_apply_row_dot() {
        let a = LinearMap::matrix_from_i64(&[&[1, 1]]);
        let x = Vector::dense_from_i64(&[2, 0]);
        assert_eq!(a.apply(&x).unwrap(), Vector::dense_from_i64(&[2]));
    }

    #[test]
    fn gale_apply_example() {
        // x_0 = 1, x_2 = 3 maps to (1 + 2*3, 3) = (7, 3)
        let a = LinearMap::Gale;
        let x = Vector::finite_support([(0, int(1)), (2, int(3))]);
        assert_eq!(a.apply(&x).unwrap(), Vector::dense_from_i64(&[7, 3]));
    }

    #[test]
    fn apply_preserves_zero() {
        let a = LinearMap::matrix_from_i64(&[&[1, 1], &[0, 2]]);
        assert!(a.apply(&Vector::zero(Space::Dense(2))).unwrap().is_zero());
        assert!(LinearMap::Gale
            .apply(&Vector::zero(Space::FiniteSupport))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn matrix_adjoint_transpose_action() {
        let a = LinearMap::matrix_from_i64(&[&[1, 1]]);
        let w = Vector::dense_from_i64(&[1]);
        assert_eq!(
            a.adjoint_apply(&w).unwrap(),
            Vector::dense_from_i64(&[1, 1])
        );
    }

    #[test]
    fn gale_adjoint_lazy_sequence() {
        let w = Vector::dense_from_i64(&[0, -1]);
        let image = LinearMap::Gale.adjoint_apply(&w).unwrap();
        assert_eq!(image.entry(0), int(0));
        for i in 1..50 {
            assert_eq!(image.entry(i), int(-1));
        }
    }

    #[test]
    fn adjoint_identity_on_gale() {
        let x = Vector::finite_support([(0, int(2)), (1, int(-1)), (5, int(4))]);
        let w = Vector::dense_from_i64(&[3, -2]);
        assert!(adjoint_identity_holds(&LinearMap::Gale, &x, &w).unwrap());
    }
}
