//! Linear systems of exact rational constraints.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `normal · x >= rhs`
    Ge,
    /// `normal · x > rhs`
    Gt,
    /// `normal · x = rhs`
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(normal: Vec<Rational>, relation: Relation, rhs: Rational) -> Constraint {
        Constraint {
            normal,
            relation,
            rhs,
        }
    }

    pub fn is_zero_normal(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    /// A zero-normal constraint that every point satisfies.
    pub fn is_trivial(&self) -> bool {
        self.is_zero_normal()
            && match self.relation {
                Relation::Ge => !self.rhs.is_positive(),
                Relation::Gt => self.rhs.is_negative(),
                Relation::Eq => self.rhs.is_zero(),
            }
    }

    /// A zero-normal constraint that no point satisfies (infeasibility
    /// marker).
    pub fn is_absurd(&self) -> bool {
        self.is_zero_normal() && !self.is_trivial()
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self.normal.iter().zip(point).map(|(a, x)| a * x).sum();
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// Integer canonical form under positive scaling: coefficients and rhs
    /// cleared of denominators and divided by their gcd. Equalities are also
    /// sign-normalized (first nonzero coefficient positive). Used for
    /// deduplication.
    pub fn canonical_key(&self) -> (Vec<BigInt>, BigInt, Relation) {
        let mut lcm = BigInt::one();
        for c in self.normal.iter().chain(core::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .normal
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut rhs_int = self.rhs.numer() * (&lcm / self.rhs.denom());
        let mut gcd = rhs_int.abs();
        for c in &ints {
            gcd = gcd.gcd(c);
        }
        if !gcd.is_zero() && !gcd.is_one() {
            for c in ints.iter_mut() {
                *c /= &gcd;
            }
            rhs_int /= &gcd;
        }
        if self.relation == Relation::Eq {
            let flip = match ints.iter().find(|c| !c.is_zero()) {
                Some(first) => first.is_negative(),
                None => rhs_int.is_negative(),
            };
            if flip {
                for c in ints.iter_mut() {
                    *c = -&*c;
                }
                rhs_int = -rhs_int;
            }
        }
        (ints, rhs_int, self.relation)
    }

    fn describe(&self) -> String {
        let mut lhs = String::new();
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    lhs.push('-');
                }
                first = false;
            } else {
                lhs.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if mag.is_one() {
                lhs.push_str(&alloc::format!("x{i}"));
            } else {
                lhs.push_str(&alloc::format!("{mag} x{i}"));
            }
        }
        if first {
            lhs.push('0');
        }
        let rel = match self.relation {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        };
        alloc::format!("{lhs} {rel} {}", self.rhs)
    }
}

/// A finite system of linear constraints over `num_vars` free variables.
/// The solution set is always convex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> LinearSystem {
        LinearSystem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.normal.len(), self.num_vars);
        self.constraints.push(c);
    }

    pub fn has_strict(&self) -> bool {
        self.constraints.iter().any(|c| c.relation == Relation::Gt)
    }

    pub fn has_absurd_marker(&self) -> bool {
        self.constraints.iter().any(Constraint::is_absurd)
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.num_vars {
            return Err(Error::Shape(alloc::format!(
                "point of dimension {} checked against a system over {} variables",
                point.len(),
                self.num_vars
            )));
        }
        Ok(self.constraints.iter().all(|c| c.satisfied_by(point)))
    }

    /// Human-readable inequality listing, for debugging.
    pub fn dump(&self) -> String {
        let mut out = alloc::format!("system over {} variable(s):\n", self.num_vars);
        for c in &self.constraints {
            out.push_str("  ");
            out.push_str(&c.describe());
            out.push('\n');
        }
        out
    }
}

/// An affine expression `Σ coef · var + constant`, used to pose cone
/// membership constraints about images of variables.
#[derive(Debug, Clone)]
pub struct AffExpr {
    pub terms: Vec<(usize, Rational)>,
    pub constant: Rational,
}

impl AffExpr {
    pub fn constant(value: Rational) -> AffExpr {
        AffExpr {
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn variable(index: usize) -> AffExpr {
        AffExpr {
            terms: alloc::vec![(index, crate::rational::int(1))],
            constant: Rational::zero(),
        }
    }

    pub fn scaled_var(index: usize, coef: Rational) -> AffExpr {
        AffExpr {
            terms: alloc::vec![(index, coef)],
            constant: Rational::zero(),
        }
    }

    pub fn add_term(&mut self, index: usize, coef: Rational) {
        if !coef.is_zero() {
            self.terms.push((index, coef));
        }
    }

    pub fn scale(&self, factor: &Rational) -> AffExpr {
        AffExpr {
            terms: self.terms.iter().map(|(i, c)| (*i, c * factor)).collect(),
            constant: &self.constant * factor,
        }
    }

    pub fn plus(&self, other: &AffExpr) -> AffExpr {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.constant += &other.constant;
        out
    }

    /// Evaluates at a concrete variable assignment.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut v = self.constant.clone();
        for (i, c) in &self.terms {
            v += c * &point[*i];
        }
        v
    }
}

/// Incrementally builds a [`LinearSystem`], allocating auxiliary variables as
/// cone encodings require them.
#[derive(Debug, Clone)]
pub struct SystemBuilder {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl SystemBuilder {
    pub fn new(num_vars: usize) -> SystemBuilder {
        SystemBuilder {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn fresh_vars(&mut self, count: usize) -> core::ops::Range<usize> {
        let start = self.num_vars;
        self.num_vars += count;
        start..self.num_vars
    }

    /// Adds the constraint `expr relation 0`.
    pub fn require(&mut self, expr: &AffExpr, relation: Relation) {
        let mut normal = alloc::vec![Rational::zero(); self.num_vars];
        for (i, c) in &expr.terms {
            normal[*i] += c;
        }
        let rhs = -expr.constant.clone();
        self.constraints
            .push(Constraint::new(normal, relation, rhs));
    }

    pub fn finish(self) -> LinearSystem {
        let num_vars = self.num_vars;
        let mut constraints = self.constraints;
        // earlier cone encodings may have shorter normals than late variables
        for c in constraints.iter_mut() {
            c.normal.resize(num_vars, Rational::zero());
        }
        LinearSystem {
            num_vars,
            constraints,
        }
    }
}
