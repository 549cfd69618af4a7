//! Seeded random generation of instances, cones, and probe points.
//!
//! Everything here is deterministic in the seed, so sweep-style checks are
//! replayable. Consistent instances are built constructively: a feasible
//! primal point fixes `b`, a feasible dual point fixes `c`, so no rejection
//! loops are needed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::linmap::LinearMap;
use crate::perturb::{Problem, ProblemKind, SetPoint};
use crate::rational::Rational;
use crate::space::Space;
use crate::vector::{pair, Vector};
use crate::Result;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-max_abs, max_abs]` and denominator in
/// `{1, 2, 3}`.
pub fn rational(rng: &mut ChaCha8Rng, max_abs: i64) -> Rational {
    let numer = rng.gen_range(-max_abs..=max_abs);
    let denom = rng.gen_range(1..=3i64);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn nonnegative_rational(rng: &mut ChaCha8Rng, max_abs: i64) -> Rational {
    let numer = rng.gen_range(0..=max_abs);
    let denom = rng.gen_range(1..=3i64);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn dense_vector(rng: &mut ChaCha8Rng, dim: usize, max_abs: i64) -> Vector {
    Vector::dense((0..dim).map(|_| rational(rng, max_abs)).collect())
}

/// A finitely supported nonnegative sequence on indices `0..=top`.
pub fn finite_support_nonneg(rng: &mut ChaCha8Rng, top: usize, max_abs: i64) -> Vector {
    Vector::finite_support((0..=top).filter_map(|i| {
        if rng.gen_range(0..3) == 0 {
            Some((i, nonnegative_rational(rng, max_abs)))
        } else {
            None
        }
    }))
}

/// A finitely supported signed sequence on indices `0..=top`.
pub fn finite_support_signed(rng: &mut ChaCha8Rng, top: usize, max_abs: i64) -> Vector {
    Vector::finite_support((0..=top).filter_map(|i| {
        if rng.gen_range(0..3) == 0 {
            Some((i, rational(rng, max_abs)))
        } else {
            None
        }
    }))
}

/// A random polyhedral cone in `R^dim`, mixing all finite forms.
pub fn cone(rng: &mut ChaCha8Rng, dim: usize) -> Cone {
    cone_with_depth(rng, dim, 1)
}

fn cone_with_depth(rng: &mut ChaCha8Rng, dim: usize, depth: usize) -> Cone {
    let can_split = dim >= 2 && depth > 0;
    let roll = rng.gen_range(0..if can_split { 12 } else { 10 });
    match roll {
        0..=3 => Cone::orthant(dim),
        4..=5 => {
            let count = rng.gen_range(1..=dim + 1);
            let gens = (0..count).map(|_| dense_vector(rng, dim, 2)).collect();
            Cone::generators(gens, dim).expect("dense generators")
        }
        6..=7 => {
            let count = rng.gen_range(1..=dim + 1);
            let normals = (0..count).map(|_| dense_vector(rng, dim, 2)).collect();
            Cone::inequalities(normals, dim).expect("dense normals")
        }
        8 => Cone::full(dim),
        9 => Cone::zero(dim),
        _ => {
            let left = rng.gen_range(1..dim);
            let right = dim - left;
            Cone::product(alloc::vec![
                cone_with_depth(rng, left, depth - 1),
                cone_with_depth(rng, right, depth - 1),
            ])
            .expect("dense components")
        }
    }
}

/// A point of the cone: a random nonnegative combination of its generators
/// when the form carries them, the origin otherwise.
pub fn point_in_cone(rng: &mut ChaCha8Rng, cone: &Cone) -> Vector {
    let Some(gens) = cone.generator_list() else {
        return Vector::zero(cone.ambient());
    };
    let mut point = Vector::zero(cone.ambient());
    for g in &gens {
        if rng.gen_range(0..2) == 0 {
            continue;
        }
        let weight = nonnegative_rational(rng, 2);
        point = point.add(&g.scale(&weight)).expect("same space");
    }
    point
}

/// An arbitrary finite polyhedral instance; feasibility of either side is
/// not guaranteed.
pub fn problem(rng: &mut ChaCha8Rng) -> Problem {
    let nx = rng.gen_range(1..=4);
    let nz = rng.gen_range(1..=3);
    let rows: Vec<Vec<Rational>> = (0..nz)
        .map(|_| (0..nx).map(|_| rational(rng, 2)).collect())
        .collect();
    let p = cone(rng, nx);
    let q = cone(rng, nz);
    let b = dense_vector(rng, nz, 3);
    let c = dense_vector(rng, nx, 3);
    Problem::finite(
        LinearMap::matrix(rows).expect("consistent rows"),
        b,
        c,
        p,
        q,
    )
    .expect("validated by construction")
}

/// A finite instance with both sides consistent by construction: `b` is the
/// image of a feasible primal point, `c` the adjoint image of a feasible
/// dual point.
pub fn consistent_problem(rng: &mut ChaCha8Rng) -> Problem {
    let nx = rng.gen_range(1..=4);
    let nz = rng.gen_range(1..=3);
    let rows: Vec<Vec<Rational>> = (0..nz)
        .map(|_| (0..nx).map(|_| rational(rng, 2)).collect())
        .collect();
    let map = LinearMap::matrix(rows).expect("consistent rows");
    let p = cone(rng, nx);
    let q = cone(rng, nz);
    let p_star = p.dual().expect("polyhedral dual");
    let q_star = q.dual().expect("polyhedral dual");

    let x_hat = point_in_cone(rng, &p);
    let q_hat = point_in_cone(rng, &q);
    let b = map
        .apply(&x_hat)
        .expect("domain shape")
        .sub(&q_hat)
        .expect("same space");

    let w_hat = point_in_cone(rng, &q_star);
    let p_star_hat = point_in_cone(rng, &p_star);
    let c = map
        .adjoint_apply(&w_hat)
        .expect("codomain shape")
        .add(&p_star_hat)
        .expect("same space");

    Problem::finite(map, b, c, p, q).expect("validated by construction")
}

pub fn strictly_positive_rational(rng: &mut ChaCha8Rng, max_abs: i64) -> Rational {
    let numer = rng.gen_range(1..=max_abs);
    let denom = rng.gen_range(1..=3i64);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A finite instance biased toward the algebraic-core premises: `P` is an
/// orthant (so its dual has interior), the reduced cost at a feasible dual
/// point is strictly interior, and `b` is reached from a core point of `Q`.
/// The sweeps still decide the premises with the actual checkers.
pub fn core_biased_problem(rng: &mut ChaCha8Rng) -> Problem {
    let nx = rng.gen_range(1..=4);
    let nz = rng.gen_range(1..=3);
    let rows: Vec<Vec<Rational>> = (0..nz)
        .map(|_| (0..nx).map(|_| rational(rng, 2)).collect())
        .collect();
    let map = LinearMap::matrix(rows).expect("consistent rows");
    let p = Cone::orthant(nx);
    let q = if rng.gen_range(0..2) == 0 {
        Cone::orthant(nz)
    } else {
        Cone::full(nz)
    };

    let x_hat = Vector::dense((0..nx).map(|_| nonnegative_rational(rng, 2)).collect());
    let q_core = Vector::dense(
        (0..nz)
            .map(|_| strictly_positive_rational(rng, 3))
            .collect(),
    );
    let b = map
        .apply(&x_hat)
        .expect("domain shape")
        .sub(&q_core)
        .expect("same space");

    let w_hat = match q {
        // Q* degenerates to the origin when Q is the full space
        Cone::Full(_) => Vector::zero(Space::Dense(nz)),
        _ => Vector::dense((0..nz).map(|_| nonnegative_rational(rng, 2)).collect()),
    };
    let p_core = Vector::dense(
        (0..nx)
            .map(|_| strictly_positive_rational(rng, 3))
            .collect(),
    );
    let c = map
        .adjoint_apply(&w_hat)
        .expect("codomain shape")
        .add(&p_core)
        .expect("same space");

    Problem::finite(map, b, c, p, q).expect("validated by construction")
}

/// A random point of `H`, built from its parameterization
/// `(Ax - b - q, ⟨x, c⟩ + a)`.
pub fn h_point(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<SetPoint> {
    let (x, q) = match problem.kind() {
        ProblemKind::Finite => (
            point_in_cone(rng, problem.p()),
            point_in_cone(rng, problem.q()),
        ),
        ProblemKind::Gale(_) => (
            finite_support_nonneg(rng, 6, 3),
            Vector::zero(Space::Dense(2)),
        ),
    };
    let base = problem.map().apply(&x)?.sub(problem.b())?.sub(&q)?;
    let slack = nonnegative_rational(rng, 3);
    let height = pair(&x, problem.c())? + slack;
    Ok(SetPoint::new(base, height))
}

/// A random point of `K`, built from its parameterization
/// `(c - A*w - p*, ⟨b, w⟩ - a)`. For the sequence-space family the base is
/// kept finitely supported by perturbing only finitely many coordinates of
/// a dual-feasible image.
pub fn k_point(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<SetPoint> {
    let slack = nonnegative_rational(rng, 3);
    match problem.kind() {
        ProblemKind::Finite => {
            let w = point_in_cone(rng, problem.q_star());
            let p_star_pt = point_in_cone(rng, problem.p_star());
            let base = problem
                .c()
                .sub(&problem.map().adjoint_apply(&w)?)?
                .sub(&p_star_pt)?;
            let height = pair(problem.b(), &w)? - slack;
            Ok(SetPoint::new(base, height))
        }
        ProblemKind::Gale(_) => {
            // w with w1 <= 0 and w1 + w2 <= 0 is dual feasible; the residual
            // c - A*w is then a nonnegative sequence, and lowering finitely
            // many of its entries keeps the remainder in the dual orthant
            let minus_u = nonnegative_rational(rng, 2);
            let minus_v = nonnegative_rational(rng, 2);
            let w1 = -minus_u.clone();
            let w2 = minus_u - minus_v;
            let w = Vector::dense(alloc::vec![w1, w2]);
            let adjoint_image = problem.map().adjoint_apply(&w)?;
            let mut base_entries: Vec<(usize, Rational)> = Vec::new();
            for i in 0..=4usize {
                if rng.gen_range(0..2) == 0 {
                    continue;
                }
                let cap = problem.c().entry(i) - adjoint_image.entry(i);
                let lowered = nonnegative_rational(rng, 2);
                // base entry must stay at or below the residual entry
                let entry = if lowered > cap { cap } else { lowered };
                base_entries.push((i, entry));
            }
            let base = Vector::finite_support(base_entries);
            let height = pair(problem.b(), &w)? - slack;
            Ok(SetPoint::new(base, height))
        }
    }
}

/// A perturbation of the right shape for `z`, mixing raw randomness with
/// reachable values `Ax - b - q` and the origin.
pub fn z_perturbation(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<Vector> {
    let dim = match problem.z_space() {
        Space::Dense(n) => n,
        _ => 2,
    };
    Ok(match rng.gen_range(0..4) {
        0 => Vector::zero(Space::Dense(dim)),
        1 | 2 => dense_vector(rng, dim, 3),
        _ => h_point(rng, problem)?.base,
    })
}

/// A perturbation of the right shape for `y`: dense for finite instances,
/// finitely supported for the sequence-space family.
pub fn y_perturbation(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<Vector> {
    match problem.kind() {
        ProblemKind::Finite => {
            let dim = problem.y_space().dim().expect("finite dual space");
            Ok(match rng.gen_range(0..4) {
                0 => Vector::zero(Space::Dense(dim)),
                1 | 2 => dense_vector(rng, dim, 3),
                _ => k_point(rng, problem)?.base,
            })
        }
        ProblemKind::Gale(_) => Ok(match rng.gen_range(0..4) {
            0 => Vector::finite_support([]),
            1 | 2 => finite_support_signed(rng, 4, 2),
            _ => k_point(rng, problem)?.base,
        }),
    }
}

/// A point strictly outside `N` over a random base, when the instance has
/// one there.
pub fn point_outside_n(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<Option<SetPoint>> {
    let z = z_perturbation(rng, problem)?;
    match problem.dual_value(&z)? {
        crate::perturb::ExtendedValue::Finite { value, .. } => {
            let mut drop = nonnegative_rational(rng, 3);
            drop += crate::rational::frac(1, 2);
            Ok(Some(SetPoint::new(z, value - drop)))
        }
        crate::perturb::ExtendedValue::PlusInfinity => Ok(Some(SetPoint::new(z, rational(rng, 3)))),
        crate::perturb::ExtendedValue::MinusInfinity => Ok(None),
    }
}

/// A point strictly outside `M` over a random base, when the instance has
/// one there.
pub fn point_outside_m(rng: &mut ChaCha8Rng, problem: &Problem) -> Result<Option<SetPoint>> {
    let y = y_perturbation(rng, problem)?;
    match problem.primal_value(&y)? {
        crate::perturb::ExtendedValue::Finite { value, .. } => {
            let mut lift = nonnegative_rational(rng, 3);
            lift += crate::rational::frac(1, 2);
            Ok(Some(SetPoint::new(y, value + lift)))
        }
        crate::perturb::ExtendedValue::MinusInfinity => {
            Ok(Some(SetPoint::new(y, rational(rng, 3))))
        }
        crate::perturb::ExtendedValue::PlusInfinity => Ok(None),
    }
}
