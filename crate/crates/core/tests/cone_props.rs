//! Property sweeps over cone membership, duality and cores.

mod common;

use conelab::cone::{extensionally_equal, Cone};
use conelab::lp::{lp_solve, AffExpr, LpStatus, Sense, SystemBuilder};
use conelab::rational::Rational;
use conelab::sample;
use conelab::space::Space;
use conelab::vector::{pair, Vector};
use num_traits::{Signed, Zero};
use rand::Rng;

#[test]
fn cones_are_closed_under_nonnegative_combinations() {
    let mut rng = sample::rng_from_seed(20);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=4);
        let cone = sample::cone(&mut rng, dim);
        assert!(cone.member(&Vector::zero(Space::Dense(dim))).unwrap());
        let a = sample::point_in_cone(&mut rng, &cone);
        let b = sample::point_in_cone(&mut rng, &cone);
        let combo = a
            .scale(&sample::nonnegative_rational(&mut rng, 3))
            .add(&b.scale(&sample::nonnegative_rational(&mut rng, 3)))
            .unwrap();
        assert!(cone.member(&combo).unwrap());
    }
}

#[test]
fn duality_soundness_on_sampled_pairs() {
    let mut rng = sample::rng_from_seed(21);
    for _ in 0..60 {
        let dim = rng.gen_range(1..=4);
        let cone = sample::cone(&mut rng, dim);
        let dual = cone.dual().unwrap();
        // members of the dual pair nonnegatively with members of the cone
        for _ in 0..10 {
            let y = sample::dense_vector(&mut rng, dim, 3);
            if !dual.member(&y).unwrap() {
                continue;
            }
            let g = sample::point_in_cone(&mut rng, &cone);
            assert!(!pair(&g, &y).unwrap().is_negative());
        }
    }
}

#[test]
fn bidual_membership_equivalence() {
    let mut rng = sample::rng_from_seed(22);
    let mut checked = 0;
    for _ in 0..25 {
        let dim = rng.gen_range(1..=4);
        let cone = sample::cone(&mut rng, dim);
        let bidual = cone.bidual().unwrap();
        for _ in 0..20 {
            let x = sample::dense_vector(&mut rng, dim, 3);
            assert_eq!(cone.member(&x).unwrap(), bidual.member(&x).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 500);
}

#[test]
fn product_core_law() {
    let mut rng = sample::rng_from_seed(23);
    for _ in 0..30 {
        let da = rng.gen_range(1..=2);
        let db = rng.gen_range(1..=2);
        let a = sample::cone(&mut rng, da);
        let b = sample::cone(&mut rng, db);
        let product = Cone::product(vec![a.clone(), b.clone()]).unwrap();
        for _ in 0..10 {
            let xa = sample::dense_vector(&mut rng, da, 2);
            let xb = sample::dense_vector(&mut rng, db, 2);
            let mut entries = xa.dense_entries().unwrap().to_vec();
            entries.extend_from_slice(xb.dense_entries().unwrap());
            let joint = Vector::dense(entries);
            assert_eq!(
                product.core_member(&joint).unwrap(),
                a.core_member(&xa).unwrap() && b.core_member(&xb).unwrap()
            );
        }
    }
}

/// The strict-cone bounding fact: when a linear functional is bounded below
/// on a cone, the bound is nonpositive and the functional lies in the dual
/// cone. Operationally: for y in the dual cone the infimum over the cone is
/// exactly zero (attained at the origin); for y outside it is unbounded.
#[test]
fn bounded_below_functionals_live_in_the_dual() {
    let mut rng = sample::rng_from_seed(24);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=3);
        let cone = sample::cone(&mut rng, dim);
        let dual = cone.dual().unwrap();
        for _ in 0..8 {
            let y = sample::dense_vector(&mut rng, dim, 3);
            // minimize <x, y> for x in the cone, via the membership encoding
            let mut builder = SystemBuilder::new(dim);
            let exprs: Vec<AffExpr> = (0..dim).map(AffExpr::variable).collect();
            cone.constrain_membership(&mut builder, &exprs).unwrap();
            let system = builder.finish();
            let mut objective = vec![Rational::zero(); system.num_vars];
            for (j, slot) in objective.iter_mut().enumerate().take(dim) {
                *slot = y.dense_entries().unwrap()[j].clone();
            }
            let outcome = lp_solve(&objective, &system, Sense::Min).unwrap();
            if dual.member(&y).unwrap() {
                assert_eq!(outcome.status, LpStatus::Optimal);
                assert_eq!(outcome.value, Some(Rational::zero()));
            } else {
                assert_eq!(outcome.status, LpStatus::Unbounded);
                assert!(outcome.ray.is_some());
            }
        }
    }
}

#[test]
fn inequality_rows_describe_the_same_set() {
    let mut rng = sample::rng_from_seed(25);
    for _ in 0..30 {
        let dim = rng.gen_range(1..=3);
        let cone = sample::cone(&mut rng, dim);
        let rows = cone.inequality_rows().unwrap();
        for _ in 0..10 {
            let x = sample::dense_vector(&mut rng, dim, 3);
            let by_rows = rows.iter().all(|row| {
                let v: Rational = row
                    .normal
                    .iter()
                    .zip(x.dense_entries().unwrap())
                    .map(|(a, b)| a * b)
                    .sum();
                if row.equality {
                    v.is_zero()
                } else {
                    !v.is_negative()
                }
            });
            assert_eq!(by_rows, cone.member(&x).unwrap());
        }
    }
}

#[test]
fn dual_constructions_are_extensionally_involutive() {
    let mut rng = sample::rng_from_seed(26);
    for _ in 0..20 {
        let dim = rng.gen_range(1..=3);
        let cone = sample::cone(&mut rng, dim);
        let bidual = cone.dual().unwrap().dual().unwrap();
        assert!(extensionally_equal(&cone, &bidual).unwrap());
    }
}

#[test]
fn core_membership_against_a_direct_segment_probe() {
    // core points absorb every coordinate direction with a uniform margin;
    // boundary points fail at least one of them
    let mut rng = sample::rng_from_seed(27);
    let step = Rational::new(1.into(), 1000.into());
    for _ in 0..25 {
        let dim = rng.gen_range(1..=3);
        let cone = sample::cone(&mut rng, dim);
        let x = sample::point_in_cone(&mut rng, &cone);
        if !cone.core_member(&x).unwrap() {
            continue;
        }
        for j in 0..dim {
            for sign in [1i64, -1] {
                let probe = x
                    .add(
                        &Vector::basis(dim, j)
                            .scale(&(step.clone() * conelab::rational::int(sign))),
                    )
                    .unwrap();
                assert!(
                    cone.member(&probe).unwrap(),
                    "core point failed to absorb a small step"
                );
            }
        }
    }
}

#[test]
fn sequence_orthant_dual_pairings() {
    // the finite-support orthant and the sequence orthant are mutually dual
    let fs_orthant = Cone::Orthant(Space::FiniteSupport);
    let seq_orthant = fs_orthant.dual().unwrap();
    assert_eq!(seq_orthant, Cone::Orthant(Space::Sequences));
    assert_eq!(seq_orthant.dual().unwrap(), fs_orthant);
    let mut rng = sample::rng_from_seed(28);
    for _ in 0..50 {
        let x = sample::finite_support_nonneg(&mut rng, 8, 3);
        assert!(fs_orthant.member(&x).unwrap());
        let y = sample::finite_support_nonneg(&mut rng, 8, 3);
        assert!(!pair(&x, &y).unwrap().is_negative());
    }
    // cores are empty on both sides
    assert!(!fs_orthant
        .core_member(&sample::finite_support_nonneg(&mut rng, 4, 2))
        .unwrap());
}

/// Independent oracle for core membership: the point absorbs a common
/// strictly positive step along all signed axis directions. The convex hull
/// of those probes contains a ball, so this is exactly interiority.
#[test]
fn core_membership_against_a_strict_absorption_oracle() {
    use conelab::lp::{fm_feasible, Relation};
    let mut rng = sample::rng_from_seed(29);
    let mut agreements = 0;
    for _ in 0..40 {
        let dim = rng.gen_range(1..=3);
        let cone = sample::cone(&mut rng, dim);
        for _ in 0..6 {
            let x = if rng.gen_range(0..2) == 0 {
                sample::point_in_cone(&mut rng, &cone)
            } else {
                sample::dense_vector(&mut rng, dim, 2)
            };
            let mut builder = SystemBuilder::new(1);
            for j in 0..dim {
                for sign in [1i64, -1] {
                    let exprs: Vec<AffExpr> = (0..dim)
                        .map(|k| {
                            let mut e = AffExpr::constant(x.entry(k));
                            if k == j {
                                e.add_term(0, conelab::rational::int(sign));
                            }
                            e
                        })
                        .collect();
                    cone.constrain_membership(&mut builder, &exprs).unwrap();
                }
            }
            builder.require(&AffExpr::variable(0), Relation::Gt);
            let absorbs = fm_feasible(&builder.finish()).unwrap();
            assert_eq!(cone.core_member(&x).unwrap(), absorbs, "{cone:?} at {x:?}");
            agreements += 1;
        }
    }
    assert_eq!(agreements, 240);
}
