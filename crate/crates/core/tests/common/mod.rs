//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use conelab::cone::Cone;
use conelab::gale::GaleInstance;
use conelab::linmap::LinearMap;
use conelab::perturb::Problem;
use conelab::rational::{frac, int, Rational};
use conelab::vector::Vector;

/// The reference finite instance: minimize x1 + 2 x2 over x >= 0 with
/// x1 + x2 - 2 >= 0. Both optimal values equal 2.
pub fn instance_i1() -> Problem {
    Problem::finite(
        LinearMap::matrix_from_i64(&[&[1, 1]]),
        Vector::dense_from_i64(&[2]),
        Vector::dense_from_i64(&[1, 2]),
        Cone::orthant(2),
        Cone::orthant(1),
    )
    .unwrap()
}

/// A small spread of consistent fixed instances exercising all cone forms.
pub fn fixed_instances() -> Vec<Problem> {
    let equality_constrained = Problem::finite(
        LinearMap::matrix_from_i64(&[&[1, 2, 1], &[0, 1, -1]]),
        Vector::dense_from_i64(&[3, 0]),
        Vector::dense_from_i64(&[1, 1, 2]),
        Cone::orthant(3),
        Cone::zero(2),
    )
    .unwrap();
    let generator_cone = Problem::finite(
        LinearMap::matrix_from_i64(&[&[1, -1]]),
        Vector::dense_from_i64(&[0]),
        Vector::dense_from_i64(&[2, 1]),
        Cone::generators(
            vec![
                Vector::dense_from_i64(&[1, 0]),
                Vector::dense_from_i64(&[1, 1]),
            ],
            2,
        )
        .unwrap(),
        Cone::orthant(1),
    )
    .unwrap();
    let mixed_product = Problem::finite(
        LinearMap::matrix_from_i64(&[&[1, 0], &[1, 1]]),
        Vector::dense_from_i64(&[-1, 0]),
        Vector::dense_from_i64(&[1, 3]),
        Cone::product(vec![Cone::full(1), Cone::orthant(1)]).unwrap(),
        Cone::product(vec![Cone::orthant(1), Cone::zero(1)]).unwrap(),
    )
    .unwrap();
    // c = A*(1/2) + (1/2)(1,1) keeps the dual side consistent
    let halfplane = Problem::finite(
        LinearMap::matrix_from_i64(&[&[2, 1]]),
        Vector::dense_from_i64(&[1]),
        Vector::dense(vec![frac(3, 2), int(1)]),
        Cone::inequalities(vec![Vector::dense_from_i64(&[1, 1])], 2).unwrap(),
        Cone::orthant(1),
    )
    .unwrap();
    vec![
        instance_i1(),
        equality_constrained,
        generator_cone,
        mixed_product,
        halfplane,
    ]
}

pub fn gale(alpha: i64, beta: i64) -> GaleInstance {
    GaleInstance::new(int(alpha), int(beta))
}

pub fn gale_frac(an: i64, ad: i64, bn: i64, bd: i64) -> GaleInstance {
    GaleInstance::new(
        Rational::new(an.into(), ad.into()),
        Rational::new(bn.into(), bd.into()),
    )
}
