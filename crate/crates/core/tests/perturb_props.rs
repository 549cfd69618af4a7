//! Property sweeps over the perturbed value functions and the four sets.

mod common;

use conelab::farkas::{farkas_dual, farkas_primal, strong_duality_dual, strong_duality_primal};
use conelab::perturb::{ExtendedValue, Problem, SetPoint};
use conelab::rational::{frac, int, Rational};
use conelab::sample;
use conelab::vector::Vector;

fn sweep_instances(count: usize, seed: u64) -> Vec<Problem> {
    let mut rng = sample::rng_from_seed(seed);
    let mut out = common::fixed_instances();
    for _ in 0..count {
        out.push(sample::consistent_problem(&mut rng));
    }
    out
}

#[test]
fn weak_duality_everywhere() {
    let mut rng = sample::rng_from_seed(3);
    for i in 0..250 {
        let p = if i % 2 == 0 {
            sample::problem(&mut rng)
        } else {
            sample::consistent_problem(&mut rng)
        };
        let primal = p.val_primal().unwrap();
        let dual = p.val_dual().unwrap();
        assert!(dual.leq(&primal), "instance {i}: weak duality violated");
    }
}

#[test]
fn h_inside_n_and_k_inside_m() {
    let mut rng = sample::rng_from_seed(4);
    for p in sweep_instances(10, 40) {
        for _ in 0..40 {
            let pt = sample::h_point(&mut rng, &p).unwrap();
            assert!(p.member_h(&pt).unwrap());
            assert!(p.member_n(&pt).unwrap());
            let pt = sample::k_point(&mut rng, &p).unwrap();
            assert!(p.member_k(&pt).unwrap());
            assert!(p.member_m(&pt).unwrap());
        }
    }
}

#[test]
fn epigraph_and_hypograph_are_midpoint_convex() {
    let mut rng = sample::rng_from_seed(5);
    let half = frac(1, 2);
    for p in sweep_instances(6, 41) {
        for _ in 0..25 {
            let a = sample::h_point(&mut rng, &p).unwrap();
            let b = sample::h_point(&mut rng, &p).unwrap();
            let mid = SetPoint::new(
                a.base.add(&b.base).unwrap().scale(&half),
                (&a.height + &b.height) * &half,
            );
            assert!(p.member_n(&mid).unwrap(), "N midpoint escaped");
            let a = sample::k_point(&mut rng, &p).unwrap();
            let b = sample::k_point(&mut rng, &p).unwrap();
            let mid = SetPoint::new(
                a.base.add(&b.base).unwrap().scale(&half),
                (&a.height + &b.height) * &half,
            );
            assert!(p.member_m(&mid).unwrap(), "M midpoint escaped");
        }
    }
}

#[test]
fn anchor_points_sit_in_their_sets() {
    let mut rng = sample::rng_from_seed(6);
    for p in sweep_instances(12, 42) {
        if let ExtendedValue::Finite { value, .. } = p.val_primal().unwrap() {
            let pt = SetPoint::new(Vector::zero(p.z_space()), value);
            assert!(p.member_n(&pt).unwrap(), "(0, val(P)) escaped N");
        }
        if let ExtendedValue::Finite { value, .. } = p.val_dual().unwrap() {
            let pt = SetPoint::new(Vector::zero(p.y_space()), value);
            assert!(p.member_m(&pt).unwrap(), "(0, val(D)) escaped M");
        }
        let _ = &mut rng;
    }
}

#[test]
fn dual_value_function_is_midpoint_convex() {
    let mut rng = sample::rng_from_seed(7);
    let half = frac(1, 2);
    for p in sweep_instances(8, 43) {
        for _ in 0..20 {
            let z1 = sample::z_perturbation(&mut rng, &p).unwrap();
            let z2 = sample::z_perturbation(&mut rng, &p).unwrap();
            let mid = z1.add(&z2).unwrap().scale(&half);
            let (v1, v2, vm) = (
                p.dual_value(&z1).unwrap(),
                p.dual_value(&z2).unwrap(),
                p.dual_value(&mid).unwrap(),
            );
            if let (
                ExtendedValue::Finite { value: a, .. },
                ExtendedValue::Finite { value: b, .. },
                ExtendedValue::Finite { value: m, .. },
            ) = (&v1, &v2, &vm)
            {
                assert!(*m <= (a + b) * &half, "v_D lost midpoint convexity");
            }
        }
    }
}

#[test]
fn primal_value_function_is_midpoint_concave() {
    let mut rng = sample::rng_from_seed(8);
    let half = frac(1, 2);
    for p in sweep_instances(8, 44) {
        for _ in 0..20 {
            let y1 = sample::y_perturbation(&mut rng, &p).unwrap();
            let y2 = sample::y_perturbation(&mut rng, &p).unwrap();
            let mid = y1.add(&y2).unwrap().scale(&half);
            let (v1, v2, vm) = (
                p.primal_value(&y1).unwrap(),
                p.primal_value(&y2).unwrap(),
                p.primal_value(&mid).unwrap(),
            );
            if let (
                ExtendedValue::Finite { value: a, .. },
                ExtendedValue::Finite { value: b, .. },
                ExtendedValue::Finite { value: m, .. },
            ) = (&v1, &v2, &vm)
            {
                assert!(*m >= (a + b) * &half, "v_P lost midpoint concavity");
            }
        }
    }
}

#[test]
fn optimal_values_match_their_slice_representations() {
    // val(P) = inf{r : (0, r) in H} probed at val ± 1/k, dually for val(D)
    for p in sweep_instances(8, 45) {
        if let ExtendedValue::Finite { value, attained } = p.val_primal().unwrap() {
            for k in 1..=16i64 {
                let above = SetPoint::new(Vector::zero(p.z_space()), &value + frac(1, k));
                assert!(p.member_h(&above).unwrap());
                let below = SetPoint::new(Vector::zero(p.z_space()), &value - frac(1, k));
                assert!(!p.member_h(&below).unwrap());
            }
            let at = SetPoint::new(Vector::zero(p.z_space()), value);
            assert_eq!(p.member_h(&at).unwrap(), attained);
        }
        if let ExtendedValue::Finite { value, attained } = p.val_dual().unwrap() {
            for k in 1..=16i64 {
                let below = SetPoint::new(Vector::zero(p.y_space()), &value - frac(1, k));
                assert!(p.member_k(&below).unwrap());
                let above = SetPoint::new(Vector::zero(p.y_space()), &value + frac(1, k));
                assert!(!p.member_k(&above).unwrap());
            }
            let at = SetPoint::new(Vector::zero(p.y_space()), value);
            assert_eq!(p.member_k(&at).unwrap(), attained);
        }
    }
}

#[test]
fn separators_certify_against_the_whole_sets() {
    let mut rng = sample::rng_from_seed(9);
    for p in sweep_instances(8, 46) {
        let mut found_n = 0;
        let mut found_m = 0;
        for _ in 0..40 {
            if let Some(pt) = sample::point_outside_n(&mut rng, &p).unwrap() {
                let sep = p.separate_from_n(&pt).unwrap();
                assert!(p.verify_separator_n(&sep, &pt).unwrap());
                found_n += 1;
            }
            if let Some(pt) = sample::point_outside_m(&mut rng, &p).unwrap() {
                let sep = p.separate_from_m(&pt).unwrap();
                assert!(p.verify_separator_m(&sep, &pt).unwrap());
                found_m += 1;
            }
        }
        assert!(
            found_n > 0 && found_m > 0,
            "sampler produced no outside points"
        );
    }
}

#[test]
fn acl_h_stays_inside_n() {
    let mut rng = sample::rng_from_seed(10);
    for p in sweep_instances(8, 47) {
        for _ in 0..40 {
            let pt = sample::h_point(&mut rng, &p).unwrap();
            assert!(p.member_acl_h(&pt).unwrap());
            assert!(p.member_n(&pt).unwrap());
        }
    }
    // the sequence-space closure: sampled closure members stay in N
    let g = common::gale(1, 0).problem();
    for _ in 0..100 {
        let pt = sample::h_point(&mut rng, &g).unwrap();
        assert!(g.member_acl_h(&pt).unwrap());
        assert!(g.member_n(&pt).unwrap());
    }
}

#[test]
fn farkas_equivalence_across_alpha_grid_on_finite_instances() {
    let mut rng = sample::rng_from_seed(11);
    for p in sweep_instances(4, 48) {
        for _ in 0..4 {
            let z = sample::z_perturbation(&mut rng, &p).unwrap();
            if !p.slice_equal_h_n(&z).unwrap().equal {
                continue;
            }
            let levels = alpha_grid(&mut rng, &p.dual_value(&z).unwrap());
            for alpha in levels {
                let verdict = farkas_primal(&p, &z, &alpha).unwrap();
                assert!(verdict.equivalent, "farkas_primal equivalence failed");
            }
            let y = sample::y_perturbation(&mut rng, &p).unwrap();
            if !p.slice_equal_k_m(&y).unwrap().equal {
                continue;
            }
            let levels = alpha_grid(&mut rng, &p.primal_value(&y).unwrap());
            for alpha in levels {
                let verdict = farkas_dual(&p, &y, &alpha).unwrap();
                assert!(verdict.equivalent, "farkas_dual equivalence failed");
            }
        }
    }
}

fn alpha_grid(rng: &mut rand_chacha::ChaCha8Rng, around: &ExtendedValue) -> Vec<Rational> {
    let mut grid = Vec::new();
    if let ExtendedValue::Finite { value, .. } = around {
        grid.push(value - int(2));
        grid.push(value - frac(1, 3));
        grid.push(value.clone());
        grid.push(value + frac(1, 3));
        grid.push(value + int(2));
    }
    for _ in 0..5 {
        grid.push(sample::rational(rng, 4));
    }
    grid
}

#[test]
fn strong_duality_reports_are_internally_consistent() {
    // the biconditional checks live inside the report constructors and fail
    // loudly as internal errors, so sweeping them is the assertion
    let mut rng = sample::rng_from_seed(12);
    for p in sweep_instances(8, 49) {
        for _ in 0..6 {
            let z = sample::z_perturbation(&mut rng, &p).unwrap();
            strong_duality_primal(&p, &z).unwrap();
            let y = sample::y_perturbation(&mut rng, &p).unwrap();
            strong_duality_dual(&p, &y).unwrap();
        }
    }
    // including on inconsistent instances, where the reports take no stance
    for i in 0..40 {
        let p = sample::problem(&mut rng);
        let z = sample::z_perturbation(&mut rng, &p).unwrap();
        strong_duality_primal(&p, &z).unwrap_or_else(|e| panic!("inconsistent instance {i}: {e}"));
        let y = sample::y_perturbation(&mut rng, &p).unwrap();
        strong_duality_dual(&p, &y).unwrap_or_else(|e| panic!("inconsistent instance {i}: {e}"));
    }
}

#[test]
fn perturbed_memberships_reduce_to_plain_ones_at_zero() {
    let mut rng = sample::rng_from_seed(13);
    for p in sweep_instances(6, 50) {
        let zero_z = Vector::zero(p.z_space());
        let zero_y = Vector::zero(p.y_space());
        for _ in 0..35 {
            let hp = sample::h_point(&mut rng, &p).unwrap();
            assert_eq!(
                p.member_h(&hp).unwrap(),
                p.member_h_y(&zero_y, &hp).unwrap()
            );
            let kp = sample::k_point(&mut rng, &p).unwrap();
            assert_eq!(
                p.member_k(&kp).unwrap(),
                p.member_k_z(&zero_z, &kp).unwrap()
            );
            // random points, mostly outside
            let z = sample::z_perturbation(&mut rng, &p).unwrap();
            let pt = SetPoint::new(z, sample::rational(&mut rng, 3));
            assert_eq!(
                p.member_h(&pt).unwrap(),
                p.member_h_y(&zero_y, &pt).unwrap()
            );
        }
    }
}

#[test]
fn translated_sets_translate() {
    let mut rng = sample::rng_from_seed(14);
    for p in sweep_instances(6, 51) {
        for _ in 0..20 {
            let pt = sample::h_point(&mut rng, &p).unwrap();
            let shifted = SetPoint::new(pt.base.add(p.b()).unwrap(), pt.height.clone());
            assert_eq!(
                p.member_h(&pt).unwrap(),
                p.member_h_translated(&shifted).unwrap()
            );
            let pt = sample::k_point(&mut rng, &p).unwrap();
            let shifted = SetPoint::new(pt.base.sub(p.c()).unwrap(), pt.height.clone());
            assert_eq!(
                p.member_k(&pt).unwrap(),
                p.member_k_translated(&shifted).unwrap()
            );
        }
    }
}

#[test]
fn gale_memberships_through_the_problem_interface() {
    let g = common::gale(1, 0);
    let p = g.problem();
    // the canonical epigraph witness: in N and acl H, outside H
    let witness = g.gap_witness();
    assert!(p.member_n(&witness).unwrap());
    assert!(p.member_acl_h(&witness).unwrap());
    assert!(!p.member_h(&witness).unwrap());
    // K against M along the zero fiber: the heights in (0, 1] are exactly
    // the duality gap, inside M but outside K
    let y0 = Vector::finite_support([]);
    assert!(p.member_k(&SetPoint::new(y0.clone(), int(0))).unwrap());
    assert!(p.member_m(&SetPoint::new(y0.clone(), int(0))).unwrap());
    assert!(!p.member_k(&SetPoint::new(y0.clone(), frac(1, 2))).unwrap());
    assert!(p.member_m(&SetPoint::new(y0.clone(), frac(1, 2))).unwrap());
    assert!(!p.member_m(&SetPoint::new(y0, frac(3, 2))).unwrap());
}
