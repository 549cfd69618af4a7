//! Cross-checks of the sequence-family closed forms against finite
//! truncation LPs.

mod common;

use conelab::farkas::{farkas_primal, Gap};
use conelab::gale::GaleInstance;
use conelab::perturb::{ExtendedValue, SetPoint};
use conelab::rational::{frac, int, Rational};
use conelab::sample;
use conelab::vector::Vector;
use num_traits::Signed;
use rand::Rng;

fn sampled_parameters() -> Vec<GaleInstance> {
    let mut out = Vec::new();
    for (a, b) in [(1, 0), (2, 0), (2, 1), (3, 3), (5, 2), (0, 0), (4, 1)] {
        out.push(common::gale(a, b));
    }
    out.push(common::gale_frac(5, 2, 1, 1));
    out.push(common::gale_frac(7, 3, 2, 3));
    out.push(common::gale_frac(3, 2, 3, 2));
    out
}

#[test]
fn closed_form_primal_matches_stabilized_truncations() {
    for g in sampled_parameters() {
        let closed = g.problem().val_primal().unwrap();
        // beta > 0: truncations stabilize once the mean fits; beta = 0:
        // every truncation already agrees
        let stable_at = if g.beta == int(0) {
            1
        } else {
            let mean = &g.alpha / &g.beta;
            usize::try_from(conelab::rational::ceil_int(&mean))
                .unwrap_or(1)
                .max(1)
        };
        for n in stable_at..=stable_at + 2 {
            let truncated = g.truncate(n).unwrap().val_primal().unwrap();
            assert!(
                closed.same_value(&truncated),
                "alpha={} beta={} n={n}: closed {:?} vs truncated {:?}",
                g.alpha,
                g.beta,
                closed,
                truncated
            );
        }
    }
}

#[test]
fn truncation_values_are_monotone_and_dominate_the_closed_form() {
    for g in sampled_parameters() {
        if !g.consistent() {
            continue;
        }
        let closed = g.problem().val_primal().unwrap();
        let closed_value = closed.value().unwrap().clone();
        let mut last: Option<Rational> = None;
        for n in 1..=8 {
            let truncated = g.truncate(n).unwrap().val_primal().unwrap();
            let value = truncated.value().expect("consistent truncation").clone();
            assert!(value >= closed_value, "truncation dipped below the limit");
            if let Some(prev) = last {
                assert!(value <= prev, "truncation values must decrease in n");
            }
            last = Some(value);
        }
    }
}

#[test]
fn truncated_duals_match_truncated_primals_and_dominate_the_family_value() {
    // finite polyhedral truncations have no gap, so the truncated dual
    // equals the truncated primal and stays at or above the family dual 0
    for g in sampled_parameters() {
        if !g.consistent() {
            continue;
        }
        for n in 1..=8 {
            let t = g.truncate(n).unwrap();
            let primal = t.val_primal().unwrap();
            let dual = t.val_dual().unwrap();
            assert!(primal.same_value(&dual), "finite truncation grew a gap");
            assert!(dual.at_least(&int(0)));
        }
    }
}

#[test]
fn family_values_and_gaps() {
    for (a, b, gap) in [
        (int(1), int(0), Gap::Positive(int(1))),
        (int(2), int(0), Gap::Positive(int(2))),
        (frac(5, 2), int(0), Gap::Positive(frac(5, 2))),
        (int(2), int(1), Gap::Zero),
        (frac(5, 2), int(1), Gap::Zero),
        (int(3), int(3), Gap::Zero),
    ] {
        let g = GaleInstance::new(a.clone(), b.clone());
        let report = g.values().unwrap();
        assert_eq!(report.gap, gap, "alpha={a} beta={b}");
        assert!(report.primal_attained && report.dual_attained);
    }
}

#[test]
fn closure_law_on_sampled_points() {
    let mut rng = sample::rng_from_seed(30);
    for g in [
        common::gale(1, 0),
        common::gale(2, 1),
        common::gale_frac(5, 2, 1, 1),
    ] {
        let p = g.problem();
        for _ in 0..350 {
            let base = sample::dense_vector(&mut rng, 2, 3);
            let height = sample::rational(&mut rng, 3);
            let pt = SetPoint::new(base, height);
            assert_eq!(
                g.closure_h_member(&pt).unwrap(),
                g.member_n_closed(&pt).unwrap()
            );
            assert_eq!(p.member_acl_h(&pt).unwrap(), p.member_n(&pt).unwrap());
            // membership in H implies membership in the closure
            if g.member_h_closed(&pt).unwrap() {
                assert!(g.closure_h_member(&pt).unwrap());
            }
        }
    }
}

#[test]
fn farkas_alternative_fails_exactly_on_the_gap() {
    let p = common::gale(1, 0).problem();
    let z0 = Vector::dense_from_i64(&[0, 0]);
    let verdict = farkas_primal(&p, &z0, &int(0)).unwrap();
    assert!(verdict.a_holds);
    assert!(!verdict.b_holds);
    assert!(!verdict.equivalent);
}

#[test]
fn h_witnesses_reappear_in_their_truncations() {
    // a closed-form H-membership witness has finite support, so the
    // truncation at its top index must certify the same membership
    let mut rng = sample::rng_from_seed(31);
    for g in sampled_parameters() {
        let p = g.problem();
        for _ in 0..30 {
            let pt = sample::h_point(&mut rng, &p).unwrap();
            let witness = p.h_witness(&pt).unwrap().expect("sampled inside H");
            let support = witness.support().unwrap();
            let top = support.keys().copied().max().unwrap_or(0).max(1);
            let truncated = g.truncate(top).unwrap();
            let mut dense = vec![int(0); top + 1];
            for (&i, v) in support {
                dense[i] = v.clone();
            }
            let x = Vector::dense(dense);
            // same feasibility and cost inside the finite instance
            let image = truncated.map().apply(&x).unwrap();
            let shifted = image.sub(truncated.b()).unwrap().sub(&pt.base).unwrap();
            assert!(shifted.is_zero());
            let cost = conelab::vector::pair(&x, truncated.c()).unwrap();
            assert!(cost <= pt.height);
            assert!(truncated.p().member(&x).unwrap());
        }
    }
}

#[test]
fn member_h_closed_form_agrees_with_the_branch_machinery() {
    let mut rng = sample::rng_from_seed(32);
    for g in sampled_parameters() {
        let p = g.problem();
        for _ in 0..60 {
            let pt = if rng.gen_range(0..2) == 0 {
                sample::h_point(&mut rng, &p).unwrap()
            } else {
                SetPoint::new(
                    sample::dense_vector(&mut rng, 2, 3),
                    sample::rational(&mut rng, 3),
                )
            };
            assert_eq!(p.member_h(&pt).unwrap(), g.member_h_closed(&pt).unwrap());
        }
    }
}

#[test]
fn perturbed_h_witnesses_verify_and_truncations_never_contradict() {
    // the generic tail route behind member_h_y: positive answers must carry
    // a witness that substitutes exactly; negative answers must not be
    // contradicted by any small truncation
    let mut rng = sample::rng_from_seed(35);
    for g in [
        common::gale(2, 1),
        common::gale(1, 0),
        common::gale_frac(5, 2, 1, 1),
    ] {
        let p = g.problem();
        for _ in 0..25 {
            let y = sample::finite_support_signed(&mut rng, 3, 2);
            let pt = if rng.gen_range(0..2) == 0 {
                sample::h_point(&mut rng, &p).unwrap()
            } else {
                SetPoint::new(
                    sample::dense_vector(&mut rng, 2, 3),
                    sample::rational(&mut rng, 3),
                )
            };
            match p.h_y_witness(Some(&y), &pt).unwrap() {
                Some(x) => {
                    // x in P, Ax - b - base = 0, cost within the height
                    assert!(p.p().member(&x).unwrap());
                    let image = p.map().apply(&x).unwrap();
                    let residue = image.sub(p.b()).unwrap().sub(&pt.base).unwrap();
                    assert!(residue.is_zero());
                    let cost = conelab::vector::pair(&x, p.c()).unwrap()
                        - conelab::vector::pair(&x, &y).unwrap();
                    assert!(cost <= pt.height);
                }
                None => {
                    for n in 1..=6 {
                        let truncated = g.truncate(n).unwrap();
                        let mut dense_y = vec![int(0); n + 1];
                        let mut fits = true;
                        for (&i, v) in y.support().unwrap() {
                            if i > n {
                                fits = false;
                                break;
                            }
                            dense_y[i] = v.clone();
                        }
                        if !fits {
                            continue;
                        }
                        assert!(
                            !truncated.member_h_y(&Vector::dense(dense_y), &pt).unwrap(),
                            "a truncation found a point the family denied"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn perturbed_values_agree_with_truncations_under_finite_cost_shifts() {
    // v_P(y) for finitely supported y: truncations dominate and reach the
    // value once the family value is attained with bounded support
    let mut rng = sample::rng_from_seed(33);
    for g in [
        common::gale(2, 1),
        common::gale(3, 1),
        common::gale_frac(5, 2, 1, 1),
    ] {
        let p = g.problem();
        for _ in 0..15 {
            let y = sample::finite_support_signed(&mut rng, 3, 2);
            let family = p.primal_value(&y).unwrap();
            let ExtendedValue::Finite { value, attained } = family else {
                continue;
            };
            let mut reached = false;
            for n in 1..=8 {
                let truncated = g.truncate(n).unwrap();
                let mut dense_y = vec![int(0); n + 1];
                let mut fits = true;
                for (&i, v) in y.support().unwrap() {
                    if i > n {
                        fits = v == &int(0);
                        if !fits {
                            break;
                        }
                    } else {
                        dense_y[i] = v.clone();
                    }
                }
                if !fits {
                    continue;
                }
                let tv = truncated.primal_value(&Vector::dense(dense_y)).unwrap();
                match tv {
                    ExtendedValue::Finite { value: tval, .. } => {
                        assert!(tval >= value, "truncation undercut the family value");
                        if tval == value {
                            reached = true;
                        }
                    }
                    ExtendedValue::PlusInfinity => {}
                    ExtendedValue::MinusInfinity => panic!("bounded family went unbounded"),
                }
            }
            if attained {
                assert!(
                    reached,
                    "attained value alpha={} beta={} y={} never reached by n <= 8",
                    g.alpha,
                    g.beta,
                    y.describe()
                );
            }
        }
    }
}

#[test]
fn dual_value_closed_form_agrees_with_the_lp_route() {
    let mut rng = sample::rng_from_seed(34);
    for g in sampled_parameters() {
        let p = g.problem();
        for _ in 0..40 {
            let z = sample::dense_vector(&mut rng, 2, 3);
            let closed = g.dual_value_closed(&z).unwrap();
            let through_problem = p.dual_value(&z).unwrap();
            assert!(closed.same_value(&through_problem));
            // and against the collapsed-row LP with a trivial perturbation
            let via_lp = g
                .dual_optimum(Some(&z), Some(&Vector::finite_support([])))
                .unwrap()
                .value;
            assert!(closed.same_value(&via_lp));
        }
    }
}

#[test]
fn truncated_values_follow_the_analytic_formula() {
    // for a consistent pair the truncation at n is worth max(0, alpha - n beta)
    for g in sampled_parameters() {
        if !g.consistent() {
            continue;
        }
        for n in 1..=8usize {
            let t = g.truncate(n).unwrap();
            let expected = {
                let reachable = &g.alpha - Rational::from_integer(n.into()) * &g.beta;
                if reachable.is_negative() {
                    int(0)
                } else {
                    reachable
                }
            };
            assert_eq!(
                t.val_primal().unwrap(),
                ExtendedValue::finite(expected, true),
                "alpha={} beta={} n={n}",
                g.alpha,
                g.beta
            );
        }
    }
}

#[test]
fn gale_slice_examples() {
    let g = common::gale(1, 0);
    let p = g.problem();
    // at the origin the dual value 0 is unreachable by the primal
    let report = p.slice_equal_h_n(&Vector::dense_from_i64(&[0, 0])).unwrap();
    assert!(!report.equal);
    // at z = (-1, 0) the zero vector is feasible with cost 0
    let report = p
        .slice_equal_h_n(&Vector::dense_from_i64(&[-1, 0]))
        .unwrap();
    assert!(report.equal);
    assert_eq!(report.witness, Some(Vector::finite_support([])));
}

#[test]
fn gale_separator_from_n() {
    let g = common::gale(1, 0);
    let p = g.problem();
    let pt = SetPoint::new(Vector::dense_from_i64(&[0, 0]), int(-1));
    let sep = p.separate_from_n(&pt).unwrap();
    assert_eq!(sep.functional, Vector::dense_from_i64(&[0, 0]));
    assert_eq!(sep.beta, int(-1));
    assert_eq!(sep.gamma, int(0));
    // pairing of the separated point: 0 - (-1) = 1 > 0
    assert!(p.verify_separator_n(&sep, &pt).unwrap());
}

#[test]
fn translated_h_on_the_family() {
    // pt in H iff pt + (b, 0) in the translated set
    let mut rng = sample::rng_from_seed(36);
    let g = common::gale(2, 1);
    let p = g.problem();
    for _ in 0..50 {
        let pt = if rng.gen_range(0..2) == 0 {
            sample::h_point(&mut rng, &p).unwrap()
        } else {
            SetPoint::new(
                sample::dense_vector(&mut rng, 2, 3),
                sample::rational(&mut rng, 3),
            )
        };
        let shifted = SetPoint::new(pt.base.add(p.b()).unwrap(), pt.height.clone());
        assert_eq!(
            p.member_h(&pt).unwrap(),
            p.member_h_translated(&shifted).unwrap()
        );
    }
}

#[test]
fn core_conditions_reject_the_family() {
    use conelab::conditions::{core_dual_condition, core_primal_condition};
    let p = common::gale(2, 1).problem();
    assert!(core_dual_condition(&p).is_err());
    assert!(core_primal_condition(&p).is_err());
}

#[test]
fn empty_dual_feasible_set_values() {
    use conelab::cone::Cone;
    use conelab::linmap::LinearMap;
    let p = conelab::perturb::Problem::finite(
        LinearMap::matrix_from_i64(&[&[0]]),
        Vector::dense_from_i64(&[0]),
        Vector::dense_from_i64(&[-1]),
        Cone::orthant(1),
        Cone::zero(1),
    )
    .unwrap();
    assert_eq!(p.val_dual().unwrap(), ExtendedValue::MinusInfinity);
}

#[test]
fn inconsistent_pairs_carry_honest_flags() {
    use conelab::farkas::Gap;
    // alpha < beta: the primal is infeasible and the dual sup escapes
    let report = common::gale(1, 2).values().unwrap();
    assert_eq!(report.primal, ExtendedValue::PlusInfinity);
    assert_eq!(report.dual, ExtendedValue::PlusInfinity);
    assert!(!report.primal_feasible);
    assert!(report.dual_feasible);
    assert_eq!(report.gap, Gap::Zero);
    // beta < 0: same degeneracy through the other inequality
    let report = common::gale(1, -1).values().unwrap();
    assert_eq!(report.primal, ExtendedValue::PlusInfinity);
    assert!(!report.primal_feasible);
}
