use super::*;
use crate::exactnum::{frac, int, zeros};
use crate::genpoly::ExtReal;
use crate::oracle::examples::{bilevel_example, buchheim};
use crate::pwl::Piece;

fn q(v: &[i64]) -> crate::exactnum::QVec {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn bilevel_example_solution() {
    let r = solve(&bilevel_example());
    assert_eq!(r.status, Status::Finite);
    assert_eq!(r.value, ExtReal::Finite(int(-1)));
    assert!(r.attained);
    assert_eq!(r.witness, Some(q(&[1, 1])));
}

#[test]
fn bilevel_example_decisions() {
    let inst = bilevel_example();
    assert!(decide_val(&inst, &int(-1)));
    assert!(!decide_val(&inst, &frac(-3, 2)));
    assert!(!decide_unbounded(&inst));
}

#[test]
fn bilevel_example_points() {
    let inst = bilevel_example();
    assert!(!check_feasible_point(&inst, &[int(1), frac(1, 2)]).unwrap());
    assert!(check_feasible_point(&inst, &[int(0), int(0)]).unwrap());
    // feasible for the follower's rows but not optimal for it
    assert!(!check_feasible_point(&inst, &[int(0), int(1)]).unwrap());
    assert!(check_optimal_point(&inst, &[int(1), int(1)]).unwrap());
    assert!(!check_optimal_point(&inst, &[int(0), int(0)]).unwrap());
    assert!(check_feasible_point(&inst, &[int(1)]).is_err());
}

#[test]
fn bilevel_value_function() {
    let vfs = value_functions(&bilevel_example());
    assert_eq!(vfs.len(), 1);
    let v = &vfs[0];
    assert_eq!(v.eval(&[frac(1, 2)]), ExtReal::Finite(frac(1, 2)));
    assert_eq!(v.eval(&[int(0)]), ExtReal::Finite(int(0)));
    assert_eq!(v.eval(&[int(2)]), ExtReal::PosInf);
    assert_eq!(v.eval(&[int(-1)]), ExtReal::PosInf);
}

#[test]
fn buchheim_is_infeasible() {
    let inst = buchheim();
    let r = solve(&inst);
    assert_eq!(r.status, Status::Infeasible);
    assert_eq!(r.value, ExtReal::PosInf);
    assert!(r.witness.is_none());
    let a = Analysis::new(&inst);
    assert!(!a.is_feasible());
    // v3(x1, x2) = max(x2 − 1, 0) on x ≥ 0
    let v3 = a.value_function(2);
    for (x1, x2) in [(0, 0), (0, 1), (1, 2), (3, 5)] {
        let expected = ExtReal::Finite(int((x2 - 1).max(0)));
        assert_eq!(v3.eval(&[int(x1), int(x2)]), expected);
    }
    assert_eq!(v3.eval(&[int(0), int(-1)]), ExtReal::PosInf);
}

#[test]
fn single_level_is_an_lp() {
    let inst = MlpInstance::new(
        vec![1],
        vec![Level {
            rows: vec![Ineq::weak(q(&[1]), int(2))],
            objective: q(&[1]),
        }],
        int(0),
    )
    .unwrap();
    let r = solve(&inst);
    assert_eq!(r.value, ExtReal::Finite(int(2)));
    assert_eq!(r.witness, Some(q(&[2])));

    let open = MlpInstance::new(
        vec![1],
        vec![Level {
            rows: vec![Ineq::strict(q(&[1]), int(2))],
            objective: q(&[1]),
        }],
        int(0),
    )
    .unwrap();
    let r = solve(&open);
    assert_eq!(r.value, ExtReal::Finite(int(2)));
    assert!(!r.attained);
    assert!(r.witness.is_none());

    let free = MlpInstance::new(
        vec![1],
        vec![Level {
            rows: Vec::new(),
            objective: q(&[1]),
        }],
        int(0),
    )
    .unwrap();
    assert_eq!(solve(&free).status, Status::Unbounded);
}

#[test]
fn zero_follower_objective() {
    // follower min 0 on 0 ≤ x2 ≤ x1: value 0 wherever x1 ≥ 0
    let rows = vec![Ineq::weak(q(&[0, 1]), int(0)), Ineq::weak(q(&[1, -1]), int(0))];
    let inst = MlpInstance::new(
        vec![1, 1],
        vec![
            Level {
                rows: Vec::new(),
                objective: q(&[1, 1]),
            },
            Level {
                rows,
                objective: zeros(2),
            },
        ],
        int(0),
    )
    .unwrap();
    let a = Analysis::new(&inst);
    let v = a.value_function(1);
    assert_eq!(v.eval(&[int(3)]), ExtReal::Finite(int(0)));
    assert_eq!(v.eval(&[int(-1)]), ExtReal::PosInf);
    assert_eq!(a.solve().value, ExtReal::Finite(int(0)));
}

#[test]
fn follower_unbounded_below() {
    // follower min −x2 over x2 ≥ 0: v = −∞ everywhere, no feasible point
    let inst = MlpInstance::new(
        vec![1, 1],
        vec![
            Level {
                rows: Vec::new(),
                objective: q(&[1, 0]),
            },
            Level {
                rows: vec![Ineq::weak(q(&[0, 1]), int(0))],
                objective: q(&[0, -1]),
            },
        ],
        int(0),
    )
    .unwrap();
    let a = Analysis::new(&inst);
    assert_eq!(a.value_function(1).cells()[0].piece, Piece::MinusInf);
    assert_eq!(a.solve().status, Status::Infeasible);
}

#[test]
fn eps_relaxes_follower_optimality() {
    let inst = bilevel_example().with_eps(frac(1, 2)).unwrap();
    assert!(check_feasible_point(&inst, &[int(0), frac(1, 2)]).unwrap());
    assert!(!check_feasible_point(&inst, &[int(0), int(1)]).unwrap());
    let r = solve(&inst);
    assert_eq!(r.value, ExtReal::Finite(int(-1)));
}

#[test]
fn instance_validation() {
    assert!(MlpInstance::new(vec![], vec![], int(0)).is_err());
    assert!(MlpInstance::new(vec![0], vec![Level { rows: vec![], objective: vec![] }], int(0)).is_err());
    let lv = |o: &[i64]| Level {
        rows: Vec::new(),
        objective: q(o),
    };
    assert!(MlpInstance::new(vec![1, 1], vec![lv(&[0, 1]), lv(&[1, 1])], int(0)).is_err());
    assert!(MlpInstance::new(vec![1, 1], vec![lv(&[0, 1])], int(0)).is_err());
    assert!(MlpInstance::new(vec![1, 1], vec![lv(&[0, 1]), lv(&[0, 1])], int(-1)).is_err());
    assert!(MlpInstance::new(vec![1, 1], vec![lv(&[0, 1]), lv(&[0, 1, 2])], int(0)).is_err());
}

#[test]
fn feasible_set_levels() {
    let inst = bilevel_example();
    let top = feasible_set(&inst, 1).unwrap();
    assert!(top.cells.iter().any(|c| c.contains(&q(&[1, 1]))));
    assert!(!top.cells.iter().any(|c| c.contains(&q(&[0, 1]))));
    let bottom = feasible_set(&inst, 2).unwrap();
    assert!(bottom.cells.iter().any(|c| c.contains(&q(&[0, 1]))));
    assert!(feasible_set(&inst, 0).is_err());
    assert!(feasible_set(&inst, 3).is_err());
}

mod props {
    use super::*;
    use crate::oracle::random::{random_instance, random_point, Require};
    use crate::transforms::{forward_constraints, scale_rhs};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn homogeneity(seed in any::<u64>()) {
            let c1 = Require { c1: true, ..Require::default() };
            let inst = random_instance(seed, 2, &[1, 1], &[0, 2], 2, c1).unwrap();
            let scaled = scale_rhs(&inst, &int(2)).unwrap();
            prop_assert_eq!(solve(&scaled).value, solve(&inst).value.scale_positive(&int(2)));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..5 {
                let x = random_point(&mut rng, 2, 2);
                let x2: Vec<_> = x.iter().map(|v| v * int(2)).collect();
                prop_assert_eq!(
                    check_feasible_point(&inst, &x).unwrap(),
                    check_feasible_point(&scaled, &x2).unwrap()
                );
            }
        }

        #[test]
        fn forwarding_keeps_value(seed in any::<u64>()) {
            let inst = random_instance(seed, 2, &[1, 1], &[2, 2], 2, Require::default()).unwrap();
            let f = forward_constraints(&inst).instance;
            prop_assert_eq!(solve(&f).value, solve(&inst).value);
        }

        #[test]
        fn larger_eps_weakly_lowers_value(seed in any::<u64>()) {
            let inst = random_instance(seed, 2, &[1, 1], &[0, 3], 2, Require::default()).unwrap();
            let relaxed = inst.with_eps(int(1)).unwrap();
            prop_assert!(solve(&relaxed).value <= solve(&inst).value);
        }

        #[test]
        fn one_level_matches_inf_linear(seed in any::<u64>()) {
            let inst = random_instance(seed, 1, &[2], &[3], 3, Require::default()).unwrap();
            let p = crate::genpoly::GenPoly::from_rows(2, inst.level(0).rows.clone()).unwrap();
            prop_assert_eq!(solve(&inst).value, p.inf_linear(inst.leader_objective()).value);
        }
    }
}
