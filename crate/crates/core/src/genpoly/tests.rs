use super::*;
use crate::exactnum::{frac, int};

fn q(v: &[i64]) -> QVec {
    v.iter().map(|&x| int(x)).collect()
}

fn poly(dim: usize, weak: &[(&[i64], i64)], strict: &[(&[i64], i64)]) -> GenPoly {
    let mut p = GenPoly::universe(dim);
    for (c, r) in weak {
        p.push_weak(q(c), int(*r));
    }
    for (c, r) in strict {
        p.push_strict(q(c), int(*r));
    }
    p
}

#[test]
fn contains_examples() {
    let pos = poly(1, &[], &[(&[1], 0)]);
    assert!(pos.contains(&[frac(1, 2)]));
    assert!(!pos.contains(&[int(0)]));
    let unit = poly(1, &[(&[1], 0), (&[-1], -1)], &[]);
    assert!(unit.contains(&[int(1)]));
    assert!(unit.try_contains(&[int(1), int(2)]).is_err());
}

#[test]
fn eliminate_single_pair() {
    // {x ≥ 0, y − x > 0}, eliminate x → {y > 0}
    let p = poly(2, &[(&[1, 0], 0)], &[(&[-1, 1], 0)]);
    let r = p.eliminate(0);
    assert_eq!(r.dim(), 1);
    assert_eq!(r.rows(), &[Ineq::strict(q(&[1]), int(0))]);
    assert_eq!(p.project(&[1]), r);
}

#[test]
fn eliminate_inconsistent_bounds() {
    let p = poly(1, &[(&[1], 1), (&[-1], 0)], &[]);
    let r = p.eliminate(0);
    assert_eq!(r.dim(), 0);
    assert!(r.rows().iter().any(|row| row.rhs == int(1) && !row.strict));
    assert!(r.is_empty());
}

#[test]
fn eliminate_vacuous_column() {
    let p = poly(2, &[(&[0, 1], 2)], &[(&[0, -1], -5)]);
    let r = p.eliminate(0);
    assert_eq!(
        r.rows(),
        &[Ineq::weak(q(&[1]), int(2)), Ineq::strict(q(&[-1]), int(-5))]
    );
}

#[test]
fn project_identity_and_empty() {
    let p = poly(2, &[(&[1, 0], 0)], &[(&[-1, 1], 0)]);
    let all = p.project(&[0, 1]);
    assert!(all.is_subset(&p) && p.is_subset(&all));
    let e = poly(2, &[(&[1, 1], 1), (&[-1, -1], 0)], &[]);
    assert!(e.project(&[1]).is_empty());
}

#[test]
fn emptiness_examples() {
    assert!(poly(1, &[(&[-1], 0)], &[(&[1], 0)]).is_empty());
    let open = poly(1, &[], &[(&[1], 0), (&[-1], -1)]);
    assert!(!open.is_empty());
    let w = open.witness_point().unwrap();
    assert!(open.contains(&w));
    assert_eq!(w, vec![frac(1, 2)]);
    assert!(!GenPoly::universe(3).is_empty());
}

#[test]
fn closure_examples() {
    let p = poly(1, &[], &[(&[1], 0)]);
    assert_eq!(p.closure().unwrap(), poly(1, &[(&[1], 0)], &[]));
    let c = poly(1, &[(&[1], 0)], &[]);
    assert_eq!(c.closure().unwrap(), c);
    let two = poly(2, &[], &[(&[1, 0], 0), (&[-1, 1], 0)]);
    assert_eq!(two.closure().unwrap(), poly(2, &[(&[1, 0], 0), (&[-1, 1], 0)], &[]));
    assert!(poly(1, &[(&[-1], 0)], &[(&[1], 0)]).closure().is_err());
}

#[test]
fn complement_examples() {
    let half = poly(2, &[(&[1, 2], 3)], &[]);
    assert_eq!(half.complement_cells(), vec![poly(2, &[], &[(&[-1, -2], -3)])]);
    assert!(GenPoly::universe(2).complement_cells().is_empty());
    let p = poly(2, &[(&[1, 0], 0)], &[(&[0, 1], 0)]);
    let cells = p.complement_cells();
    assert_eq!(
        cells,
        vec![
            poly(2, &[], &[(&[-1, 0], 0)]),
            poly(2, &[(&[1, 0], 0), (&[0, -1], 0)], &[]),
        ]
    );
    for x in -2..=2 {
        for y in -2..=2 {
            let pt = q(&[x, y]);
            let hits = cells.iter().filter(|c| c.contains(&pt)).count();
            assert_eq!(hits + usize::from(p.contains(&pt)), 1);
        }
    }
}

#[test]
fn witness_examples() {
    let open = poly(1, &[], &[(&[1], 0), (&[-1], -1)]);
    let w = open.witness_point().unwrap();
    assert!(open.contains(&w));
    assert!(poly(1, &[(&[1], 1), (&[-1], 0)], &[]).witness_point().is_none());
    let mut ray = GenPoly::universe(1);
    ray.push_weak(vec![int(1)], frac(3, 2));
    assert_eq!(ray.witness_point().unwrap(), vec![frac(5, 2)]);
}

#[test]
fn inf_examples() {
    let open = poly(1, &[], &[(&[1], 0)]);
    assert_eq!(
        open.inf_linear(&q(&[1])),
        LinearInf {
            value: ExtReal::Finite(int(0)),
            attained: false
        }
    );
    let ray = poly(1, &[(&[1], 0)], &[]);
    assert_eq!(ray.inf_linear(&q(&[-1])).value, ExtReal::NegInf);
    assert!(!ray.inf_linear(&q(&[-1])).attained);
    let e = poly(1, &[(&[1], 1), (&[-1], 0)], &[]);
    assert_eq!(
        e.inf_linear(&q(&[1])),
        LinearInf {
            value: ExtReal::PosInf,
            attained: false
        }
    );
    let box2 = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -3)], &[]);
    assert_eq!(
        box2.inf_linear(&q(&[-1, -2])),
        LinearInf {
            value: ExtReal::Finite(int(-6)),
            attained: true
        }
    );
}

#[test]
fn subset_examples() {
    let open = poly(1, &[], &[(&[1], 0)]);
    let closed = poly(1, &[(&[1], 0)], &[]);
    assert!(open.is_subset(&open));
    assert!(open.is_subset(&closed));
    assert!(!closed.is_subset(&open));
}

#[test]
fn equality_substitution_projects_exactly() {
    // x + y = 1, x ≥ 0, y > 0  → projection on y: 0 < y ≤ 1
    let p = poly(2, &[(&[1, 1], 1), (&[-1, -1], -1), (&[1, 0], 0)], &[(&[0, 1], 0)]);
    let r = p.project(&[1]);
    assert!(r.contains(&[int(1)]));
    assert!(r.contains(&[frac(1, 3)]));
    assert!(!r.contains(&[int(0)]));
    assert!(!r.contains(&[frac(3, 2)]));
}

#[test]
fn json_form() {
    let p = poly(2, &[(&[1, 0], 0)], &[(&[-1, 1], 0)]);
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(s, r#"{"dim":2,"weak":[[["1","0"],"0"]],"strict":[[["-1","1"],"0"]]}"#);
    let back: GenPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    assert!(serde_json::from_str::<GenPoly>(r#"{"dim":2,"weak":[[["1"],"0"]]}"#).is_err());
}

#[test]
fn ext_real_order() {
    assert!(ExtReal::NegInf < ExtReal::Finite(int(-100)));
    assert!(ExtReal::Finite(int(100)) < ExtReal::PosInf);
    assert_eq!(ExtReal::PosInf.add_finite(&int(3)), ExtReal::PosInf);
}

mod props {
    use crate::oracle::random::{random_genpoly, random_point};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fiber_soundness(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_genpoly(&mut rng, 3, 5, 3);
            let keep = vec![0usize, 2];
            let proj = p.project(&keep);
            for _ in 0..4 {
                let y = random_point(&mut rng, 2, 3);
                let fiber = p.fix_coords(&keep, &y);
                prop_assert_eq!(proj.contains(&y), !fiber.is_empty());
            }
        }

        #[test]
        fn order_independence(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_genpoly(&mut rng, 3, 5, 3);
            let a = p.eliminate(0).eliminate(0);
            let b = p.eliminate(1).eliminate(0);
            prop_assert!(a.is_subset(&b) && b.is_subset(&a));
        }

        #[test]
        fn complement_partitions(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_genpoly(&mut rng, 2, 4, 3);
            let cells = p.complement_cells();
            for _ in 0..20 {
                let x = random_point(&mut rng, 2, 3);
                let hits = cells.iter().filter(|c| c.contains(&x)).count();
                prop_assert_eq!(hits + usize::from(p.contains(&x)), 1);
            }
        }

        #[test]
        fn witness_iff_nonempty(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_genpoly(&mut rng, 3, 6, 3);
            match p.witness_point() {
                Some(w) => { prop_assert!(!p.is_empty()); prop_assert!(p.contains(&w)); }
                None => prop_assert!(p.is_empty()),
            }
        }

        #[test]
        fn closure_contains_set(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_genpoly(&mut rng, 2, 4, 3);
            if let Ok(c) = p.closure() {
                prop_assert_eq!(c.strict_rows().count(), 0);
                prop_assert!(p.is_subset(&c));
                let obj = random_point(&mut rng, 2, 3);
                prop_assert_eq!(p.inf_linear(&obj).value, c.inf_linear(&obj).value);
            } else {
                prop_assert!(p.is_empty());
            }
        }
    }
}
