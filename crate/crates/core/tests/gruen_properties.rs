use gruen_core::arith::{ell_adic_valuation_big, gl_order, is_prime, PrimePower};
use gruen_core::gruen::{
    gt1_bound, gt2_bound, predict_gl_sylow, sweep_sylow_predictions, ts1_bound,
    verify_action_bound, ActionTheorem, Observation, SylowClause, Verdict,
};
use gruen_core::matgroup::{
    enumerate_gl, generate_closure, sylow_subgroup, MatrixGroup, Modulus, ResidueMatrix,
    DEFAULT_CAP,
};
use proptest::prelude::*;

fn grid() -> Vec<PrimePower> {
    [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]
        .into_iter()
        .map(|(p, f)| PrimePower::new(p, f).unwrap())
        .collect()
}

#[test]
fn full_grid_sweep_has_no_refutations() {
    let reports = sweep_sylow_predictions(4, &grid(), 13, DEFAULT_CAP).unwrap();
    let mut confirmed = 0;
    let mut too_large = 0;
    for report in &reports {
        match report.verdict {
            Verdict::Confirmed => confirmed += 1,
            Verdict::SkippedTooLarge => too_large += 1,
            other => panic!("{other:?} for {:?}", report.parameters),
        }
    }
    // GL_4(F_3), GL_4(F_4), GL_4(F_5), GL_3(F_7), GL_4(F_7) exceed the cap
    assert_eq!(too_large, 5 * 5);
    assert_eq!(confirmed + too_large, reports.len());
    assert_eq!(reports.len(), 4 * 5 * 5);
}

#[test]
fn order_exponent_matches_valuation_of_gl_order() {
    for q in grid() {
        for n in 1..=8 {
            for ell in (2..=31u64).filter(|&l| is_prime(l) && l != q.p()) {
                let pred = predict_gl_sylow(n, &q, ell).unwrap();
                let v = ell_adic_valuation_big(&gl_order(n, &q), ell).unwrap() as u64;
                match pred.clause {
                    SylowClause::ElementaryAbelian => {
                        assert_eq!(
                            pred.order_exponent,
                            Some(v),
                            "n = {n}, q = {q}, ell = {ell}"
                        );
                        assert!(pred.r < ell);
                        assert_eq!(pred.derived_length_bound, 1);
                    }
                    SylowClause::MetabelianBound => {
                        let blocks = n as u64 / pred.m_ell;
                        assert!(ell.pow(pred.r as u32) <= blocks);
                        assert!(blocks < ell.pow(pred.r as u32 + 1));
                        assert_eq!(pred.derived_length_bound as u64, pred.r + 1);
                    }
                }
            }
        }
    }
}

fn prime_and_ell() -> impl Strategy<Value = (u64, u64)> {
    let primes: Vec<u64> = (2..200).filter(|&n| is_prime(n)).collect();
    (
        prop::sample::select(primes.clone()),
        prop::sample::select(primes),
    )
        .prop_filter("ell != p", |(p, ell)| p != ell)
}

proptest! {
    #[test]
    fn bounds_are_coherent((p, ell) in prime_and_ell(), m in 1u64..400) {
        let gt2 = gt2_bound(m, p, ell).unwrap();
        let ts1 = ts1_bound(m, p, ell).unwrap();
        prop_assert_eq!(gt2.nu, ts1.nu);
        prop_assert_eq!(gt2.m_ell, ts1.m_ell);
        if let Some(gt1) = gt1_bound(m, p, ell).unwrap() {
            prop_assert!(gt1.nu <= 1);
            prop_assert!(gt2.nu <= 1);
            prop_assert_eq!(gt1.nu, gt2.nu);
        } else {
            prop_assert!(gt2.nu >= 2);
        }
        prop_assert!(gt2_bound(m + 1, p, ell).unwrap().nu >= gt2.nu);
    }
}

fn gl(n: u32, p: u64) -> MatrixGroup {
    enumerate_gl(n, &PrimePower::prime(p).unwrap(), DEFAULT_CAP).unwrap()
}

#[test]
fn action_verification_is_inherited_by_subgroups() {
    // every cyclic subgroup and every two-generated subgroup on a fixed
    // stride of generator pairs, for images known to confirm
    for (n, p, ell, theorem) in [
        (2u32, 3u64, 2u64, ActionTheorem::Gt2),
        (2, 2, 3, ActionTheorem::Gt2),
        (2, 7, 3, ActionTheorem::Ts1),
        (2, 5, 2, ActionTheorem::Gt2),
        (3, 2, 7, ActionTheorem::Gt1),
        (3, 2, 3, ActionTheorem::Gt1),
    ] {
        let g = gl(n, p);
        let top = verify_action_bound(&g, ell, theorem).unwrap();
        assert_eq!(top.verdict, Verdict::Confirmed, "GL_{n}({p}) ell = {ell}");
        let elements = g.elements();
        let stride = (elements.len() / 40).max(1);
        let picks: Vec<&ResidueMatrix> = elements.iter().step_by(stride).collect();
        for (k, a) in picks.iter().enumerate() {
            let cyclic = generate_closure(&[(*a).clone()], DEFAULT_CAP).unwrap();
            assert_eq!(
                verify_action_bound(&cyclic, ell, theorem).unwrap().verdict,
                Verdict::Confirmed
            );
            let b = picks[(k * 7 + 3) % picks.len()];
            let two = generate_closure(&[(*a).clone(), b.clone()], DEFAULT_CAP).unwrap();
            assert_eq!(
                verify_action_bound(&two, ell, theorem).unwrap().verdict,
                Verdict::Confirmed
            );
        }
        let s = sylow_subgroup(&g, ell).unwrap();
        assert_eq!(
            verify_action_bound(&s, ell, theorem).unwrap().verdict,
            Verdict::Confirmed
        );
    }
}

#[test]
fn action_bound_over_prime_power_modulus() {
    // GL_2(Z/9): order 9^4 * (1 - 1/3)(1 - 1/9) = 3888; ell = 2, m_ell = 1, nu = 2
    let modulus = Modulus::new(3, 2).unwrap();
    let gens = vec![
        ResidueMatrix::from_rows(modulus, &[vec![2, 0], vec![0, 1]]).unwrap(),
        ResidueMatrix::from_rows(modulus, &[vec![1, 1], vec![0, 1]]).unwrap(),
        ResidueMatrix::from_rows(modulus, &[vec![1, 0], vec![1, 1]]).unwrap(),
    ];
    let g = generate_closure(&gens, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 3888);
    let report = verify_action_bound(&g, 2, ActionTheorem::Gt2).unwrap();
    assert_eq!(report.verdict, Verdict::Confirmed);
    let Some(Observation::Action(obs)) = report.observed else {
        panic!()
    };
    assert_eq!(obs.sylow_order, 16);
    assert_eq!(obs.derived_orders, vec![16, 4, 1]);
}
