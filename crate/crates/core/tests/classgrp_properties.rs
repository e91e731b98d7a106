use gruen_core::arith::{is_prime, min_nu, multiplicative_order};
use gruen_core::classgrp::{
    check_pgal, comes_from, deduce_descent, Conclusion, GaloisDescriptor, MAXIMAL_ABELIAN_SUBFIELD,
};
use gruen_core::gruen::gt2_bound;
use proptest::prelude::*;

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

#[test]
fn shortcut_cases_follow_from_the_generic_bound() {
    for ell in [3u64, 5, 7] {
        let g = GaloisDescriptor::nonabelian_order_ell_cubed(ell);
        for p in primes_up_to(100).into_iter().filter(|&p| p != ell) {
            let (ranks, case) = match p % ell {
                1 => (1..=1, 1),
                r if r == ell - 1 => (1..=2, 2),
                _ => (1..=3, 3),
            };
            for m in ranks {
                let d = deduce_descent(&g, ell, p, m).unwrap();
                assert!(
                    d.nu.unwrap() <= 1,
                    "case {case}: ell = {ell}, p = {p}, m = {m}"
                );
                assert!(
                    d.descends_to(MAXIMAL_ABELIAN_SUBFIELD),
                    "case {case}: {d:?}"
                );
            }
        }
    }
}

#[test]
fn descent_nu_agrees_with_gt2() {
    let tower = GaloisDescriptor::two_group_tower_step_3();
    for p in primes_up_to(60) {
        for ell in primes_up_to(13).into_iter().filter(|&l| l != p) {
            let g = GaloisDescriptor::nonabelian_order_ell_cubed(ell);
            for m in 1..30 {
                let expected = gt2_bound(m, p, ell).unwrap().nu;
                assert_eq!(deduce_descent(&g, ell, p, m).unwrap().nu, Some(expected));
                if ell == 2 {
                    assert_eq!(deduce_descent(&tower, 2, p, m).unwrap().nu, Some(expected));
                }
            }
        }
    }
}

#[test]
fn comes_from_is_exactly_rank_below_f() {
    for n in primes_up_to(31) {
        for p in primes_up_to(60).into_iter().filter(|&p| p != n) {
            let f = multiplicative_order(p, n).unwrap();
            let mut descended = true;
            for r in 0..=2 * f + 2 {
                let d = comes_from(r, n, p).unwrap();
                let descends = d.conclusion == Conclusion::ComesFromSubfield;
                assert_eq!(descends, r < f);
                // monotone: once it stops descending it never resumes
                assert!(descended || !descends);
                descended = descends;
                let pgal = check_pgal(n, p, r).unwrap();
                assert_eq!(
                    pgal.conclusion == Conclusion::RankDivisibilityPass,
                    r % f == 0
                );
            }
        }
    }
}

fn descriptor() -> impl Strategy<Value = (GaloisDescriptor, u64)> {
    prop_oneof![
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
            .prop_map(|ell| (GaloisDescriptor::nonabelian_order_ell_cubed(ell), ell)),
        Just((GaloisDescriptor::two_group_tower_step_3(), 2)),
        (prop::sample::select(vec![2u64, 3, 5]), 0usize..4).prop_map(|(ell, extra)| {
            // |G:G'| = ell^2, then `extra` further steps of index ell
            let mut indices = vec![ell * ell];
            indices.extend(std::iter::repeat_n(ell, extra));
            let order = indices.iter().product();
            (
                GaloisDescriptor::Explicit {
                    order,
                    derived_indices: indices,
                    field_labels: None,
                },
                ell,
            )
        }),
    ]
}

proptest! {
    #[test]
    fn justification_chains_are_complete(
        (g, ell) in descriptor(),
        p in prop::sample::select(primes_up_to(100)),
        m in 0u64..40,
    ) {
        prop_assume!(p != ell);
        let d = deduce_descent(&g, ell, p, m).unwrap();
        let nu = d.nu.unwrap();
        let m_ell = multiplicative_order(p, ell).unwrap();
        prop_assert_eq!(nu, min_nu(m, m_ell, ell));
        prop_assert!(!d.justification.is_empty());
        for record in &d.justification {
            prop_assert!(!record.rule.is_empty());
            prop_assert!(!record.parameters.is_empty());
        }
        match d.conclusion {
            Conclusion::ComesFromSubfield | Conclusion::SubgroupEmbeds => {
                prop_assert!(d.subfield.is_some());
                let last = &d.justification.last().unwrap().rule;
                prop_assert!(
                    ["nonabelian_ell_cubed", "two_class_field_tower", "fixed_field_descent"]
                        .contains(&last.as_str())
                );
            }
            Conclusion::NoConclusion => prop_assert!(d.subfield.is_none()),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
        // a larger rank never descends further
        if let Ok(next) = deduce_descent(&g, ell, p, m + 1) {
            prop_assert!(next.nu.unwrap() >= nu);
        }
    }
}
