use proptest::prelude::*;

use overpart_core::enumeration::{count_f, count_g, list_g, LargestPart};
use overpart_core::recurrence::{run_recurrence, stabilization_index};
use overpart_core::series::{product_distinct, product_f, qbinomial};
use overpart_core::{AlphaSystem, CountTable, LaurentPoly, QLaurent};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..8, 0u32..3, -5i64..6), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(e, d, c)| LaurentPoly::monomial(e, d, c)).sum())
}

/// Power series, so products keep the full precision.
fn series(trunc: i64) -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((0i64..=trunc, 0u32..3, -5i64..6), 0..6).prop_map(move |terms| {
        let p: LaurentPoly = terms.into_iter().map(|(e, d, c)| LaurentPoly::monomial(e, d, c)).sum();
        QLaurent::from_poly(&p, trunc)
    })
}

/// Admissible systems with up to three generators.
fn system() -> impl Strategy<Value = AlphaSystem> {
    (1usize..=3, prop::collection::vec(0u64..3, 3), 0u64..4).prop_map(|(r, bumps, slack)| {
        let mut a: Vec<u64> = Vec::new();
        for &b in &bumps[..r] {
            let next = a.iter().sum::<u64>() + 1 + b;
            a.push(next);
        }
        let n = a.iter().sum::<u64>() + slack.max(1);
        AlphaSystem::new(&a, n).expect("dominant generators below the modulus")
    })
}

proptest! {
    #[test]
    fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn truncated_ring_laws(a in series(8), b in series(8), c in series(8)) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        let left = ab.checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.checked_mul(&QLaurent::one(8)).unwrap(), a.clone());
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn laurent_products_lower_precision(a in laurent(), b in laurent()) {
        let (sa, sb) = (QLaurent::from_poly(&a, 10), QLaurent::from_poly(&b, 10));
        let prod = sa.checked_mul(&sb).unwrap();
        let lowest = sa.min_exp().unwrap_or(0).min(sb.min_exp().unwrap_or(0)).min(0);
        prop_assert!(prod.trunc() <= 10 && prod.trunc() >= 10 + 2 * lowest);
        let exact = QLaurent::from_poly(&(&sa.to_poly() * &sb.to_poly()), prod.trunc());
        prop_assert_eq!(prod, exact);
    }

    #[test]
    fn json_round_trip(a in laurent()) {
        let a = QLaurent::from_poly(&a, 12);
        let back = QLaurent::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn inverse_is_inverse(a in series(10)) {
        let unit = QLaurent::one(10).checked_add(&a.scale_by_monomial(1, 0, 1).truncate(10).unwrap()).unwrap();
        let inv = unit.inverse().unwrap();
        prop_assert_eq!(unit.checked_mul(&inv).unwrap(), QLaurent::one(10));
    }

    #[test]
    fn pascal((m, r) in (0i64..=12).prop_flat_map(|m| (Just(m), 0..=m)), base in prop::sample::select(vec![1i64, -1, -3, -5, -8])) {
        let q = |e: i64| LaurentPoly::monomial(e, 0, 1);
        let lhs = qbinomial(m, r, base);
        prop_assert_eq!(&lhs, &(q(base * r) * qbinomial(m - 1, r, base) + qbinomial(m - 1, r - 1, base)));
        prop_assert_eq!(&lhs, &(qbinomial(m - 1, r, base) + q(base * (m - r)) * qbinomial(m - 1, r - 1, base)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem_on_random_systems(sys in system()) {
        let f = count_f(&sys, 24);
        let g = count_g(&sys, 24, LargestPart::none());
        prop_assert_eq!(f.first_mismatch(&g), None);
        let p = CountTable::from_series(&product_f(&sys, 24).unwrap(), 24).unwrap();
        prop_assert_eq!(f, p);
    }

    #[test]
    fn enumeration_matches_walker(sys in system(), n in 0u64..=14) {
        let listed = list_g(&sys, n);
        let counted = count_g(&sys, n as usize, LargestPart::none());
        prop_assert_eq!(num_bigint::BigInt::from(listed.len()), counted.total(n as usize));
        for (k, c) in counted.row(n as usize).terms() {
            let direct = listed.iter().filter(|o| o.non_overlined() == k as usize).count();
            prop_assert_eq!(num_bigint::BigInt::from(direct), c.clone());
        }
    }

    #[test]
    fn monotone_in_largest_bound(sys in system(), m in 0u64..20) {
        let lo = count_g(&sys, 20, LargestPart::at_most(m));
        let hi = count_g(&sys, 20, LargestPart::at_most(m + 1));
        prop_assert!(lo.dominated_by(&hi));
    }

    #[test]
    fn overline_split(sys in system(), m in 1u64..20) {
        let all = count_g(&sys, 20, LargestPart::at_most(m));
        let pi = count_g(&sys, 20, LargestPart::pi(m));
        let phi = count_g(&sys, 20, LargestPart::phi(m));
        for n in 1..=20 {
            prop_assert_eq!(all.row(n).clone(), pi.row(n) + phi.row(n));
        }
    }

    #[test]
    fn coefficients_stabilize(sys in system(), trunc in 0i64..24) {
        let stop = stabilization_index(&sys, trunc);
        let u = run_recurrence(&sys, stop + 2, trunc).unwrap();
        let n = sys.modulus() as i64;
        let a1 = sys.a(1) as i64;
        for e in 0..=trunc {
            let first = (0..u.len()).find(|&l| l as i64 * n - a1 > e).unwrap();
            for later in &u[first..] {
                prop_assert_eq!(later.coeff(e), u[first].coeff(e));
            }
        }
    }

    #[test]
    fn distinct_part_specialization(sys in system()) {
        prop_assert_eq!(product_f(&sys, 30).unwrap().at_d_zero(), product_distinct(&sys, 30).unwrap());
    }
}
