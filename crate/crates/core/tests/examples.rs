use num_bigint::BigInt;
use overpart_core::enumeration::{
    all_overpartitions, check_g_conditions, count_all_overpartitions, count_f, count_g, count_g_andrews_k0, list_g,
    LargestPart,
};
use overpart_core::recurrence::{
    g_series, limit_u, rec_residual, run_recurrence, verify_chain, verify_eq_357, verify_key_lemma, verify_lemma2,
    GFamily,
};
use overpart_core::series::{pochhammer, product_f, qbinomial, Factors};
use overpart_core::{AlphaSystem, DPoly, LaurentPoly, Overpartition, Part, QLaurent, SystemError, XSeries};

fn n7() -> AlphaSystem {
    AlphaSystem::new(&[1, 2, 4], 7).unwrap()
}

fn schur() -> AlphaSystem {
    AlphaSystem::new(&[1, 2], 3).unwrap()
}

fn n9() -> AlphaSystem {
    AlphaSystem::new(&[1, 3, 5], 9).unwrap()
}

fn q(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(e, 0, 1)
}

fn op(parts: &[(u64, bool)]) -> Overpartition {
    Overpartition::new(
        parts
            .iter()
            .map(|&(s, o)| if o { Part::over(s) } else { Part::plain(s) })
            .collect(),
    )
    .unwrap()
}

#[test]
fn system_tables() {
    let sys = n7();
    assert_eq!(sys.alpha().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6, 7]);
    let w: Vec<usize> = (1..=7).map(|a| sys.w(a).unwrap()).collect();
    assert_eq!(w, vec![1, 1, 2, 1, 2, 2, 3]);
    assert_eq!([3, 5, 6, 7].map(|a| sys.v(a).unwrap()), [1, 1, 2, 1]);
    assert_eq!(schur().w(3), Some(2));
    assert_eq!(schur().v(3), Some(1));
}

#[test]
fn system_rejections() {
    assert!(matches!(
        AlphaSystem::new(&[1, 2, 3], 20),
        Err(SystemError::SumsNotDistinct { value: 3 })
    ));
    assert!(matches!(
        AlphaSystem::new(&[1, 2, 4], 6),
        Err(SystemError::ModulusTooSmall { .. })
    ));
}

#[test]
fn beta_residues() {
    assert_eq!(n7().beta(-8), 6);
    assert_eq!(n7().beta(7), 7);
    assert_eq!(schur().beta(5), 2);
}

#[test]
fn weight_sums() {
    let sys = n7();
    assert_eq!(sys.alpha_weight_sum(3, 1), q(-1) + q(-2));
    assert_eq!(sys.alpha_weight_sum(3, 0), LaurentPoly::one());
    assert_eq!(sys.alpha_weight_sum(4, 3), q(-7));
}

#[test]
fn ring_examples() {
    let one_plus = QLaurent::from_poly(&(LaurentPoly::one() + q(1)), 10);
    let one_minus = QLaurent::from_poly(&(LaurentPoly::one() - q(1)), 10);
    assert_eq!(
        one_plus.checked_mul(&one_minus).unwrap().to_poly(),
        LaurentPoly::one() - q(2)
    );
    assert_eq!(
        QLaurent::one(10).scale_by_monomial(-3, 1, -1).to_poly(),
        LaurentPoly::monomial(-3, 1, -1)
    );
    let a = QLaurent::from_poly(&(q(-1) + LaurentPoly::one()), 5);
    let b = QLaurent::from_poly(&(q(1) + LaurentPoly::monomial(0, 1, 1)), 5);
    let want = LaurentPoly::one() + q(1) + LaurentPoly::monomial(-1, 1, 1) + LaurentPoly::monomial(0, 1, 1);
    assert_eq!(a.checked_mul(&b).unwrap().to_poly(), want);
}

#[test]
fn qbinomial_examples() {
    assert_eq!(
        qbinomial(4, 2, 1),
        LaurentPoly::one() + q(1) + q(2) + q(2) + q(3) + q(4)
    );
    assert_eq!(qbinomial(5, 0, -3), LaurentPoly::one());
    assert_eq!(qbinomial(3, 1, -2), LaurentPoly::one() + q(-2) + q(-4));
}

#[test]
fn pochhammer_examples() {
    let distinct = pochhammer(-1, 0, 1, 1, Factors::Infinite, 5).unwrap();
    let counts: Vec<i64> = vec![1, 1, 1, 2, 2, 3];
    for (n, c) in counts.into_iter().enumerate() {
        assert_eq!(distinct.coeff(n as i64), DPoly::constant(c));
    }
    let single = pochhammer(1, 1, 1, 1, Factors::Finite(1), 5).unwrap();
    assert_eq!(single.to_poly(), LaurentPoly::one() - LaurentPoly::monomial(1, 1, 1));
    let evens = pochhammer(1, 1, 2, 2, Factors::Infinite, 6).unwrap().inverse().unwrap();
    assert_eq!(evens.coeff(6), DPoly::from_i64s(&[0, 1, 1, 1]));
}

#[test]
fn product_examples() {
    let p = product_f(&n7(), 8).unwrap();
    assert_eq!(p.coeff(8), DPoly::from_i64s(&[1, 2, 1]));
    assert_eq!(p.coeff(0), DPoly::one());
    assert!(p.coeff(1).is_zero());
    for sys in [schur(), n9()] {
        assert_eq!(product_f(&sys, 10).unwrap().coeff(0), DPoly::one());
    }
}

#[test]
fn substitution_examples() {
    let f = XSeries::from_polys(&[LaurentPoly::one(), LaurentPoly::one()], 3, 10);
    let sub = f.substitute_x(1, 3);
    assert_eq!(sub.coeff(0).to_poly(), LaurentPoly::one());
    assert_eq!(sub.coeff(1).to_poly(), q(3));
    let g = XSeries::from_polys(
        &[LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::monomial(0, 1, 1)],
        3,
        40,
    );
    assert_eq!(g.substitute_x(2, 7).coeff(2).to_poly(), LaurentPoly::monomial(28, 1, 1));
}

#[test]
fn overpartition_counts() {
    let t = count_all_overpartitions(4);
    assert_eq!(t.total(4), BigInt::from(14));
    assert_eq!(t.total(0), BigInt::from(1));
    assert_eq!(t.total(3), BigInt::from(8));
    assert_eq!(all_overpartitions(3).len(), 8);
}

#[test]
fn f_and_g_examples() {
    let sys = n7();
    let want = DPoly::from_i64s(&[1, 2, 1]);
    assert_eq!(count_f(&sys, 8).row(8), &want);
    assert_eq!(count_g(&sys, 8, LargestPart::none()).row(8), &want);
    assert_eq!(count_f(&sys, 0).row(0), &DPoly::one());
    let over = count_g(&sys, 8, LargestPart::pi(8));
    assert_eq!(over.row(8), &DPoly::from_i64s(&[1, 1]));
    for largest in [LargestPart::none(), LargestPart::at_most(3), LargestPart::phi(2)] {
        assert_eq!(count_g(&sys, 0, largest).row(0), &DPoly::one());
    }
    let listed: Vec<String> = list_g(&sys, 8).iter().map(ToString::to_string).collect();
    assert_eq!(listed.len(), 4);
    for s in ["8", "8'", "5+3", "5'+3"] {
        assert!(listed.iter().any(|l| l == s), "{s} missing from {listed:?}");
    }
}

#[test]
fn g_condition_examples() {
    let sys = n7();
    assert!(check_g_conditions(&sys, &op(&[(5, false), (3, false)])));
    assert!(check_g_conditions(&sys, &op(&[(5, true), (3, false)])));
    assert!(!check_g_conditions(&sys, &op(&[(5, false), (3, true)])));
    assert!(check_g_conditions(&sys, &op(&[(8, true)])));
    assert!(!check_g_conditions(&sys, &op(&[(7, false), (1, false)])));
    assert!(check_g_conditions(&sys, &Overpartition::empty()));
    assert!(check_g_conditions(&sys, &op(&[(6, false), (6, false)])));
    assert!(Overpartition::new(vec![Part::over(6), Part::over(6)]).is_err());
}

#[test]
fn andrews_examples() {
    let sys = n7();
    let k0 = count_g_andrews_k0(&sys, 8);
    assert_eq!(k0[8], BigInt::from(1));
    assert_eq!(k0[0], BigInt::from(1));
    assert_eq!(
        count_g_andrews_k0(&schur(), 5)[5],
        count_g(&schur(), 5, LargestPart::none()).get(0, 5)
    );
}

#[test]
fn g_series_examples() {
    let sys = n7();
    assert_eq!(g_series(&sys, 0, 10).unwrap(), QLaurent::one(10));
    assert_eq!(
        g_series(&sys, -8, 10).unwrap().to_poly(),
        LaurentPoly::monomial(0, 1, -1)
    );
    assert_eq!(g_series(&sys, 8, 8).unwrap().coeff(8), DPoly::from_i64s(&[1, 2, 1]));
}

#[test]
fn lemma_examples() {
    let sys = n7();
    assert!(verify_lemma2(&mut GFamily::new(&sys, 20).unwrap(), 2, 1)
        .unwrap()
        .is_zero());
    let s = schur();
    assert!(verify_lemma2(&mut GFamily::new(&s, 15).unwrap(), 1, 2)
        .unwrap()
        .is_zero());

    let e = verify_eq_357(&mut GFamily::new(&sys, 25).unwrap(), 2, 2).unwrap();
    assert!(e.summed.is_zero() && e.three_term.is_none_or(|t| t.is_zero()));
    let e = verify_eq_357(&mut GFamily::new(&s, 15).unwrap(), 1, 1).unwrap();
    assert!(e.summed.is_zero() && e.three_term.is_none_or(|t| t.is_zero()));
    let nine = n9();
    let e = verify_eq_357(&mut GFamily::new(&nine, 30).unwrap(), 3, 3).unwrap();
    assert!(e.summed.is_zero() && e.three_term.is_none_or(|t| t.is_zero()));
}

#[test]
fn key_lemma_examples() {
    let sys = n7();
    let mut fam = GFamily::new(&sys, 30).unwrap();
    for ell in 1..4 {
        assert!(verify_key_lemma(&mut fam, 1, ell).unwrap().is_zero());
    }
    assert!(verify_key_lemma(&mut GFamily::new(&sys, 25).unwrap(), 2, 2)
        .unwrap()
        .is_zero());
    assert!(verify_key_lemma(&mut fam, 4, 3).unwrap().is_zero());
    let seq: Vec<QLaurent> = (0..=3).map(|l| fam.g(l * 7 - 1).unwrap()).collect();
    assert!(rec_residual(&sys, 3, &seq).unwrap().is_zero());
}

#[test]
fn recurrence_examples() {
    assert_eq!(run_recurrence(&n7(), 0, 10).unwrap(), vec![QLaurent::one(10)]);
    let lim = limit_u(&n7(), 8).unwrap();
    assert_eq!(lim.coeff(8), DPoly::from_i64s(&[1, 2, 1]));
    for sys in [schur(), n7(), n9()] {
        assert_eq!(limit_u(&sys, 12).unwrap().coeff(0), DPoly::one());
    }
    assert_eq!(limit_u(&n9(), 40).unwrap(), product_f(&n9(), 40).unwrap());
}

#[test]
fn chain_examples() {
    assert!(verify_chain(&n7(), 6, 6, 40).unwrap().passed());
    assert!(verify_chain(&schur(), 8, 8, 30).unwrap().passed());
    assert!(verify_chain(&n7(), 6, 0, 20).unwrap().passed());
}

#[test]
fn perturbed_sequence_is_caught() {
    let sys = n7();
    let mut u = run_recurrence(&sys, 4, 20).unwrap();
    assert!(rec_residual(&sys, 3, &u).unwrap().is_zero());
    u[2] = u[2].checked_add(&QLaurent::monomial(15, 1, 1, 20)).unwrap();
    assert!(!rec_residual(&sys, 3, &u).unwrap().is_zero());
}
