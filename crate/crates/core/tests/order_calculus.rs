use proptest::prelude::*;
use vel_core::order_calculus::certify::{dt_power_rows, operation_rows, order_check, product_rows};
use vel_core::order_calculus::*;
use vel_core::Error;
use VarKind::*;

fn half(doubled: i64) -> Order {
    Order::from_doubled(doubled)
}

fn var_strategy() -> impl Strategy<Value = VarKind> {
    prop_oneof![Just(EntropyLin), Just(SoundLin), Just(VelocityLin)]
}

#[test]
fn orders_of_basic_terms() {
    for k in 0..5 {
        assert_eq!(order_of(&Term::new(k, 2 * k, VelocityLin), k), half(-1));
        assert_eq!(order_of(&Term::new(k, 2 * k, EntropyLin), k), half(-1));
    }
    assert_eq!(order_of(&Term::new(0, 0, SoundLin), 0), half(0));
    assert_eq!(order_of(&Term::new(1, 2, VelocityLin), 1), half(-1));
    assert_eq!(order_of(&Term::new(3, 1, SoundLin), 2), half(8));
}

#[test]
fn classes_follow_the_sign() {
    for k in 0..5 {
        assert_eq!(classify(&Term::new(k + 1, 2 * k, SoundLin), k), Class::Subcritical);
        assert_eq!(classify(&Term::new(k, 2 * k, SoundLin), k), Class::Critical);
        assert_eq!(classify(&Term::new(k, 2 * k, VelocityLin), k), Class::Supercritical);
    }
}

#[test]
fn product_orders() {
    assert_eq!(product_order_of(half(0), half(1)), ProductOrder::Estimable(half(1)));
    assert_eq!(product_order_of(half(-1), half(1)), ProductOrder::Estimable(half(0)));
    assert_eq!(product_order_of(half(-1), half(0)), ProductOrder::NotEstimable(half(-1)));
    assert_eq!(product_order_of(half(-1), half(0)).estimable(), None);
}

#[test]
fn dt_of_bare_sound_perturbation() {
    let t = Term::new(0, 0, SoundLin);
    let out = apply_op(Op::Dt, &t, 1).unwrap();
    assert!(out.contains(&Term::new(1, 1, VelocityLin)));
    assert!(out.contains(&Term::new(0, 0, VelocityLin)));
    assert_eq!(out.min_order(1), Some(half(1)));
    assert_eq!(order_of(&t, 1) - Order::half(), half(1));
}

#[test]
fn dt_of_differentiated_terms_lists_every_branch() {
    let out = apply_op(Op::Dt, &Term::new(2, 3, SoundLin), 1).unwrap();
    assert!(out.contains(&Term::new(3, 4, VelocityLin)));
    assert_eq!(out.terms().filter(|t| **t == Term::new(2, 3, VelocityLin)).count(), 2);
    for i in 0..3 {
        assert!(out.contains(&Term::new(2, i + 1, SoundLin)));
    }
    let out = apply_op(Op::Dt, &Term::new(0, 2, VelocityLin), 1).unwrap();
    for t in [Term::new(0, 3, SoundLin), Term::new(0, 2, VelocityLin), Term::new(0, 2, EntropyLin), Term::new(0, 1, VelocityLin)] {
        assert!(out.contains(&t), "{t}");
    }
}

#[test]
fn multiplication_by_r_and_level_shift() {
    let t = Term::new(0, 2, VelocityLin);
    let out = apply_op(Op::MulR, &t, 1).unwrap();
    assert_eq!(out.terms().copied().collect::<Vec<_>>(), vec![Term::new(1, 2, VelocityLin)]);
    // -3/2 + 1
    assert_eq!(order_of(&t, 1), half(-3));
    assert_eq!(out.min_order(1), Some(half(-1)));

    let t = Term::new(1, 2, VelocityLin);
    let out = apply_op(Op::LevelShift(2), &t, 1).unwrap();
    assert_eq!(out.terms().copied().collect::<Vec<_>>(), vec![t]);
    assert_eq!(order_of(&t, 1), half(-1));
    assert_eq!(out.min_order(2), Some(half(1)));

    assert!(matches!(apply_op(Op::LevelShift(0), &t, 1), Err(Error::LevelShiftBelowCurrent { .. })));
}

#[test]
fn partial_drops_a_power_of_r() {
    let out = apply_op(Op::Partial, &Term::new(2, 1, EntropyLin), 0).unwrap();
    assert!(out.contains(&Term::new(2, 2, EntropyLin)));
    assert!(out.contains(&Term::new(1, 1, EntropyLin)));
    assert_eq!(apply_op(Op::Partial, &Term::new(0, 1, SoundLin), 0).unwrap().len(), 1);
}

#[test]
fn dt_power_examples() {
    let s1 = dt_power_expand(EntropyLin, 1).unwrap();
    assert_eq!(s1.terms().copied().collect::<Vec<_>>(), vec![Term::new(0, 0, VelocityLin)]);

    let r2: Vec<Term> = dt_power_expand(SoundLin, 2).unwrap().terms().copied().collect();
    assert_eq!(r2, vec![Term::new(0, 1, SoundLin), Term::new(1, 2, SoundLin)]);

    let u2 = dt_power_expand(VelocityLin, 2).unwrap();
    assert_eq!(u2.len(), 3);
    for t in [Term::new(0, 1, VelocityLin), Term::new(1, 2, VelocityLin), Term::new(0, 1, SoundLin)] {
        assert!(u2.contains(&t), "{t}");
    }

    assert!(matches!(dt_power_expand(SoundLin, 0), Err(Error::NonPositivePower)));
}

fn coeff(terms: &[CommutatorTerm], dt: u32, d: u32) -> &Expr {
    &terms.iter().find(|t| t.convective == dt && t.spatial == d).expect("term present").coefficient
}

#[test]
fn commutator_lemmas_at_low_order() {
    let du = Expr::atom_word("u", "d");
    let one = commutator_expand(CommutatorKind::PartialDtN, 1).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(coeff(&one, 0, 1), &du);

    let back = commutator_expand(CommutatorKind::DtPartialN, 1).unwrap();
    assert_eq!(back.len(), 1);
    assert_eq!(coeff(&back, 0, 1), &du.scale(-1));

    let two = commutator_expand(CommutatorKind::DtPartialN, 2).unwrap();
    assert_eq!(two.len(), 2);
    assert_eq!(coeff(&two, 0, 2), &du.scale(-2));
    assert_eq!(coeff(&two, 0, 1), &Expr::atom_word("u", "dd").scale(-1));

    // [∂, D_t²]φ = 2(∂u)∂D_tφ + (D_t∂u - (∂u)²)∂φ
    let dt2 = commutator_expand(CommutatorKind::PartialDtN, 2).unwrap();
    assert_eq!(coeff(&dt2, 1, 1), &du.scale(2));
    assert_eq!(coeff(&dt2, 0, 1), &Expr::atom_word("u", "dt").sub(&du.mul(&du)));

    assert!(matches!(commutator_expand(CommutatorKind::DtPartialN, 0), Err(Error::NonPositivePower)));
}

#[test]
fn exhaustive_lemma_check_passes() {
    let rows = order_check(6, 6, 4);
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(!operation_rows(6, 6, 4).is_empty());
    assert!(!product_rows(2, 2, 1).is_empty());
    assert_eq!(dt_power_rows(8).iter().filter(|r| !r.pass).count(), 0);
}

#[test]
fn dt_power_members_are_at_worst_claimed() {
    for var in VarKind::ALL {
        for i in 1..=8 {
            let k = natural_level(i);
            let floor = dt_power_claimed_min(var, i);
            let got = dt_power_expand(var, i).unwrap();
            assert!(got.terms().all(|t| order_of(t, k) >= floor), "{var:?} {i}");
        }
    }
}

proptest! {
    #[test]
    fn operations_shift_orders(m in 0u32..=6, l in 0u32..=6, k in 0u32..=4, var in var_strategy(), big in 0u32..=4) {
        let t = Term::new(m, l, var);
        let o = order_of(&t, k);
        let mul = apply_op(Op::MulR, &t, k).unwrap();
        prop_assert_eq!(mul.min_order(k), Some(o + Order::from_int(1)));
        let par = apply_op(Op::Partial, &t, k).unwrap();
        prop_assert!(par.terms().all(|x| order_of(x, k) == o - Order::from_int(1)));
        let dt = apply_op(Op::Dt, &t, k).unwrap();
        let lo = dt.min_order(k).unwrap();
        if var == EntropyLin {
            prop_assert!(lo >= o - Order::half());
        } else {
            prop_assert_eq!(lo, o - Order::half());
        }
        if l >= 1 || m >= 1 {
            prop_assert!(dt.max_order(k).unwrap() >= o);
        }
        let kk = k + big;
        let shifted = apply_op(Op::LevelShift(kk), &t, k).unwrap();
        prop_assert_eq!(shifted.min_order(kk), Some(o + Order::from_int(big as i64)));
    }

    #[test]
    fn product_order_is_symmetric(a in -12i64..12, b in -12i64..12) {
        prop_assert_eq!(product_order_of(half(a), half(b)), product_order_of(half(b), half(a)));
        match product_order_of(half(a), half(0)) {
            ProductOrder::Estimable(o) | ProductOrder::NotEstimable(o) => prop_assert_eq!(o, half(a)),
        }
    }

    #[test]
    fn classification_matches_order_sign(m in 0u32..8, l in 0u32..8, k in 0u32..5, var in var_strategy()) {
        let t = Term::new(m, l, var);
        let d = order_of(&t, k).doubled;
        let c = classify(&t, k);
        prop_assert_eq!(c == Class::Subcritical, d > 0);
        prop_assert_eq!(c == Class::Critical, d == 0);
    }
}
