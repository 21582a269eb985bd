use approx::assert_relative_eq;
use proptest::prelude::*;
use vel_core::thermo::{
    enthalpy, entropy_from, gamma_of_entropy, gamma_prime, point_from_pr, sound_speed_sq, GasParams, PressureOrR,
};
use vel_core::Error;

#[test]
fn gamma_of_entropy_values() {
    let p = GasParams::new(2.0);
    assert_relative_eq!(gamma_of_entropy(0.0, &p), 0.5, epsilon = 1e-15);
    let d = 2.0 * 2f64.ln();
    assert_relative_eq!(gamma_of_entropy(0.4 + d, &p), 0.5 * gamma_of_entropy(0.4, &p), epsilon = 1e-15);
}

#[test]
fn gamma_prime_by_finite_difference() {
    for g in [1.3, 2.0, 2.7] {
        let p = GasParams::new(g);
        for s in [-1.0, 0.0, 0.8] {
            let h = 1e-5;
            let fd = (gamma_of_entropy(s + h, &p) - gamma_of_entropy(s - h, &p)) / (2.0 * h);
            assert_relative_eq!(gamma_prime(s, &p), fd, max_relative = 1e-9);
        }
    }
}

#[test]
fn point_from_pressure() {
    let p = GasParams::new(2.0);
    let t = point_from_pr(PressureOrR::Pressure(0.01), 0.0, &p).unwrap();
    assert_relative_eq!(t.r, 0.1, epsilon = 1e-15);
    assert_relative_eq!(t.eps, 0.1, epsilon = 1e-15);
    assert_relative_eq!(t.n, 0.1, epsilon = 1e-14);
    assert_relative_eq!(t.h, 1.2, epsilon = 1e-15);
    assert_relative_eq!(t.n * t.eps * (p.gamma - 1.0), 0.01, epsilon = 1e-15);

    let v = point_from_pr(PressureOrR::R(0.0), 0.0, &p).unwrap();
    assert_eq!((v.p, v.eps, v.n, v.h), (0.0, 0.0, 0.0, 1.0));

    let a = point_from_pr(PressureOrR::R(2.0), 0.0, &p).unwrap();
    assert_relative_eq!(a.p, 4.0, epsilon = 1e-14);
    let b = point_from_pr(PressureOrR::Pressure(4.0), 0.0, &p).unwrap();
    assert_relative_eq!(b.r, 2.0, epsilon = 1e-15);
}

#[test]
fn negative_inputs_are_rejected() {
    let p = GasParams::new(2.0);
    assert!(matches!(point_from_pr(PressureOrR::Pressure(-1.0), 0.0, &p), Err(Error::NegativeInput(_))));
    assert!(matches!(point_from_pr(PressureOrR::R(-0.1), 0.0, &p), Err(Error::NegativeInput(_))));
}

#[test]
fn sound_speed_values() {
    let p = GasParams::new(2.0);
    assert_eq!(sound_speed_sq(0.0, 0.0, &p), 0.0);
    assert_relative_eq!(sound_speed_sq(0.1, 0.0, &p), 1.0 / 6.0, epsilon = 1e-15);
}

#[test]
fn weight_stays_positive_at_the_boundary() {
    let p = GasParams::new(2.0);
    let limit = gamma_of_entropy(0.3, &p);
    let mut prev = f64::INFINITY;
    for k in 1..12 {
        let r = 10f64.powi(-k);
        let gap = (gamma_of_entropy(0.3, &p) + r - limit).abs();
        assert!(gap < prev);
        prev = gap;
    }
    assert!(limit > 0.1);
}

proptest! {
    #[test]
    fn enthalpy_forms_agree(g in 1.05f64..3.0, s in -2.0f64..2.0, r in 0.0f64..1.0) {
        let p = GasParams::new(g);
        let t = point_from_pr(PressureOrR::R(r), s, &p).unwrap();
        let a = t.eps * g + 1.0;
        prop_assert!((a - enthalpy(s, r, &p)).abs() < 1e-12);
        prop_assert!((a - t.h).abs() < 1e-12);
    }

    #[test]
    fn entropy_round_trip(g in 1.05f64..3.0, s in -2.0f64..2.0, r in 1e-3f64..1.0) {
        let p = GasParams::new(g);
        let t = point_from_pr(PressureOrR::R(r), s, &p).unwrap();
        prop_assert!((entropy_from(t.eps, t.n, &p) - s).abs() < 1e-12);
    }

    #[test]
    fn sound_speed_increases_with_r(g in 1.05f64..3.0, s in -2.0f64..2.0, r in 0.0f64..1.0, dr in 1e-6f64..1.0) {
        let p = GasParams::new(g);
        prop_assert!(sound_speed_sq(r + dr, s, &p) > sound_speed_sq(r, s, &p));
    }
}
