mod common;

use approx::assert_abs_diff_eq;
use common::{max_diff, oracle, random_grad, random_point, random_prim, rng};
use proptest::prelude::*;
use vel_core::dynamics::{
    a1, forcing_from_jets, linear_dt, linear_sources, manufactured_forcing, nonlinear_dt, step_rk4, Background,
    BgSource, LinearizedState, Prim, PrimGrad,
};
use vel_core::grid_norms::Grid;
use vel_core::thermo::{gamma_of_entropy, GasParams};
use vel_core::Error;

#[test]
fn nonlinear_elimination_matches_linear_solve() {
    let mut g = rng(11);
    for gamma in [1.5, 2.0, 2.5] {
        let params = GasParams::new(gamma);
        for _ in 0..200 {
            let (p, d) = random_point(&mut g);
            let f = random_prim(&mut g, 0.5);
            let got = nonlinear_dt(&p, &d, Some(&f), &params).unwrap();
            let want = oracle::nonlinear(&p, &d, &f, gamma);
            assert!(max_diff(&got, &want) < 1e-12, "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn linearized_elimination_matches_linear_solve() {
    let mut g = rng(12);
    for gamma in [1.5, 2.0, 2.5] {
        let params = GasParams::new(gamma);
        for _ in 0..200 {
            let (p, d) = random_point(&mut g);
            let l = random_prim(&mut g, 1.0);
            let lg = random_grad(&mut g);
            let dt = nonlinear_dt(&p, &d, None, &params).unwrap();
            let got = linear_dt(&p, &d, &dt, &l, &lg, &params).unwrap();
            let want = oracle::linearized(&p, &d, &l, &lg, gamma);
            assert!(max_diff(&got, &want) < 1e-12, "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn constant_rest_state_is_stationary() {
    let params = GasParams::new(2.0);
    let p = Prim { s: 0.3, r: 0.2, u: [0.0; 3] };
    let dt = nonlinear_dt(&p, &PrimGrad::zero(), None, &params).unwrap();
    assert_eq!(dt, Prim::zero());
    assert_abs_diff_eq!(a1(&p, &params), 1.0, epsilon = 1e-15);
}

#[test]
fn rest_frame_with_profile_accelerates_down_the_gradient() {
    let params = GasParams::new(2.0);
    let p = Prim { s: 0.0, r: 0.2, u: [0.0; 3] };
    let mut d = PrimGrad::zero();
    d.r = [0.7, -0.3, 0.0];
    let dt = nonlinear_dt(&p, &d, None, &params).unwrap();
    assert_abs_diff_eq!(dt.r, 0.0, epsilon = 1e-15);
    for j in 0..3 {
        assert_abs_diff_eq!(dt.u[j], -d.r[j] / 0.7, epsilon = 1e-15);
    }
}

#[test]
fn degenerate_a1_is_rejected() {
    // a1 = u0 - (γ-1)(u0²-1) r /((Γ+r) u0) stays positive for γ ≤ 2
    let params = GasParams::new(3.0);
    let p = Prim { s: 0.0, r: 50.0, u: [30.0, 0.0, 0.0] };
    let res = nonlinear_dt(&p, &PrimGrad::zero(), None, &params);
    assert!(matches!(res, Err(Error::DegenerateA1(_))));
}

#[test]
fn sources_on_static_profile() {
    let params = GasParams::new(2.0);
    let p = Prim { s: 0.0, r: 0.2, u: [0.0; 3] };
    let mut d = PrimGrad::zero();
    d.r = [0.9, 0.0, 0.0];
    let dt = nonlinear_dt(&p, &d, None, &params).unwrap();
    let l = Prim { s: 0.0, r: 1.0, u: [0.0; 3] };
    let (f, g, h) = linear_sources(&p, &d, &dt, &l, &params);
    assert_eq!(f, 0.0);
    assert_abs_diff_eq!(g, 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(h[0], 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(h[1], 0.9 / (0.7 * 0.7), epsilon = 1e-14);
}

#[test]
fn acoustic_plane_wave_on_constant_state() {
    let params = GasParams::new(2.0);
    let (r0, a, k) = (0.1, 0.3, 2.0_f64);
    let big = gamma_of_entropy(0.0, &params) + r0;
    let p = Prim { s: 0.0, r: r0, u: [0.0; 3] };
    for x in [0.0, 0.3, 1.1] {
        let l = Prim { s: 0.0, r: (k * x).cos(), u: [a * (k * x).sin(), 0.0, 0.0] };
        let mut lg = PrimGrad::zero();
        lg.r[0] = -k * (k * x).sin();
        lg.u[0][0] = a * k * (k * x).cos();
        let dt = linear_dt(&p, &PrimGrad::zero(), &Prim::zero(), &l, &lg, &params).unwrap();
        assert_abs_diff_eq!(dt.r, -r0 * a * k * (k * x).cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(dt.u[0], k * (k * x).sin() / big, epsilon = 1e-14);
        assert_eq!(dt.s, 0.0);
    }
}

#[test]
fn forcing_of_constant_and_static_backgrounds() {
    let params = GasParams::new(2.0);
    let grid = Grid::periodic(16, 1.0).unwrap();
    let f = manufactured_forcing(&Background::Constant { s0: 0.0, r0: 0.1, u: [0.0; 3] }, &grid, 0.0, &params).unwrap();
    assert_eq!(f.max_abs(), 0.0);

    let bg = Background::StaticRest { s0: 0.0 };
    let grid = Grid::interval(17, 1.0, 2.0).unwrap();
    let f = manufactured_forcing(&bg, &grid, 0.0, &params).unwrap();
    for i in 0..grid.len() {
        let (x, _) = grid.coords(i);
        let pi = std::f64::consts::PI;
        let r = x * (1.0 - x) * (1.0 + 0.1 * (pi * x).sin());
        let dr = (1.0 - 2.0 * x) * (1.0 + 0.1 * (pi * x).sin()) + x * (1.0 - x) * 0.1 * pi * (pi * x).cos();
        let s = 0.1 * (pi * x).cos();
        let want = dr / (gamma_of_entropy(s, &params) + r);
        assert_abs_diff_eq!(f.u[0][i], want, epsilon = 1e-13);
        assert_eq!(f.s[i], 0.0);
        assert_eq!(f.r[i], 0.0);
    }
}

#[test]
fn moving_background_needs_no_forcing_in_the_entropy_law_when_advected() {
    // D_t s on the manufactured 1-D profile is the s-component of the forcing;
    // check it against a direct evaluation of u^μ ∂_μ s.
    let params = GasParams::new(2.0);
    let bg = Background::Manufactured1D { s0: 0.0 };
    let (t, x) = (0.4, 0.37);
    let (p, g) = bg.jets_at(t, x, 0.0);
    let f = forcing_from_jets(&p, &g, &params);
    let pi = std::f64::consts::PI;
    let u1 = (pi * x).sin() * (0.5 * t.sin() + 1.0) * 0.1;
    let u0 = (1.0 + u1 * u1).sqrt();
    let ds_dt = 0.05 * (pi * x - 0.5 * t).sin();
    let ds_dx = -0.1 * pi * (pi * x - 0.5 * t).sin();
    assert_abs_diff_eq!(f.s.0[0], u0 * ds_dt + u1 * ds_dx, epsilon = 1e-14);
}

#[test]
fn zero_perturbation_stays_zero() {
    let params = GasParams::new(2.0);
    let grid = Grid::interval(33, 1.0, 2.0).unwrap();
    let src = BgSource::Analytic(Background::Manufactured1D { s0: 0.0 });
    let mut lin = LinearizedState::zeros(grid.len(), 0.0);
    let mut bg = src;
    for _ in 0..5 {
        let (b, l) = step_rk4(&grid, &bg, &lin, 1e-3, &params).unwrap();
        bg = b;
        lin = l;
    }
    assert!(lin.max_abs() <= 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elimination_is_linear_in_the_forcing(seed in 0u64..10_000, c in -2.0f64..2.0) {
        let params = GasParams::new(2.0);
        let mut g = rng(seed);
        let (p, d) = random_point(&mut g);
        let f = random_prim(&mut g, 1.0);
        let base = nonlinear_dt(&p, &d, None, &params).unwrap();
        let one = nonlinear_dt(&p, &d, Some(&f), &params).unwrap();
        let fc = f.map(|v| c * v);
        let two = nonlinear_dt(&p, &d, Some(&fc), &params).unwrap();
        let lin = |a: f64, b: f64, x: f64| x - (a + c * (b - a));
        let e = [lin(base.s, one.s, two.s), lin(base.r, one.r, two.r), lin(base.u[0], one.u[0], two.u[0])];
        prop_assert!(e.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn linearized_tuple_is_homogeneous(seed in 0u64..10_000, c in -3.0f64..3.0) {
        let params = GasParams::new(1.8);
        let mut g = rng(seed);
        let (p, d) = random_point(&mut g);
        let l = random_prim(&mut g, 1.0);
        let lg = random_grad(&mut g);
        let dt = nonlinear_dt(&p, &d, None, &params).unwrap();
        let a = linear_dt(&p, &d, &dt, &l, &lg, &params).unwrap();
        let lc = l.map(|v| c * v);
        let mut lgc = lg;
        for i in 0..3 {
            lgc.s[i] *= c;
            lgc.r[i] *= c;
            for j in 0..3 {
                lgc.u[j][i] *= c;
            }
        }
        let b = linear_dt(&p, &d, &dt, &lc, &lgc, &params).unwrap();
        prop_assert!(max_diff(&a.map(|v| c * v), &b) < 1e-12);
    }
}
