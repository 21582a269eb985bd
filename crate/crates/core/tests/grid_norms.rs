use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use vel_core::dynamics::LinearizedState;
use vel_core::grid_norms::{
    energies, h2k_norm, pairwise_sum, weighted_sobolev_norm, write_norm_csv, EnergyInputs, Grid, NormSpec,
};
use vel_core::thermo::GasParams;
use vel_core::verify::family_scalar;

#[test]
fn derivatives_of_polynomials_and_constants() {
    // uniform mesh, where the stencils are exact on quartics
    let g = Grid::interval(33, 1.0, 1.0).unwrap();
    let f = g.map_nodes(|x, _| x * x);
    let d = g.diff(&f, 0, 1).unwrap();
    for i in 0..g.len() {
        assert_abs_diff_eq!(d[i], 2.0 * g.coords(i).0, epsilon = 1e-11);
    }
    let c = vec![3.0; g.len()];
    assert!(g.diff(&c, 0, 1).unwrap().iter().all(|v| v.abs() < 1e-11));
}

#[test]
fn periodic_derivative_is_fourth_order() {
    let err = |n: usize| {
        let g = Grid::periodic(n, 2.0).unwrap();
        let k = std::f64::consts::PI;
        let f = g.map_nodes(|x, _| (k * x).sin());
        let d = g.diff(&f, 0, 1).unwrap();
        (0..n).map(|i| (d[i] - k * (k * g.coords(i).0).cos()).abs()).fold(0.0, f64::max)
    };
    let (a, b, c) = (err(32), err(64), err(128));
    assert!((a / b - 16.0).abs() < 1.5, "{}", a / b);
    assert!((b / c - 16.0).abs() < 1.0, "{}", b / c);
}

#[test]
fn weighted_norm_examples() {
    let g = Grid::interval(129, 1.0, 2.0).unwrap();
    let r = g.map_nodes(|x, _| x);
    let one = vec![1.0; g.len()];
    let v = weighted_sobolev_norm(&g, &one, NormSpec::new(0, 0.5), &r).unwrap();
    assert_abs_diff_eq!(v, 0.5f64.sqrt(), epsilon = 1e-8);
    let zero = vec![0.0; g.len()];
    assert_eq!(weighted_sobolev_norm(&g, &zero, NormSpec::new(2, 0.5), &r).unwrap(), 0.0);
}

#[test]
fn singular_weights_integrate_accurately() {
    let g = Grid::interval(257, 1.0, 2.0).unwrap();
    let r = g.map_nodes(|x, _| x);
    let one = vec![1.0; g.len()];
    for s in [-0.4, 0.0, 0.5, 1.0] {
        let exact = 1.0 / (1.0 + s);
        let got = g.integrate_weighted(&r, s, &one);
        assert!((got - exact).abs() / exact < 1e-8, "σ = {s}: {got}");
    }
}

#[test]
fn pairwise_sum_matches_exact_sum() {
    let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
    assert_eq!(pairwise_sum(&v), 499_500.0);
    assert_eq!(pairwise_sum(&[]), 0.0);
}

fn static_r(g: &Grid) -> Vec<f64> {
    g.map_nodes(|x, _| x * (1.0 - x))
}

#[test]
fn basic_energy_of_unit_r_perturbation() {
    // γ = 2 at rest with s = 0, r = x and r̃ = 1: the weight is r⁰ and E⁰ = 1/2
    let params = GasParams::new(2.0);
    let g = Grid::interval(257, 1.0, 2.0).unwrap();
    let mut bg = LinearizedState::zeros(g.len(), 0.0);
    bg.r = g.map_nodes(|x, _| x);
    let mut lin = LinearizedState::zeros(g.len(), 0.0);
    lin.r = vec![1.0; g.len()];
    let rep = energies(&EnergyInputs {
        grid: &g,
        bg: &bg,
        lin: &lin,
        params: &params,
        k: 0,
        convective: vec![],
        omega_hat: vec![],
    })
    .unwrap();
    assert_abs_diff_eq!(rep.e0, 0.5, epsilon = 1e-8);
    assert_eq!(rep.e_total, rep.e0);
}

#[test]
fn zero_perturbation_has_zero_energies() {
    let params = GasParams::new(2.0);
    let g = Grid::interval(33, 1.0, 2.0).unwrap();
    let mut bg = LinearizedState::zeros(g.len(), 0.0);
    bg.r = static_r(&g);
    let lin = LinearizedState::zeros(g.len(), 0.0);
    let z = vec![0.0; g.len()];
    let rep = energies(&EnergyInputs {
        grid: &g,
        bg: &bg,
        lin: &lin,
        params: &params,
        k: 1,
        convective: vec![(z.clone(), [z.clone(), z.clone(), z.clone(), z])],
        omega_hat: vec![],
    })
    .unwrap();
    assert_eq!((rep.e0, rep.e_wave, rep.e_transport, rep.h2k), (0.0, 0.0, 0.0, 0.0));
}

#[test]
fn energies_need_the_convective_powers() {
    let params = GasParams::new(2.0);
    let g = Grid::interval(17, 1.0, 2.0).unwrap();
    let bg = LinearizedState::zeros(g.len(), 0.0);
    let lin = bg.clone();
    let res = energies(&EnergyInputs { grid: &g, bg: &bg, lin: &lin, params: &params, k: 1, convective: vec![], omega_hat: vec![] });
    assert!(res.is_err());
}

#[test]
fn norm_csv_has_stable_ids() {
    let mut buf = Vec::new();
    write_norm_csv(&mut buf, &[(0.5, "E0".into(), 1.25)]).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert_eq!(s.lines().next(), Some("t,norm_id,value"));
    assert!(s.lines().nth(1).unwrap().contains(",E0,"));
}

#[test]
fn trading_derivatives_for_weight_is_stable() {
    let fit = |n: usize| {
        let g = Grid::interval(n, 1.0, 2.0).unwrap();
        let r = static_r(&g);
        let rmax = r.iter().cloned().fold(0.0, f64::max);
        (0..50)
            .map(|m| {
                let f = family_scalar(&g, m, 9);
                let lo = weighted_sobolev_norm(&g, &f, NormSpec::new(0, 0.5), &r).unwrap();
                let hi = weighted_sobolev_norm(&g, &f, NormSpec::new(1, 0.5), &r).unwrap();
                lo / (rmax * hi)
            })
            .fold(0.0, f64::max)
    };
    let (a, b) = (fit(65), fit(129));
    assert!(a.is_finite() && (a - b).abs() / a.max(b) <= 0.1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn adding_a_weight_costs_at_most_sup_r(member in 0usize..200, seed in 0u64..100, j in 0usize..3, sigma in 0.0f64..1.5) {
        let g = Grid::interval(49, 1.0, 2.0).unwrap();
        let r = static_r(&g);
        let rmax = r.iter().cloned().fold(0.0, f64::max);
        let f = family_scalar(&g, member, seed);
        let a = weighted_sobolev_norm(&g, &f, NormSpec::new(j, sigma + 0.5), &r).unwrap().powi(2);
        let b = weighted_sobolev_norm(&g, &f, NormSpec::new(j, sigma), &r).unwrap().powi(2);
        prop_assert!(a <= rmax * b * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn h2k_norm_is_homogeneous(member in 0usize..200, c in -5.0f64..5.0) {
        let g = Grid::interval(33, 1.0, 2.0).unwrap();
        let r = static_r(&g);
        let mut lin = LinearizedState::zeros(g.len(), 0.0);
        lin.r = family_scalar(&g, member, 1);
        lin.s = family_scalar(&g, member + 1, 1);
        lin.u[0] = family_scalar(&g, member + 2, 1);
        for k in 0..2 {
            let a = h2k_norm(&g, &r, &lin, k, 2.0).unwrap();
            let b = h2k_norm(&g, &r, &lin.scaled(c), k, 2.0).unwrap();
            prop_assert!((b - c.abs() * a).abs() <= 1e-12 * (1.0 + b));
        }
    }
}
