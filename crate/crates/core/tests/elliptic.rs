mod common;

use std::f64::consts::TAU;

use common::rng;
use proptest::prelude::*;
use rand::Rng;
use vel_core::dynamics::{
    linear_sources, Background, BackgroundState, BgJets, BgSlice, LinJets, LinearizedState, Prim, PrimGrad,
};
use vel_core::elliptic::*;
use vel_core::grid_norms::Grid;
use vel_core::order_calculus::Order;
use vel_core::thermo::GasParams;
use vel_core::{Error, Scalar};

/// Rest frame, `s = 0`, with `r` and its gradient given per node.
fn rest_slice(grid: &Grid, r: impl Fn(f64, f64) -> (f64, [f64; 3])) -> BgSlice {
    let n = grid.len();
    let mut grad = Vec::with_capacity(n);
    let state = BackgroundState::from_fn(n, 0.0, |i| {
        let (x, y) = grid.coords(i);
        Prim { s: 0.0, r: r(x, y).0, u: [0.0; 3] }
    });
    for i in 0..n {
        let (x, y) = grid.coords(i);
        let mut g = PrimGrad::zero();
        g.r = r(x, y).1;
        grad.push(g);
    }
    BgSlice { state, grad, dt: vec![Prim::zero(); n] }
}

fn smooth_lin(grid: &Grid, seed: u64) -> LinearizedState {
    let mut g = rng(seed);
    let c: Vec<f64> = (0..6).map(|_| g.gen_range(-1.0..1.0)).collect();
    let mut lin = LinearizedState::zeros(grid.len(), 0.0);
    for i in 0..grid.len() {
        let (x, y) = grid.coords(i);
        lin.s[i] = c[0] * (TAU * x).sin() + c[1] * y;
        lin.r[i] = c[2] * (TAU * x).cos() + c[3] * y * y;
        lin.u[0][i] = c[4] * (TAU * x).sin();
        lin.u[1][i] = c[5] * y * (1.0 - y);
    }
    lin
}

#[test]
fn good_operator_at_rest_on_linear_profile() {
    // γ = 2, s = 0 gives Γ = 1/2; r = x
    let params = GasParams::new(2.0);
    let grid = Grid::interval(17, 1.0, 1.0).unwrap();
    let bg = rest_slice(&grid, |x, _| (x, [1.0, 0.0, 0.0]));
    let lin = grid.map_nodes(|x, _| x);
    let quad = grid.map_nodes(|x, _| x * x);
    let a = l1_good(&grid, &bg, &lin, 0.0, &params).unwrap();
    let b = l1_good(&grid, &bg, &quad, 0.0, &params).unwrap();
    for i in 0..grid.len() {
        let x = grid.coords(i).0;
        assert!((a[i] - 1.0 / (0.5 + x)).abs() < 1e-12);
        assert!((b[i] - 4.0 * x / (0.5 + x)).abs() < 1e-11);
    }
}

#[test]
fn curl_part_annihilates_gradients() {
    let params = GasParams::new(2.0);
    let grid = Grid::slab(32, 1.0, 33, 1.0, 1.0).unwrap();
    let bg = rest_slice(&grid, |_, y| (y * (1.0 - y), [0.0, 1.0 - 2.0 * y, 0.0]));
    let phi = grid.map_nodes(|x, y| (TAU * x).sin() * y * y * (1.0 - y));
    let g = grid.grad(&phi).unwrap();
    let u = [g[0].clone(), g[1].clone(), vec![0.0; grid.len()]];
    let l3 = l3_good(&grid, &bg, &u, &params).unwrap();
    let l2 = l2_good(&grid, &bg, &u, &params).unwrap();
    let size = l2.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    let worst = l3.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    // stencil commutation error only
    assert!(worst < 1e-3 * size, "{worst} vs {size}");
}

#[test]
fn full_operator_equals_good_part_on_uniform_rest_state() {
    let params = GasParams::new(2.0);
    let grid = Grid::periodic(32, 1.0).unwrap();
    let bj = BgJets::analytic(&Background::Constant { s0: 0.0, r0: 0.2, u: [0.0; 3] }, &grid, 0.0);
    let lj = LinJets::solve(&grid, &bj, &smooth_lin(&grid, 2), &params).unwrap();
    let d = decompose(&grid, &bj, &lj.f.r, BlackList::Corrected, &params).unwrap();
    let scale = d.full.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    assert!(d.residual.iter().all(|v| v.abs() <= 1e-12 * (1.0 + scale)));
    for b in &d.black {
        assert!(b.iter().all(|v| v.abs() <= 1e-12 * (1.0 + scale)));
    }
}

#[test]
fn black_terms_are_subcritical() {
    let orders = black_term_orders();
    assert!(orders.len() >= BLACK_TERM_NAMES.len());
    for (name, o) in orders {
        assert!(o >= Order::half(), "{name}: {o}");
    }
}

#[test]
fn operator_argument_errors() {
    let params = GasParams::new(2.0);
    let line = Grid::interval(17, 1.0, 2.0).unwrap();
    let bj = BgJets::analytic(&Background::StaticRest { s0: 0.0 }, &line, 0.0);
    let f = vec![0.0; line.len()];
    let v: [Vec<f64>; 3] = std::array::from_fn(|_| f.clone());
    let res = apply_elliptic(EllipticOpId::L2Good, &line, &bj, FieldArg::Scalar(&f), &params);
    assert!(matches!(res, Err(Error::WrongFieldKind(_))));
    let res = apply_elliptic(EllipticOpId::L1Good { b: 0.0 }, &line, &bj, FieldArg::Vector(&v), &params);
    assert!(matches!(res, Err(Error::WrongFieldKind(_))));
    let res = apply_elliptic(EllipticOpId::L1Full, &line, &bj, FieldArg::Scalar(&f), &params);
    assert!(matches!(res, Err(Error::MissingTimeDerivative(_))));
    let res = apply_elliptic(EllipticOpId::L3Good, &line, &bj, FieldArg::Vector(&v), &params);
    assert!(matches!(res, Err(Error::GridDimTooLow)));
}

#[test]
fn fits_need_a_large_family() {
    let grid = Grid::interval(17, 1.0, 2.0).unwrap();
    let res = estimate_constant_fit(&grid, 10, |_, _| Ok((1.0, 1.0)));
    assert!(matches!(res, Err(Error::FamilyTooSmall { got: 10, need: 50 })));
    // zero members are skipped
    let rep = estimate_constant_fit(&grid, 50, |_, m| Ok(if m == 0 { (0.0, 0.0) } else { (1.0, 2.0) })).unwrap();
    assert_eq!(rep.rows.len(), 49);
    assert_eq!(rep.constant, 0.5);
    assert!(rep.stable);
}

#[test]
fn lowest_sources_are_the_linearized_forcing() {
    let params = GasParams::new(2.0);
    let grid = Grid::slab(12, 1.0, 13, 1.0, 2.0).unwrap();
    let bj = BgJets::analytic(&Background::Slab2D { s0: 0.0 }, &grid, 0.2);
    let lin = smooth_lin(&grid, 7);
    let lj = LinJets::solve(&grid, &bj, &lin, &params).unwrap();
    let hs = higher_sources(&grid, &bj, &lj, 0, &params).unwrap();
    for i in 0..grid.len() {
        let p = bj.p[i].map(|j| j.value());
        let g = PrimGrad {
            s: bj.g[i].s.map(|j| j.value()),
            r: bj.g[i].r.map(|j| j.value()),
            u: bj.g[i].u.map(|row| row.map(|j| j.value())),
        };
        let dt = bj.dt(i).map(|j| j.value());
        let (_, gi, hi) = linear_sources(&p, &g, &dt, &lin.at(i), &params);
        assert!((hs.b[i] - gi).abs() < 1e-13);
        for a in 0..4 {
            assert!((hs.c[a][i] - hi[a]).abs() < 1e-13);
        }
    }
}

#[test]
fn constant_state_has_no_commutator_sources() {
    let params = GasParams::new(2.0);
    let grid = Grid::periodic(16, 1.0).unwrap();
    let bj = BgJets::analytic(&Background::Constant { s0: 0.1, r0: 0.2, u: [0.3, 0.0, 0.0] }, &grid, 0.0);
    let lj = LinJets::solve(&grid, &bj, &smooth_lin(&grid, 3), &params).unwrap();
    let hs = higher_sources(&grid, &bj, &lj, 1, &params).unwrap();
    assert!(hs.is_finite());
    assert!(hs.b.iter().chain(hs.c.iter().flatten()).all(|v| v.abs() < 1e-12));
    assert!(higher_sources(&grid, &bj, &lj, 2, &params).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn div_curl_pairing_expands_exactly(seed in 0u64..100_000) {
        let mut g = rng(seed);
        let mut v = || g.gen_range(-1.0..1.0);
        let u = [v(), v(), v()];
        let u0 = (1.0 + u.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let r = 0.5 * (v() + 1.0) + 0.01;
        let c = Coef { r, dr: [v(), v(), v()], u: [u0, u[0], u[1], u[2]], big: 0.5 + r, gamma: 2.0 };
        let du: [[f64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| v()));
        let mut d2u = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in i..3 {
                    let x = v();
                    d2u[k][i][j] = x;
                    d2u[k][j][i] = x;
                }
            }
        }
        let a = pairing_direct(&c, &du, &d2u);
        let b = pairing_expanded(&c, &du, &d2u);
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{a} vs {b}");
    }
}
