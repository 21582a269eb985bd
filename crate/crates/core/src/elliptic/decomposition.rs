//! `L₁ r̃ = L̃₁ r̃ + (sub-critical remainder)`, checked term by term.
//!
//! Convective derivatives of `r̃` come from its time jets, so the remainder
//! is exact up to the spatial stencils.

use super::ops::{l1_full, l1_good};
use crate::dynamics::{a1, check_a1, dt_power, BgJets, JetField};
use crate::error::Result;
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar};
use crate::thermo::{gamma_of_entropy, GasParams};

pub use crate::order_calculus::certify::black_term_orders;

pub const BLACK_TERM_NAMES: [&str; 6] = ["B1", "B2", "B3", "B4", "B5", "B6"];

/// Which remainder list to subtract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlackList {
    /// Rederived list; makes the identity exact.
    Corrected,
    /// The list as usually displayed: the second group lacks the `Π^{00}`
    /// factor and the `D_t r̃ ∂_i(1/u^0)` term.
    Verbatim,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub full: Vec<f64>,
    pub good: Vec<f64>,
    pub black: [Vec<f64>; 6],
    /// `full - good - Σ black`
    pub residual: Vec<f64>,
}

pub fn decompose(grid: &Grid, bg: &BgJets, rt: &[Jet], list: BlackList, params: &GasParams) -> Result<Decomposition> {
    let n = bg.len();
    for p in &bg.p {
        check_a1(a1(&p.map(|j| j.value()), params))?;
    }
    let full = l1_full(grid, bg, rt, params)?;
    let slice = bg.slice();
    let rt0: Vec<f64> = rt.iter().map(|j| j.value()).collect();
    let good = l1_good(grid, &slice, &rt0, 0.0, params)?;

    let rt_field = JetField::new(rt.to_vec());
    let d1 = dt_power(grid, bg, &rt_field, 1)?;
    let d2 = dt_power(grid, bg, &rt_field, 2)?;
    let d1v = d1.values();
    let grad_d1 = grid.grad(&d1v)?;
    let grad_rt = grid.grad(&rt0)?;
    let gm1 = params.gamma - 1.0;

    let mut black: [Vec<f64>; 6] = std::array::from_fn(|_| vec![0.0; n]);
    for k in 0..n {
        let p = &bg.p[k];
        let g = &bg.g[k];
        let u0j = p.u0();
        let u0 = u0j.value();
        let u = [p.u[0].value(), p.u[1].value(), p.u[2].value()];
        let r = p.r.value();
        let big = gamma_of_entropy(p.s.value(), params) + r;
        let c = gm1 / big;
        let dtr = p.r.deriv().value();
        let dr = [g.r[0].value(), g.r[1].value(), g.r[2].value()];
        let du: [[f64; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| g.u[j][i].value()));
        // ∂_i u^0 = u_j ∂_i u^j / u^0
        let du0: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| u[j] * du[j][i]).sum::<f64>() / u0);
        let d_inv_u0: [f64; 3] = std::array::from_fn(|i| -du0[i] / (u0 * u0));
        // dw[i][j] = ∂_i (u^j / u^0)
        let dw: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| du[j][i] / u0 - u[j] * du0[i] / (u0 * u0)));
        let dt_u: [f64; 3] = std::array::from_fn(|j| p.u[j].deriv().value());
        let conv = |dt: f64, grad: [f64; 3]| u0 * dt + u[0] * grad[0] + u[1] * grad[1] + u[2] * grad[2];
        let big_dt_r = conv(dtr, dr);
        let big_dt_u0 = conv(u0j.deriv().value(), du0);
        let big_dt_u: [f64; 3] = std::array::from_fn(|j| conv(dt_u[j], du[j]));
        let pi00 = u0 * u0 - 1.0;

        let drt = [grad_rt[0][k], grad_rt[1][k], grad_rt[2][k]];
        let dd1 = [grad_d1[0][k], grad_d1[1][k], grad_d1[2][k]];
        let dt_rt = rt[k].deriv().value();
        let (r1, r2) = (d1v[k], d2.v[k].value());
        let u_drt: f64 = (0..3).map(|j| u[j] * drt[j]).sum();
        let u_dd1: f64 = (0..3).map(|i| u[i] * dd1[i]).sum();
        let w_dinv: f64 = (0..3).map(|i| u[i] / u0 * d_inv_u0[i]).sum();
        let mut w_dw_drt = 0.0;
        let mut uu0_dw_drt = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                w_dw_drt += u[i] / u0 * dw[i][j] * drt[j];
                uu0_dw_drt += u[i] * u0 * dw[i][j] * drt[j];
            }
        }
        let uu0_dinv: f64 = (0..3).map(|i| u[i] * u0 * d_inv_u0[i]).sum();
        let dtu_drt: f64 = (0..3).map(|i| big_dt_u[i] * drt[i]).sum();

        black[0][k] = big_dt_r * u_drt / (big * u0 * u0);
        let inner_common = r * r2 / (u0 * u0) - 2.0 * r * u_dd1 / (u0 * u0) + 2.0 * r * w_dw_drt
            - big_dt_u0 * r * dt_rt / (u0 * u0)
            - r * dtu_drt / (u0 * u0);
        black[1][k] = match list {
            BlackList::Corrected => c * pi00 * (inner_common - 2.0 * r * r1 * w_dinv),
            BlackList::Verbatim => c * inner_common,
        };
        black[2][k] = pi00 * dtr * r1 / (big * u0);
        black[3][k] = 2.0 * c * r * u_dd1;
        black[4][k] = 2.0 * c * r * (r1 * uu0_dinv - uu0_dw_drt);
        black[5][k] = (0..3).map(|i| u[i] * u0 * dr[i]).sum::<f64>() * r1 / (big * u0);
    }
    let residual = (0..n)
        .map(|k| full[k] - good[k] - black.iter().map(|b| b[k]).sum::<f64>())
        .collect();
    Ok(Decomposition { full, good, black, residual })
}
