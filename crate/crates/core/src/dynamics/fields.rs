//! Grid-level versions of the pointwise formulas.

use super::ck::{grad_fields, BgSlice};
use super::pointwise::{linear_dt, linear_sources, nonlinear_dt};
use super::state::{BackgroundState, FieldSet, Forcing, LinearizedState};
use crate::error::Result;
use crate::grid_norms::Grid;
use crate::thermo::GasParams;

/// `∂_t (s, r, u^j)` of the nonlinear system, optionally forced.
pub fn nonlinear_time_derivatives(
    grid: &Grid,
    bg: &BackgroundState,
    forcing: Option<&Forcing>,
    params: &GasParams,
) -> Result<FieldSet> {
    let g = grad_fields(grid, bg)?;
    let mut out = FieldSet::zeros(bg.len(), bg.t);
    for i in 0..bg.len() {
        let f = forcing.map(|f| f.at(i));
        out.set(i, nonlinear_dt(&bg.at(i), &g[i], f.as_ref(), params)?);
    }
    Ok(out)
}

/// Sources `(f, g, h^α)` on the grid.
pub struct Sources {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub h: [Vec<f64>; 4],
}

pub fn linearized_sources(bg: &BgSlice, lin: &LinearizedState, params: &GasParams) -> Sources {
    let n = lin.len();
    let mut out = Sources { f: vec![0.0; n], g: vec![0.0; n], h: std::array::from_fn(|_| vec![0.0; n]) };
    for i in 0..n {
        let (f, g, h) = linear_sources(&bg.state.at(i), &bg.grad[i], &bg.dt[i], &lin.at(i), params);
        out.f[i] = f;
        out.g[i] = g;
        for a in 0..4 {
            out.h[a][i] = h[a];
        }
    }
    out
}

/// `∂_t (s̃, r̃, ũ^j)` of the linearized system.
pub fn linearized_time_derivatives(
    grid: &Grid,
    bg: &BgSlice,
    lin: &LinearizedState,
    params: &GasParams,
) -> Result<LinearizedState> {
    let lg = grad_fields(grid, lin)?;
    let mut out = FieldSet::zeros(lin.len(), lin.t);
    for i in 0..lin.len() {
        out.set(i, linear_dt(&bg.state.at(i), &bg.grad[i], &bg.dt[i], &lin.at(i), &lg[i], params)?);
    }
    Ok(out)
}
