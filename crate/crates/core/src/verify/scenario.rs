//! Scenario construction and the checks a background must pass first.

use super::config::{Scenario, ScenarioId, Tolerances};
use super::family::{self, FamilyKind};
use crate::dynamics::{Background, LinearizedState};
use crate::error::{Error, Result};
use crate::grid_norms::{AxisKind, Grid};
use crate::jet::Scalar;
use crate::thermo::{gamma_of_entropy, GasParams};
use std::f64::consts::TAU;

/// `r` of the constant-state scenario.
pub const CONSTANT_R0: f64 = 0.1;

/// Width of the boundary layer in which the localization constant is measured.
pub const LAYER: f64 = 0.02;

#[derive(Clone, Debug)]
pub struct Setup {
    pub grid: Grid,
    pub background: Background,
    pub params: GasParams,
    pub lin0: LinearizedState,
}

pub fn background_of(id: ScenarioId, s0: f64) -> Background {
    match id {
        ScenarioId::ConstantState => Background::Constant { s0, r0: CONSTANT_R0, u: [0.0; 3] },
        ScenarioId::StaticRestFrame => Background::StaticRest { s0 },
        ScenarioId::Manufactured1d => Background::Manufactured1D { s0 },
        ScenarioId::Slab2d => Background::Slab2D { s0 },
    }
}

pub fn grid_of(id: ScenarioId, n: usize, grading: f64) -> Result<Grid> {
    match id {
        ScenarioId::ConstantState => Grid::periodic(n, 1.0),
        ScenarioId::StaticRestFrame | ScenarioId::Manufactured1d => Grid::interval(n + 1, 1.0, grading),
        ScenarioId::Slab2d => Grid::slab(n, 1.0, n + 1, 1.0, grading),
    }
}

/// Right-moving acoustic wave on the constant state with wavenumber `2π`.
pub fn travelling_wave(grid: &Grid, s0: f64, amplitude: f64, params: &GasParams) -> LinearizedState {
    let big = gamma_of_entropy(s0, params) + CONSTANT_R0;
    let c = ((params.gamma - 1.0) * CONSTANT_R0 / big).sqrt();
    let mut lin = LinearizedState::zeros(grid.len(), 0.0);
    for i in 0..grid.len() {
        let (x, _) = grid.coords(i);
        let f = amplitude * (TAU * x).sin();
        lin.r[i] = f;
        lin.u[0][i] = f / (c * big);
        lin.s[i] = 0.5 * amplitude * (TAU * x).cos();
    }
    lin
}

pub fn build(cfg: &Scenario) -> Result<Setup> {
    cfg.validate()?;
    let s = &cfg.scenario;
    let params = GasParams::new(s.gamma);
    let grid = grid_of(s.id, cfg.grid.n, cfg.grid.grading)?;
    let background = background_of(s.id, s.s0);
    let lin0 = match s.id {
        ScenarioId::ConstantState => travelling_wave(&grid, s.s0, s.amplitude, &params),
        _ => family::state(&grid, family::MONOMIALS + 1, s.seed, s.amplitude, FamilyKind::Mixed),
    };
    Ok(Setup { grid, background, params, lin0 })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Validation {
    pub r_max: f64,
    /// Largest of `|∂' r|` and `||∂_n r| - 1|` inside the boundary layer.
    pub a_loc: f64,
    pub pass: bool,
}

/// Smallness of `r` and the localization constants near the vacuum boundary,
/// sampled on `grid` at time `t`.
pub fn validate_background(bg: &Background, grid: &Grid, t: f64, tol: &Tolerances) -> Validation {
    let mut r_max = 0.0_f64;
    let mut a_loc = 0.0_f64;
    let bounded = grid.axes.last().map(|a| a.kind == AxisKind::Bounded).unwrap_or(false);
    let axis = grid.dim() - 1;
    let len = grid.axes[axis].len;
    for i in 0..grid.len() {
        let (x, y) = grid.coords(i);
        let (p, g) = bg.jets_at(t, x, y);
        r_max = r_max.max(p.r.value().abs());
        if !bounded {
            continue;
        }
        let z = if axis == 0 { x } else { y };
        if z.min(len - z) > LAYER {
            continue;
        }
        let dn = g.r[axis].value().abs();
        a_loc = a_loc.max((dn - 1.0).abs());
        if axis == 1 {
            a_loc = a_loc.max(g.r[0].value().abs());
        }
    }
    let pass = r_max <= tol.r_max && a_loc <= tol.a_loc;
    Validation { r_max, a_loc, pass }
}

/// [`validate_background`] as a precondition.
pub fn require_valid(bg: &Background, grid: &Grid, t: f64, tol: &Tolerances) -> Result<Validation> {
    let v = validate_background(bg, grid, t, tol);
    if !v.pass {
        return Err(Error::Config(format!(
            "background fails the smallness/localization checks: |r|max = {:.3}, A = {:.3}",
            v.r_max, v.a_loc
        )));
    }
    Ok(v)
}
