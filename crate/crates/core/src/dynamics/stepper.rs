//! Classical RK4 for the linearized system, with the background either
//! evaluated in closed form or evolved alongside.
//!
//! Only spatial velocity components are stored; `u^0` and `ũ^0` are always
//! recomputed from the constraints, so both hold exactly at every stage.

use super::background::Background;
use super::ck::BgSlice;
use super::fields::linearized_time_derivatives;
use super::state::{BackgroundState, FieldSet, LinearizedState};
use crate::error::{Error, Result};
use crate::grid_norms::Grid;
use crate::thermo::{sound_speed_sq, GasParams};

#[derive(Clone, Debug)]
pub enum BgSource {
    Analytic(Background),
    /// Nonlinear state advanced with the lin state; `forcing` makes the
    /// closed-form background an exact solution of the forced system.
    Evolved { state: BackgroundState, forcing: Option<Background> },
}

impl BgSource {
    pub fn state(&self, grid: &Grid, t: f64) -> BackgroundState {
        match self {
            BgSource::Analytic(b) => b.sample(grid, t),
            BgSource::Evolved { state, .. } => state.clone(),
        }
    }

    fn slice(&self, grid: &Grid, state: Option<&BackgroundState>, t: f64, params: &GasParams) -> Result<BgSlice> {
        match self {
            BgSource::Analytic(b) => Ok(BgSlice::analytic(b, grid, t)),
            BgSource::Evolved { forcing, state: s0 } => {
                let st = state.unwrap_or(s0);
                let f = forcing
                    .as_ref()
                    .map(|b| super::background::manufactured_forcing(b, grid, t, params))
                    .transpose()?;
                let mut st = st.clone();
                st.t = t;
                BgSlice::from_state(grid, &st, f.as_ref(), params)
            }
        }
    }
}

/// Largest stable step: `0.5 h_min / max(c + |u^i/u^0|)`.
pub fn cfl_limit(grid: &Grid, bg: &BackgroundState, params: &GasParams) -> f64 {
    let mut speed = 0.0_f64;
    for i in 0..bg.len() {
        let p = bg.at(i);
        let c = sound_speed_sq(p.r.max(0.0), p.s, params).sqrt();
        let w = (p.u[0] * p.u[0] + p.u[1] * p.u[1] + p.u[2] * p.u[2]).sqrt() / p.u0();
        speed = speed.max(c + w);
    }
    0.5 * grid.min_spacing() / speed.max(1e-12)
}

/// One RK4 step of size `dt` from time `lin.t`.
pub fn step_rk4(
    grid: &Grid,
    bg: &BgSource,
    lin: &LinearizedState,
    dt: f64,
    params: &GasParams,
) -> Result<(BgSource, LinearizedState)> {
    let t = lin.t;
    let bg_now = bg.state(grid, t);
    let limit = cfl_limit(grid, &bg_now, params);
    if dt > limit * (1.0 + 1e-12) {
        return Err(Error::CflViolated { dt, limit });
    }
    let rhs = |tt: f64, b: Option<&BackgroundState>, l: &LinearizedState| -> Result<(Option<FieldSet>, LinearizedState)> {
        let slice = bg.slice(grid, b, tt, params)?;
        let mut l = l.clone();
        l.t = tt;
        let dl = linearized_time_derivatives(grid, &slice, &l, params)?;
        let db = b.map(|_| FieldSet::from_fn(slice.dt.len(), tt, |i| slice.dt[i]));
        Ok((db, dl))
    };
    let b0 = match bg {
        BgSource::Evolved { state, .. } => Some(state.clone()),
        BgSource::Analytic(_) => None,
    };
    let adv = |b: &Option<BackgroundState>, db: &Option<FieldSet>, c: f64| match (b, db) {
        (Some(b), Some(d)) => Some(b.axpy(c, d)),
        _ => None,
    };
    let (kb1, kl1) = rhs(t, b0.as_ref(), lin)?;
    let b1 = adv(&b0, &kb1, 0.5 * dt);
    let (kb2, kl2) = rhs(t + 0.5 * dt, b1.as_ref(), &lin.axpy(0.5 * dt, &kl1))?;
    let b2 = adv(&b0, &kb2, 0.5 * dt);
    let (kb3, kl3) = rhs(t + 0.5 * dt, b2.as_ref(), &lin.axpy(0.5 * dt, &kl2))?;
    let b3 = adv(&b0, &kb3, dt);
    let (kb4, kl4) = rhs(t + dt, b3.as_ref(), &lin.axpy(dt, &kl3))?;

    let combine = |x: &FieldSet, k: [&FieldSet; 4]| {
        x.axpy(dt / 6.0, k[0]).axpy(dt / 3.0, k[1]).axpy(dt / 3.0, k[2]).axpy(dt / 6.0, k[3])
    };
    let mut lin_next = combine(lin, [&kl1, &kl2, &kl3, &kl4]);
    lin_next.t = t + dt;
    if !lin_next.is_finite() {
        return Err(Error::NonFinite);
    }
    let bg_next = match (bg, b0) {
        (BgSource::Evolved { forcing, .. }, Some(b)) => {
            let ks = [kb1, kb2, kb3, kb4].map(|k| k.expect("evolved stages carry a background rate"));
            let mut s = combine(&b, [&ks[0], &ks[1], &ks[2], &ks[3]]);
            s.t = t + dt;
            BgSource::Evolved { state: s, forcing: *forcing }
        }
        _ => bg.clone(),
    };
    Ok((bg_next, lin_next))
}

/// Advance to `t_final` with the largest uniform step allowed by `cfl`
/// (a fraction of the limit), calling `observe` at the start and after every
/// `every` steps and at the end.
pub fn evolve<F>(
    grid: &Grid,
    bg: BgSource,
    lin0: LinearizedState,
    t_final: f64,
    cfl: f64,
    every: usize,
    params: &GasParams,
    mut observe: F,
) -> Result<(BgSource, LinearizedState)>
where
    F: FnMut(&BgSource, &LinearizedState) -> Result<()>,
{
    let limit = cfl_limit(grid, &bg.state(grid, lin0.t), params);
    let span = t_final - lin0.t;
    let steps = ((span / (cfl.min(1.0) * limit)).ceil() as usize).max(1);
    let dt = span / steps as f64;
    let (mut bg, mut lin) = (bg, lin0);
    observe(&bg, &lin)?;
    for n in 1..=steps {
        let (b, l) = step_rk4(grid, &bg, &lin, dt, params)?;
        bg = b;
        lin = l;
        if n % every.max(1) == 0 || n == steps {
            observe(&bg, &lin)?;
        }
    }
    Ok((bg, lin))
}
