//! Empirical constants for the elliptic and div-curl estimates.

use super::ops::{l1_good, pairing_direct, second_derivs, Coef};
use crate::dynamics::{dt_power, BgJets, BgSlice, JetField, LinJets};
use crate::error::{Error, Result};
use crate::grid_norms::{weighted_sobolev_norm, Grid, NormSpec};
use crate::thermo::GasParams;
use crate::vorticity::spatial_two_form;

pub const MIN_FAMILY: usize = 50;

/// Largest relative change of the constant allowed over one refinement.
pub const MAX_DRIFT: f64 = 0.10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitRow {
    pub member: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct FitReport {
    pub rows: Vec<FitRow>,
    pub constant: f64,
    pub constant_refined: f64,
    pub drift: f64,
    pub stable: bool,
}

/// `|a - b| / max(|a|, |b|)`.
pub fn drift(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn sup_ratio<F>(grid: &Grid, size: usize, sides: &F) -> Result<(f64, Vec<FitRow>)>
where
    F: Fn(&Grid, usize) -> Result<(f64, f64)>,
{
    let mut rows = Vec::with_capacity(size);
    let mut sup = 0.0_f64;
    for m in 0..size {
        let (lhs, rhs) = sides(grid, m)?;
        if !lhs.is_finite() || !rhs.is_finite() {
            return Err(Error::NonFinite);
        }
        // the zero field says nothing
        if rhs <= 0.0 && lhs <= 0.0 {
            continue;
        }
        let ratio = lhs / rhs;
        sup = sup.max(ratio);
        rows.push(FitRow { member: m, lhs, rhs, ratio });
    }
    Ok((sup, rows))
}

/// `sup lhs/rhs` over `size` members on `grid` and on its refinement.
/// `sides(grid, m)` evaluates member `m`.
pub fn estimate_constant_fit<F>(grid: &Grid, size: usize, sides: F) -> Result<FitReport>
where
    F: Fn(&Grid, usize) -> Result<(f64, f64)>,
{
    if size < MIN_FAMILY {
        return Err(Error::FamilyTooSmall { got: size, need: MIN_FAMILY });
    }
    let (constant, rows) = sup_ratio(grid, size, &sides)?;
    let (constant_refined, _) = sup_ratio(&grid.refined(2)?, size, &sides)?;
    let d = drift(constant, constant_refined);
    Ok(FitReport { rows, constant, constant_refined, drift: d, stable: constant.is_finite() && d <= MAX_DRIFT })
}

fn nrm(grid: &Grid, f: &[f64], j: usize, sigma: f64, r: &[f64]) -> Result<f64> {
    weighted_sobolev_norm(grid, f, NormSpec::new(j, sigma), r)
}

fn vec_nrm(grid: &Grid, u: &[Vec<f64>], j: usize, sigma: f64, r: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for c in u.iter().take(grid.dim()) {
        acc += nrm(grid, c, j, sigma, r)?.powi(2);
    }
    Ok(acc.sqrt())
}

/// `(‖r̃‖_{H^{2,σ+1/2}}, ‖L̃₁ r̃‖_{H^{0,σ-1/2}} + ‖r̃‖_{H^{0,β}})` with
/// `σ = 1/(2(γ-1))`, `β = (2-γ)/(2(γ-1))`.
pub fn elliptic_r_sides(grid: &Grid, bg: &BgSlice, rt: &[f64], params: &GasParams) -> Result<(f64, f64)> {
    let g = params.gamma;
    let sigma = 0.5 / (g - 1.0);
    let beta = (2.0 - g) / (2.0 * (g - 1.0));
    let r = &bg.state.r;
    let l = l1_good(grid, bg, rt, 0.0, params)?;
    Ok((nrm(grid, rt, 2, sigma + 0.5, r)?, nrm(grid, &l, 0, sigma - 0.5, r)? + nrm(grid, rt, 0, beta, r)?))
}

/// `(‖ũ‖_{H^{2,σ+1}}, (∫ r^{1/(γ-1)} G((L̃₂+L̃₃)ũ, ·))^{1/2} + ‖ũ‖_{H^{0,σ}})`,
/// `σ = 1/(2(γ-1))`.
pub fn div_curl_sides(grid: &Grid, bg: &BgSlice, ut: &[Vec<f64>; 3], params: &GasParams) -> Result<(f64, f64)> {
    if grid.dim() < 2 {
        return Err(Error::GridDimTooLow);
    }
    let sigma = 0.5 / (params.gamma - 1.0);
    let r = &bg.state.r;
    let d1: Vec<[Vec<f64>; 3]> = ut.iter().map(|u| grid.grad(u)).collect::<Result<_>>()?;
    let d2: Vec<[[Vec<f64>; 3]; 3]> = ut.iter().map(|u| second_derivs(grid, u)).collect::<Result<_>>()?;
    let pair: Vec<f64> = (0..grid.len())
        .map(|p| {
            let du = std::array::from_fn(|k| std::array::from_fn(|j| d1[k][j][p]));
            let d2u = std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| d2[k][i][j][p])));
            pairing_direct(&Coef::at(bg, p, params), &du, &d2u)
        })
        .collect();
    let lhs = vec_nrm(grid, ut, 2, sigma + 1.0, r)?;
    let rhs = grid.integrate(&pair).max(0.0).sqrt() + vec_nrm(grid, ut, 0, sigma, r)?;
    Ok((lhs, rhs))
}

/// `k = 1`: `(‖r̃‖_{H^{2,1+β}}, ‖r̃‖_{H^{0,β}} + ‖D_t² r̃‖_{H^{0,β}})`.
pub fn elliptic_r_sides_k1(grid: &Grid, bg: &BgJets, lin: &LinJets, params: &GasParams) -> Result<(f64, f64)> {
    let g = params.gamma;
    let beta = (2.0 - g) / (2.0 * (g - 1.0));
    let r = bg.slice().state.r;
    let rt = JetField::new(lin.f.r.clone());
    let d2 = dt_power(grid, bg, &rt, 2)?.values();
    let rt0 = rt.values();
    Ok((nrm(grid, &rt0, 2, 1.0 + beta, &r)?, nrm(grid, &rt0, 0, beta, &r)? + nrm(grid, &d2, 0, beta, &r)?))
}

/// `k = 1`: `(‖ũ‖_{H^{2,1+σ}}, ‖ũ‖_{H^{0,σ}} + ‖D_t² ũ‖_{H^{0,σ}} + ‖curl ũ‖_{H^{1,1+σ}})`.
pub fn div_curl_sides_k1(grid: &Grid, bg: &BgJets, lin: &LinJets, params: &GasParams) -> Result<(f64, f64)> {
    if grid.dim() < 2 {
        return Err(Error::GridDimTooLow);
    }
    let sigma = 0.5 / (params.gamma - 1.0);
    let r = bg.slice().state.r;
    let u: [Vec<f64>; 3] = std::array::from_fn(|j| lin.f.u[j].iter().map(|v| v.0[0]).collect());
    let d2: Vec<Vec<f64>> = (0..3)
        .map(|j| dt_power(grid, bg, &JetField::new(lin.f.u[j].clone()), 2).map(|f| f.values()))
        .collect::<Result<_>>()?;
    let curl = spatial_two_form(grid, &u)?;
    let lhs = vec_nrm(grid, &u, 2, 1.0 + sigma, &r)?;
    let mut c = 0.0;
    for w in &curl {
        c += nrm(grid, w, 1, 1.0 + sigma, &r)?.powi(2);
    }
    let rhs = vec_nrm(grid, &u, 0, sigma, &r)? + vec_nrm(grid, &d2, 0, sigma, &r)? + c.sqrt();
    Ok((lhs, rhs))
}
