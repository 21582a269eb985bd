//! Integral identities used by the basic energy estimate: the moving-domain
//! formula and the perfect-derivative cancellation.

use super::ck::{BgJets, LinJets};
use super::state::BackgroundState;
use crate::error::{Error, Result};
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar, XJet};

/// `r^p`, exact for the integer exponents that occur at `γ = 2`, so that
/// vacuum nodes stay finite.
pub fn rpow<T: Scalar>(r: T, p: f64) -> T {
    if p == 0.0 {
        T::one()
    } else if p.fract() == 0.0 && p > 0.0 && p <= 8.0 {
        let mut acc = r;
        for _ in 1..p as usize {
            acc = acc * r;
        }
        acc
    } else {
        r.powf(p)
    }
}

/// `|d/dt ∫f - ∫ D_t f / u^0 - ∫ f ∂_i(u^i/u^0)|` at the middle of a series of
/// integrals sampled every `dt`. The derivative uses the centred five-point
/// stencil, so the series needs at least five samples.
pub fn moving_domain_residual(
    series: &[f64],
    dt: f64,
    grid: &Grid,
    f: &[f64],
    conv_f: &[f64],
    bg: &BackgroundState,
) -> Result<f64> {
    if series.len() < 5 {
        return Err(Error::SeriesTooShort { got: series.len(), need: 5 });
    }
    let m = series.len() / 2;
    let ddt = (series[m - 2] - 8.0 * series[m - 1] + 8.0 * series[m + 1] - series[m + 2]) / (12.0 * dt);
    let u0 = bg.u0();
    let w: Vec<Vec<f64>> = (0..3).map(|j| (0..bg.len()).map(|i| bg.u[j][i] / u0[i]).collect()).collect();
    let mut div = vec![0.0; bg.len()];
    for (axis, wj) in w.iter().enumerate().take(grid.dim()) {
        let d = grid.diff(wj, axis, 1)?;
        for (a, b) in div.iter_mut().zip(d) {
            *a += b;
        }
    }
    let integrand: Vec<f64> = (0..bg.len()).map(|i| conv_f[i] / u0[i] + f[i] * div[i]).collect();
    Ok((ddt - grid.integrate(&integrand)).abs())
}

/// Pointwise `(1/(γ-1)) r^{(2-γ)/(γ-1)} r̃ ũ^μ ∂_μ r + ρ r̃ ∂_μ ũ^μ + ρ ũ^μ ∂_μ r̃
/// - ∂_μ(ρ r̃ ũ^μ)` with `ρ = r^{1/(γ-1)}`; zero for exact derivatives.
///
/// Time derivatives come from the jets, spatial ones from the grid stencils.
pub fn perfect_derivative_residual(grid: &Grid, bg: &BgJets, lin: &LinJets, gamma: f64) -> Result<Vec<f64>> {
    let n = bg.len();
    let p1 = 1.0 / (gamma - 1.0);
    let p0 = (2.0 - gamma) / (gamma - 1.0);
    let ut = lin.four_velocity(bg);
    let rt = &lin.f.r;
    let rho: Vec<Jet> = bg.p.iter().map(|p| rpow(p.r, p1)).collect();

    // ∂_μ of the flux ρ r̃ ũ^μ: time part from jets, space part from stencils
    let flux: Vec<Vec<Jet>> = (0..4).map(|mu| (0..n).map(|i| rho[i] * rt[i] * ut[i][mu]).collect()).collect();
    let mut div_flux: Vec<f64> = flux[0].iter().map(|j| j.deriv().value()).collect();
    for axis in 0..grid.dim() {
        let d = grid.diff(&flux[axis + 1], axis, 1)?;
        for (a, b) in div_flux.iter_mut().zip(d) {
            *a += b.value();
        }
    }
    let grad_rt = grid.grad(rt)?;
    let grad_u: Vec<[Vec<Jet>; 3]> = (0..3).map(|j| grid.grad(&lin.f.u[j])).collect::<Result<_>>()?;
    let mut out = vec![0.0; n];
    for i in 0..n {
        let p = &bg.p[i];
        let g = &bg.g[i];
        let dr = [p.r.deriv(), g.r[0], g.r[1], g.r[2]];
        let drt = [rt[i].deriv(), grad_rt[0][i], grad_rt[1][i], grad_rt[2][i]];
        let mut div_ut = ut[i][0].deriv();
        for j in 0..3 {
            div_ut += grad_u[j][j][i];
        }
        let mut ut_dr = Jet::default();
        let mut ut_drt = Jet::default();
        for mu in 0..4 {
            ut_dr += ut[i][mu] * dr[mu];
            ut_drt += ut[i][mu] * drt[mu];
        }
        let lhs = rpow(p.r, p0) * rt[i] * ut_dr * p1 + rho[i] * rt[i] * div_ut + rho[i] * ut_drt;
        out[i] = lhs.value() - div_flux[i];
    }
    Ok(out)
}

/// A one-dimensional flow on `[0, b(t)]`, `b(t) = b0 (1 + a t²)`, whose
/// coordinate velocity `w = x ḃ/b` carries the right end along with the fluid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AleFlow {
    pub b0: f64,
    pub a: f64,
}

impl AleFlow {
    pub fn end(&self, t: f64) -> f64 {
        self.b0 * (1.0 + self.a * t * t)
    }

    /// `u^1 = w / sqrt(1 - w²)`.
    pub fn u1<T: Scalar>(&self, t: T, x: T) -> T {
        let b = (t * t * self.a + 1.0) * self.b0;
        let bdot = t * (2.0 * self.a * self.b0);
        let w = x * bdot / b;
        w / (-(w * w) + 1.0).sqrt()
    }

    /// The transported test function.
    pub fn f<T: Scalar>(&self, t: T, x: T) -> T {
        (x * x + 1.0) * (t + x).cos() + x.sin() * t * 0.5
    }

    /// Residual of the moving-domain formula at `t_mid` on an `n`-node grid
    /// with series spacing `dt`.
    pub fn residual(&self, n: usize, grading: f64, t_mid: f64, dt: f64) -> Result<f64> {
        let series = (-2..=2)
            .map(|k| {
                let t = t_mid + k as f64 * dt;
                let g = Grid::interval(n, self.end(t), grading)?;
                let vals = g.map_nodes(|x, _| self.f(t, x));
                Ok(g.integrate(&vals))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Grid::interval(n, self.end(t_mid), grading)?;
        let mut bg = BackgroundState::zeros(g.len(), t_mid);
        let mut f = vec![0.0; g.len()];
        let mut conv = vec![0.0; g.len()];
        for i in 0..g.len() {
            let (x, _) = g.coords(i);
            let (tj, xj) = (XJet::time(t_mid), XJet::x(x));
            let u1 = self.u1(tj, xj);
            let fv = self.f(tj, xj);
            bg.u[0][i] = u1.value();
            f[i] = fv.value();
            let u0 = (u1.v * u1.v + 1.0).sqrt();
            conv[i] = (u0 * fv.v.deriv() + u1.v * fv.dx).value();
        }
        moving_domain_residual(&series, dt, &g, &f, &conv, &bg)
    }
}
