//! Weighted Sobolev norms and the energies of the linearized problem.

use super::grid::Grid;
use crate::dynamics::{BackgroundState, LinearizedState};
use crate::error::{Error, Result};
use crate::geometry::norm_g_sq;
use crate::thermo::{gamma_of_entropy, GasParams};
use std::io::Write;

/// Derivative count `j` and weight exponent `σ` of `H^{j,σ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSpec {
    pub j: usize,
    pub sigma: f64,
}

impl NormSpec {
    pub fn new(j: usize, sigma: f64) -> Self {
        NormSpec { j, sigma }
    }

    /// `σ > -1/2`, so that `r^{2σ}` is integrable.
    pub fn admissible(&self) -> bool {
        self.sigma > -0.5
    }

    pub fn id(&self) -> String {
        format!("Hjsigma({},{})", self.j, self.sigma)
    }
}

/// `Σ_{|α| = n} ∫ r^{2σ} |∂^α f|²`.
fn order_sum(grid: &Grid, f: &[f64], n: usize, sigma: f64, r: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for (a, b) in grid.multi_indices(n) {
        let d = grid.mixed(f, a, b)?;
        let sq: Vec<f64> = d.iter().map(|v| v * v).collect();
        acc += grid.integrate_weighted(r, 2.0 * sigma, &sq);
    }
    Ok(acc)
}

/// `‖f‖_{H^{j,σ}}`.
pub fn weighted_sobolev_norm(grid: &Grid, f: &[f64], spec: NormSpec, r: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for n in 0..=spec.j {
        acc += order_sum(grid, f, n, spec.sigma, r)?;
    }
    Ok(acc.max(0.0).sqrt())
}

/// `‖(s̃, r̃, ũ)‖_{𝓗^{2k}}`. The velocity enters through the Euclidean sum
/// of its spatial components.
pub fn h2k_norm(grid: &Grid, r: &[f64], lin: &LinearizedState, k: usize, gamma: f64) -> Result<f64> {
    let beta = (2.0 - gamma) / (2.0 * (gamma - 1.0));
    let dim = grid.dim();
    let mut acc = 0.0;
    for n in 0..=2 * k {
        for a in 0..=k {
            if n > k + a {
                continue;
            }
            let a = a as f64;
            acc += order_sum(grid, &lin.s, n, beta + 0.5 + a, r)?;
            acc += order_sum(grid, &lin.r, n, beta + a, r)?;
            for u in lin.u.iter().take(dim) {
                acc += order_sum(grid, u, n, beta + 0.5 + a, r)?;
            }
        }
    }
    Ok(acc.sqrt())
}

/// `‖(r̃, ũ)‖²_{H̃}` with `ũ` given as four components and measured by `G`.
pub fn tilde_h_norm_sq(
    grid: &Grid,
    bg: &BackgroundState,
    rt: &[f64],
    ut: &[Vec<f64>; 4],
    params: &GasParams,
) -> f64 {
    let gm1 = params.gamma - 1.0;
    let integrand: Vec<f64> = (0..bg.len())
        .map(|i| {
            let p = bg.at(i);
            let u = [p.u0(), p.u[0], p.u[1], p.u[2]];
            let v = [ut[0][i], ut[1][i], ut[2][i], ut[3][i]];
            let big = gamma_of_entropy(p.s, params) + p.r;
            rt[i] * rt[i] / gm1 + big * p.r * norm_g_sq(&u, &v)
        })
        .collect();
    grid.integrate_weighted(&bg.r, (2.0 - params.gamma) / gm1, &integrand)
}

/// `‖ω̂‖²_{H^{2k-1,σ}} + ‖s̃‖²_{H^{2k,σ}}`, `σ = k + 1/(2(γ-1))`, returned as
/// `(transport, entropy part)`. `omega_hat` lists the independent components;
/// each stands for the pair `ij`, `ji` of the full contraction.
pub fn transport_energy(
    grid: &Grid,
    r: &[f64],
    s_lin: &[f64],
    omega_hat: &[Vec<f64>],
    k: usize,
    gamma: f64,
) -> Result<(f64, f64)> {
    let sigma = k as f64 + 0.5 / (gamma - 1.0);
    let ent = weighted_sobolev_norm(grid, s_lin, NormSpec::new(2 * k, sigma), r)?.powi(2);
    let mut vort = 0.0;
    if k >= 1 {
        for w in omega_hat {
            vort += 2.0 * weighted_sobolev_norm(grid, w, NormSpec::new(2 * k - 1, sigma), r)?.powi(2);
        }
    }
    Ok((vort + ent, ent))
}

/// Everything the energies need at one instant.
pub struct EnergyInputs<'a> {
    pub grid: &'a Grid,
    pub bg: &'a BackgroundState,
    pub lin: &'a LinearizedState,
    pub params: &'a GasParams,
    pub k: usize,
    /// `(D_t^{2j} r̃, D_t^{2j} ũ^α)` for `j = 1..=k`.
    pub convective: Vec<(Vec<f64>, [Vec<f64>; 4])>,
    /// Independent components of `ω̂`; empty in one dimension.
    pub omega_hat: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EnergyReport {
    pub t: f64,
    pub e0: f64,
    pub e_wave: f64,
    pub e_transport: f64,
    pub e_total: f64,
    pub h2k: f64,
    pub entropy_norm: f64,
}

pub fn energies(inp: &EnergyInputs) -> Result<EnergyReport> {
    let EnergyInputs { grid, bg, lin, params, k, .. } = *inp;
    if inp.convective.len() < k {
        return Err(Error::MissingConvectivePowers(k as u32));
    }
    let gamma = params.gamma;
    let ut0 = lin.lin_u0_against(bg);
    let ut = [ut0, lin.u[0].clone(), lin.u[1].clone(), lin.u[2].clone()];
    let wave0 = tilde_h_norm_sq(grid, bg, &lin.r, &ut, params);
    let s_sq: Vec<f64> = lin.s.iter().map(|v| v * v).collect();
    let s_part = grid.integrate_weighted(&bg.r, 1.0 / (gamma - 1.0), &s_sq);
    let e0 = 0.5 * (wave0 + s_part);

    let mut e_wave = wave0;
    for (rt, ut) in inp.convective.iter().take(k) {
        e_wave += tilde_h_norm_sq(grid, bg, rt, ut, params);
    }
    let (e_transport, entropy_norm) = transport_energy(grid, &bg.r, &lin.s, &inp.omega_hat, k, gamma)?;
    let h2k = h2k_norm(grid, &bg.r, lin, k, gamma)?;
    Ok(EnergyReport {
        t: lin.t,
        e0,
        e_wave,
        e_transport,
        e_total: if k == 0 { e0 } else { e_wave + e_transport },
        h2k,
        entropy_norm,
    })
}

impl EnergyReport {
    /// `(t, id, value)` rows with the stable norm ids.
    pub fn rows(&self) -> Vec<(f64, String, f64)> {
        [
            ("E0", self.e0),
            ("E2k_wave", self.e_wave),
            ("E2k_transport", self.e_transport),
            ("E2k", self.e_total),
            ("H2k", self.h2k),
            ("entropy", self.entropy_norm),
        ]
        .into_iter()
        .map(|(id, v)| (self.t, id.to_string(), v))
        .collect()
    }
}

/// One CSV row per `(t, norm_id, value)`.
pub fn write_norm_csv<W: Write>(out: W, rows: &[(f64, String, f64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "norm_id", "value"]).map_err(|e| Error::Io(e.to_string()))?;
    for (t, id, v) in rows {
        w.write_record([format!("{t:.6e}"), id.clone(), format!("{v:.10e}")])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
