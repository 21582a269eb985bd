//! Enthalpy current, relativistic vorticity and its linearization.
//!
//! All two-forms carry lower indices. Fields are kept as time jets so that
//! `∂_t ω` needed by the evolution identities is available exactly.

use crate::dynamics::{BackgroundState, BgJets, LinJets, LinearizedState};
use crate::error::{Error, Result};
use crate::geometry::{two_form_norm_g_sq, Mat4};
use crate::grid_norms::{weighted_sobolev_norm, Grid, NormSpec};
use crate::jet::{Jet, Scalar};
use crate::thermo::{enthalpy, enthalpy_lin, gamma_of_entropy, gamma_prime, GasParams};

type Cov<T> = [Vec<T>; 4];

/// `ω_{αβ} = ∂_α v_β - ∂_β v_α` for a covector field of jets.
fn curl_jets(grid: &Grid, v: &Cov<Jet>) -> Result<Vec<Mat4<Jet>>> {
    let n = grid.len();
    let z = Jet::default();
    // d[a][b][i] = ∂_a v_b at node i
    let mut d: Vec<Vec<Vec<Jet>>> = vec![vec![vec![z; n]; 4]; 4];
    for b in 0..4 {
        d[0][b] = v[b].iter().map(|j| j.deriv()).collect();
        for axis in 0..grid.dim() {
            d[axis + 1][b] = grid.diff(&v[b], axis, 1)?;
        }
    }
    Ok((0..n)
        .map(|i| {
            let mut w = [[z; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    w[a][b] = d[a][b][i] - d[b][a][i];
                }
            }
            w
        })
        .collect())
}

/// Curl of a covector given by values and, separately, time derivatives.
pub fn two_form(grid: &Grid, v: &Cov<f64>, dt_v: Option<&Cov<f64>>) -> Result<Vec<Mat4<f64>>> {
    let dt_v = dt_v.ok_or_else(|| Error::MissingTimeDerivative("∂_t v is needed for the time row".into()))?;
    let jets: Cov<Jet> = std::array::from_fn(|b| {
        v[b].iter()
            .zip(&dt_v[b])
            .map(|(x, y)| {
                let mut j = Jet::cst(*x);
                j.0[1] = *y;
                j
            })
            .collect()
    });
    Ok(curl_jets(grid, &jets)?.into_iter().map(|w| w.map(|row| row.map(|j| j.value()))).collect())
}

/// Spatial block `ω_{ij}`, which needs no time derivatives; returns the
/// components `(12, 13, 23)`.
pub fn spatial_two_form(grid: &Grid, v: &[Vec<f64>; 3]) -> Result<[Vec<f64>; 3]> {
    let n = grid.len();
    let z = vec![0.0; n];
    let d = |f: &Vec<f64>, axis: usize| if axis < grid.dim() { grid.diff(f, axis, 1) } else { Ok(z.clone()) };
    let mut out: [Vec<f64>; 3] = std::array::from_fn(|_| vec![0.0; n]);
    for (slot, (a, b)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
        let dab = d(&v[b], a)?;
        let dba = d(&v[a], b)?;
        out[slot] = dab.iter().zip(&dba).map(|(x, y)| x - y).collect();
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct LinearizedVorticity {
    pub omega_tilde: Vec<Mat4<Jet>>,
    pub omega_hat: Vec<Mat4<Jet>>,
    pub omega_bar: Vec<Mat4<Jet>>,
}

#[derive(Clone, Debug)]
pub struct VorticityPack {
    /// `v_α = h u_α`.
    pub v: Cov<Jet>,
    pub omega: Vec<Mat4<Jet>>,
    pub lin: Option<LinearizedVorticity>,
}

impl VorticityPack {
    pub fn omega_values(&self) -> Vec<Mat4<f64>> {
        self.omega.iter().map(|w| w.map(|r| r.map(|j| j.value()))).collect()
    }
}

fn lower_u(bg: &BgJets, i: usize) -> [Jet; 4] {
    let p = &bg.p[i];
    [-p.u0(), p.u[0], p.u[1], p.u[2]]
}

pub fn vorticity(grid: &Grid, bg: &BgJets, params: &GasParams) -> Result<VorticityPack> {
    let n = bg.len();
    let v: Cov<Jet> = std::array::from_fn(|b| {
        (0..n).map(|i| enthalpy(bg.p[i].s, bg.p[i].r, params) * lower_u(bg, i)[b]).collect()
    });
    let omega = curl_jets(grid, &v)?;
    Ok(VorticityPack { v, omega, lin: None })
}

/// `ω̃ = ∂(h ũ + h̃ u) - ...`, split as `ω̂` from `h ũ` and `ω̄` from `h̃ u`.
/// `ω̃` is computed from the combined current rather than as the sum.
pub fn linearized_vorticity(grid: &Grid, bg: &BgJets, lin: &LinJets, params: &GasParams) -> Result<VorticityPack> {
    let mut pack = vorticity(grid, bg, params)?;
    let n = bg.len();
    let ut = lin.four_velocity(bg);
    let h: Vec<Jet> = bg.p.iter().map(|p| enthalpy(p.s, p.r, params)).collect();
    let ht: Vec<Jet> = (0..n)
        .map(|i| enthalpy_lin(bg.p[i].s, bg.p[i].r, lin.f.s[i], lin.f.r[i], params))
        .collect();
    let low = |v: &[Jet; 4], b: usize| if b == 0 { -v[0] } else { v[b] };
    let hat: Cov<Jet> = std::array::from_fn(|b| (0..n).map(|i| h[i] * low(&ut[i], b)).collect());
    let bar: Cov<Jet> = std::array::from_fn(|b| (0..n).map(|i| ht[i] * lower_u(bg, i)[b]).collect());
    let tot: Cov<Jet> = std::array::from_fn(|b| (0..n).map(|i| hat[b][i] + bar[b][i]).collect());
    pack.lin = Some(LinearizedVorticity {
        omega_tilde: curl_jets(grid, &tot)?,
        omega_hat: curl_jets(grid, &hat)?,
        omega_bar: curl_jets(grid, &bar)?,
    });
    Ok(pack)
}

/// Largest entry of `ω̃ - ω̂ - ω̄` over the grid.
pub fn decomposition_residual(pack: &VorticityPack) -> f64 {
    let Some(l) = &pack.lin else { return 0.0 };
    let mut worst = 0.0_f64;
    for i in 0..l.omega_tilde.len() {
        for a in 0..4 {
            for b in 0..4 {
                let d = l.omega_tilde[i][a][b] - l.omega_hat[i][a][b] - l.omega_bar[i][a][b];
                worst = worst.max(d.value().abs());
            }
        }
    }
    worst
}

/// Pointwise residual magnitudes (max over index pairs) of the vorticity
/// identities.
#[derive(Clone, Debug)]
pub struct VorticityResiduals {
    /// `u^α ω_{αβ} - ((γ-1) r/(γΓ)) ∂_β s`
    pub eq1: Vec<f64>,
    /// Transport equation for `ω`.
    pub eq2: Vec<f64>,
    /// Transport equation for `ω̃`, when a linearized state is supplied.
    pub lin: Option<Vec<f64>>,
}

/// Spacetime gradient `∂_μ f` of jets: time from the jet, space from stencils.
fn st_grad(grid: &Grid, f: &[Jet]) -> Result<Vec<[Jet; 4]>> {
    let g = grid.grad(f)?;
    Ok((0..f.len()).map(|i| [f[i].deriv(), g[0][i], g[1][i], g[2][i]]).collect())
}

fn st_grad_forms(grid: &Grid, w: &[Mat4<Jet>]) -> Result<Vec<[Mat4<Jet>; 4]>> {
    let n = w.len();
    let z = Jet::default();
    let mut out = vec![[[[z; 4]; 4]; 4]; n];
    for a in 0..4 {
        for b in 0..4 {
            let comp: Vec<Jet> = w.iter().map(|m| m[a][b]).collect();
            let g = st_grad(grid, &comp)?;
            for i in 0..n {
                for mu in 0..4 {
                    out[i][mu][a][b] = g[i][mu];
                }
            }
        }
    }
    Ok(out)
}

/// `L[ω]_{αβ} = X^μ ∂_μ ω_{αβ} + ∂_α X^μ ω_{μβ} + ∂_β X^μ ω_{αμ}`.
fn transport(x: &[Jet; 4], dx: &[[Jet; 4]; 4], w: &Mat4<Jet>, dw: &[Mat4<Jet>; 4]) -> Mat4<Jet> {
    let z = Jet::default();
    let mut out = [[z; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = z;
            for mu in 0..4 {
                // dx[mu][alpha] = ∂_alpha X^mu
                acc += x[mu] * dw[mu][a][b] + dx[mu][a] * w[mu][b] + dx[mu][b] * w[a][mu];
            }
            out[a][b] = acc;
        }
    }
    out
}

fn wedge(da: &[Jet; 4], db: &[Jet; 4]) -> Mat4<Jet> {
    let mut out = [[Jet::default(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a][b] = da[a] * db[b] - da[b] * db[a];
        }
    }
    out
}

fn max_abs(m: &Mat4<Jet>) -> f64 {
    m.iter().flatten().fold(0.0_f64, |acc, j| acc.max(j.value().abs()))
}

pub fn vorticity_residuals(
    grid: &Grid,
    bg: &BgJets,
    lin: Option<&LinJets>,
    params: &GasParams,
) -> Result<VorticityResiduals> {
    let n = bg.len();
    let k = params.kappa();
    let pack = match lin {
        Some(l) => linearized_vorticity(grid, bg, l, params)?,
        None => vorticity(grid, bg, params)?,
    };
    let u0 = bg.u0();
    let up: Vec<[Jet; 4]> = (0..n).map(|i| [u0[i], bg.p[i].u[0], bg.p[i].u[1], bg.p[i].u[2]]).collect();
    let comp = |f: &dyn Fn(usize) -> Jet| (0..n).map(f).collect::<Vec<Jet>>();
    let ds = st_grad(grid, &comp(&|i| bg.p[i].s))?;
    let dr = st_grad(grid, &comp(&|i| bg.p[i].r))?;
    // du[i][mu][alpha] = ∂_alpha u^mu
    let du_rows: Vec<Vec<[Jet; 4]>> = (0..4).map(|mu| st_grad(grid, &comp(&|i| up[i][mu]))).collect::<Result<_>>()?;
    let du: Vec<[[Jet; 4]; 4]> = (0..n).map(|i| std::array::from_fn(|mu| du_rows[mu][i])).collect();
    let dw = st_grad_forms(grid, &pack.omega)?;

    let mut eq1 = vec![0.0; n];
    let mut eq2 = vec![0.0; n];
    for i in 0..n {
        let p = &bg.p[i];
        let big = gamma_of_entropy(p.s, params);
        let w = &pack.omega[i];
        let mut worst = 0.0_f64;
        for b in 0..4 {
            let mut acc = Jet::default();
            for a in 0..4 {
                acc += up[i][a] * w[a][b];
            }
            acc -= p.r * ds[i][b] * k / big;
            worst = worst.max(acc.value().abs());
        }
        eq1[i] = worst;
        let lhs = transport(&up[i], &du[i], w, &dw[i]);
        let rhs = wedge(&dr[i], &ds[i]);
        let coef = (big * params.gamma).recip() * (params.gamma - 1.0);
        let mut r = lhs;
        for a in 0..4 {
            for b in 0..4 {
                r[a][b] -= coef * rhs[a][b];
            }
        }
        eq2[i] = max_abs(&r);
    }

    let lin_res = match (lin, &pack.lin) {
        (Some(l), Some(lv)) => {
            let ut = l.four_velocity(bg);
            let dst = st_grad(grid, &l.f.s)?;
            let drt = st_grad(grid, &l.f.r)?;
            let dut_rows: Vec<Vec<[Jet; 4]>> =
                (0..4).map(|mu| st_grad(grid, &comp(&|i| ut[i][mu]))).collect::<Result<_>>()?;
            let dwt = st_grad_forms(grid, &lv.omega_tilde)?;
            let mut out = vec![0.0; n];
            for i in 0..n {
                let p = &bg.p[i];
                let big = gamma_of_entropy(p.s, params);
                let dut: [[Jet; 4]; 4] = std::array::from_fn(|mu| dut_rows[mu][i]);
                let a1 = transport(&up[i], &du[i], &lv.omega_tilde[i], &dwt[i]);
                let a2 = transport(&ut[i], &dut, &pack.omega[i], &dw[i]);
                // linearization of ((γ-1)/(γΓ)) dr∧ds
                let c = (big * params.gamma).recip() * (params.gamma - 1.0);
                let dc = -(gamma_prime(p.s, params) / (big * big)) * ((params.gamma - 1.0) / params.gamma);
                let w0 = wedge(&dr[i], &ds[i]);
                let w1 = wedge(&drt[i], &ds[i]);
                let w2 = wedge(&dr[i], &dst[i]);
                let mut r = [[Jet::default(); 4]; 4];
                for a in 0..4 {
                    for b in 0..4 {
                        r[a][b] = a1[a][b] + a2[a][b] - dc * l.f.s[i] * w0[a][b] - c * (w1[a][b] + w2[a][b]);
                    }
                }
                out[i] = max_abs(&r);
            }
            Some(out)
        }
        _ => None,
    };
    Ok(VorticityResiduals { eq1, eq2, lin: lin_res })
}

/// Discrete `L²` norm of a nodal residual.
pub fn residual_l2(grid: &Grid, res: &[f64]) -> f64 {
    let sq: Vec<f64> = res.iter().map(|v| v * v).collect();
    grid.integrate(&sq).max(0.0).sqrt()
}

/// Observed rates `log2(e_n / e_{n+1})` of a residual sequence over grid
/// halvings.
pub fn observed_rates(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// A residual sequence converges when every observed rate reaches
/// `min_rate`; otherwise the fields are flagged as not solving the identity.
pub fn not_a_solution(errors: &[f64], min_rate: f64) -> bool {
    if errors.iter().all(|e| *e < 1e-12) {
        return false;
    }
    if errors.len() < 2 {
        return true;
    }
    observed_rates(errors).iter().any(|r| !(*r >= min_rate))
}

/// Spatial blocks `(12, 13, 23)` of `ω̂`, `ω̄` and `ω̃` at one time slice.
#[derive(Clone, Debug)]
pub struct SpatialVorticity {
    pub hat: [Vec<f64>; 3],
    pub bar: [Vec<f64>; 3],
    pub tilde: [Vec<f64>; 3],
}

pub fn spatial_vorticity(
    grid: &Grid,
    bg: &BackgroundState,
    lin: &LinearizedState,
    params: &GasParams,
) -> Result<SpatialVorticity> {
    let n = bg.len();
    let h: Vec<f64> = (0..n).map(|i| enthalpy(bg.s[i], bg.r[i], params)).collect();
    let ht: Vec<f64> = (0..n).map(|i| enthalpy_lin(bg.s[i], bg.r[i], lin.s[i], lin.r[i], params)).collect();
    let hat: [Vec<f64>; 3] = std::array::from_fn(|j| (0..n).map(|i| h[i] * lin.u[j][i]).collect());
    let bar: [Vec<f64>; 3] = std::array::from_fn(|j| (0..n).map(|i| ht[i] * bg.u[j][i]).collect());
    let tot: [Vec<f64>; 3] = std::array::from_fn(|j| (0..n).map(|i| hat[j][i] + bar[j][i]).collect());
    Ok(SpatialVorticity {
        hat: spatial_two_form(grid, &hat)?,
        bar: spatial_two_form(grid, &bar)?,
        tilde: spatial_two_form(grid, &tot)?,
    })
}

/// `‖ω‖²_{H^{2k-1,k+1/(2(γ-1))}}` summed over the spatial components, each
/// pair `ij` counted twice as in the full contraction.
pub fn spatial_form_norm_sq(grid: &Grid, r: &[f64], w: &[Vec<f64>; 3], k: usize, gamma: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::UnsupportedK(0));
    }
    let spec = NormSpec::new(2 * k - 1, k as f64 + 0.5 / (gamma - 1.0));
    let mut acc = 0.0;
    for c in w {
        acc += 2.0 * weighted_sobolev_norm(grid, c, spec, r)?.powi(2);
    }
    Ok(acc)
}

/// One sample of a monitored run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TransportSample {
    pub t: f64,
    pub omega_hat_sq: f64,
    pub omega_tilde_sq: f64,
    pub omega_bar_sq: f64,
    pub h2k_sq: f64,
}

#[derive(Clone, Debug)]
pub struct TransportReport {
    /// Measured rate `sup |d/dt ‖ω̃‖²| / ‖·‖²_{𝓗^{2k}}`.
    pub c_hat: f64,
    /// Measured `sup ‖ω̄‖² / ‖·‖²_{𝓗^{2k}}`.
    pub eps_hat: f64,
    /// `(t, ‖ω̂‖², bound)`.
    pub rows: Vec<(f64, f64, f64)>,
    /// Smallest `bound - ‖ω̂‖²` relative to the bound.
    pub margin: f64,
    pub pass: bool,
}

/// Checks `‖ω̂‖²(t) ≤ 2(‖ω̃₀‖² + ε̂ ‖·‖²(t) + ∫ Ĉ ‖·‖²)`, the factor 2 coming
/// from `ω̂ = ω̃ - ω̄`.
pub fn transport_energy_monitor(samples: &[TransportSample]) -> Result<TransportReport> {
    if samples.len() < 2 {
        return Err(Error::SeriesTooShort { got: samples.len(), need: 2 });
    }
    let mut c_hat = 0.0_f64;
    let mut eps_hat = 0.0_f64;
    for w in samples.windows(2) {
        let dt = w[1].t - w[0].t;
        let avg = 0.5 * (w[0].h2k_sq + w[1].h2k_sq);
        if avg > 0.0 && dt > 0.0 {
            c_hat = c_hat.max(((w[1].omega_tilde_sq - w[0].omega_tilde_sq) / dt).abs() / avg);
        }
    }
    for s in samples {
        if s.h2k_sq > 0.0 {
            eps_hat = eps_hat.max(s.omega_bar_sq / s.h2k_sq);
        }
    }
    let w0 = samples[0].omega_tilde_sq;
    let mut integral = 0.0;
    let mut rows = Vec::with_capacity(samples.len());
    let mut margin = f64::INFINITY;
    let mut pass = true;
    for (n, s) in samples.iter().enumerate() {
        if n > 0 {
            let p = &samples[n - 1];
            integral += 0.5 * (s.t - p.t) * c_hat * (s.h2k_sq + p.h2k_sq);
        }
        let bound = 2.0 * (w0 + eps_hat * s.h2k_sq + integral);
        if s.omega_hat_sq > bound * (1.0 + 1e-9) + 1e-300 {
            pass = false;
        }
        if bound > 0.0 {
            margin = margin.min((bound - s.omega_hat_sq) / bound);
        }
        rows.push((s.t, s.omega_hat_sq, bound));
    }
    if !margin.is_finite() {
        margin = 1.0;
    }
    Ok(TransportReport { c_hat, eps_hat, rows, margin, pass })
}

/// Pointwise comparison of the spatial block of a two-form against its
/// `G`-norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurlCheck {
    /// `δ^{ij} δ^{km} ω_{ik} ω_{jm}`
    pub spatial: f64,
    /// `|ω|²_G`
    pub g_norm: f64,
    /// `(u^0 + |u|)^4`; the smallest eigenvalue of `G^{-1}` is `(u^0+|u|)^{-2}`.
    pub constant: f64,
    pub holds: bool,
}

pub fn spatial_curl_check(u_spatial: [f64; 3], w: &Mat4<f64>) -> CurlCheck {
    let speed = (u_spatial.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let u0 = (1.0 + speed * speed).sqrt();
    let u = [u0, u_spatial[0], u_spatial[1], u_spatial[2]];
    let mut spatial = 0.0;
    for i in 1..4 {
        for k in 1..4 {
            spatial += w[i][k] * w[i][k];
        }
    }
    let g_norm = two_form_norm_g_sq(&u, w);
    let constant = (u0 + speed).powi(4);
    let holds = spatial <= constant * g_norm * (1.0 + 1e-12) + 1e-14;
    CurlCheck { spatial, g_norm, constant, holds }
}
