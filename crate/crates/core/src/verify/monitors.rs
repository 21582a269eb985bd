//! Monitored Gronwall bounds and the scenario runner.

use super::config::{Scenario, ScenarioId};
use super::family::{self, FamilyKind};
use super::scenario::{build, require_valid, Setup};
use crate::dynamics::{
    dt_power, evolve, spacetime, Background, BgJets, BgSource, JetField, LinJets, LinearizedState,
};
use crate::error::{Error, Result};
use crate::grid_norms::{energies, EnergyInputs, EnergyReport, Grid};
use crate::thermo::{gamma_of_entropy, GasParams};
use crate::vorticity::{spatial_form_norm_sq, spatial_vorticity, transport_energy_monitor, TransportSample};

/// `Σ_{n=1}^{max_order} sup |∂^n (s, r, u)|` over spacetime multi-indices.
pub fn background_sup_norms(grid: &Grid, bg: &BgJets, max_order: usize) -> Result<f64> {
    let n = bg.len();
    let fields: Vec<Vec<crate::jet::Jet>> = vec![
        (0..n).map(|i| bg.p[i].s).collect(),
        (0..n).map(|i| bg.p[i].r).collect(),
        (0..n).map(|i| bg.p[i].u[0]).collect(),
        (0..n).map(|i| bg.p[i].u[1]).collect(),
        (0..n).map(|i| bg.p[i].u[2]).collect(),
    ];
    let mut total = 0.0;
    for order in 1..=max_order {
        let mut sup = 0.0_f64;
        for f in &fields {
            for a in 0..=order {
                for (i, j) in grid.multi_indices(order - a) {
                    let d = if i + j == 0 { f.clone() } else { grid.mixed(f, i, j)? };
                    for v in &d {
                        sup = sup.max(v.derivative(a).abs());
                    }
                }
            }
        }
        total += sup;
    }
    Ok(total)
}

/// Coefficients of the basic energy inequality measured from the background.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasicCoefficients {
    pub c_hat: f64,
    /// Relative size of the flux correction `∫ r^{1/(γ-1)} r̃ ũ^0 / u^0`.
    pub delta: f64,
}

pub fn basic_coefficients(bg: &BgJets, params: &GasParams) -> BasicCoefficients {
    let slice = bg.slice();
    let g = params.gamma;
    let kappa = params.kappa();
    let (mut ds, mut dr, mut du) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut t1, mut t2, mut adv_r) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut c, mut gmin, mut rmax, mut u0min, mut speed) = (1.0_f64, f64::INFINITY, 0.0_f64, f64::INFINITY, 0.0_f64);
    for i in 0..bg.len() {
        let p = slice.state.at(i);
        let st = spacetime(&p, &slice.grad[i], &slice.dt[i], params);
        let norm = |v: &[f64; 4]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        ds = ds.max(norm(&st.ds));
        dr = dr.max(norm(&st.dr));
        du = du.max(st.du.iter().map(|row| row.iter().map(|x| x * x).sum::<f64>()).sum::<f64>().sqrt());
        let u0 = st.u[0];
        let u2: f64 = p.u.iter().map(|v| v * v).sum();
        // ∂_i (u^i/u^0)
        let div_w: f64 = (1..4).map(|i| st.du[i][i] / u0 - st.u[i] * st.du[0][i] / (u0 * u0)).sum();
        t1 = t1.max(div_w.abs());
        let div_u: f64 = (0..4).map(|m| st.du[m][m]).sum();
        t2 = t2.max(g * (div_u / u0).abs());
        adv_r = adv_r.max((0..4).map(|m| st.u[m] * st.dr[m]).sum::<f64>().abs());
        c = c.max(1.0 + 2.0 * u2);
        gmin = gmin.min(gamma_of_entropy(p.s, params));
        rmax = rmax.max(p.r.abs());
        u0min = u0min.min(u0);
        speed = speed.max(u2.sqrt() / u0);
    }
    let root = (c / gmin).sqrt();
    let i3 = 2.0 * c * du / u0min + 2.0 * adv_r / gmin;
    let c_hat = ds * root + kappa * dr * root + dr * (c * (g - 1.0) * rmax / gmin.powi(3)).sqrt() + t1 + t2 + i3;
    let delta = speed * (rmax * (g - 1.0) * c / gmin).sqrt();
    BasicCoefficients { c_hat, delta }
}

#[derive(Clone, Debug)]
pub struct MonitorRow {
    pub t: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct MonitorReport {
    pub rows: Vec<MonitorRow>,
    /// Smallest `(bound - value)/bound`.
    pub margin: f64,
    pub pass: bool,
}

fn finish(rows: Vec<MonitorRow>, required: f64) -> MonitorReport {
    let mut margin = f64::INFINITY;
    let mut pass = true;
    for r in &rows {
        if r.bound > 0.0 {
            margin = margin.min((r.bound - r.value) / r.bound);
        } else if r.value > 0.0 {
            margin = f64::NEG_INFINITY;
        }
        if !(r.value.is_finite() && r.bound.is_finite()) || r.value * (1.0 + required) > r.bound * (1.0 + 1e-12) + 1e-300 {
            pass = false;
        }
    }
    MonitorReport { rows, margin: if margin == f64::INFINITY { 1.0 } else { margin }, pass }
}

/// `E⁰(t) ≤ (1+δ)/(1-δ) E⁰(0) exp(∫ Ĉ/(1-δ))`; `samples` are `(t, E⁰, coefficients)`.
/// With `tolerance = 0.05` a violation of up to 5% is accepted.
pub fn basic_energy_monitor(samples: &[(f64, f64, BasicCoefficients)], tolerance: f64) -> Result<MonitorReport> {
    if samples.len() < 2 {
        return Err(Error::SeriesTooShort { got: samples.len(), need: 2 });
    }
    let delta = samples.iter().fold(0.0_f64, |m, s| m.max(s.2.delta));
    if delta >= 1.0 {
        return Err(Error::Config(format!("flux correction too large: delta = {delta:.3}")));
    }
    let pre = (1.0 + delta) / (1.0 - delta);
    let e0 = samples[0].1;
    let mut integral = 0.0;
    let mut rows = Vec::with_capacity(samples.len());
    for (n, s) in samples.iter().enumerate() {
        if n > 0 {
            let p = &samples[n - 1];
            integral += 0.5 * (s.0 - p.0) * (s.2.c_hat + p.2.c_hat) / (1.0 - delta);
        }
        // tolerance enters as a multiplier on the bound
        rows.push(MonitorRow { t: s.0, value: s.1, bound: (1.0 + tolerance) * pre * e0 * integral.exp() });
    }
    Ok(finish(rows, 0.0))
}

/// One sample of the main-theorem monitor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainSample {
    pub t: f64,
    /// `E^{2k}`
    pub energy: f64,
    /// `‖·‖²_{𝓗^{2k}}`
    pub h_sq: f64,
    /// Background sup-norms of orders `1..=2k+1`.
    pub m: f64,
}

#[derive(Clone, Debug)]
pub struct MainReport {
    pub monitor: MonitorReport,
    /// Measured `sup |dE/dt| / (M ‖·‖²)`.
    pub k_coef: f64,
    pub c_lo: f64,
    pub c_hi: f64,
}

/// `‖·‖²(t) ≤ (c_hi/c_lo) ‖·‖²(0) exp(∫ K M / c_lo)` with relative `margin`,
/// given `c_lo ‖·‖² ≤ E ≤ c_hi ‖·‖²`.
pub fn main_theorem_monitor(samples: &[MainSample], c_lo: f64, c_hi: f64, margin: f64) -> Result<MainReport> {
    if samples.len() < 2 {
        return Err(Error::SeriesTooShort { got: samples.len(), need: 2 });
    }
    if !(c_lo > 0.0) || !c_hi.is_finite() {
        return Err(Error::Config(format!("equivalence constants unusable: [{c_lo}, {c_hi}]")));
    }
    // rate(t) = K M(t), with K fitted over the run
    let mut k_coef = 0.0_f64;
    let mut flat = 0.0_f64;
    for w in samples.windows(2) {
        let dt = w[1].t - w[0].t;
        let h = 0.5 * (w[0].h_sq + w[1].h_sq);
        if dt <= 0.0 || h <= 0.0 {
            continue;
        }
        let rate = ((w[1].energy - w[0].energy) / dt).abs() / h;
        let m = 0.5 * (w[0].m + w[1].m);
        if m > 1e-14 {
            k_coef = k_coef.max(rate / m);
        } else {
            flat = flat.max(rate);
        }
    }
    let h0 = samples[0].h_sq;
    let mut integral = 0.0;
    let mut rows = Vec::with_capacity(samples.len());
    for (n, s) in samples.iter().enumerate() {
        if n > 0 {
            let p = &samples[n - 1];
            let rate = |x: &MainSample| k_coef * x.m + flat;
            integral += 0.5 * (s.t - p.t) * (rate(s) + rate(p)) / c_lo;
        }
        rows.push(MonitorRow { t: s.t, value: s.h_sq, bound: c_hi / c_lo * h0 * integral.exp() });
    }
    Ok(MainReport { monitor: finish(rows, margin), k_coef, c_lo, c_hi })
}

/// Every quantity recorded at one instant.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub energy: EnergyReport,
    pub transport: TransportSample,
    pub basic: BasicCoefficients,
    pub m: f64,
}

/// Energies, norms and background coefficients of `lin` at time `lin.t`.
pub fn measure(grid: &Grid, bg: &Background, lin: &LinearizedState, k: usize, params: &GasParams) -> Result<Measurement> {
    let bj = BgJets::analytic(bg, grid, lin.t);
    let lj = LinJets::solve(grid, &bj, lin, params)?;
    let state = bj.slice().state;
    let mut convective = Vec::new();
    if k >= 1 {
        let d2r = dt_power(grid, &bj, &JetField::new(lj.f.r.clone()), 2)?.values();
        let four = lj.four_velocity(&bj);
        let d2u: [Vec<f64>; 4] = (0..4)
            .map(|a| dt_power(grid, &bj, &JetField::new(four.iter().map(|u| u[a]).collect()), 2).map(|f| f.values()))
            .collect::<Result<Vec<_>>>()?
            .try_into()
            .expect("four components");
        convective.push((d2r, d2u));
    }
    let sv = spatial_vorticity(grid, &state, lin, params)?;
    let energy = energies(&EnergyInputs {
        grid,
        bg: &state,
        lin,
        params,
        k,
        convective,
        omega_hat: sv.hat.to_vec(),
    })?;
    let kk = k.max(1);
    let transport = TransportSample {
        t: lin.t,
        omega_hat_sq: spatial_form_norm_sq(grid, &state.r, &sv.hat, kk, params.gamma)?,
        omega_tilde_sq: spatial_form_norm_sq(grid, &state.r, &sv.tilde, kk, params.gamma)?,
        omega_bar_sq: spatial_form_norm_sq(grid, &state.r, &sv.bar, kk, params.gamma)?,
        h2k_sq: energy.h2k * energy.h2k,
    };
    Ok(Measurement {
        energy,
        transport,
        basic: basic_coefficients(&bj, params),
        m: background_sup_norms(grid, &bj, 2 * k + 1)?,
    })
}

/// `E^{2k}/‖·‖²_{𝓗^{2k}}` of a family member; `None` for the zero state.
pub fn equivalence_ratio(setup: &Setup, lin: &LinearizedState, k: usize) -> Result<Option<f64>> {
    let m = measure(&setup.grid, &setup.background, lin, k, &setup.params)?;
    let h = m.energy.h2k * m.energy.h2k;
    if h <= 0.0 {
        return Ok(None);
    }
    Ok(Some(m.energy.e_total / h))
}

#[derive(Clone, Debug)]
pub struct Flag {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Flag {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        Flag { name: name.to_string(), pass, detail }
    }
}

#[derive(Clone, Debug)]
pub struct RunRow {
    pub t: f64,
    pub e0: f64,
    pub e_wave: f64,
    pub e_transport: f64,
    pub e_total: f64,
    pub h_sq: f64,
    pub basic_bound: f64,
    pub main_bound: f64,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub scenario: ScenarioId,
    pub rows: Vec<RunRow>,
    pub flags: Vec<Flag>,
    pub main: MainReport,
    pub basic: MonitorReport,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.flags.iter().all(|f| f.pass)
    }
}

/// Extremes of `E^{2k}/‖·‖²` over the seeded family at `t = 0`.
pub fn family_constants(setup: &Setup, size: usize, seed: u64, k: usize) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for m in 0..size {
        let mut lin = family::state(&setup.grid, m, seed, 1.0, FamilyKind::Mixed);
        lin.t = setup.lin0.t;
        if let Some(q) = equivalence_ratio(setup, &lin, k)? {
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    Ok((lo, hi))
}

pub fn run_scenario(cfg: &Scenario) -> Result<RunReport> {
    let setup = build(cfg)?;
    let s = &cfg.scenario;
    let tol = &cfg.tolerances;
    let validation = require_valid(&setup.background, &setup.grid, 0.0, tol)?;
    let k = s.k;
    let mut samples: Vec<Measurement> = Vec::new();
    let (grid, bg, params) = (&setup.grid, &setup.background, &setup.params);
    evolve(grid, BgSource::Analytic(*bg), setup.lin0.clone(), s.t_final, s.cfl, s.every, params, |_, lin| {
        samples.push(measure(grid, bg, lin, k, params)?);
        Ok(())
    })?;

    let basic_in: Vec<_> = samples.iter().map(|m| (m.energy.t, m.energy.e0, m.basic)).collect();
    let basic = basic_energy_monitor(&basic_in, tol.margin)?;

    let (mut c_lo, mut c_hi) = family_constants(&setup, tol.family, s.seed.wrapping_add(1), k)?;
    for m in &samples {
        let h = m.energy.h2k * m.energy.h2k;
        if h > 0.0 {
            c_lo = c_lo.min(m.energy.e_total / h);
            c_hi = c_hi.max(m.energy.e_total / h);
        }
    }
    let main_in: Vec<MainSample> = samples
        .iter()
        .map(|m| MainSample { t: m.energy.t, energy: m.energy.e_total, h_sq: m.energy.h2k.powi(2), m: m.m })
        .collect();
    let main = main_theorem_monitor(&main_in, c_lo, c_hi, tol.margin)?;

    let mut flags = vec![
        Flag::new("validator", validation.pass, format!("r_max={:.4} A={:.4}", validation.r_max, validation.a_loc)),
        Flag::new("basic_energy", basic.pass, format!("margin={:.4}", basic.margin)),
        Flag::new(
            "main_theorem",
            main.monitor.pass,
            format!("margin={:.4} K={:.4e} c_lo={:.4e} c_hi={:.4e}", main.monitor.margin, main.k_coef, c_lo, c_hi),
        ),
    ];
    if k >= 1 {
        let tr: Vec<TransportSample> = samples.iter().map(|m| m.transport).collect();
        let rep = transport_energy_monitor(&tr)?;
        flags.push(Flag::new("transport_energy", rep.pass, format!("margin={:.4}", rep.margin)));
    }
    if s.id == ScenarioId::ConstantState {
        let drift = |f: &dyn Fn(&Measurement) -> f64| {
            let v0 = f(&samples[0]);
            samples.iter().map(|m| if v0 > 0.0 { (f(m) - v0).abs() / v0 } else { f(m).abs() }).fold(0.0, f64::max)
        };
        let de = drift(&|m| m.energy.e0);
        let dh = drift(&|m| m.energy.h2k.powi(2));
        flags.push(Flag::new(
            "conservation",
            de < tol.conservation && dh < tol.conservation,
            format!("E0 drift={de:.3e} H drift={dh:.3e}"),
        ));
    }
    let rows = samples
        .iter()
        .zip(basic.rows.iter().zip(&main.monitor.rows))
        .map(|(m, (b, mm))| RunRow {
            t: m.energy.t,
            e0: m.energy.e0,
            e_wave: m.energy.e_wave,
            e_transport: m.energy.e_transport,
            e_total: m.energy.e_total,
            h_sq: m.energy.h2k.powi(2),
            basic_bound: b.bound,
            main_bound: mm.bound,
        })
        .collect();
    Ok(RunReport { scenario: s.id, rows, flags, main, basic })
}
