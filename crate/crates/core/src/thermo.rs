//! Ideal-gas variable changes between `(n, ε, p)` and the entropy / sound
//! weight pair `(s, r)`.
//!
//! `r = p^{(γ-1)/γ}` vanishes simply at a physical vacuum boundary and is the
//! weight all norms are built on. `Γ(s)` collects the entropy dependence.

use crate::error::{Error, Result};
use crate::jet::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasParams {
    pub gamma: f64,
    pub s0: f64,
}

impl GasParams {
    pub fn new(gamma: f64) -> Self {
        assert!(gamma > 1.0, "adiabatic constant must exceed 1");
        GasParams { gamma, s0: 0.0 }
    }

    pub fn with_s0(gamma: f64, s0: f64) -> Self {
        GasParams { s0, ..Self::new(gamma) }
    }

    /// `(γ-1)/γ`, the exponent relating `r` and `p`.
    pub fn kappa(&self) -> f64 {
        (self.gamma - 1.0) / self.gamma
    }

    /// `(2-γ)/(γ-1)`, the exponent of the base weight in every energy.
    pub fn base_weight_exp(&self) -> f64 {
        (2.0 - self.gamma) / (self.gamma - 1.0)
    }
}

/// `Γ(s) = (γ-1)^{(γ-1)/γ} / (γ e^{((γ-1)/γ) s})`.
pub fn gamma_of_entropy<T: Scalar>(s: T, p: &GasParams) -> T {
    let k = p.kappa();
    (s * (-k)).exp() * ((p.gamma - 1.0).powf(k) / p.gamma)
}

/// `Γ'(s) = -((γ-1)/γ) Γ(s)`.
pub fn gamma_prime<T: Scalar>(s: T, p: &GasParams) -> T {
    gamma_of_entropy(s, p) * (-p.kappa())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PressureOrR {
    Pressure(f64),
    R(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoPoint {
    pub s: f64,
    pub r: f64,
    pub p: f64,
    pub eps: f64,
    pub n: f64,
    pub h: f64,
    pub gamma_s: f64,
}

pub fn point_from_pr(v: PressureOrR, s: f64, params: &GasParams) -> Result<ThermoPoint> {
    let k = params.kappa();
    let (p, r) = match v {
        PressureOrR::Pressure(p) => {
            if !(p >= 0.0) {
                return Err(Error::NegativeInput(p));
            }
            (p, p.powf(k))
        }
        PressureOrR::R(r) => {
            if !(r >= 0.0) {
                return Err(Error::NegativeInput(r));
            }
            (r.powf(1.0 / k), r)
        }
    };
    let g = gamma_of_entropy(s, params);
    let eps = r / (params.gamma * g);
    let n = if eps > 0.0 { p / (eps * (params.gamma - 1.0)) } else { 0.0 };
    Ok(ThermoPoint {
        s,
        r,
        p,
        eps,
        n,
        h: (g + r) / g,
        gamma_s: g,
    })
}

/// Entropy recovered from `ε` and `n`: `s = ln(ε / n^{γ-1})/(γ-1) + s0`.
pub fn entropy_from(eps: f64, n: f64, params: &GasParams) -> f64 {
    (eps / n.powf(params.gamma - 1.0)).ln() / (params.gamma - 1.0) + params.s0
}

/// Enthalpy per particle, `h = (Γ + r)/Γ`.
pub fn enthalpy<T: Scalar>(s: T, r: T, params: &GasParams) -> T {
    let g = gamma_of_entropy(s, params);
    (g + r) / g
}

/// Linearization of `h` in the direction `(s̃, r̃)`.
pub fn enthalpy_lin<T: Scalar>(s: T, r: T, s_lin: T, r_lin: T, params: &GasParams) -> T {
    // h = 1 + r/Γ, Γ'/Γ = -κ
    let g = gamma_of_entropy(s, params);
    r_lin / g + r * s_lin * params.kappa() / g
}

/// `c² = (γ-1) r / (Γ + r)`.
pub fn sound_speed_sq(r: f64, s: f64, params: &GasParams) -> f64 {
    let g = gamma_of_entropy(s, params);
    (params.gamma - 1.0) * r / (g + r)
}
