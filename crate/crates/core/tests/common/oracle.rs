//! Time derivatives from a direct linear solve of the implicit equations of
//! motion, written out component by component in four-velocity form:
//!
//!   u^μ ∂_μ s = F_s
//!   u^μ ∂_μ r + (γ-1) r ∂_μ u^μ = F_r
//!   u^μ ∂_μ u^j + (u^j u^μ + η^{jμ}) ∂_μ r / (Γ(s) + r) = F^j
//!
//! with `u^0 = sqrt(1 + |u|²)`. The linearized tuple comes from a complex-step
//! derivative of the same residual.

use nalgebra::{Matrix5, Vector5};
use num_complex::Complex64 as C;
use vel_core::dynamics::{Prim, PrimGrad};

fn big_gamma(s: C, gamma: f64) -> C {
    let k = (gamma - 1.0) / gamma;
    C::new((gamma - 1.0).powf(k) / gamma, 0.0) * (-s * k).exp()
}

struct Pt {
    s: C,
    r: C,
    u: [C; 3],
    ds: [C; 3],
    dr: [C; 3],
    du: [[C; 3]; 3],
}

/// Residual of the five equations with `∂_t (s, r, u^j) = x`.
fn residual(p: &Pt, x: &[C; 5], f: &[f64; 5], gamma: f64) -> [C; 5] {
    let u0 = (C::new(1.0, 0.0) + p.u[0] * p.u[0] + p.u[1] * p.u[1] + p.u[2] * p.u[2]).sqrt();
    let adv = |d: &[C; 3]| p.u[0] * d[0] + p.u[1] * d[1] + p.u[2] * d[2];
    let dt_u0 = (p.u[0] * x[2] + p.u[1] * x[3] + p.u[2] * x[4]) / u0;
    let div = dt_u0 + p.du[0][0] + p.du[1][1] + p.du[2][2];
    let big = big_gamma(p.s, gamma) + p.r;
    let mut out = [C::new(0.0, 0.0); 5];
    out[0] = u0 * x[0] + adv(&p.ds) - f[0];
    out[1] = u0 * x[1] + adv(&p.dr) + p.r * div * (gamma - 1.0) - f[1];
    for j in 0..3 {
        let mut pi_dr = p.u[j] * u0 * x[1];
        for i in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            pi_dr += (p.u[j] * p.u[i] + delta) * p.dr[i];
        }
        out[2 + j] = u0 * x[2 + j] + adv(&p.du[j]) + pi_dr / big - f[2 + j];
    }
    out
}

fn lift(p: &Prim<f64>, g: &PrimGrad<f64>, l: Option<(&Prim<f64>, &PrimGrad<f64>)>, h: f64) -> Pt {
    let c = |a: f64, b: f64| C::new(a, h * b);
    let (lp, lg) = match l {
        Some((a, b)) => (*a, *b),
        None => (Prim::zero(), PrimGrad::zero()),
    };
    Pt {
        s: c(p.s, lp.s),
        r: c(p.r, lp.r),
        u: [0, 1, 2].map(|j| c(p.u[j], lp.u[j])),
        ds: [0, 1, 2].map(|i| c(g.s[i], lg.s[i])),
        dr: [0, 1, 2].map(|i| c(g.r[i], lg.r[i])),
        du: [0, 1, 2].map(|j| [0, 1, 2].map(|i| c(g.u[j][i], lg.u[j][i]))),
    }
}

/// The residual is affine in `x`: `A x + b`.
fn affine(p: &Pt, f: &[f64; 5], gamma: f64) -> (Matrix5<f64>, Vector5<f64>) {
    let zero = [C::new(0.0, 0.0); 5];
    let b0 = residual(p, &zero, f, gamma);
    let mut a = Matrix5::zeros();
    for col in 0..5 {
        let mut e = zero;
        e[col] = C::new(1.0, 0.0);
        let r = residual(p, &e, f, gamma);
        for row in 0..5 {
            a[(row, col)] = (r[row] - b0[row]).re;
        }
    }
    (a, Vector5::from_fn(|i, _| b0[i].re))
}

fn to_prim(v: &Vector5<f64>) -> Prim<f64> {
    Prim { s: v[0], r: v[1], u: [v[2], v[3], v[4]] }
}

/// `∂_t (s, r, u^j)` of the (forced) nonlinear system.
pub fn nonlinear(p: &Prim<f64>, g: &PrimGrad<f64>, force: &Prim<f64>, gamma: f64) -> Prim<f64> {
    let f = [force.s, force.r, force.u[0], force.u[1], force.u[2]];
    let (a, b) = affine(&lift(p, g, None, 0.0), &f, gamma);
    to_prim(&a.lu().solve(&(-b)).expect("regular system"))
}

/// `∂_t (s̃, r̃, ũ^j)` for the linearization around an unforced background.
pub fn linearized(p: &Prim<f64>, g: &PrimGrad<f64>, l: &Prim<f64>, lg: &PrimGrad<f64>, gamma: f64) -> Prim<f64> {
    let f = [0.0; 5];
    let dt = nonlinear(p, g, &Prim::zero(), gamma);
    let x = [dt.s, dt.r, dt.u[0], dt.u[1], dt.u[2]].map(|v| C::new(v, 0.0));
    let h = 1e-30;
    let pert = residual(&lift(p, g, Some((l, lg)), h), &x, &f, gamma);
    let (a, _) = affine(&lift(p, g, None, 0.0), &f, gamma);
    let rhs = Vector5::from_fn(|i, _| -pert[i].im / h);
    to_prim(&a.lu().solve(&rhs).expect("regular system"))
}
