//! Closed-form backgrounds and the forcing that makes them exact solutions.
//!
//! Bounded profiles live on `[0, 1]` in the bounded coordinate, with `r`
//! vanishing simply at both ends and the normal velocity vanishing there.

use super::state::{BackgroundState, Forcing, Prim, PrimGrad};
use crate::error::{Error, Result};
use crate::geometry::eta;
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar, XJet};
use crate::thermo::{gamma_of_entropy, GasParams};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Background {
    /// Uniform state, used on periodic grids.
    Constant { s0: f64, r0: f64, u: [f64; 3] },
    /// Fluid at rest with `r = x(1-x)(1 + sin(πx)/10)`, `s = s0 + cos(πx)/10`.
    StaticRest { s0: f64 },
    /// Time-dependent 1-D profile with a velocity vanishing at both ends.
    Manufactured1D { s0: f64 },
    /// Periodic in `x` with period 1, vacuum at `y = 0` and `y = 1`.
    Slab2D { s0: f64 },
}

impl Background {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Background::Constant { .. })
    }

    pub fn dim(&self) -> usize {
        match self {
            Background::Slab2D { .. } => 2,
            _ => 1,
        }
    }

    /// Primitive variables at `(t, x, y)`.
    pub fn eval<T: Scalar>(&self, t: T, x: T, y: T) -> Prim<T> {
        let c = T::cst;
        match *self {
            Background::Constant { s0, r0, u } => Prim { s: c(s0), r: c(r0), u: u.map(c) },
            Background::StaticRest { s0 } => {
                let px = x * PI;
                Prim {
                    s: px.cos() * 0.1 + s0,
                    r: x * (-x + 1.0) * (px.sin() * 0.1 + 1.0),
                    u: [c(0.0); 3],
                }
            }
            Background::Manufactured1D { s0 } => {
                let px = x * PI;
                Prim {
                    s: (px - t * 0.5).cos() * 0.1 + s0,
                    r: x * (-x + 1.0) * (px.sin() * t.cos() * 0.1 + 1.0),
                    u: [px.sin() * (t.sin() * 0.5 + 1.0) * 0.1, c(0.0), c(0.0)],
                }
            }
            Background::Slab2D { s0 } => {
                let tx = x * (2.0 * PI);
                let py = y * PI;
                Prim {
                    s: tx.sin() * py.cos() * 0.1 + s0,
                    r: y * (-y + 1.0) * (tx.cos() * t.cos() * 0.05 + 1.0),
                    u: [
                        py.sin() * (tx - t).cos() * 0.1,
                        py.sin() * tx.sin() * t.cos() * 0.05,
                        c(0.0),
                    ],
                }
            }
        }
    }

    /// Value and spatial gradient as time jets at one point.
    pub fn jets_at(&self, t: f64, x: f64, y: f64) -> (Prim<Jet>, PrimGrad<Jet>) {
        let p = self.eval(XJet::time(t), XJet::x(x), XJet::y(y));
        let z = Jet::default();
        let grad = |v: XJet| [v.dx, v.dy, z];
        (
            p.map(|v| v.v),
            PrimGrad { s: grad(p.s), r: grad(p.r), u: [grad(p.u[0]), grad(p.u[1]), grad(p.u[2])] },
        )
    }

    /// `F = LHS(background)` of the forced system at one point, as a time jet.
    pub fn forcing_at(&self, t: f64, x: f64, y: f64, params: &GasParams) -> Prim<Jet> {
        let (p, g) = self.jets_at(t, x, y);
        forcing_from_jets(&p, &g, params)
    }

    pub fn sample(&self, grid: &Grid, t: f64) -> BackgroundState {
        BackgroundState::from_fn(grid.len(), t, |i| {
            let (x, y) = grid.coords(i);
            self.eval(t, x, y)
        })
    }

    /// Maximum of `|r|` over a fine sample of the domain at time `t`.
    pub fn r_max(&self, t: f64) -> f64 {
        let n = 200;
        let mut m = 0.0_f64;
        for i in 0..=n {
            for j in 0..=if self.dim() == 2 { n } else { 0 } {
                let p = self.eval(t, i as f64 / n as f64, j as f64 / n as f64);
                m = m.max(p.r.abs());
            }
        }
        m
    }
}

/// Left-hand sides of the `s`, `r` and spatial `u` equations from exact jets.
pub fn forcing_from_jets(p: &Prim<Jet>, g: &PrimGrad<Jet>, params: &GasParams) -> Prim<Jet> {
    let u0 = p.u0();
    let u = [u0, p.u[0], p.u[1], p.u[2]];
    let d = |f: Jet, gr: &[Jet; 3]| [f.deriv(), gr[0], gr[1], gr[2]];
    let ds = d(p.s, &g.s);
    let dr = d(p.r, &g.r);
    let du: Vec<[Jet; 4]> = (0..3).map(|j| d(p.u[j], &g.u[j])).collect();
    let conv = |df: &[Jet; 4]| u[0] * df[0] + u[1] * df[1] + u[2] * df[2] + u[3] * df[3];
    // ∂_μ u^μ with ∂_t u^0 = u_j ∂_t u^j / u^0
    let dt_u0 = (p.u[0] * du[0][0] + p.u[1] * du[1][0] + p.u[2] * du[2][0]) / u0;
    let div = dt_u0 + du[0][1] + du[1][2] + du[2][3];
    let big = gamma_of_entropy(p.s, params) + p.r;
    let fu = [0, 1, 2].map(|j| {
        let mut pi_dr = Jet::default();
        for mu in 0..4 {
            pi_dr += (u[j + 1] * u[mu] + eta(j + 1, mu)) * dr[mu];
        }
        conv(&du[j]) + pi_dr / big
    });
    Prim { s: conv(&ds), r: conv(&dr) + p.r * div * (params.gamma - 1.0), u: fu }
}

/// Forcing sampled on the grid at time `t`. In fixed-domain mode the normal
/// velocity must vanish on bounded ends.
pub fn manufactured_forcing(bg: &Background, grid: &Grid, t: f64, params: &GasParams) -> Result<Forcing> {
    check_boundary_velocity(bg, grid, t)?;
    Ok(Forcing::from_fn(grid.len(), t, |i| {
        let (x, y) = grid.coords(i);
        bg.forcing_at(t, x, y, params).map(|j| j.value())
    }))
}

pub fn check_boundary_velocity(bg: &Background, grid: &Grid, t: f64) -> Result<()> {
    if bg.is_periodic() {
        return Ok(());
    }
    let axis = grid.dim() - 1;
    let mut worst = 0.0_f64;
    for i in 0..grid.len() {
        let (x, y) = grid.coords(i);
        let c = if axis == 0 { x } else { y };
        let len = grid.axes[axis].len;
        if c.abs() < 1e-14 || (c - len).abs() < 1e-14 {
            worst = worst.max(bg.eval(t, x, y).u[axis].abs());
        }
    }
    if worst > 1e-12 {
        return Err(Error::BoundaryVelocityNonzero(worst));
    }
    Ok(())
}
