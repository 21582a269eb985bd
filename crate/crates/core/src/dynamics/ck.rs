//! Time jets of gridded states.
//!
//! Given a state at one time, the Cauchy-Kovalevskaya recursion
//! `X_{n+1} = F(X)_n / (n+1)` fills in its Taylor coefficients in time, with
//! spatial derivatives taken by the grid stencils coefficient by coefficient.
//! Convective derivatives of any order then come from exact jet algebra.

use super::background::Background;
use super::pointwise::{lin_four, linear_dt, nonlinear_dt};
use super::state::{BackgroundState, FieldSet, LinearizedState, Prim, PrimGrad};
use crate::error::{Error, Result};
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar, JET_LEN};
use crate::thermo::GasParams;

/// Spatial gradients of every component at every node.
pub fn grad_fields<T: Scalar>(grid: &Grid, f: &FieldSet<T>) -> Result<Vec<PrimGrad<T>>> {
    let gs = grid.grad(&f.s)?;
    let gr = grid.grad(&f.r)?;
    let gu = [grid.grad(&f.u[0])?, grid.grad(&f.u[1])?, grid.grad(&f.u[2])?];
    Ok((0..f.len())
        .map(|n| PrimGrad {
            s: [gs[0][n], gs[1][n], gs[2][n]],
            r: [gr[0][n], gr[1][n], gr[2][n]],
            u: [0, 1, 2].map(|j| [gu[j][0][n], gu[j][1][n], gu[j][2][n]]),
        })
        .collect())
}

fn lift(f: &FieldSet<f64>) -> FieldSet<Jet> {
    FieldSet {
        t: f.t,
        s: f.s.iter().map(|v| Jet::cst(*v)).collect(),
        r: f.r.iter().map(|v| Jet::cst(*v)).collect(),
        u: [0, 1, 2].map(|j| f.u[j].iter().map(|v| Jet::cst(*v)).collect()),
    }
}

fn set_coeff(x: &mut FieldSet<Jet>, rhs: &FieldSet<Jet>, n: usize) {
    for (a, b) in x.components_mut().into_iter().zip(rhs.components()) {
        for (xa, fb) in a.iter_mut().zip(b) {
            xa.0[n + 1] = fb.0[n] / (n + 1) as f64;
        }
    }
}

/// Background value and spatial gradient as time jets at every node.
#[derive(Clone, Debug)]
pub struct BgJets {
    pub t: f64,
    pub p: Vec<Prim<Jet>>,
    pub g: Vec<PrimGrad<Jet>>,
}

impl BgJets {
    /// Exact jets of a closed-form background.
    pub fn analytic(bg: &Background, grid: &Grid, t: f64) -> Self {
        let (p, g) = (0..grid.len())
            .map(|i| {
                let (x, y) = grid.coords(i);
                bg.jets_at(t, x, y)
            })
            .unzip();
        BgJets { t, p, g }
    }

    /// Jets of the (optionally forced) nonlinear system started from `state`.
    pub fn evolved(
        grid: &Grid,
        state: &BackgroundState,
        forcing: Option<&Background>,
        params: &GasParams,
    ) -> Result<Self> {
        let t = state.t;
        let force: Option<Vec<Prim<Jet>>> = forcing.map(|bg| {
            (0..grid.len())
                .map(|i| {
                    let (x, y) = grid.coords(i);
                    bg.forcing_at(t, x, y, params)
                })
                .collect()
        });
        let mut x = lift(state);
        for n in 0..JET_LEN - 1 {
            let g = grad_fields(grid, &x)?;
            let mut rhs = FieldSet::<Jet>::zeros(x.len(), t);
            for i in 0..x.len() {
                let f = force.as_ref().map(|f| &f[i]);
                rhs.set(i, nonlinear_dt(&x.at(i), &g[i], f, params)?);
            }
            set_coeff(&mut x, &rhs, n);
        }
        let g = grad_fields(grid, &x)?;
        Ok(BgJets { t, p: (0..x.len()).map(|i| x.at(i)).collect(), g })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Time derivative jets `∂_t (s, r, u^j)`.
    pub fn dt(&self, i: usize) -> Prim<Jet> {
        self.p[i].map(|v| v.deriv())
    }

    pub fn slice(&self) -> BgSlice {
        let v = |j: &Jet| j.0[0];
        BgSlice {
            state: BackgroundState::from_fn(self.len(), self.t, |i| self.p[i].map(|j| v(&j))),
            grad: self
                .g
                .iter()
                .map(|g| PrimGrad {
                    s: g.s.map(|j| v(&j)),
                    r: g.r.map(|j| v(&j)),
                    u: g.u.map(|row| row.map(|j| v(&j))),
                })
                .collect(),
            dt: (0..self.len()).map(|i| self.p[i].map(|j| j.0[1])).collect(),
        }
    }

    /// The same instant with every time derivative set to zero; no longer a
    /// solution of anything, used as a negative control.
    pub fn frozen(&self) -> Self {
        let c = |j: &Jet| j.truncate(1);
        BgJets {
            t: self.t,
            p: self.p.iter().map(|p| p.map(|j| c(&j))).collect(),
            g: self
                .g
                .iter()
                .map(|g| PrimGrad { s: g.s.map(|j| c(&j)), r: g.r.map(|j| c(&j)), u: g.u.map(|row| row.map(|j| c(&j))) })
                .collect(),
        }
    }

    /// `u^0` jets.
    pub fn u0(&self) -> Vec<Jet> {
        self.p.iter().map(|p| p.u0()).collect()
    }
}

/// Background at one instant with gradients and time derivatives.
#[derive(Clone, Debug)]
pub struct BgSlice {
    pub state: BackgroundState,
    pub grad: Vec<PrimGrad<f64>>,
    pub dt: Vec<Prim<f64>>,
}

impl BgSlice {
    pub fn analytic(bg: &Background, grid: &Grid, t: f64) -> Self {
        let n = grid.len();
        let mut state = BackgroundState::zeros(n, t);
        let mut grad = Vec::with_capacity(n);
        let mut dt = Vec::with_capacity(n);
        for i in 0..n {
            let (x, y) = grid.coords(i);
            let (p, g) = bg.jets_at(t, x, y);
            state.set(i, p.map(|j| j.0[0]));
            grad.push(PrimGrad {
                s: g.s.map(|j| j.0[0]),
                r: g.r.map(|j| j.0[0]),
                u: g.u.map(|row| row.map(|j| j.0[0])),
            });
            dt.push(p.map(|j| j.0[1]));
        }
        BgSlice { state, grad, dt }
    }

    /// Gradients by stencils, time derivatives by elimination.
    pub fn from_state(
        grid: &Grid,
        state: &BackgroundState,
        forcing: Option<&FieldSet<f64>>,
        params: &GasParams,
    ) -> Result<Self> {
        let grad = grad_fields(grid, state)?;
        let dt = (0..state.len())
            .map(|i| {
                let f = forcing.map(|f| f.at(i));
                nonlinear_dt(&state.at(i), &grad[i], f.as_ref(), params)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BgSlice { state: state.clone(), grad, dt })
    }
}

/// Jets of a linearized state.
#[derive(Clone, Debug)]
pub struct LinJets {
    pub f: FieldSet<Jet>,
}

impl LinJets {
    /// Cauchy-Kovalevskaya jets of the linearized system around `bg`.
    pub fn solve(grid: &Grid, bg: &BgJets, lin: &LinearizedState, params: &GasParams) -> Result<Self> {
        let mut x = lift(lin);
        for n in 0..JET_LEN - 1 {
            let g = grad_fields(grid, &x)?;
            let mut rhs = FieldSet::<Jet>::zeros(x.len(), lin.t);
            for i in 0..x.len() {
                let d = linear_dt(&bg.p[i], &bg.g[i], &bg.dt(i), &x.at(i), &g[i], params)?;
                rhs.set(i, d);
            }
            set_coeff(&mut x, &rhs, n);
        }
        Ok(LinJets { f: x })
    }

    /// `ũ` as four-vector jets, `ũ^0` from orthogonality.
    pub fn four_velocity(&self, bg: &BgJets) -> Vec<[Jet; 4]> {
        (0..self.f.len()).map(|i| lin_four(&bg.p[i], &self.f.at(i))).collect()
    }
}

/// A scalar field carried as time jets, with the number of trustworthy
/// coefficients.
#[derive(Clone, Debug)]
pub struct JetField {
    pub v: Vec<Jet>,
    pub valid: usize,
}

impl JetField {
    pub fn new(v: Vec<Jet>) -> Self {
        JetField { v, valid: JET_LEN }
    }

    pub fn values(&self) -> Vec<f64> {
        self.v.iter().map(|j| j.0[0]).collect()
    }
}

/// `D_t φ = u^0 ∂_t φ + u^i ∂_i φ`; uses one time coefficient.
pub fn dt_apply(grid: &Grid, bg: &BgJets, phi: &JetField) -> Result<JetField> {
    if phi.valid < 2 {
        return Err(Error::MissingTimeDerivative(format!(
            "field carries {} time coefficient(s)",
            phi.valid
        )));
    }
    let g = grid.grad(&phi.v)?;
    let v = (0..phi.v.len())
        .map(|i| {
            let p = &bg.p[i];
            p.u0() * phi.v[i].deriv() + p.u[0] * g[0][i] + p.u[1] * g[1][i] + p.u[2] * g[2][i]
        })
        .collect();
    Ok(JetField { v, valid: phi.valid - 1 })
}

/// `D_t^n φ`.
pub fn dt_power(grid: &Grid, bg: &BgJets, phi: &JetField, n: usize) -> Result<JetField> {
    let mut out = phi.clone();
    for _ in 0..n {
        out = dt_apply(grid, bg, &out)?;
    }
    Ok(out)
}
