//! Node-local formulas: sources of the linearized system and the elimination
//! of time derivatives in favour of spatial ones.
//!
//! Only the `s`, `r` and spatial `u^j` equations are used, together with the
//! constraint that fixes `u^0` (resp. `ũ^0`). The `u^0` equation is implied
//! by them for exact backgrounds and is not needed otherwise.

use super::state::{Prim, PrimGrad};
use crate::error::{Error, Result};
use crate::geometry::eta;
use crate::jet::Scalar;
use crate::thermo::{gamma_of_entropy, gamma_prime, GasParams};

pub const A1_FLOOR: f64 = 1e-8;

/// `a₁ = u⁰ - (γ-1)((u⁰)²-1) r / ((Γ+r) u⁰)`.
pub fn a1<T: Scalar>(p: &Prim<T>, params: &GasParams) -> T {
    let u0 = p.u0();
    let g = gamma_of_entropy(p.s, params) + p.r;
    u0 - (u0 * u0 - 1.0) * p.r * (params.gamma - 1.0) / (g * u0)
}

pub fn check_a1<T: Scalar>(a: T) -> Result<T> {
    if !(a.value() > A1_FLOOR) {
        return Err(Error::DegenerateA1(a.value()));
    }
    Ok(a)
}

/// `∂_t` of `(s, r, u^j)` for `D_t s = F_s`, `D_t r + (γ-1) r ∂_μ u^μ = F_r`,
/// `D_t u^j + Π^{jμ}∂_μ r/(Γ+r) = F^j`; `force = None` is the unforced system.
pub fn nonlinear_dt<T: Scalar>(
    p: &Prim<T>,
    g: &PrimGrad<T>,
    force: Option<&Prim<T>>,
    params: &GasParams,
) -> Result<Prim<T>> {
    let gm1 = params.gamma - 1.0;
    let u = &p.u;
    let u0 = p.u0();
    let big = gamma_of_entropy(p.s, params) + p.r;
    let f = force.copied().unwrap_or_else(Prim::zero);
    let adv = |d: &[T; 3]| u[0] * d[0] + u[1] * d[1] + u[2] * d[2];
    let div_u = g.u[0][0] + g.u[1][1] + g.u[2][2];

    let mut a = [T::zero(); 3];
    for j in 0..3 {
        let mut pi_dr = T::zero();
        for i in 0..3 {
            pi_dr += (u[j] * u[i] + eta(j + 1, i + 1)) * g.r[i];
        }
        a[j] = (f.u[j] - adv(&g.u[j]) - pi_dr / big) / u0;
    }
    let wa = (u[0] * a[0] + u[1] * a[1] + u[2] * a[2]) / u0;
    let a1 = check_a1(a1(p, params))?;
    let tr = (f.r - adv(&g.r) - p.r * div_u * gm1 - p.r * wa * gm1) / a1;
    let tu = [0, 1, 2].map(|j| a[j] - u[j] * tr / big);
    Ok(Prim { s: (f.s - adv(&g.s)) / u0, r: tr, u: tu })
}

/// Full four-vectors and spacetime gradients of the background at one node.
pub struct Spacetime<T> {
    pub u: [T; 4],
    /// `du[α][μ] = ∂_μ u^α`
    pub du: [[T; 4]; 4],
    pub dr: [T; 4],
    pub ds: [T; 4],
    pub big: T,
    pub big_prime: T,
}

pub fn spacetime<T: Scalar>(p: &Prim<T>, g: &PrimGrad<T>, dt: &Prim<T>, params: &GasParams) -> Spacetime<T> {
    let u0 = p.u0();
    let u = [u0, p.u[0], p.u[1], p.u[2]];
    let w = [p.u[0] / u0, p.u[1] / u0, p.u[2] / u0];
    let mut du = [[T::zero(); 4]; 4];
    for j in 0..3 {
        du[j + 1][0] = dt.u[j];
        for i in 0..3 {
            du[j + 1][i + 1] = g.u[j][i];
        }
    }
    // u^0 follows u^j through the normalization
    for mu in 0..4 {
        du[0][mu] = w[0] * du[1][mu] + w[1] * du[2][mu] + w[2] * du[3][mu];
    }
    Spacetime {
        u,
        du,
        dr: [dt.r, g.r[0], g.r[1], g.r[2]],
        ds: [dt.s, g.s[0], g.s[1], g.s[2]],
        big: gamma_of_entropy(p.s, params) + p.r,
        big_prime: gamma_prime(p.s, params),
    }
}

/// `ũ` as a four-vector.
pub fn lin_four<T: Scalar>(p: &Prim<T>, l: &Prim<T>) -> [T; 4] {
    let u0 = p.u0();
    let lu0 = (p.u[0] * l.u[0] + p.u[1] * l.u[1] + p.u[2] * l.u[2]) / u0;
    [lu0, l.u[0], l.u[1], l.u[2]]
}

/// Sources `(f, g, h^α)` of the linearized system.
pub fn linear_sources<T: Scalar>(
    p: &Prim<T>,
    g: &PrimGrad<T>,
    dt: &Prim<T>,
    l: &Prim<T>,
    params: &GasParams,
) -> (T, T, [T; 4]) {
    let st = spacetime(p, g, dt, params);
    let ut = lin_four(p, l);
    let dot = |a: &[T; 4], b: &[T; 4]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    let f = -dot(&ut, &st.ds);
    let div_u = st.du[0][0] + st.du[1][1] + st.du[2][2] + st.du[3][3];
    let gg = -(l.r * div_u) * (params.gamma - 1.0);
    let ut_dr = dot(&ut, &st.dr);
    let u_dr = dot(&st.u, &st.dr);
    let big2 = st.big * st.big;
    let mut h = [T::zero(); 4];
    for a in 0..4 {
        let mut pi_dr = T::zero();
        for mu in 0..4 {
            pi_dr += (st.u[a] * st.u[mu] + eta(a, mu)) * st.dr[mu];
        }
        h[a] = -dot(&ut, &st.du[a]) - (ut[a] * u_dr + st.u[a] * ut_dr) / st.big
            + st.big_prime * l.s * pi_dr / big2
            + l.r * pi_dr / big2;
    }
    (f, gg, h)
}

/// `∂_t` of `(s̃, r̃, ũ^j)`. `dt` holds the background time derivatives.
pub fn linear_dt<T: Scalar>(
    p: &Prim<T>,
    g: &PrimGrad<T>,
    dt: &Prim<T>,
    l: &Prim<T>,
    lg: &PrimGrad<T>,
    params: &GasParams,
) -> Result<Prim<T>> {
    let gm1 = params.gamma - 1.0;
    let (f, gg, h) = linear_sources(p, g, dt, l, params);
    let u = &p.u;
    let u0 = p.u0();
    let big = gamma_of_entropy(p.s, params) + p.r;
    let ut0 = lin_four(p, l)[0];
    let adv = |d: &[T; 3]| u[0] * d[0] + u[1] * d[1] + u[2] * d[2];
    let lin_adv = |d: &[T; 3]| l.u[0] * d[0] + l.u[1] * d[1] + l.u[2] * d[2];

    let mut a = [T::zero(); 3];
    for j in 0..3 {
        let mut pi_dr = T::zero();
        for i in 0..3 {
            pi_dr += (u[j] * u[i] + eta(j + 1, i + 1)) * lg.r[i];
        }
        a[j] = (h[j + 1] - adv(&lg.u[j]) - pi_dr / big) / u0;
    }
    let dt_u0 = (u[0] * dt.u[0] + u[1] * dt.u[1] + u[2] * dt.u[2]) / u0;
    // q = ũ^j ∂_t (u^j/u^0)
    let mut q = T::zero();
    for j in 0..3 {
        q += l.u[j] * (dt.u[j] * u0 - u[j] * dt_u0) / (u0 * u0);
    }
    let wa = (u[0] * a[0] + u[1] * a[1] + u[2] * a[2]) / u0;
    let div_lu = lg.u[0][0] + lg.u[1][1] + lg.u[2][2];
    let rr = gg - adv(&lg.r) - ut0 * dt.r - lin_adv(&g.r) - p.r * div_lu * gm1;
    let a1 = check_a1(a1(p, params))?;
    let tr = (rr - p.r * (wa + q) * gm1) / a1;
    let tu = [0, 1, 2].map(|j| a[j] - u[j] * tr / big);
    Ok(Prim { s: (f - adv(&lg.s)) / u0, r: tr, u: tu })
}
