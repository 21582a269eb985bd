//! Pointwise tensor algebra in signature (-,+,+,+).
//!
//! Index 0 is time. Spatial vectors always carry three components; the 1-D
//! and 2-D models leave the unused ones at zero.

use crate::error::{Error, Result};
use crate::jet::Scalar;

pub type Mat4<T> = [[T; 4]; 4];

/// Minkowski metric entry `g_{αβ}` (equal to `g^{αβ}`).
pub fn eta(a: usize, b: usize) -> f64 {
    if a != b {
        0.0
    } else if a == 0 {
        -1.0
    } else {
        1.0
    }
}

/// `u^0 = sqrt(1 + |u|^2)`.
pub fn u0_of<T: Scalar>(u: &[T; 3]) -> T {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + 1.0).sqrt()
}

pub fn full<T: Scalar>(u0: T, u: &[T; 3]) -> [T; 4] {
    [u0, u[0], u[1], u[2]]
}

pub fn lower<T: Scalar>(v: &[T; 4]) -> [T; 4] {
    [-v[0], v[1], v[2], v[3]]
}

/// `ũ^0 = u_j ũ^j / u^0`, the orthogonality completion.
pub fn lin_u0<T: Scalar>(u0: T, u: &[T; 3], ut: &[T; 3]) -> T {
    (u[0] * ut[0] + u[1] * ut[1] + u[2] * ut[2]) / u0
}

/// `Π^{αβ} = g^{αβ} + u^α u^β`.
pub fn pi_upper<T: Scalar>(u: &[T; 4]) -> Mat4<T> {
    let mut m = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            m[a][b] = u[a] * u[b] + eta(a, b);
        }
    }
    m
}

/// `G_{αβ} = g_{αβ} + 2 u_α u_β`.
pub fn g_lower<T: Scalar>(u: &[T; 4]) -> Mat4<T> {
    let ul = lower(u);
    let mut m = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            m[a][b] = ul[a] * ul[b] * 2.0 + eta(a, b);
        }
    }
    m
}

/// `G^{αβ} = g^{αβ} + 2 u^α u^β`, the inverse of [`g_lower`].
pub fn g_upper<T: Scalar>(u: &[T; 4]) -> Mat4<T> {
    let mut m = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            m[a][b] = u[a] * u[b] * 2.0 + eta(a, b);
        }
    }
    m
}

/// `H^{ij} = δ^{ij} - u^i u^j / (u^0)^2`.
pub fn h_upper<T: Scalar>(u: &[T; 4]) -> [[T; 3]; 3] {
    let mut m = [[T::zero(); 3]; 3];
    let inv = (u[0] * u[0]).recip();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = -(u[i + 1] * u[j + 1] * inv) + if i == j { 1.0 } else { 0.0 };
        }
    }
    m
}

/// `B^{αi} = g^{αi} - g^{α0} u^i / u^0`.
pub fn b_upper<T: Scalar>(u: &[T; 4]) -> [[T; 3]; 4] {
    let mut m = [[T::zero(); 3]; 4];
    for i in 0..3 {
        m[0][i] = u[i + 1] / u[0];
        m[i + 1][i] = T::one();
    }
    m
}

/// `|X|_G^2` for a vector with upper indices.
pub fn norm_g_sq<T: Scalar>(u: &[T; 4], x: &[T; 4]) -> T {
    let g = g_lower(u);
    let mut acc = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            acc += g[a][b] * x[a] * x[b];
        }
    }
    acc
}

/// `|ω|_G^2 = G^{αγ} G^{βδ} ω_{αβ} ω_{γδ}` for a two-form with lower indices.
pub fn two_form_norm_g_sq<T: Scalar>(u: &[T; 4], w: &Mat4<T>) -> T {
    let gu = g_upper(u);
    let mut acc = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut inner = T::zero();
            for c in 0..4 {
                for d in 0..4 {
                    inner += gu[a][c] * gu[b][d] * w[c][d];
                }
            }
            acc += inner * w[a][b];
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVelocity {
    pub u: [f64; 4],
}

impl FourVelocity {
    pub fn spatial(&self) -> [f64; 3] {
        [self.u[1], self.u[2], self.u[3]]
    }

    pub fn constraint_residual(&self) -> f64 {
        let u = &self.u;
        -u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3] + 1.0
    }

    /// Largest ratio `|X|_δ^2 / |X|_G^2` over vectors with `X·u = 0`.
    ///
    /// In the rest frame of `u` such an `X` is purely spatial and `|X|_G` is
    /// its Euclidean length; the boost stretches the direction of motion by
    /// `cosh 2η = 1 + 2|u|^2`.
    pub fn euclid_vs_g(&self) -> f64 {
        let s = self.spatial();
        1.0 + 2.0 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2])
    }

    /// Smallest eigenvalue of the matrix `G^{αβ}`, `(u^0 - |u|)^2`.
    pub fn g_upper_min_eig(&self) -> f64 {
        let s = self.spatial();
        let speed = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        // u^0 - |u| = 1/(u^0 + |u|) avoids cancellation for fast flows
        let e = 1.0 / (self.u[0] + speed);
        e * e
    }
}

pub fn complete_velocity(u_spatial: [f64; 3]) -> Result<FourVelocity> {
    if u_spatial.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let u0 = u0_of(&u_spatial);
    Ok(FourVelocity { u: full(u0, &u_spatial) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorPack {
    pub pi: Mat4<f64>,
    pub g: Mat4<f64>,
    pub h: [[f64; 3]; 3],
    pub b: [[f64; 3]; 4],
}

pub fn tensor_pack(u: &FourVelocity) -> Result<TensorPack> {
    let c = u.constraint_residual();
    if !(c.abs() <= 1e-10 * u.u[0] * u.u[0]) {
        return Err(Error::ConstraintViolated(c));
    }
    Ok(TensorPack {
        pi: pi_upper(&u.u),
        g: g_lower(&u.u),
        h: h_upper(&u.u),
        b: b_upper(&u.u),
    })
}

pub fn lin_velocity_zero(u: &FourVelocity, ut_spatial: [f64; 3]) -> f64 {
    lin_u0(u.u[0], &u.spatial(), &ut_spatial)
}

/// `G_{αβ} B^{αi} B^{βj}`, which equals `H^{ij}`.
pub fn gbb(pack: &TensorPack) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for a in 0..4 {
                for b in 0..4 {
                    m[i][j] += pack.g[a][b] * pack.b[a][i] * pack.b[b][j];
                }
            }
        }
    }
    m
}
