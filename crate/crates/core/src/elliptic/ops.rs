//! The operators `L₁`, `L̃₁`, `L̃₂`, `L̃₃`.

use crate::dynamics::{BgJets, BgSlice};
use crate::error::{Error, Result};
use crate::geometry::{b_upper, g_lower, h_upper, pi_upper};
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar};
use crate::thermo::{gamma_of_entropy, GasParams};

/// Background coefficients at one node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coef {
    pub r: f64,
    pub dr: [f64; 3],
    /// `u^α`
    pub u: [f64; 4],
    /// `Γ + r`
    pub big: f64,
    pub gamma: f64,
}

impl Coef {
    pub fn at(bg: &BgSlice, i: usize, params: &GasParams) -> Self {
        let p = bg.state.at(i);
        Coef {
            r: p.r,
            dr: bg.grad[i].r,
            u: [p.u0(), p.u[0], p.u[1], p.u[2]],
            big: gamma_of_entropy(p.s, params) + p.r,
            gamma: params.gamma,
        }
    }

    fn c(&self) -> f64 {
        (self.gamma - 1.0) / self.big
    }
}

/// `((γ-1)/(Γ+r)) H^{ij} (r ∂_i∂_j r̃ + (1/(γ-1) + b) ∂_i r ∂_j r̃)`.
pub fn l1_good_point(c: &Coef, b: f64, d1: &[f64; 3], d2: &[[f64; 3]; 3]) -> f64 {
    let h = h_upper(&c.u);
    let g = 1.0 / (c.gamma - 1.0) + b;
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += h[i][j] * (c.r * d2[i][j] + g * c.dr[i] * d1[j]);
        }
    }
    c.c() * acc
}

/// `(L̃₂ũ)^α`; `du[k][j] = ∂_j ũ_k`, `d2u[k][i][j] = ∂_i∂_j ũ_k`.
pub fn l2_point(c: &Coef, du: &[[f64; 3]; 3], d2u: &[[[f64; 3]; 3]; 3]) -> [f64; 4] {
    let h = h_upper(&c.u);
    let bm = b_upper(&c.u);
    let inv = 1.0 / (c.gamma - 1.0);
    let mut out = [0.0; 4];
    for (a, o) in out.iter_mut().enumerate() {
        for i in 0..3 {
            let mut inner = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    inner += h[j][k] * (c.dr[i] * du[k][j] + c.r * d2u[k][i][j] + inv * c.dr[j] * du[k][i]);
                }
            }
            *o += bm[a][i] * inner;
        }
        *o *= c.c();
    }
    out
}

/// `(L̃₃ũ)^α` with `r^{-1/(γ-1)} ∂_l(r^{γ/(γ-1)} X)` expanded, `X_{mi} = ∂_m ũ_i - ∂_i ũ_m`.
pub fn l3_point(c: &Coef, du: &[[f64; 3]; 3], d2u: &[[[f64; 3]; 3]; 3]) -> [f64; 4] {
    let h = h_upper(&c.u);
    let bm = b_upper(&c.u);
    let q = c.gamma / (c.gamma - 1.0);
    let mut out = [0.0; 4];
    for (a, o) in out.iter_mut().enumerate() {
        for i in 0..3 {
            let mut inner = 0.0;
            for m in 0..3 {
                for l in 0..3 {
                    let x = du[i][m] - du[m][i];
                    let dx = d2u[i][l][m] - d2u[m][l][i];
                    inner += h[m][l] * (c.r * dx + q * c.dr[l] * x);
                }
            }
            *o += bm[a][i] * inner;
        }
        *o *= c.c();
    }
    out
}

/// The bracket multiplying `D^{ia,jk,ln}` in the expanded square of
/// `(L̃₂ + L̃₃)ũ`, indexed `[i][j][k]`.
pub fn bracket(c: &Coef, du: &[[f64; 3]; 3], d2u: &[[[f64; 3]; 3]; 3]) -> [[[f64; 3]; 3]; 3] {
    let inv = 1.0 / (c.gamma - 1.0);
    let q = c.gamma * inv;
    let mut out = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j][k] = c.r * d2u[k][i][j]
                    + c.dr[i] * du[k][j]
                    + inv * c.dr[j] * du[k][i]
                    + c.r * (d2u[i][k][j] - d2u[j][k][i])
                    + q * c.dr[k] * (du[i][j] - du[j][i]);
            }
        }
    }
    out
}

/// `r^{1/(γ-1)} G_{αβ} L^α L^β` with `L = (L̃₂ + L̃₃)ũ`.
pub fn pairing_direct(c: &Coef, du: &[[f64; 3]; 3], d2u: &[[[f64; 3]; 3]; 3]) -> f64 {
    let l2 = l2_point(c, du, d2u);
    let l3 = l3_point(c, du, d2u);
    let g = g_lower(&c.u);
    let mut acc = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            acc += g[a][b] * (l2[a] + l3[a]) * (l2[b] + l3[b]);
        }
    }
    c.r.powf(1.0 / (c.gamma - 1.0)) * acc
}

/// `r^{1/(γ-1)} D^{ia,jk,ln} [..]_{ijk} [..]_{aln}`.
pub fn pairing_expanded(c: &Coef, du: &[[f64; 3]; 3], d2u: &[[[f64; 3]; 3]; 3]) -> f64 {
    let h = h_upper(&c.u);
    let br = bracket(c, du, d2u);
    let mut acc = 0.0;
    for i in 0..3 {
        for a in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        for n in 0..3 {
                            acc += h[i][a] * h[j][k] * h[l][n] * br[i][j][k] * br[a][l][n];
                        }
                    }
                }
            }
        }
    }
    c.r.powf(1.0 / (c.gamma - 1.0)) * c.c() * c.c() * acc
}

/// `∂_i∂_j f` on the grid, zero in directions the grid lacks.
pub fn second_derivs<T: Scalar>(grid: &Grid, f: &[T]) -> Result<[[Vec<T>; 3]; 3]> {
    let z = vec![T::zero(); f.len()];
    let mut out: [[Vec<T>; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| z.clone()));
    out[0][0] = grid.diff(f, 0, 2)?;
    if grid.dim() == 2 {
        out[1][1] = grid.diff(f, 1, 2)?;
        out[0][1] = grid.mixed(f, 1, 1)?;
        out[1][0] = out[0][1].clone();
    }
    Ok(out)
}

/// `L̃₁ r̃`, or its variant with an extra `b ((γ-1)/(Γ+r)) H^{ij} ∂_i r ∂_j`.
pub fn l1_good(grid: &Grid, bg: &BgSlice, rt: &[f64], b: f64, params: &GasParams) -> Result<Vec<f64>> {
    let d1 = grid.grad(rt)?;
    let d2 = second_derivs(grid, rt)?;
    Ok((0..rt.len())
        .map(|n| {
            let c = Coef::at(bg, n, params);
            let g1 = [d1[0][n], d1[1][n], d1[2][n]];
            let g2: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| d2[i][j][n]));
            l1_good_point(&c, b, &g1, &g2)
        })
        .collect())
}

type VecDerivs = (Vec<[[f64; 3]; 3]>, Vec<[[[f64; 3]; 3]; 3]>);

fn vector_derivs(grid: &Grid, ut: &[Vec<f64>; 3]) -> Result<VecDerivs> {
    let n = grid.len();
    let d1: Vec<[Vec<f64>; 3]> = ut.iter().map(|u| grid.grad(u)).collect::<Result<_>>()?;
    let d2: Vec<[[Vec<f64>; 3]; 3]> = ut.iter().map(|u| second_derivs(grid, u)).collect::<Result<_>>()?;
    let du = (0..n).map(|p| std::array::from_fn(|k| std::array::from_fn(|j| d1[k][j][p]))).collect();
    let d2u = (0..n)
        .map(|p| std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| d2[k][i][j][p]))))
        .collect();
    Ok((du, d2u))
}

fn vector_op<F>(grid: &Grid, bg: &BgSlice, ut: &[Vec<f64>; 3], params: &GasParams, f: F) -> Result<[Vec<f64>; 4]>
where
    F: Fn(&Coef, &[[f64; 3]; 3], &[[[f64; 3]; 3]; 3]) -> [f64; 4],
{
    let (du, d2u) = vector_derivs(grid, ut)?;
    let mut out: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; grid.len()]);
    for p in 0..grid.len() {
        let v = f(&Coef::at(bg, p, params), &du[p], &d2u[p]);
        for a in 0..4 {
            out[a][p] = v[a];
        }
    }
    Ok(out)
}

pub fn l2_good(grid: &Grid, bg: &BgSlice, ut: &[Vec<f64>; 3], params: &GasParams) -> Result<[Vec<f64>; 4]> {
    vector_op(grid, bg, ut, params, l2_point)
}

/// Needs a curl, so at least two dimensions.
pub fn l3_good(grid: &Grid, bg: &BgSlice, ut: &[Vec<f64>; 3], params: &GasParams) -> Result<[Vec<f64>; 4]> {
    if grid.dim() < 2 {
        return Err(Error::GridDimTooLow);
    }
    vector_op(grid, bg, ut, params, l3_point)
}

/// `L₁ r̃` with every time derivative taken from the jets of `rt`.
pub fn l1_full(grid: &Grid, bg: &BgJets, rt: &[Jet], params: &GasParams) -> Result<Vec<f64>> {
    let gm1 = params.gamma - 1.0;
    let d1 = grid.grad(rt)?;
    let d2 = second_derivs(grid, rt)?;
    Ok((0..rt.len())
        .map(|n| {
            let p = &bg.p[n];
            let u = [p.u0().value(), p.u[0].value(), p.u[1].value(), p.u[2].value()];
            let pi = pi_upper(&u);
            let r = p.r.value();
            let big = gamma_of_entropy(p.s.value(), params) + r;
            let c = gm1 / big;
            let dr = [p.r.deriv().value(), bg.g[n].r[0].value(), bg.g[n].r[1].value(), bg.g[n].r[2].value()];
            let dt_rt = rt[n].deriv();
            // ∂_μ r̃ and ∂_μ∂_ν r̃, time slots from the jets
            let drt = [dt_rt.value(), d1[0][n].value(), d1[1][n].value(), d1[2][n].value()];
            let mut h = [[0.0; 4]; 4];
            h[0][0] = dt_rt.deriv().value();
            for i in 0..3 {
                h[0][i + 1] = d1[i][n].deriv().value();
                h[i + 1][0] = h[0][i + 1];
                for j in 0..3 {
                    h[i + 1][j + 1] = d2[i][j][n].value();
                }
            }
            let mut acc = 0.0;
            for m in 0..4 {
                for v in 0..4 {
                    acc += pi[m][v] * (r * h[m][v] + dr[m] * drt[v] / gm1);
                }
            }
            c * acc
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EllipticOpId {
    L1Full,
    /// `b = 0` is `L̃₁` itself.
    L1Good { b: f64 },
    L2Good,
    L3Good,
}

#[derive(Clone, Copy, Debug)]
pub enum FieldArg<'a> {
    Scalar(&'a [f64]),
    /// A scalar carried with its time jets.
    ScalarJets(&'a [Jet]),
    Vector(&'a [Vec<f64>; 3]),
}

/// Applies `op`; scalar results come back as a single component.
pub fn apply_elliptic(
    op: EllipticOpId,
    grid: &Grid,
    bg: &BgJets,
    field: FieldArg,
    params: &GasParams,
) -> Result<Vec<Vec<f64>>> {
    let wrong = |what: &str| Err(Error::WrongFieldKind(format!("{op:?} expects {what}")));
    match (op, field) {
        (EllipticOpId::L1Full, FieldArg::ScalarJets(rt)) => Ok(vec![l1_full(grid, bg, rt, params)?]),
        (EllipticOpId::L1Full, FieldArg::Scalar(_)) => Err(Error::MissingTimeDerivative(
            "the full operator needs time jets of the scalar".into(),
        )),
        (EllipticOpId::L1Full, _) => wrong("a scalar with time jets"),
        (EllipticOpId::L1Good { b }, FieldArg::Scalar(rt)) => Ok(vec![l1_good(grid, &bg.slice(), rt, b, params)?]),
        (EllipticOpId::L1Good { b }, FieldArg::ScalarJets(rt)) => {
            let v: Vec<f64> = rt.iter().map(|j| j.value()).collect();
            Ok(vec![l1_good(grid, &bg.slice(), &v, b, params)?])
        }
        (EllipticOpId::L1Good { .. }, _) => wrong("a scalar"),
        (EllipticOpId::L2Good, FieldArg::Vector(u)) => Ok(l2_good(grid, &bg.slice(), u, params)?.to_vec()),
        (EllipticOpId::L3Good, FieldArg::Vector(u)) => Ok(l3_good(grid, &bg.slice(), u, params)?.to_vec()),
        _ => wrong("a vector"),
    }
}
