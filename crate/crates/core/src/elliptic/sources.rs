//! Sources of the twice-convected linearized system.
//!
//! Applying `D_t²` to `D_t r̃ + ũ^μ ∂_μ r + (γ-1) r ∂_μ ũ^μ = g` and
//! `D_t ũ^α + P^{αμ} ∂_μ r̃ = h^α`, `P = Π/(Γ+r)`, and keeping only the
//! top-order terms on the left leaves `B₂` and `C₂^α` on the right. All
//! commutators are evaluated from their definition on time jets.

use crate::dynamics::{dt_power, linear_sources, BgJets, JetField, LinJets};
use crate::error::{Error, Result};
use crate::geometry::pi_upper;
use crate::grid_norms::Grid;
use crate::jet::{Jet, Scalar, JET_LEN};
use crate::thermo::{gamma_of_entropy, GasParams};

#[derive(Clone, Debug)]
pub struct HigherSources {
    pub k: u32,
    pub b: Vec<f64>,
    pub c: [Vec<f64>; 4],
}

impl HigherSources {
    pub fn is_finite(&self) -> bool {
        self.b.iter().chain(self.c.iter().flatten()).all(|v| v.is_finite())
    }
}

#[derive(Clone, Debug)]
pub struct System6Residual {
    pub r: Vec<f64>,
    pub u: [Vec<f64>; 4],
}

impl System6Residual {
    pub fn max_abs(&self) -> f64 {
        self.r.iter().chain(self.u.iter().flatten()).fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn binom2(i: usize) -> f64 {
    [1.0, 2.0, 1.0][i]
}

/// `∂_μ φ`: `μ = 0` shifts the jets, spatial slots use the stencils.
fn partial(grid: &Grid, phi: &JetField, mu: usize) -> Result<JetField> {
    if mu == 0 {
        if phi.valid < 2 {
            return Err(Error::MissingTimeDerivative("∂_t of a field with one coefficient".into()));
        }
        return Ok(JetField { v: phi.v.iter().map(|j| j.deriv()).collect(), valid: phi.valid - 1 });
    }
    let n = phi.v.len();
    let v = if mu <= grid.dim() { grid.diff(&phi.v, mu - 1, 1)? } else { vec![Jet::default(); n] };
    Ok(JetField { v, valid: phi.valid })
}

/// `[D_t^n, ∂_μ] φ`.
fn commutator(grid: &Grid, bg: &BgJets, phi: &JetField, n: usize, mu: usize) -> Result<JetField> {
    let a = dt_power(grid, bg, &partial(grid, phi, mu)?, n)?;
    let b = partial(grid, &dt_power(grid, bg, phi, n)?, mu)?;
    Ok(JetField { v: a.v.iter().zip(&b.v).map(|(x, y)| *x - *y).collect(), valid: a.valid.min(b.valid) })
}

struct Fields {
    r: JetField,
    rt: JetField,
    ut: [JetField; 4],
    g: JetField,
    h: [JetField; 4],
    /// `P^{αμ}` per node
    p: Vec<[[Jet; 4]; 4]>,
}

fn fields(bg: &BgJets, lin: &LinJets, params: &GasParams) -> Fields {
    let n = bg.len();
    let four = lin.four_velocity(bg);
    let mut g = Vec::with_capacity(n);
    let mut h: [Vec<Jet>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
    let mut p = Vec::with_capacity(n);
    for i in 0..n {
        let (_, gi, hi) = linear_sources(&bg.p[i], &bg.g[i], &bg.dt(i), &lin.f.at(i), params);
        g.push(gi);
        for a in 0..4 {
            h[a].push(hi[a]);
        }
        let q = &bg.p[i];
        let u = [q.u0(), q.u[0], q.u[1], q.u[2]];
        let big = gamma_of_entropy(q.s, params) + q.r;
        p.push(pi_upper(&u).map(|row| row.map(|v| v / big)));
    }
    // sources use one time derivative of the background
    let src = |v: Vec<Jet>| JetField { v, valid: JET_LEN - 1 };
    Fields {
        r: JetField::new(bg.p.iter().map(|q| q.r).collect()),
        rt: JetField::new(lin.f.r.clone()),
        ut: std::array::from_fn(|a| JetField::new(four.iter().map(|u| u[a]).collect())),
        g: src(g),
        h: h.map(src),
        p,
    }
}

fn p_field(f: &Fields, a: usize, mu: usize) -> JetField {
    JetField::new(f.p.iter().map(|m| m[a][mu]).collect())
}

fn vals(f: &JetField) -> Vec<f64> {
    f.values()
}

/// `k = 0`: `(g, h^α)`. `k = 1`: `(B₂, C₂^α)`.
pub fn higher_sources(grid: &Grid, bg: &BgJets, lin: &LinJets, k: u32, params: &GasParams) -> Result<HigherSources> {
    let f = fields(bg, lin, params);
    let n = bg.len();
    match k {
        0 => Ok(HigherSources { k, b: vals(&f.g), c: std::array::from_fn(|a| vals(&f.h[a])) }),
        1 => {
            let gm1 = params.gamma - 1.0;
            let dt = |phi: &JetField, m: usize| dt_power(grid, bg, phi, m);
            let mut b = vals(&dt(&f.g, 2)?);
            for i in 0..2 {
                let dtu: Vec<JetField> = f.ut.iter().map(|u| dt(u, i)).collect::<Result<_>>()?;
                let dtr = dt(&f.r, 2 - i)?;
                for mu in 0..4 {
                    let a = partial(grid, &dtr, mu)?;
                    let cm = commutator(grid, bg, &f.r, 2 - i, mu)?;
                    let div = partial(grid, &dtu[mu], mu)?;
                    for x in 0..n {
                        b[x] -= binom2(i) * dtu[mu].v[x].value() * (a.v[x].value() + cm.v[x].value());
                        b[x] -= gm1 * binom2(i) * dtr.v[x].value() * div.v[x].value();
                    }
                }
            }
            for i in 1..=2 {
                let dtr = dt(&f.r, 2 - i)?;
                for mu in 0..4 {
                    let cm = commutator(grid, bg, &f.ut[mu], i, mu)?;
                    for x in 0..n {
                        b[x] -= gm1 * binom2(i) * dtr.v[x].value() * cm.v[x].value();
                    }
                }
            }

            let mut c: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; n]);
            for (a, ca) in c.iter_mut().enumerate() {
                *ca = vals(&dt(&f.h[a], 2)?);
                for mu in 0..4 {
                    let pf = p_field(&f, a, mu);
                    for j in 0..2 {
                        let dp = dt(&pf, 2 - j)?;
                        let d = partial(grid, &dt(&f.rt, j)?, mu)?;
                        for x in 0..n {
                            ca[x] -= binom2(j) * dp.v[x].value() * d.v[x].value();
                        }
                    }
                    for j in 1..=2 {
                        let dp = dt(&pf, 2 - j)?;
                        let cm = commutator(grid, bg, &f.rt, j, mu)?;
                        for x in 0..n {
                            ca[x] -= binom2(j) * dp.v[x].value() * cm.v[x].value();
                        }
                    }
                }
            }
            Ok(HigherSources { k, b, c })
        }
        _ => Err(Error::UnsupportedK(k)),
    }
}

/// Residuals of
/// `D_t(D_t² r̃) + D_t²ũ^μ ∂_μ r + (γ-1) r ∂_μ(D_t²ũ^μ) = B₂` and
/// `D_t(D_t² ũ^α) + P^{αμ} ∂_μ(D_t² r̃) = C₂^α`.
pub fn system6_residual(grid: &Grid, bg: &BgJets, lin: &LinJets, params: &GasParams) -> Result<System6Residual> {
    let src = higher_sources(grid, bg, lin, 1, params)?;
    let f = fields(bg, lin, params);
    let n = bg.len();
    let gm1 = params.gamma - 1.0;
    let dt = |phi: &JetField, m: usize| dt_power(grid, bg, phi, m);

    let mut r = vals(&dt(&f.rt, 3)?);
    let d2u: Vec<JetField> = f.ut.iter().map(|u| dt(u, 2)).collect::<Result<_>>()?;
    let d2rt = dt(&f.rt, 2)?;
    for mu in 0..4 {
        let dr = partial(grid, &f.r, mu)?;
        let div = partial(grid, &d2u[mu], mu)?;
        for x in 0..n {
            r[x] += d2u[mu].v[x].value() * dr.v[x].value() + gm1 * f.r.v[x].value() * div.v[x].value();
        }
    }
    for x in 0..n {
        r[x] -= src.b[x];
    }

    let mut u: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; n]);
    for (a, ua) in u.iter_mut().enumerate() {
        *ua = vals(&dt(&d2u[a], 1)?);
        for mu in 0..4 {
            let d = partial(grid, &d2rt, mu)?;
            for x in 0..n {
                ua[x] += f.p[x][a][mu].value() * d.v[x].value();
            }
        }
        for x in 0..n {
            ua[x] -= src.c[a][x];
        }
    }
    Ok(System6Residual { r, u })
}

