//! Integration of `r^σ F` where `r` may vanish simply at the ends of bounded
//! axes.
//!
//! On a bounded axis the integrand is written as `ξ^p g(ξ)` near a degenerate
//! end, with `g = (r/ξ)^p F x'(ξ)` smooth. `g` is interpolated by cubics on
//! the four nearest nodes of each cell and integrated against the exact
//! weight: analytically on the cell touching the end, by Gauss-Legendre
//! elsewhere. Each end owns its half of the axis.

use super::grid::{Axis, AxisKind, Grid};

const GL_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Sum with a fixed binary tree, independent of how the work is split.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Cubic Lagrange basis on nodes 0..3 evaluated at `s`.
fn lagrange4(s: f64) -> [f64; 4] {
    let mut l = [1.0; 4];
    for (k, lk) in l.iter_mut().enumerate() {
        for m in 0..4 {
            if m != k {
                *lk *= (s - m as f64) / (k as f64 - m as f64);
            }
        }
    }
    l
}

/// Monomial coefficients of the cubic Lagrange basis on nodes 0..3.
fn lagrange4_coeffs() -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (k, row) in out.iter_mut().enumerate() {
        let mut poly = vec![1.0];
        let mut denom = 1.0;
        for m in 0..4 {
            if m == k {
                continue;
            }
            let mut next = vec![0.0; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * m as f64;
            }
            poly = next;
            denom *= k as f64 - m as f64;
        }
        for i in 0..4 {
            row[i] = poly[i] / denom;
        }
    }
    out
}

/// `∫₀¹ s^p L_k(s) ds` for the four basis functions.
fn end_moments(p: f64) -> [f64; 4] {
    let c = lagrange4_coeffs();
    let mut out = [0.0; 4];
    for k in 0..4 {
        out[k] = (0..4).map(|q| c[k][q] / (p + q as f64 + 1.0)).sum();
    }
    out
}

/// Weights `(left, right)` with `∫₀¹ w(ξ) G(ξ) dξ ≈ Σ left_j G^L_j + Σ right_j G^R_j`,
/// where `w = ξ^{p0}` on the left half and `(1-ξ)^{p1}` on the right half.
fn bounded_weights(ax: &Axis, p0: f64, p1: f64) -> (Vec<f64>, Vec<f64>) {
    let n = ax.n;
    let h = ax.h;
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    for i in 0..n - 1 {
        let mid = (i as f64 + 0.5) * h;
        let on_left = mid < 0.5;
        let (p, w) = if on_left { (p0, &mut left) } else { (p1, &mut right) };
        if on_left && i == 0 && p != 0.0 {
            let mom = end_moments(p);
            for k in 0..4 {
                w[k] += h.powf(p + 1.0) * mom[k];
            }
            continue;
        }
        if !on_left && i == n - 2 && p != 0.0 {
            let mom = end_moments(p);
            for k in 0..4 {
                w[n - 1 - k] += h.powf(p + 1.0) * mom[k];
            }
            continue;
        }
        let j0 = (i as isize - 1).clamp(0, n as isize - 4) as usize;
        for (gx, gw) in GL_X.iter().zip(GL_W) {
            let xi = (i as f64 + 0.5 + 0.5 * gx) * h;
            let weight = if p == 0.0 {
                1.0
            } else if on_left {
                xi.powf(p)
            } else {
                (1.0 - xi).powf(p)
            };
            let l = lagrange4(xi / h - j0 as f64);
            for k in 0..4 {
                w[j0 + k] += 0.5 * h * gw * weight * l[k];
            }
        }
    }
    (left, right)
}

fn is_vacuum(r: f64, scale: f64) -> bool {
    r.abs() <= 1e-12 * scale.max(1e-300)
}

/// `∫ r^σ F dx` along one bounded axis.
fn bounded_line(ax: &Axis, r: Option<&[f64]>, sigma: f64, f: &[f64]) -> f64 {
    let n = ax.n;
    let (p0, p1) = match r {
        Some(r) if sigma != 0.0 => {
            let scale = r.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
            (
                if is_vacuum(r[0], scale) { sigma } else { 0.0 },
                if is_vacuum(r[n - 1], scale) { sigma } else { 0.0 },
            )
        }
        _ => (0.0, 0.0),
    };
    let (wl, wr) = bounded_weights(ax, p0, p1);
    let slope = |r: &[f64], k: &dyn Fn(usize) -> usize| {
        (-25.0 * r[k(0)] + 48.0 * r[k(1)] - 36.0 * r[k(2)] + 16.0 * r[k(3)] - 3.0 * r[k(4)])
            / (12.0 * ax.h)
    };
    let mut terms = Vec::with_capacity(2 * n);
    for i in 0..n {
        let base = f[i] * ax.jac[i];
        let pw = |v: f64, p: f64| if p == 0.0 { 1.0 } else { v.max(0.0).powf(p) };
        let (gl, gr) = match r {
            None => (base, base),
            Some(r) => {
                let gl = if p0 == 0.0 {
                    pw(r[i], sigma) * base
                } else if i == 0 {
                    pw(slope(r, &|k| k), p0) * base
                } else {
                    pw(r[i] / ax.xi[i], p0) * base
                };
                let gr = if p1 == 0.0 {
                    pw(r[i], sigma) * base
                } else if i == n - 1 {
                    pw(slope(r, &|k| n - 1 - k), p1) * base
                } else {
                    pw(r[i] / (1.0 - ax.xi[i]), p1) * base
                };
                (gl, gr)
            }
        };
        if wl[i] != 0.0 {
            terms.push(wl[i] * gl);
        }
        if wr[i] != 0.0 {
            terms.push(wr[i] * gr);
        }
    }
    pairwise_sum(&terms)
}

fn periodic_line(ax: &Axis, r: Option<&[f64]>, sigma: f64, f: &[f64]) -> f64 {
    let w = ax.len / ax.n as f64;
    let terms: Vec<f64> = (0..ax.n)
        .map(|i| {
            let wr = match r {
                Some(r) if sigma != 0.0 => r[i].max(0.0).powf(sigma),
                _ => 1.0,
            };
            w * wr * f[i]
        })
        .collect();
    pairwise_sum(&terms)
}

fn line(ax: &Axis, r: Option<&[f64]>, sigma: f64, f: &[f64]) -> f64 {
    match ax.kind {
        AxisKind::Periodic => periodic_line(ax, r, sigma, f),
        AxisKind::Bounded => bounded_line(ax, r, sigma, f),
    }
}

impl Grid {
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.integrate_inner(None, 0.0, f)
    }

    /// `∫ r^σ f`, with `σ > -1` allowed where `r` vanishes simply at an end.
    pub fn integrate_weighted(&self, r: &[f64], sigma: f64, f: &[f64]) -> f64 {
        self.integrate_inner(Some(r), sigma, f)
    }

    fn integrate_inner(&self, r: Option<&[f64]>, sigma: f64, f: &[f64]) -> f64 {
        if self.dim() == 1 {
            return line(&self.axes[0], r, sigma, f);
        }
        let (ax, ay) = (&self.axes[0], &self.axes[1]);
        let ny = ay.n;
        let per_line: Vec<f64> = (0..ax.n)
            .map(|ix| {
                let rng = ix * ny..(ix + 1) * ny;
                line(ay, r.map(|r| &r[rng.clone()]), sigma, &f[rng])
            })
            .collect();
        let w = ax.len / ax.n as f64;
        w * pairwise_sum(&per_line)
    }
}
