//! Seeded families of smooth test fields.

use crate::dynamics::LinearizedState;
use crate::grid_norms::{AxisKind, Grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

/// Number of leading monomial members `z^p`, `p = 1..=6`.
pub const MONOMIALS: usize = 6;

fn rng(seed: u64, member: usize, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (member as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream << 48)
}

/// Coordinate normal to the vacuum boundary, scaled to `[0, 1]`.
fn normal(grid: &Grid, x: f64, y: f64) -> f64 {
    let a = grid.axes.last().expect("grid has an axis");
    let z = if grid.dim() == 2 { y } else { x };
    z / a.len
}

/// Member `m` of the scalar family: `z^{m+1}` for the first six, then random
/// low-mode combinations.
pub fn scalar(grid: &Grid, member: usize, seed: u64) -> Vec<f64> {
    scalar_stream(grid, member, seed, 0)
}

fn scalar_stream(grid: &Grid, member: usize, seed: u64, stream: u64) -> Vec<f64> {
    let periodic_1d = grid.dim() == 1 && grid.axes[0].kind == AxisKind::Periodic;
    if member < MONOMIALS && !periodic_1d {
        let p = member as i32 + 1;
        return grid.map_nodes(|x, y| normal(grid, x, y).powi(p));
    }
    let mut g = rng(seed, member, stream);
    let a: Vec<f64> = (0..5).map(|_| g.gen_range(-1.0..1.0)).collect();
    let b: Vec<f64> = (0..4).map(|_| g.gen_range(-1.0..1.0)).collect();
    let shift = g.gen_range(0.0..1.0);
    let two_d = grid.dim() == 2;
    grid.map_nodes(|x, y| {
        if periodic_1d {
            let th = TAU * x / grid.axes[0].len;
            return a[0] + a[1] * th.sin() + a[2] * th.cos() + a[3] * (2.0 * th + shift).sin() * 0.5;
        }
        let z = normal(grid, x, y);
        let mut v: f64 = a.iter().enumerate().map(|(m, c)| c * (m as f64 * PI * (z + 0.1 * shift)).cos()).sum();
        if two_d {
            let th = TAU * x / grid.axes[0].len;
            v += (b[0] * th.sin() + b[1] * th.cos()) * (1.0 + b[2] * z) + 0.5 * b[3] * (2.0 * th).cos() * z * z;
        }
        v
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Independent random components.
    Mixed,
    /// Only `s̃` is nonzero.
    PureEntropy,
}

/// A linearized state built from independent scalar members, scaled by
/// `amplitude`. Velocity components beyond the grid dimension stay zero.
pub fn state(grid: &Grid, member: usize, seed: u64, amplitude: f64, kind: FamilyKind) -> LinearizedState {
    let n = grid.len();
    let mut lin = LinearizedState::zeros(n, 0.0);
    let scale = |v: Vec<f64>| v.into_iter().map(|x| x * amplitude).collect::<Vec<f64>>();
    lin.s = scale(scalar_stream(grid, member, seed, 1));
    if kind == FamilyKind::PureEntropy {
        return lin;
    }
    lin.r = scale(scalar_stream(grid, member, seed, 2));
    for j in 0..grid.dim() {
        lin.u[j] = scale(scalar_stream(grid, member, seed, 3 + j as u64));
    }
    lin
}
