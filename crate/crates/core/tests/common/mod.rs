#![allow(dead_code)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vel_core::dynamics::{Prim, PrimGrad};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// State with `0 < r ≤ 0.3`, `|u^j| ≤ 1` and O(1) gradients.
pub fn random_point(g: &mut ChaCha8Rng) -> (Prim<f64>, PrimGrad<f64>) {
    let mut v = |a: f64, b: f64| g.gen_range(a..b);
    let p = Prim { s: v(-1.0, 1.0), r: v(0.01, 0.3), u: [v(-1.0, 1.0), v(-1.0, 1.0), v(-1.0, 1.0)] };
    let mut d = PrimGrad::zero();
    for i in 0..3 {
        d.s[i] = v(-1.0, 1.0);
        d.r[i] = v(-1.0, 1.0);
        for j in 0..3 {
            d.u[j][i] = v(-1.0, 1.0);
        }
    }
    (p, d)
}

pub fn random_prim(g: &mut ChaCha8Rng, scale: f64) -> Prim<f64> {
    let mut v = || g.gen_range(-scale..scale);
    Prim { s: v(), r: v(), u: [v(), v(), v()] }
}

pub fn random_grad(g: &mut ChaCha8Rng) -> PrimGrad<f64> {
    let mut d = PrimGrad::zero();
    for i in 0..3 {
        d.s[i] = g.gen_range(-1.0..1.0);
        d.r[i] = g.gen_range(-1.0..1.0);
        for j in 0..3 {
            d.u[j][i] = g.gen_range(-1.0..1.0);
        }
    }
    d
}

pub fn max_diff(a: &Prim<f64>, b: &Prim<f64>) -> f64 {
    let d = [a.s - b.s, a.r - b.r, a.u[0] - b.u[0], a.u[1] - b.u[1], a.u[2] - b.u[2]];
    d.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}
