use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jet::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    Periodic,
    /// Nodes include both endpoints, where the gas may meet vacuum.
    Bounded,
}

/// One coordinate direction, mapped from a uniform parameter `ξ ∈ [0, 1]`.
///
/// On bounded axes `x = L (ξ - c sin(2πξ)/(2π))` with `c = 1 - 1/p`, which
/// shrinks the spacing at both ends by the grading factor `p` and keeps the
/// map smooth, so stencils in `ξ` retain their order.
#[derive(Clone, Debug)]
pub struct Axis {
    pub kind: AxisKind,
    pub n: usize,
    pub len: f64,
    pub grading: f64,
    pub xi: Vec<f64>,
    pub x: Vec<f64>,
    /// `dx/dξ`
    pub jac: Vec<f64>,
    /// `d²x/dξ²`
    pub djac: Vec<f64>,
    pub h: f64,
}

impl Axis {
    pub fn periodic(n: usize, len: f64) -> Self {
        let h = 1.0 / n as f64;
        let xi: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        Axis {
            kind: AxisKind::Periodic,
            n,
            len,
            grading: 1.0,
            x: xi.iter().map(|s| s * len).collect(),
            jac: vec![len; n],
            djac: vec![0.0; n],
            xi,
            h,
        }
    }

    pub fn bounded(n: usize, len: f64, grading: f64) -> Self {
        assert!(grading >= 1.0, "grading factor must be at least 1");
        let h = 1.0 / (n - 1) as f64;
        let c = 1.0 - 1.0 / grading;
        let xi: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let x = xi
            .iter()
            .map(|&s| len * (s - c * (2.0 * PI * s).sin() / (2.0 * PI)))
            .collect();
        let jac = xi.iter().map(|&s| len * (1.0 - c * (2.0 * PI * s).cos())).collect();
        let djac = xi.iter().map(|&s| len * c * 2.0 * PI * (2.0 * PI * s).sin()).collect();
        Axis { kind: AxisKind::Bounded, n, len, grading, xi, x, jac, djac, h }
    }

    /// Physical coordinate of the parameter value `ξ`.
    pub fn map(&self, s: f64) -> f64 {
        match self.kind {
            AxisKind::Periodic => self.len * s,
            AxisKind::Bounded => {
                let c = 1.0 - 1.0 / self.grading;
                self.len * (s - c * (2.0 * PI * s).sin() / (2.0 * PI))
            }
        }
    }

    pub fn jacobian(&self, s: f64) -> f64 {
        match self.kind {
            AxisKind::Periodic => self.len,
            AxisKind::Bounded => {
                let c = 1.0 - 1.0 / self.grading;
                self.len * (1.0 - c * (2.0 * PI * s).cos())
            }
        }
    }

    /// Smallest physical spacing.
    pub fn min_spacing(&self) -> f64 {
        match self.kind {
            AxisKind::Periodic => self.len / self.n as f64,
            AxisKind::Bounded => self.x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min),
        }
    }

    /// `d/dξ` along one line, fourth order.
    fn dxi<T: Scalar>(&self, f: &[T], out: &mut [T]) {
        let n = self.n;
        let s = 1.0 / (12.0 * self.h);
        match self.kind {
            AxisKind::Periodic => {
                for i in 0..n {
                    let at = |o: isize| f[((i as isize + o).rem_euclid(n as isize)) as usize];
                    out[i] = (at(-2) - at(-1) * 8.0 + at(1) * 8.0 - at(2)) * s;
                }
            }
            AxisKind::Bounded => {
                for i in 2..n - 2 {
                    out[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * s;
                }
                out[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * s;
                out[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * s;
                let m = n - 1;
                out[m] = (f[m] * 25.0 - f[m - 1] * 48.0 + f[m - 2] * 36.0 - f[m - 3] * 16.0
                    + f[m - 4] * 3.0)
                    * s;
                out[m - 1] = (f[m] * 3.0 + f[m - 1] * 10.0 - f[m - 2] * 18.0 + f[m - 3] * 6.0
                    - f[m - 4])
                    * s;
            }
        }
    }

    /// `d²/dξ²` along one line, fourth order.
    fn dxi2<T: Scalar>(&self, f: &[T], out: &mut [T]) {
        let n = self.n;
        let s = 1.0 / (12.0 * self.h * self.h);
        match self.kind {
            AxisKind::Periodic => {
                for i in 0..n {
                    let at = |o: isize| f[((i as isize + o).rem_euclid(n as isize)) as usize];
                    out[i] = (-at(-2) + at(-1) * 16.0 - at(0) * 30.0 + at(1) * 16.0 - at(2)) * s;
                }
            }
            AxisKind::Bounded => {
                for i in 2..n - 2 {
                    out[i] = (-f[i - 2] + f[i - 1] * 16.0 - f[i] * 30.0 + f[i + 1] * 16.0 - f[i + 2]) * s;
                }
                let one_sided = |g: &dyn Fn(usize) -> T| -> (T, T) {
                    (
                        (g(0) * 45.0 - g(1) * 154.0 + g(2) * 214.0 - g(3) * 156.0 + g(4) * 61.0
                            - g(5) * 10.0)
                            * s,
                        (g(0) * 10.0 - g(1) * 15.0 - g(2) * 4.0 + g(3) * 14.0 - g(4) * 6.0 + g(5)) * s,
                    )
                };
                let (a, b) = one_sided(&|k| f[k]);
                out[0] = a;
                out[1] = b;
                let m = n - 1;
                let (a, b) = one_sided(&|k| f[m - k]);
                out[m] = a;
                out[m - 1] = b;
            }
        }
    }

    fn line_diff<T: Scalar>(&self, f: &[T], order: usize) -> Vec<T> {
        let n = self.n;
        let mut a = vec![T::zero(); n];
        let mut b = vec![T::zero(); n];
        match order {
            0 => f.to_vec(),
            1 => {
                self.dxi(f, &mut a);
                (0..n).map(|i| a[i] / self.jac[i]).collect()
            }
            2 => {
                self.dxi(f, &mut a);
                self.dxi2(f, &mut b);
                (0..n)
                    .map(|i| {
                        let j = self.jac[i];
                        (b[i] - a[i] * (self.djac[i] / j)) / (j * j)
                    })
                    .collect()
            }
            3 => self.line_diff(&self.line_diff(f, 2), 1),
            _ => self.line_diff(&self.line_diff(f, order - 2), 2),
        }
    }
}

/// Tensor-product mesh in one or two dimensions. Node `(ix, iy)` is stored at
/// `ix * ny + iy`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub axes: Vec<Axis>,
}

pub const MIN_NODES: usize = 8;

impl Grid {
    /// `[0, len]` with vacuum possible at both ends.
    pub fn interval(n: usize, len: f64, grading: f64) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::ResolutionTooLow(format!("{n} nodes, need {MIN_NODES}")));
        }
        Ok(Grid { axes: vec![Axis::bounded(n, len, grading)] })
    }

    pub fn periodic(n: usize, len: f64) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::ResolutionTooLow(format!("{n} nodes, need {MIN_NODES}")));
        }
        Ok(Grid { axes: vec![Axis::periodic(n, len)] })
    }

    /// Periodic in `x`, bounded in `y` with the boundary at `y = 0` and `y = ly`.
    pub fn slab(nx: usize, lx: f64, ny: usize, ly: f64, grading: f64) -> Result<Self> {
        if nx < MIN_NODES || ny < MIN_NODES {
            return Err(Error::ResolutionTooLow(format!("{nx}x{ny} nodes, need {MIN_NODES}")));
        }
        Ok(Grid { axes: vec![Axis::periodic(nx, lx), Axis::bounded(ny, ly, grading)] })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ny(&self) -> usize {
        if self.dim() == 2 {
            self.axes[1].n
        } else {
            1
        }
    }

    /// Physical coordinates `(x, y)` of node `i` (`y = 0` in one dimension).
    pub fn coords(&self, i: usize) -> (f64, f64) {
        if self.dim() == 1 {
            (self.axes[0].x[i], 0.0)
        } else {
            let ny = self.axes[1].n;
            (self.axes[0].x[i / ny], self.axes[1].x[i % ny])
        }
    }

    pub fn min_spacing(&self) -> f64 {
        self.axes.iter().map(|a| a.min_spacing()).fold(f64::INFINITY, f64::min)
    }

    /// Same geometry with every axis refined by `factor` in node spacing.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let axes = self
            .axes
            .iter()
            .map(|a| match a.kind {
                AxisKind::Periodic => Axis::periodic(a.n * factor, a.len),
                AxisKind::Bounded => Axis::bounded((a.n - 1) * factor + 1, a.len, a.grading),
            })
            .collect();
        Ok(Grid { axes })
    }

    pub fn map_nodes<F: Fn(f64, f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let (x, y) = self.coords(i);
                f(x, y)
            })
            .collect()
    }

    /// Derivative of order ≤ 4 along `axis` (0 = x, 1 = y).
    pub fn diff<T: Scalar>(&self, f: &[T], axis: usize, order: usize) -> Result<Vec<T>> {
        if axis >= self.dim() {
            return Err(Error::GridDimTooLow);
        }
        if order > 4 {
            return Err(Error::ResolutionTooLow(format!("derivative order {order} above 4")));
        }
        let ax = &self.axes[axis];
        if ax.n < MIN_NODES {
            return Err(Error::ResolutionTooLow(format!("{} nodes", ax.n)));
        }
        if self.dim() == 1 {
            return Ok(ax.line_diff(f, order));
        }
        let (nx, ny) = (self.axes[0].n, self.axes[1].n);
        let mut out = vec![T::zero(); f.len()];
        if axis == 1 {
            for ix in 0..nx {
                let line = &f[ix * ny..(ix + 1) * ny];
                out[ix * ny..(ix + 1) * ny].copy_from_slice(&ax.line_diff(line, order));
            }
        } else {
            let mut line = vec![T::zero(); nx];
            for iy in 0..ny {
                for ix in 0..nx {
                    line[ix] = f[ix * ny + iy];
                }
                for (ix, v) in ax.line_diff(&line, order).into_iter().enumerate() {
                    out[ix * ny + iy] = v;
                }
            }
        }
        Ok(out)
    }

    /// Spatial gradient with three slots; slots beyond the grid dimension are zero.
    pub fn grad<T: Scalar>(&self, f: &[T]) -> Result<[Vec<T>; 3]> {
        let z = vec![T::zero(); f.len()];
        let gx = self.diff(f, 0, 1)?;
        let gy = if self.dim() == 2 { self.diff(f, 1, 1)? } else { z.clone() };
        Ok([gx, gy, z])
    }

    /// `∂_x^a ∂_y^b f`.
    pub fn mixed<T: Scalar>(&self, f: &[T], a: usize, b: usize) -> Result<Vec<T>> {
        let mut g = if a > 0 { self.diff(f, 0, a)? } else { f.to_vec() };
        if b > 0 {
            g = self.diff(&g, 1, b)?;
        }
        Ok(g)
    }

    /// Multi-indices `(a, b)` with `a + b = order` available on this grid.
    pub fn multi_indices(&self, order: usize) -> Vec<(usize, usize)> {
        if self.dim() == 1 {
            vec![(order, 0)]
        } else {
            (0..=order).map(|b| (order - b, b)).collect()
        }
    }
}
