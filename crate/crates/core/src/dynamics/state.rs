use crate::geometry::{lin_u0, u0_of};
use crate::jet::Scalar;

/// `(s, r, u^1, u^2, u^3)` at one point; also used for the linearized triple
/// and for time derivatives of either.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Prim<T> {
    pub s: T,
    pub r: T,
    pub u: [T; 3],
}

impl<T: Scalar> Prim<T> {
    pub fn zero() -> Self {
        Prim { s: T::zero(), r: T::zero(), u: [T::zero(); 3] }
    }

    pub fn u0(&self) -> T {
        u0_of(&self.u)
    }

    pub fn map<S, F: Fn(T) -> S>(&self, f: F) -> Prim<S> {
        Prim { s: f(self.s), r: f(self.r), u: [f(self.u[0]), f(self.u[1]), f(self.u[2])] }
    }
}

/// Spatial gradients: `s[i] = ∂_i s`, `u[j][i] = ∂_i u^j`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PrimGrad<T> {
    pub s: [T; 3],
    pub r: [T; 3],
    pub u: [[T; 3]; 3],
}

impl<T: Scalar> PrimGrad<T> {
    pub fn zero() -> Self {
        let z = [T::zero(); 3];
        PrimGrad { s: z, r: z, u: [z; 3] }
    }
}

/// Gridded `(s, r, u^i)`. Used for the background and, with the same layout,
/// for linearized states, forcing and time derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSet<T = f64> {
    pub t: f64,
    pub s: Vec<T>,
    pub r: Vec<T>,
    pub u: [Vec<T>; 3],
}

pub type BackgroundState = FieldSet<f64>;
pub type LinearizedState = FieldSet<f64>;
pub type Forcing = FieldSet<f64>;

impl<T: Scalar> FieldSet<T> {
    pub fn zeros(n: usize, t: f64) -> Self {
        let z = vec![T::zero(); n];
        FieldSet { t, s: z.clone(), r: z.clone(), u: [z.clone(), z.clone(), z] }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn at(&self, i: usize) -> Prim<T> {
        Prim { s: self.s[i], r: self.r[i], u: [self.u[0][i], self.u[1][i], self.u[2][i]] }
    }

    pub fn set(&mut self, i: usize, p: Prim<T>) {
        self.s[i] = p.s;
        self.r[i] = p.r;
        for j in 0..3 {
            self.u[j][i] = p.u[j];
        }
    }

    pub fn from_fn<F: Fn(usize) -> Prim<T>>(n: usize, t: f64, f: F) -> Self {
        let mut out = Self::zeros(n, t);
        for i in 0..n {
            out.set(i, f(i));
        }
        out
    }

    pub fn components(&self) -> [&Vec<T>; 5] {
        [&self.s, &self.r, &self.u[0], &self.u[1], &self.u[2]]
    }

    pub fn components_mut(&mut self) -> [&mut Vec<T>; 5] {
        let [u0, u1, u2] = &mut self.u;
        [&mut self.s, &mut self.r, u0, u1, u2]
    }

    /// `self + c · o`, time taken from `self`.
    pub fn axpy(&self, c: f64, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.components_mut().into_iter().zip(o.components()) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += *y * c;
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for a in out.components_mut() {
            for x in a.iter_mut() {
                *x *= c;
            }
        }
        out
    }
}

impl FieldSet<f64> {
    /// `u^0` at every node.
    pub fn u0(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.at(i).u0()).collect()
    }

    /// `ũ^0 = u_j ũ^j / u^0` of a linearized state against this background.
    pub fn lin_u0_against(&self, bg: &BackgroundState) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let b = bg.at(i);
                lin_u0(b.u0(), &b.u, &self.at(i).u)
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.iter().all(|v| v.is_finite()))
    }
}
