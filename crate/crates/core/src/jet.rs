//! Truncated Taylor series in one variable and the scalar abstraction the
//! pointwise formulas are written against.
//!
//! A [`Jet`] holds `c[n]` with `f(t0 + τ) = Σ c[n] τ^n`. Time derivatives of
//! gridded fields are carried this way, so `∂_t` is a coefficient shift and
//! spatial stencils act coefficient by coefficient.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub const JET_LEN: usize = 6;

/// Arithmetic needed by the pointwise physics. Implemented for `f64` and [`Jet`].
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign<f64>
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, a: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }
    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
    fn square(self) -> Self {
        self * self
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn powf(self, a: f64) -> Self {
        f64::powf(self, a)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet(pub [f64; JET_LEN]);

impl Default for Jet {
    fn default() -> Self {
        Jet([0.0; JET_LEN])
    }
}

impl Jet {
    /// The independent variable expanded around `t0`.
    pub fn var(t0: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = t0;
        c[1] = 1.0;
        Jet(c)
    }

    /// Derivative in the expansion variable, losing the top coefficient.
    pub fn deriv(&self) -> Self {
        let mut c = [0.0; JET_LEN];
        for n in 0..JET_LEN - 1 {
            c[n] = (n + 1) as f64 * self.0[n + 1];
        }
        Jet(c)
    }

    /// n-th derivative at the expansion point.
    pub fn derivative(&self, n: usize) -> f64 {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        self.0[n] * fact
    }

    /// Evaluate the truncated series at offset `tau`.
    pub fn eval(&self, tau: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * tau + c)
    }

    /// Keep only coefficients below `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let mut c = self.0;
        for v in c.iter_mut().skip(n) {
            *v = 0.0;
        }
        Jet(c)
    }

    fn sin_cos(self) -> (Jet, Jet) {
        let x = &self.0;
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = x[0].sin();
        c[0] = x[0].cos();
        for n in 1..JET_LEN {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for k in 1..=n {
                ds += k as f64 * x[k] * c[n - k];
                dc -= k as f64 * x[k] * s[n - k];
            }
            s[n] = ds / n as f64;
            c[n] = dc / n as f64;
        }
        (Jet(s), Jet(c))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for a in self.0.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for i in 0..JET_LEN {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..JET_LEN - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, b: Jet) -> Jet {
        let mut q = [0.0; JET_LEN];
        let b0 = b.0[0];
        for n in 0..JET_LEN {
            let mut acc = self.0[n];
            for k in 1..=n {
                acc -= b.0[k] * q[n - k];
            }
            q[n] = acc / b0;
        }
        Jet(q)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, o: f64) -> Jet {
        self.0[0] += o;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, o: f64) -> Jet {
        self.0[0] -= o;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, o: f64) -> Jet {
        for a in self.0.iter_mut() {
            *a *= o;
        }
        self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, o: f64) -> Jet {
        self * (1.0 / o)
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}

impl MulAssign<f64> for Jet {
    fn mul_assign(&mut self, o: f64) {
        *self = *self * o;
    }
}

impl Scalar for Jet {
    fn cst(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet(c)
    }

    fn value(&self) -> f64 {
        self.0[0]
    }

    fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    fn exp(self) -> Self {
        let x = &self.0;
        let mut y = [0.0; JET_LEN];
        y[0] = x[0].exp();
        for n in 1..JET_LEN {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += k as f64 * x[k] * y[n - k];
            }
            y[n] = acc / n as f64;
        }
        Jet(y)
    }

    fn ln(self) -> Self {
        let x = &self.0;
        let mut y = [0.0; JET_LEN];
        y[0] = x[0].ln();
        for n in 1..JET_LEN {
            let mut acc = n as f64 * x[n];
            for k in 1..n {
                acc -= k as f64 * y[k] * x[n - k];
            }
            y[n] = acc / (n as f64 * x[0]);
        }
        Jet(y)
    }

    // y = x^a satisfies x y' = a x' y.
    fn powf(self, a: f64) -> Self {
        let x = &self.0;
        let mut y = [0.0; JET_LEN];
        y[0] = x[0].powf(a);
        for n in 1..JET_LEN {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += (a * k as f64 - (n - k) as f64) * x[k] * y[n - k];
            }
            y[n] = acc / (n as f64 * x[0]);
        }
        Jet(y)
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }
}

/// Evaluate `f` at `t0` and return its Taylor jet there.
pub fn taylor<F: Fn(Jet) -> Jet>(f: F, t0: f64) -> Jet {
    f(Jet::var(t0))
}

/// A time [`Jet`] together with its first derivatives in `x` and `y`, so that
/// analytic fields give exact spatial gradients as Taylor series in time.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct XJet {
    pub v: Jet,
    pub dx: Jet,
    pub dy: Jet,
}

impl XJet {
    pub fn time(t0: f64) -> Self {
        XJet { v: Jet::var(t0), ..Default::default() }
    }

    pub fn x(x0: f64) -> Self {
        XJet { v: Jet::cst(x0), dx: Jet::cst(1.0), dy: Jet::default() }
    }

    pub fn y(y0: f64) -> Self {
        XJet { v: Jet::cst(y0), dx: Jet::default(), dy: Jet::cst(1.0) }
    }

    /// Chain rule with outer derivative `d` evaluated at `self.v`.
    fn chain(self, v: Jet, d: Jet) -> Self {
        XJet { v, dx: d * self.dx, dy: d * self.dy }
    }
}

impl Add for XJet {
    type Output = XJet;
    fn add(self, o: XJet) -> XJet {
        XJet { v: self.v + o.v, dx: self.dx + o.dx, dy: self.dy + o.dy }
    }
}

impl Sub for XJet {
    type Output = XJet;
    fn sub(self, o: XJet) -> XJet {
        XJet { v: self.v - o.v, dx: self.dx - o.dx, dy: self.dy - o.dy }
    }
}

impl Neg for XJet {
    type Output = XJet;
    fn neg(self) -> XJet {
        XJet { v: -self.v, dx: -self.dx, dy: -self.dy }
    }
}

impl Mul for XJet {
    type Output = XJet;
    fn mul(self, o: XJet) -> XJet {
        XJet {
            v: self.v * o.v,
            dx: self.dx * o.v + self.v * o.dx,
            dy: self.dy * o.v + self.v * o.dy,
        }
    }
}

impl Div for XJet {
    type Output = XJet;
    fn div(self, o: XJet) -> XJet {
        let q = self.v / o.v;
        XJet { v: q, dx: (self.dx - q * o.dx) / o.v, dy: (self.dy - q * o.dy) / o.v }
    }
}

impl Add<f64> for XJet {
    type Output = XJet;
    fn add(mut self, o: f64) -> XJet {
        self.v = self.v + o;
        self
    }
}

impl Sub<f64> for XJet {
    type Output = XJet;
    fn sub(mut self, o: f64) -> XJet {
        self.v = self.v - o;
        self
    }
}

impl Mul<f64> for XJet {
    type Output = XJet;
    fn mul(self, o: f64) -> XJet {
        XJet { v: self.v * o, dx: self.dx * o, dy: self.dy * o }
    }
}

impl Div<f64> for XJet {
    type Output = XJet;
    fn div(self, o: f64) -> XJet {
        self * (1.0 / o)
    }
}

impl AddAssign for XJet {
    fn add_assign(&mut self, o: XJet) {
        *self = *self + o;
    }
}

impl SubAssign for XJet {
    fn sub_assign(&mut self, o: XJet) {
        *self = *self - o;
    }
}

impl MulAssign<f64> for XJet {
    fn mul_assign(&mut self, o: f64) {
        *self = *self * o;
    }
}

impl Scalar for XJet {
    fn cst(v: f64) -> Self {
        XJet { v: Jet::cst(v), ..Default::default() }
    }
    fn value(&self) -> f64 {
        self.v.value()
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, s.recip() * 0.5)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.v.ln(), self.v.recip())
    }
    fn powf(self, a: f64) -> Self {
        self.chain(self.v.powf(a), self.v.powf(a - 1.0) * a)
    }
    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }
}
