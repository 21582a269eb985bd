use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// s̃
    EntropyLin,
    /// r̃
    SoundLin,
    /// ũ
    VelocityLin,
}

impl VarKind {
    pub const ALL: [VarKind; 3] = [VarKind::EntropyLin, VarKind::SoundLin, VarKind::VelocityLin];

    pub fn symbol(self) -> &'static str {
        match self {
            VarKind::EntropyLin => "s~",
            VarKind::SoundLin => "r~",
            VarKind::VelocityLin => "u~",
        }
    }
}

/// `r^m ∂^l var`, O(1) coefficients erased.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub r_power: u32,
    pub deriv_count: u32,
    pub var: VarKind,
}

impl Term {
    pub fn new(m: u32, l: u32, var: VarKind) -> Self {
        Term { r_power: m, deriv_count: l, var }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r^{} d^{} {}", self.r_power, self.deriv_count, self.var.symbol())
    }
}

/// Half-integer order stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order {
    pub doubled: i64,
}

impl Order {
    pub fn from_doubled(doubled: i64) -> Self {
        Order { doubled }
    }

    pub fn from_int(v: i64) -> Self {
        Order { doubled: 2 * v }
    }

    pub fn half() -> Self {
        Order { doubled: 1 }
    }

    pub fn as_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

impl std::ops::Add for Order {
    type Output = Order;
    fn add(self, o: Order) -> Order {
        Order { doubled: self.doubled + o.doubled }
    }
}

impl std::ops::Sub for Order {
    type Output = Order;
    fn sub(self, o: Order) -> Order {
        Order { doubled: self.doubled - o.doubled }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Subcritical,
    Critical,
    Supercritical,
}

pub fn order_of(t: &Term, k: u32) -> Order {
    let base = 2 * (t.r_power as i64 - t.deriv_count as i64 + k as i64);
    match t.var {
        VarKind::SoundLin => Order::from_doubled(base),
        _ => Order::from_doubled(base - 1),
    }
}

pub fn classify(t: &Term, k: u32) -> Class {
    match order_of(t, k).doubled {
        d if d > 0 => Class::Subcritical,
        0 => Class::Critical,
        _ => Class::Supercritical,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    Estimable(Order),
    NotEstimable(Order),
}

impl ProductOrder {
    pub fn estimable(self) -> Option<Order> {
        match self {
            ProductOrder::Estimable(o) => Some(o),
            ProductOrder::NotEstimable(_) => None,
        }
    }
}

/// Order of a product, estimable against the squared norm iff the sum is non-negative.
pub fn product_order_of(a: Order, b: Order) -> ProductOrder {
    let s = a + b;
    if s.doubled >= 0 {
        ProductOrder::Estimable(s)
    } else {
        ProductOrder::NotEstimable(s)
    }
}

pub fn product_order(a: &Term, b: &Term, k: u32) -> ProductOrder {
    product_order_of(order_of(a, k), order_of(b, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub term: Term,
    pub origin: &'static str,
}

/// Multiset of schematic terms, duplicates kept with their origin.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermSum {
    pub items: Vec<Summand>,
}

impl TermSum {
    pub fn push(&mut self, term: Term, origin: &'static str) {
        self.items.push(Summand { term, origin });
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.items.iter().map(|s| &s.term)
    }

    pub fn min_order(&self, k: u32) -> Option<Order> {
        self.terms().map(|t| order_of(t, k)).min()
    }

    pub fn max_order(&self, k: u32) -> Option<Order> {
        self.terms().map(|t| order_of(t, k)).max()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms().any(|x| x == t)
    }

    pub fn extend(&mut self, other: TermSum) {
        self.items.extend(other.items);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    MulR,
    Partial,
    Dt,
    LevelShift(u32),
}

/// Action of one operation on a term, following the rewrite rules of the
/// order lemma. For `LevelShift` the set is unchanged and the caller
/// re-evaluates orders at the new level.
pub fn apply_op(op: Op, t: &Term, k: u32) -> Result<TermSum> {
    let mut out = TermSum::default();
    let Term { r_power: m, deriv_count: l, var } = *t;
    match op {
        Op::MulR => out.push(Term::new(m + 1, l, var), "r*T"),
        Op::Partial => {
            out.push(Term::new(m, l + 1, var), "r^m d^(l+1)");
            if m >= 1 {
                out.push(Term::new(m - 1, l, var), "m r^(m-1) (dr) d^l");
            }
        }
        Op::LevelShift(big_k) => {
            if big_k < k {
                return Err(Error::LevelShiftBelowCurrent { from: k, to: big_k });
            }
            out.push(*t, "level shift");
        }
        Op::Dt => dt_rewrite(t, &mut out),
    }
    Ok(out)
}

fn dt_rewrite(t: &Term, out: &mut TermSum) {
    use VarKind::*;
    let Term { r_power: m, deriv_count: l, var } = *t;
    // D_t r^m = m r^(m-1) D_t r ≃ m r^m
    if m >= 1 {
        out.push(Term::new(m, l, var), "m r^(m-1) (D_t r) d^l");
    }
    match var {
        SoundLin => {
            // D_t r~ ≃ r d u~ + u~
            out.push(Term::new(m + 1, l + 1, VelocityLin), "r^m d^l (r d u~)");
            out.push(Term::new(m, l, VelocityLin), "r^m d^l u~");
            if l >= 1 {
                out.push(Term::new(m, l, VelocityLin), "r^m (d r) d^l u~");
            }
            for i in 0..l {
                out.push(Term::new(m, i + 1, SoundLin), "r^m [D_t, d^l] r~");
            }
        }
        VelocityLin => {
            // D_t u~ ≃ d r~ + u~ + s~
            out.push(Term::new(m, l + 1, SoundLin), "r^m d^l (d r~)");
            out.push(Term::new(m, l, VelocityLin), "r^m d^l u~");
            out.push(Term::new(m, l, EntropyLin), "r^m d^l s~");
            for i in 0..l {
                out.push(Term::new(m, i + 1, VelocityLin), "r^m [D_t, d^l] u~");
            }
        }
        EntropyLin => {
            // D_t s~ ≃ u~
            out.push(Term::new(m, l, VelocityLin), "r^m d^l u~");
            for i in 0..l {
                out.push(Term::new(m, i + 1, EntropyLin), "r^m [D_t, d^l] s~");
            }
        }
    }
}

/// Schematic expansion of `D_t^i var` from the book-keeping lemma.
pub fn dt_power_expand(var: VarKind, i: u32) -> Result<TermSum> {
    use VarKind::*;
    if i == 0 {
        return Err(Error::NonPositivePower);
    }
    let mut out = TermSum::default();
    match var {
        EntropyLin => {
            if i == 1 {
                out.push(Term::new(0, 0, VelocityLin), "D_t s~ ≃ u~");
            } else {
                out = dt_power_expand(VelocityLin, i - 1)?;
            }
        }
        SoundLin => {
            if i % 2 == 0 {
                for l in 0..=i / 2 {
                    out.push(Term::new(l, l + i / 2, SoundLin), "even r~ family");
                }
            } else {
                for l in 0..=(i + 1) / 2 {
                    out.push(Term::new(l, l + (i - 1) / 2, VelocityLin), "odd u~ family");
                }
            }
        }
        VelocityLin => {
            if i % 2 == 0 {
                for l in 0..=i / 2 {
                    out.push(Term::new(l, l + i / 2, VelocityLin), "even u~ family");
                }
                for j in 0..i / 2 {
                    out.push(Term::new(j, j + i / 2, SoundLin), "even r~ family");
                }
            } else {
                for l in 0..=(i - 1) / 2 {
                    out.push(Term::new(l, l + (i + 1) / 2, SoundLin), "odd r~ family");
                    out.push(Term::new(l, l + (i - 1) / 2, VelocityLin), "odd u~ family");
                    out.push(Term::new(l, l + (i - 1) / 2, EntropyLin), "odd s~ family");
                }
            }
        }
    }
    Ok(out)
}

/// Level at which the lemma's families are read off: `⌈i/2⌉`.
pub fn natural_level(i: u32) -> u32 {
    i.div_ceil(2)
}

/// Worst order the lemma allows for `D_t^i var` at level `⌈i/2⌉`: the order of
/// the bare variable there, lowered by one half per convective derivative.
pub fn dt_power_claimed_min(var: VarKind, i: u32) -> Order {
    let k = natural_level(i);
    order_of(&Term::new(0, 0, var), k) - Order::from_doubled(i as i64)
}
