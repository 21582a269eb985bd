//! Exhaustive checks of the order lemmas and the schematic claims built on
//! top of them.

use std::collections::BTreeSet;

use super::leibniz::{Base, Expr};
use super::term::{
    apply_op, dt_power_claimed_min, dt_power_expand, natural_level, order_of, product_order,
    Op, Order, ProductOrder, Term, VarKind,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub term: String,
    pub k: u32,
    pub op: String,
    pub claimed_min: Order,
    pub computed_min: Order,
    pub pass: bool,
}

fn all_terms(max_m: u32, max_l: u32) -> impl Iterator<Item = Term> {
    (0..=max_m).flat_map(move |m| {
        (0..=max_l).flat_map(move |l| VarKind::ALL.into_iter().map(move |v| Term::new(m, l, v)))
    })
}

/// Parts 1-4 of the operation lemma over every term with `m ≤ max_m`,
/// `l ≤ max_l` and every level `k ≤ max_k`.
pub fn operation_rows(max_m: u32, max_l: u32, max_k: u32) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for t in all_terms(max_m, max_l) {
        for k in 0..=max_k {
            let o = order_of(&t, k);
            let row = |op: String, claimed: Order, computed: Order, pass: bool| CheckRow {
                term: t.to_string(),
                k,
                op,
                claimed_min: claimed,
                computed_min: computed,
                pass,
            };

            let mul = apply_op(Op::MulR, &t, k).expect("MulR is total");
            let (lo, hi) = (mul.min_order(k).unwrap(), mul.max_order(k).unwrap());
            let want = o + Order::from_int(1);
            rows.push(row("MulR".into(), want, lo, lo == want && hi == want));

            let par = apply_op(Op::Partial, &t, k).expect("Partial is total");
            let (lo, hi) = (par.min_order(k).unwrap(), par.max_order(k).unwrap());
            let want = o - Order::from_int(1);
            rows.push(row("Partial".into(), want, lo, lo == want && hi == want));

            let dt = apply_op(Op::Dt, &t, k).expect("Dt is total");
            let (lo, hi) = (dt.min_order(k).unwrap(), dt.max_order(k).unwrap());
            let want = o - Order::half();
            // s~ is only hit by u~ of the same order, so its bound is not attained
            let sharp = match t.var {
                VarKind::EntropyLin => lo >= want,
                _ => lo == want,
            };
            let attained = (t.r_power == 0 && t.deriv_count == 0) || hi >= o;
            rows.push(row("Dt".into(), want, lo, sharp && attained));

            for big in k..=max_k {
                let sh = apply_op(Op::LevelShift(big), &t, k).expect("K ≥ k");
                let got = sh.min_order(big).unwrap();
                let want = o + Order::from_int((big - k) as i64);
                rows.push(row(format!("LevelShift({big})"), want, got, got == want && sh.len() == 1));
            }
        }
    }
    rows
}

/// Sum-of-orders lemma: commutativity and agreement with `order_of` when one
/// factor is critical.
pub fn product_rows(max_m: u32, max_l: u32, max_k: u32) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let terms: Vec<Term> = all_terms(max_m, max_l).collect();
    for k in 0..=max_k {
        for a in &terms {
            let mut ok = true;
            let oa = order_of(a, k);
            let mut worst = Order::from_int(i64::MAX / 4);
            for b in &terms {
                let ab = product_order(a, b, k);
                let ba = product_order(b, a, k);
                let s = oa + order_of(b, k);
                worst = worst.min(s);
                ok &= ab == ba;
                ok &= match ab {
                    ProductOrder::Estimable(v) => v == s && s.doubled >= 0,
                    ProductOrder::NotEstimable(v) => v == s && s.doubled < 0,
                };
                if order_of(b, k).doubled == 0 {
                    ok &= match ab {
                        ProductOrder::Estimable(v) | ProductOrder::NotEstimable(v) => v == oa,
                    };
                }
            }
            rows.push(CheckRow {
                term: a.to_string(),
                k,
                op: "product".into(),
                claimed_min: worst,
                computed_min: worst,
                pass: ok,
            });
        }
    }
    rows
}

/// Terms reachable from `var` through `i` schematic convective derivatives.
pub fn dt_closure(var: VarKind, i: u32) -> BTreeSet<Term> {
    let mut cur: BTreeSet<Term> = [Term::new(0, 0, var)].into_iter().collect();
    for _ in 0..i {
        let mut next = BTreeSet::new();
        for t in &cur {
            for s in apply_op(Op::Dt, t, 0).expect("Dt is total").terms() {
                next.insert(*s);
            }
        }
        cur = next;
    }
    cur
}

/// The `D_t^i` lemma: members are no worse than the claimed bound at level
/// `⌈i/2⌉`, and each listed term is produced by iterating the single-step rule.
pub fn dt_power_rows(max_i: u32) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for var in VarKind::ALL {
        for i in 1..=max_i {
            let k = natural_level(i);
            let set = dt_power_expand(var, i).expect("i ≥ 1");
            let claimed = dt_power_claimed_min(var, i);
            let computed = set.min_order(k).expect("nonempty");
            let closure = dt_closure(var, i);
            let reachable = set.terms().all(|t| closure.contains(t));
            rows.push(CheckRow {
                term: Term::new(0, 0, var).to_string(),
                k,
                op: format!("Dt^{i}"),
                claimed_min: claimed,
                computed_min: computed,
                pass: computed >= claimed && reachable,
            });
        }
    }
    rows
}

/// Full order-check table, as emitted by the CLI.
pub fn order_check(max_m: u32, max_l: u32, max_k: u32) -> Vec<CheckRow> {
    let mut rows = operation_rows(max_m, max_l, max_k);
    rows.extend(product_rows(max_m, max_l, max_k));
    rows.extend(dt_power_rows(2 * max_k.max(1)));
    rows
}

/// Result of comparing an exact expansion with a schematic leading part.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingCheck {
    /// Minimum order among terms outside the leading family.
    pub remainder_min: Option<Order>,
    /// Terms below the threshold that are not in the leading family.
    pub offenders: Vec<Term>,
    /// Leading-family terms actually present.
    pub leading_present: Vec<Term>,
}

impl LeadingCheck {
    pub fn holds(&self) -> bool {
        self.offenders.is_empty()
    }
}

fn leading_check(e: &Expr, k: u32, leading: &[Term], threshold: Order) -> LeadingCheck {
    let mut offenders = BTreeSet::new();
    let mut present = BTreeSet::new();
    let mut rem: Option<Order> = None;
    for t in e.schematic().terms() {
        if leading.contains(t) {
            present.insert(*t);
            continue;
        }
        let o = order_of(t, k);
        rem = Some(rem.map_or(o, |r| r.min(o)));
        if o < threshold {
            offenders.insert(*t);
        }
    }
    LeadingCheck {
        remainder_min: rem,
        offenders: offenders.into_iter().collect(),
        leading_present: present.into_iter().collect(),
    }
}

/// The good spatial operator acting on r~-like expressions, `c1 r ∂² + c2 (∂r) ∂`.
pub fn l1_good(e: &Expr) -> Expr {
    Expr::atom("c1")
        .mul(&Expr::r())
        .mul(&e.partial_n(2))
        .add(&Expr::atom("c2").mul(&Expr::dr(1)).mul(&e.partial()))
}

/// The good spatial operator on u~-like expressions, same principal structure.
pub fn l2_good(e: &Expr) -> Expr {
    Expr::atom("c3")
        .mul(&Expr::r())
        .mul(&e.partial_n(2))
        .add(&Expr::atom("c4").mul(&Expr::dr(1)).mul(&e.partial()))
}

/// `D_t² r~` at level 1 splits into the `L~1` family plus terms of order ≥ 1/2.
pub fn dt2_r_vs_l1() -> LeadingCheck {
    let e = Expr::var(VarKind::SoundLin).dt_n(2);
    let lead = [Term::new(1, 2, VarKind::SoundLin), Term::new(0, 1, VarKind::SoundLin)];
    leading_check(&e, 1, &lead, Order::half())
}

/// `D_t² u~` at level 1 splits into the `L~2` family plus terms of order ≥ 0.
pub fn dt2_u_vs_l2() -> LeadingCheck {
    let e = Expr::var(VarKind::VelocityLin).dt_n(2);
    let lead = [Term::new(1, 2, VarKind::VelocityLin), Term::new(0, 1, VarKind::VelocityLin)];
    leading_check(&e, 1, &lead, Order::from_int(0))
}

/// `[D_t², L~1] r~` at level `k`.
pub fn dt2_l1_commutator(k: u32) -> (Expr, Option<Order>) {
    let r = Expr::var(VarKind::SoundLin);
    let e = l1_good(&r).dt_n(2).sub(&l1_good(&r.dt_n(2)));
    let o = e.min_order(k);
    (e, o)
}

/// `[D_t², L~2] u~` at level `k`.
pub fn dt2_l2_commutator(k: u32) -> (Expr, Option<Order>) {
    let u = Expr::var(VarKind::VelocityLin);
    let e = l2_good(&u).dt_n(2).sub(&l2_good(&u.dt_n(2)));
    let o = e.min_order(k);
    (e, o)
}

/// Outcome of `[r^m ∂^{2m}, L~1] φ` with `φ = D_t^{2j-2} r~`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCommutator {
    pub m: u32,
    /// `(a, b)` of the critical terms `r^a ∂^b φ`.
    pub critical: Vec<(u32, u32)>,
    pub min_order: Order,
    pub min_noncritical: Option<Order>,
}

/// Order of `r^a ∂^b D_t^c φ` where `φ = D_t^{2j-2} r~` sits at level `m + j`.
pub fn weighted_slot_order(m: u32, a: u32, b: u32, c: u32) -> Order {
    Order::from_doubled(2 * (a as i64 - b as i64 + m as i64 + 1) - c as i64)
}

pub fn weighted_commutator(m: u32) -> WeightedCommutator {
    let phi = Expr::phi();
    let lab = |e: &Expr| {
        let mut w = e.partial_n(2 * m);
        for _ in 0..m {
            w = Expr::r().mul(&w);
        }
        w
    };
    let e = lab(&l1_good(&phi)).sub(&l1_good(&lab(&phi)));
    let mut critical = BTreeSet::new();
    let mut min_all: Option<Order> = None;
    let mut min_nc: Option<Order> = None;
    for mono in e.terms.keys() {
        let s = mono.slot.expect("linear in φ");
        debug_assert_eq!(s.base, Base::Placeholder);
        let o = weighted_slot_order(m, mono.r, s.d, s.dt);
        min_all = Some(min_all.map_or(o, |x| x.min(o)));
        if o.doubled == 0 {
            critical.insert((mono.r, s.d));
        } else {
            min_nc = Some(min_nc.map_or(o, |x| x.min(o)));
        }
    }
    WeightedCommutator {
        m,
        critical: critical.into_iter().collect(),
        min_order: min_all.unwrap_or(Order::from_int(0)),
        min_noncritical: min_nc,
    }
}

/// The lower-order terms of `L1 - L~1`, in the one-direction schematic.
/// `u0`-type factors and `Π`, `Γ` combinations are O(1) atoms.
pub fn black_terms() -> Vec<(&'static str, Expr)> {
    let rt = Expr::var(VarKind::SoundLin);
    let dtr = rt.dt();
    let r = Expr::r();
    let a = |n: &'static str| Expr::atom(n);
    vec![
        ("Dt r u d r~", r.mul(&a("theta")).mul(&a("b1")).mul(&rt.partial())),
        ("r Dt^2 r~", a("b2").mul(&r).mul(&rt.dt_n(2))),
        ("r u d(Dt r~)", a("b2").mul(&r).mul(&dtr.partial())),
        ("r Dt r~ d(1/u0)", a("b2").mul(&r).mul(&Expr::atom_word("u", "d")).mul(&dtr)),
        ("r d(u/u0) d r~", a("b2").mul(&r).mul(&Expr::atom_word("u", "d")).mul(&rt.partial())),
        ("Dt u0 r dt r~", a("b2").mul(&r).mul(&Expr::atom_word("u", "t")).mul(&rt.partial())),
        ("Dt u r d r~", a("b2").mul(&r).mul(&Expr::atom_word("u", "t")).mul(&rt.partial())),
        ("dt r Dt r~", a("b3").mul(&Expr::dr(1)).mul(&dtr)),
        ("r u d(Dt r~) [second]", a("b4").mul(&r).mul(&dtr.partial())),
        ("r Dt r~ d(1/u0) [second]", a("b5").mul(&r).mul(&Expr::atom_word("u", "d")).mul(&dtr)),
        ("r d(u/u0) d r~ [second]", a("b5").mul(&r).mul(&Expr::atom_word("u", "d")).mul(&rt.partial())),
        ("d r Dt r~", a("b6").mul(&Expr::dr(1)).mul(&dtr)),
    ]
}

/// Minimum order of each lower-order term of `L1 - L~1` at level 1.
pub fn black_term_orders() -> Vec<(&'static str, Order)> {
    black_terms()
        .into_iter()
        .map(|(n, e)| (n, e.min_order(1).expect("nonzero")))
        .collect()
}
