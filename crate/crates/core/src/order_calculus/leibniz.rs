//! Exact Leibniz algebra in one generic spatial direction.
//!
//! A monomial is `c · r^a · Π ∂^{j}r · Π atoms · slot`, where atoms are O(1)
//! background coefficients carrying the word of operators applied to them and
//! the slot is at most one linear factor `∂^d D_t^n φ`. Index contractions are
//! suppressed (`(∂u^ν)∂_ν φ` is written `(∂u)∂φ`), which is the convention the
//! schematic lemmas are stated in. The only commutator put in by hand is
//! `D_t ∂ψ = ∂ D_t ψ - (∂u) ∂ψ`; everything else follows from the product rule.

use std::collections::BTreeMap;
use std::fmt;

use super::term::{order_of, Order, Term, TermSum, VarKind};

/// Background coefficient with the operators applied to it, in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: &'static str,
    pub word: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Placeholder,
    Var(VarKind),
}

/// `∂^d D_t^dt base`. Variables are always kept at `dt = 0`: their convective
/// derivatives are eliminated through the linearized equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub base: Base,
    pub dt: u32,
    pub d: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub r: u32,
    pub dr: Vec<u32>,
    pub atoms: Vec<Atom>,
    pub slot: Option<Slot>,
}

impl Mono {
    fn normalize(mut self) -> Self {
        self.dr.sort_unstable();
        self.atoms.sort();
        self
    }

    fn mul(&self, o: &Mono) -> Mono {
        assert!(
            self.slot.is_none() || o.slot.is_none(),
            "product of two linear factors"
        );
        let mut dr = self.dr.clone();
        dr.extend_from_slice(&o.dr);
        let mut atoms = self.atoms.clone();
        atoms.extend(o.atoms.iter().cloned());
        Mono {
            r: self.r + o.r,
            dr,
            atoms,
            slot: self.slot.or(o.slot),
        }
        .normalize()
    }

    /// Schematic term of a variable slot.
    pub fn term(&self) -> Option<Term> {
        match self.slot {
            Some(Slot { base: Base::Var(v), d, .. }) => Some(Term::new(self.r, d, v)),
            _ => None,
        }
    }

    /// The monomial with its slot removed.
    pub fn coefficient(&self) -> Mono {
        Mono { slot: None, ..self.clone() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expr {
    pub terms: BTreeMap<Mono, i64>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn from_mono(m: Mono, c: i64) -> Self {
        let mut e = Expr::zero();
        e.add_mono(m.normalize(), c);
        e
    }

    pub fn one() -> Self {
        Expr::from_mono(Mono::default(), 1)
    }

    pub fn r() -> Self {
        Expr::from_mono(Mono { r: 1, ..Mono::default() }, 1)
    }

    /// `∂^j r` for `j ≥ 1`.
    pub fn dr(j: u32) -> Self {
        assert!(j >= 1);
        Expr::from_mono(Mono { dr: vec![j], ..Mono::default() }, 1)
    }

    pub fn atom(name: &'static str) -> Self {
        Expr::atom_word(name, "")
    }

    pub fn atom_word(name: &'static str, word: &str) -> Self {
        let a = Atom { name, word: word.to_string() };
        Expr::from_mono(Mono { atoms: vec![a], ..Mono::default() }, 1)
    }

    pub fn slot(base: Base, dt: u32, d: u32) -> Self {
        Expr::from_mono(Mono { slot: Some(Slot { base, dt, d }), ..Mono::default() }, 1)
    }

    pub fn var(v: VarKind) -> Self {
        Expr::slot(Base::Var(v), 0, 0)
    }

    pub fn phi() -> Self {
        Expr::slot(Base::Placeholder, 0, 0)
    }

    fn add_mono(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> Expr {
        let mut out = Expr::zero();
        for (m, v) in &self.terms {
            out.add_mono(m.clone(), v * c);
        }
        out
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_mono(m.clone(), *v);
        }
        out
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_mono(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Generic spatial derivative.
    pub fn partial(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, &c) in &self.terms {
            if m.r > 0 {
                let mut n = m.clone();
                n.r -= 1;
                n.dr.push(1);
                out.add_mono(n.normalize(), c * m.r as i64);
            }
            for i in 0..m.dr.len() {
                let mut n = m.clone();
                n.dr[i] += 1;
                out.add_mono(n.normalize(), c);
            }
            for i in 0..m.atoms.len() {
                let mut n = m.clone();
                n.atoms[i].word.push('d');
                out.add_mono(n.normalize(), c);
            }
            if let Some(s) = m.slot {
                let mut n = m.clone();
                n.slot = Some(Slot { d: s.d + 1, ..s });
                out.add_mono(n, c);
            }
        }
        out
    }

    pub fn partial_n(&self, n: u32) -> Expr {
        (0..n).fold(self.clone(), |e, _| e.partial())
    }

    /// Convective derivative `D_t = u^μ ∂_μ`.
    pub fn dt(&self) -> Expr {
        let mut out = Expr::zero();
        for (m, &c) in &self.terms {
            if m.r > 0 {
                // D_t r^a = a r^a θ with D_t r = r θ
                let n = m.mul(&Mono {
                    atoms: vec![Atom { name: "theta", word: String::new() }],
                    ..Mono::default()
                });
                out.add_mono(n, c * m.r as i64);
            }
            for i in 0..m.dr.len() {
                let mut rest = m.clone();
                let j = rest.dr.remove(i);
                out = out.add(&Expr::from_mono(rest, c).mul(&dt_dr(j)));
            }
            for i in 0..m.atoms.len() {
                let mut n = m.clone();
                n.atoms[i].word.push('t');
                out.add_mono(n.normalize(), c);
            }
            if let Some(s) = m.slot {
                let rest = m.coefficient();
                out = out.add(&Expr::from_mono(rest, c).mul(&dt_slot(s)));
            }
        }
        out
    }

    pub fn dt_n(&self, n: u32) -> Expr {
        (0..n).fold(self.clone(), |e, _| e.dt())
    }

    /// Schematic image: variable slots become terms, coefficients are dropped.
    pub fn schematic(&self) -> TermSum {
        let mut out = TermSum::default();
        for m in self.terms.keys() {
            if let Some(t) = m.term() {
                out.push(t, "leibniz");
            }
        }
        out
    }

    /// Minimum order over variable slots at level `k`.
    pub fn min_order(&self, k: u32) -> Option<Order> {
        self.terms.keys().filter_map(|m| m.term()).map(|t| order_of(&t, k)).min()
    }

    /// Collect monomials by slot, coefficients as slot-free expressions.
    pub fn by_slot(&self) -> BTreeMap<Option<Slot>, Expr> {
        let mut out: BTreeMap<Option<Slot>, Expr> = BTreeMap::new();
        for (m, &c) in &self.terms {
            out.entry(m.slot).or_default().add_mono(m.coefficient(), c);
        }
        out
    }
}

fn ud() -> Expr {
    Expr::atom_word("u", "d")
}

/// `D_t ∂^j r`.
fn dt_dr(j: u32) -> Expr {
    if j == 0 {
        return Expr::r().mul(&Expr::atom("theta"));
    }
    dt_dr(j - 1).partial().sub(&ud().mul(&Expr::dr(j)))
}

fn dt_slot(s: Slot) -> Expr {
    if s.d > 0 {
        let inner = Slot { d: s.d - 1, ..s };
        return dt_slot(inner)
            .partial()
            .sub(&ud().mul(&Expr::slot(s.base, s.dt, s.d)));
    }
    match s.base {
        Base::Placeholder => Expr::slot(Base::Placeholder, s.dt + 1, 0),
        Base::Var(v) => {
            debug_assert_eq!(s.dt, 0);
            linearized_rule(v)
        }
    }
}

/// Convective derivatives of the linearized unknowns, read off the linearized
/// system with its sources. `k` is `γ-1`, `p` is `Π/(Γ+r)`, `q*` are the
/// remaining `1/(Γ+r)`-type coefficients.
pub fn linearized_rule(v: VarKind) -> Expr {
    use VarKind::*;
    let s = Expr::var(EntropyLin);
    let r = Expr::var(SoundLin);
    let u = Expr::var(VelocityLin);
    match v {
        EntropyLin => Expr::atom_word("s", "d").mul(&u).scale(-1),
        SoundLin => Expr::dr(1)
            .mul(&u)
            .add(&Expr::atom("k").mul(&Expr::r()).mul(&u.partial()))
            .add(&Expr::atom("k").mul(&ud()).mul(&r))
            .scale(-1),
        VelocityLin => {
            let minus = Expr::atom("p")
                .mul(&r.partial())
                .add(&ud().mul(&u))
                .add(&Expr::atom("q1").mul(&Expr::r()).mul(&Expr::atom("theta")).mul(&u))
                .add(&Expr::atom("q1").mul(&Expr::dr(1)).mul(&u));
            let plus = Expr::atom("q2")
                .mul(&Expr::dr(1))
                .mul(&s)
                .add(&Expr::atom("q3").mul(&Expr::dr(1)).mul(&r));
            plus.sub(&minus)
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.name)
        } else {
            let w: String = self
                .word
                .chars()
                .map(|c| if c == 'd' { "∂" } else { "D_t" })
                .rev()
                .collect::<Vec<_>>()
                .join("");
            write!(f, "{}({})", w, self.name)
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.r > 0 {
            parts.push(if self.r == 1 { "r".to_string() } else { format!("r^{}", self.r) });
        }
        for j in &self.dr {
            parts.push(if *j == 1 { "∂r".to_string() } else { format!("∂^{j}r") });
        }
        for a in &self.atoms {
            parts.push(a.to_string());
        }
        if let Some(s) = self.slot {
            let b = match s.base {
                Base::Placeholder => "φ",
                Base::Var(v) => v.symbol(),
            };
            let mut txt = b.to_string();
            if s.dt > 0 {
                txt = format!("D_t^{}{}", s.dt, txt);
            }
            if s.d > 0 {
                txt = format!("∂^{}({})", s.d, txt);
            }
            parts.push(txt);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " ")?;
            }
            if c.abs() == 1 {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{}·{m}", c.abs())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorKind {
    /// `[∂, D_t^N] φ`
    PartialDtN,
    /// `[D_t, ∂^N] φ`
    DtPartialN,
}

/// One line of a commutator expansion: `coefficient · ∂^spatial D_t^convective φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTerm {
    pub coefficient: Expr,
    pub convective: u32,
    pub spatial: u32,
}

/// Exact expansion of the commutator lemmas over a placeholder `φ`.
pub fn commutator_expand(
    kind: CommutatorKind,
    n: u32,
) -> crate::Result<Vec<CommutatorTerm>> {
    if n == 0 {
        return Err(crate::Error::NonPositivePower);
    }
    let phi = Expr::phi();
    let e = match kind {
        CommutatorKind::PartialDtN => phi.dt_n(n).partial().sub(&phi.partial().dt_n(n)),
        CommutatorKind::DtPartialN => phi.partial_n(n).dt().sub(&phi.dt().partial_n(n)),
    };
    Ok(e.by_slot()
        .into_iter()
        .filter_map(|(slot, coefficient)| {
            slot.map(|s| CommutatorTerm { coefficient, convective: s.dt, spatial: s.d })
        })
        .collect())
}
