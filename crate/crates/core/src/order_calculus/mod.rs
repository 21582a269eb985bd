//! Book-keeping of free-boundary terms `r^m ∂^l (s~ | r~ | u~)` by their
//! `H^{2k}` order, and an exact product-rule engine for the commutators the
//! higher-order estimates rest on.

pub mod certify;
pub mod leibniz;
mod term;

pub use leibniz::{commutator_expand, CommutatorKind, CommutatorTerm, Expr};
pub use term::{
    apply_op, classify, dt_power_claimed_min, dt_power_expand, natural_level, order_of,
    product_order, product_order_of, Class, Op, Order, ProductOrder, Summand, Term, TermSum,
    VarKind,
};
