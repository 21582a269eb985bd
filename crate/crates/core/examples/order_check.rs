//! Runs the symbolic order calculus and prints the orders of the remainder
//! terms in the `L₁` splitting.

use vel_core::order_calculus::certify::{black_term_orders, order_check};

fn main() {
    let rows = order_check(6, 6, 4);
    let failing: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    println!("{} rows checked, {} failing", rows.len(), failing.len());
    for r in failing.iter().take(10) {
        println!("  {} k={} {} claimed {} got {}", r.term, r.k, r.op, r.claimed_min, r.computed_min);
    }
    for (name, o) in black_term_orders() {
        println!("{name}: order {o}");
    }
}
