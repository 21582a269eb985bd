use vel_core::verify::phase_speed;

fn main() -> vel_core::Result<()> {
    for gamma in [1.5, 2.0, 2.5] {
        let p = phase_speed(gamma, 128, 1.0)?;
        println!("gamma {gamma}: measured {:.8} exact {:.8} rel err {:.2e}", p.measured, p.exact, p.rel_err);
    }
    Ok(())
}
