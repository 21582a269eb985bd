//! Runs every shipped scenario and prints its monitor flags.

use vel_core::verify::{run_scenario, Scenario, ScenarioId};

fn main() -> vel_core::Result<()> {
    for (id, n) in [
        (ScenarioId::ConstantState, 128),
        (ScenarioId::StaticRestFrame, 64),
        (ScenarioId::Manufactured1d, 64),
        (ScenarioId::Slab2d, 24),
    ] {
        let rep = run_scenario(&Scenario::preset(id, n))?;
        println!("{} ({} samples)", id.name(), rep.rows.len());
        for f in &rep.flags {
            println!("  {:18} {:5} {}", f.name, f.pass, f.detail);
        }
    }
    Ok(())
}
