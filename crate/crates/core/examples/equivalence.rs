//! Range of `E²/‖·‖²` over random families on each bounded scenario.

use vel_core::thermo::GasParams;
use vel_core::verify::{equivalence_study, FamilyKind, ScenarioId};

fn main() -> vel_core::Result<()> {
    let params = GasParams::new(2.0);
    for (id, n) in [(ScenarioId::StaticRestFrame, 64), (ScenarioId::Manufactured1d, 64), (ScenarioId::Slab2d, 24)] {
        for kind in [FamilyKind::Mixed, FamilyKind::PureEntropy] {
            let r = equivalence_study(id, n, 50, 5, kind, &params)?;
            println!(
                "{:18} {kind:?}: [{:.4}, {:.4}] refined [{:.4}, {:.4}] stable {}",
                id.name(),
                r.min,
                r.max,
                r.min_refined,
                r.max_refined,
                r.stable
            );
        }
    }
    Ok(())
}
