use vel_core::thermo::GasParams;
use vel_core::verify::{elliptic_study, EllipticFamily};

fn main() -> vel_core::Result<()> {
    let params = GasParams::new(2.0);
    for op in [EllipticFamily::L1, EllipticFamily::L2L3] {
        for k in [0, 1] {
            let rep = elliptic_study(op, 50, k, 3, &params)?;
            println!(
                "{op:?} k={k}: C = {:.4} (refined {:.4}), drift {:.3}, stable {}",
                rep.constant, rep.constant_refined, rep.drift, rep.stable
            );
        }
    }
    Ok(())
}
