use vel_core::thermo::GasParams;
use vel_core::verify::identities;

fn main() -> vel_core::Result<()> {
    for row in identities(1000, 7, 1e-12, &GasParams::new(2.0))? {
        println!("{:26} {:.3e} (tol {:.0e}) {}", row.name, row.max_residual, row.tolerance, row.pass);
    }
    Ok(())
}
