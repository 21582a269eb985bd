//! Refinement studies for every residual the lab tracks.

use vel_core::thermo::GasParams;
use vel_core::verify::{convergence_study, write_csv, ConvergenceTest};

fn main() -> vel_core::Result<()> {
    let params = GasParams::new(2.0);
    for test in ConvergenceTest::ALL {
        let rep = convergence_study(test, 3, &params)?;
        write_csv(std::io::stdout(), &rep.table())?;
        println!("# {} fitted {:.3} pass {}\n", test.name(), rep.fitted, rep.pass);
    }
    Ok(())
}
