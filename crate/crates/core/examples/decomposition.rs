//! Splits `L₁ r̃` into the good operator and the six remainder terms on the
//! manufactured 1-D background and prints the size of each piece.

use vel_core::dynamics::{Background, BgJets, LinJets};
use vel_core::elliptic::{decompose, BlackList, BLACK_TERM_NAMES};
use vel_core::grid_norms::Grid;
use vel_core::thermo::GasParams;
use vel_core::verify::{family_state, FamilyKind};

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn main() -> vel_core::Result<()> {
    let params = GasParams::new(2.0);
    let bg = Background::Manufactured1D { s0: 0.0 };
    for n in [33, 65, 129] {
        let grid = Grid::interval(n, 1.0, 2.0)?;
        let bj = BgJets::analytic(&bg, &grid, 0.3);
        let lin = family_state(&grid, 7, 1, 1.0, FamilyKind::Mixed);
        let lj = LinJets::solve(&grid, &bj, &lin, &params)?;
        for list in [BlackList::Corrected, BlackList::Verbatim] {
            let d = decompose(&grid, &bj, &lj.f.r, list, &params)?;
            print!("n = {n:4} {list:?}: |L1| = {:.3e} residual = {:.3e} |", sup(&d.full), sup(&d.residual));
            for (name, b) in BLACK_TERM_NAMES.iter().zip(&d.black) {
                print!(" {name} {:.2e}", sup(b));
            }
            println!();
        }
    }
    Ok(())
}
