//! Equation of state and the velocity tensors at one point.

use vel_core::geometry::{complete_velocity, gbb, tensor_pack};
use vel_core::thermo::{point_from_pr, sound_speed_sq, GasParams, PressureOrR};

fn main() -> vel_core::Result<()> {
    let params = GasParams::new(2.0);
    for r in [0.0, 0.05, 0.1, 0.3] {
        let p = point_from_pr(PressureOrR::R(r), 0.0, &params)?;
        println!(
            "r = {r:.2}  p = {:.4e}  eps = {:.4e}  h = {:.4}  c_s^2 = {:.4}",
            p.p,
            p.eps,
            p.h,
            sound_speed_sq(r, 0.0, &params)
        );
    }

    let u = complete_velocity([0.6, -0.2, 0.1])?;
    let pack = tensor_pack(&u)?;
    let m = gbb(&pack);
    println!("u = {:?}", u.u);
    println!("G B B vs H, first row: {:?} / {:?}", m[0], pack.h[0]);
    Ok(())
}
