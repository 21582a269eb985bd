use vel_core::grid_norms::{weighted_sobolev_norm, Grid, NormSpec};

// ‖x^p‖ in H^{0,σ} on [0,1] with r = x is (1/(2p+2σ+1))^{1/2}.
fn main() -> vel_core::Result<()> {
    for n in [17, 33, 65, 129] {
        let grid = Grid::interval(n, 1.0, 2.0)?;
        let r = grid.map_nodes(|x, _| x);
        let f = grid.map_nodes(|x, _| x * x);
        let got = weighted_sobolev_norm(&grid, &f, NormSpec::new(0, 0.25), &r)?;
        let exact = (1.0_f64 / 5.5).sqrt();
        println!("n = {n:4}  norm = {got:.12}  err = {:.3e}", (got - exact).abs());
    }
    Ok(())
}
