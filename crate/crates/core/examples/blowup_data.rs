//! Builds the focusing data: the chirped `u0` and the kink series `v0`.

use skdv::harness::boundary_ratio;
use skdv::initial_data::{make_kink, make_u0, make_v0, BlowupParams};
use skdv::norms::sobolev_norm;
use skdv::Grid1D;

fn main() -> skdv::Result<()> {
    let params = BlowupParams {
        theta: 0.625,
        ..Default::default()
    };
    println!("focusing time t* = {}", params.t_star());
    println!("series truncation tail = {:.3e}", params.truncation_tail());

    for n in [2048, 4096, 8192] {
        let grid = Grid1D::new(n, 640.0)?;
        let u0 = make_u0(&params, &grid)?;
        let v0 = make_v0(&params, &grid)?;
        let kink = make_kink(&grid)?;
        println!(
            "N = {n:5}  |u0|_H1.9 = {:.5}  |u0|_H2.1 = {:.5}  |v0|_L2 = {:.5}  |kink|_H1 = {:.4}  u0 edge ratio = {:.1e}",
            sobolev_norm(&u0, 1.9),
            sobolev_norm(&u0, 2.1),
            v0.l2_norm(),
            sobolev_norm(&kink, 1.0),
            boundary_ratio(&u0),
        );
    }
    Ok(())
}
