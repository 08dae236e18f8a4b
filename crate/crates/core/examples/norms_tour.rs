//! Sobolev, Hölder, spectral-tail and Bourgain-space diagnostics.

use skdv::initial_data::{bump_eta, make_kink};
use skdv::norms::{bourgain_norm, default_window, holder_estimate, sobolev_norm, tail_regularity, SpaceTimeField};
use skdv::{apply_group, Dispersion, Field, Grid1D};

fn main() -> skdv::Result<()> {
    let grid = Grid1D::new(4096, 640.0)?;
    let kink = make_kink(&grid)?;
    for s in [0.0, 1.0, 1.4, 1.6] {
        println!("|kink|_H^{s} = {:.6}", sobolev_norm(&kink, s));
    }

    let w = default_window(&kink);
    for alpha in [0.5, 1.0] {
        let h = holder_estimate(&kink, 1, alpha, w)?;
        println!(
            "C^(1,{alpha}) quotient {:.4} at x = {:.4} (lag {})",
            h.value, h.argmax_x, h.lag
        );
    }

    let kmax = grid.max_abs_frequency();
    let fit = tail_regularity(&kink, kmax / 8.0, kmax / 2.0)?;
    println!(
        "kink spectral tail: slope {:.3}, regularity proxy {:.3}",
        fit.slope, fit.proxy
    );

    let small = Grid1D::new(256, 64.0)?;
    let bump = Field::from_real_fn(&small, |x| (-x * x / 4.0).exp());
    let w = SpaceTimeField::from_fn(&small, -0.32, 0.01, 64, Dispersion::Schrodinger, |t| {
        Ok(apply_group(Dispersion::Schrodinger, &bump, t)?.scaled_real(bump_eta(t / 0.3)))
    })?;
    for b in [0.0, 0.5] {
        println!(
            "X^(1,{b}) norm of a cut-off free solution: {:.6}",
            bourgain_norm(&w, 1.0, b)?
        );
    }
    Ok(())
}
