//! Exact free groups: unitarity, the group law, and the Gaussian closed form.

use num_complex::Complex64;
use skdv::{apply_group, group_law_defect, Dispersion, Field, Grid1D};

fn main() -> skdv::Result<()> {
    let grid = Grid1D::new(1024, 100.0)?;
    let f = Field::from_fn(&grid, |x| Complex64::from_polar((-(x / 3.0).powi(2)).exp(), 0.7 * x));

    for kind in [Dispersion::Schrodinger, Dispersion::FifthOrder] {
        let g = apply_group(kind, &f, 0.37)?;
        println!(
            "{:<12} |U(t)f| - |f| = {:.2e}   group law defect = {:.2e}",
            kind.name(),
            (g.l2_norm() - f.l2_norm()).abs(),
            group_law_defect(kind, &f, 0.2, -0.45)?
        );
    }

    // e^{it d_xx} e^{-x^2} = (1 + 4it)^{-1/2} exp(-x^2 / (1 + 4it))
    let t = 0.8;
    let gauss = Field::from_real_fn(&grid, |x| (-x * x).exp());
    let evolved = apply_group(Dispersion::Schrodinger, &gauss, t)?.into_physical();
    let z = Complex64::new(1.0, 4.0 * t);
    let err = grid
        .positions()
        .iter()
        .zip(evolved.values())
        .map(|(&x, &w)| (w - (-x * x / z).exp() / z.sqrt()).norm())
        .fold(0.0, f64::max);
    println!("gaussian closed form at t = {t}: max error {err:.2e}");
    Ok(())
}
