//! Integrates the coupled system with the Picard iteration and with Strang
//! splitting and compares the two.

use num_complex::Complex64;
use skdv::solver::{picard_solve, splitstep_evolve, sup_relative_difference, DuhamelRule, PicardOptions, SystemParams};
use skdv::{Field, Grid1D};

fn main() -> skdv::Result<()> {
    let grid = Grid1D::new(1024, 200.0)?;
    let u0 = Field::from_fn(&grid, |x| Complex64::from_polar((-(x / 4.0).powi(2)).exp(), 0.5 * x));
    let v0 = Field::from_real_fn(&grid, |x| 0.5 * (-(x / 5.0).powi(2)).exp());
    let params = SystemParams::new(1.0, 1.0, 1.0)?;
    let (t, dt) = (0.04, 1e-4);

    let opts = PicardOptions {
        rule: DuhamelRule::Trapezoid,
        ..Default::default()
    };
    let picard = picard_solve(&u0, &v0, &params, t, dt, &opts)?;
    let split = splitstep_evolve(&u0, &v0, &params, t, dt)?;

    println!("picard sweeps: {}", picard.defects.len());
    for (k, d) in picard.defects.iter().enumerate() {
        println!("  sweep {k:2}: defect {d:.3e}");
    }
    let half = 0.5 * t;
    let diff = sup_relative_difference(&picard.trajectory.restricted(half), &split.restricted(half))?;
    println!("relative distance on [0, T/2]: {diff:.3e}");

    let mass = |f: &Field| f.l2_norm();
    let last = split.len() - 1;
    println!(
        "split-step: |u|_L2 {:.12} -> {:.12}, mean(v) {:.12} -> {:.12}",
        mass(&u0),
        mass(&split.u[last]),
        v0.integral().re,
        split.v[last].integral().re
    );
    Ok(())
}
