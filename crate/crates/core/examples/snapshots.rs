//! Writes a field to the binary snapshot format and reads it back.

use num_complex::Complex64;
use skdv::harness::{load_field, save_field};
use skdv::{Field, Grid1D};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid1D::new(512, 50.0)?;
    let f = Field::from_fn(&grid, |x| Complex64::new((-x * x).exp(), x.sin() / (1.0 + x * x)));
    let dir = std::env::temp_dir().join("skdv-snapshot-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("field.dsp");
    save_field(&f, 0.25, &path)?;
    let snap = load_field(&path)?;
    let identical = snap.field.values() == f.into_physical().values();
    println!(
        "{}: t = {}, n = {}, bit-identical = {identical}",
        path.display(),
        snap.time,
        snap.field.grid().n_points()
    );
    Ok(())
}
