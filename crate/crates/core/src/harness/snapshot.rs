//! Binary field snapshots.
//!
//! Layout, all little-endian: the magic bytes `DSP1`, `u64` point count,
//! `f64` box length, `f64` time, then the physical samples as interleaved
//! `f64` real/imaginary pairs.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid1D};

pub const MAGIC: &[u8; 4] = b"DSP1";
const HEADER_LEN: usize = 4 + 8 + 8 + 8;

/// A field together with the time it was taken at.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub field: Field,
    pub time: f64,
}

/// Serializes `field` (physical samples) and `time` into the snapshot layout.
pub fn encode(field: &Field, time: f64) -> Vec<u8> {
    let phys = field.clone().into_physical();
    let grid = field.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * grid.n_points());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(grid.n_points() as u64).to_le_bytes());
    out.extend_from_slice(&grid.box_length().to_le_bytes());
    out.extend_from_slice(&time.to_le_bytes());
    for c in phys.values() {
        out.extend_from_slice(&c.re.to_le_bytes());
        out.extend_from_slice(&c.im.to_le_bytes());
    }
    out
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte slice"))
}

/// Parses snapshot bytes; `path` is used only in error messages.
pub fn decode(bytes: &[u8], path: &Path) -> Result<Snapshot> {
    let corrupt = |reason: String| Error::CorruptSnapshot {
        path: path.to_path_buf(),
        reason,
    };
    if bytes.len() < HEADER_LEN {
        return Err(corrupt(format!(
            "{} bytes is shorter than the {HEADER_LEN}-byte header",
            bytes.len()
        )));
    }
    if &bytes[..4] != MAGIC {
        return Err(corrupt(format!("bad magic {:?}", &bytes[..4])));
    }
    let n = u64::from_le_bytes(bytes[4..12].try_into().expect("8-byte slice"));
    let box_length = f64_at(bytes, 12);
    let time = f64_at(bytes, 20);
    let expected = usize::try_from(n)
        .ok()
        .and_then(|n| n.checked_mul(16))
        .and_then(|b| b.checked_add(HEADER_LEN))
        .ok_or_else(|| corrupt(format!("point count {n} too large")))?;
    if bytes.len() != expected {
        return Err(corrupt(format!(
            "length {} does not match {n} points ({expected} bytes)",
            bytes.len()
        )));
    }
    let grid = Grid1D::new(n as usize, box_length).map_err(|e| corrupt(e.to_string()))?;
    let values = (0..n as usize)
        .map(|j| {
            let at = HEADER_LEN + 16 * j;
            Complex64::new(f64_at(bytes, at), f64_at(bytes, at + 8))
        })
        .collect();
    Ok(Snapshot {
        field: Field::physical(&grid, values)?,
        time,
    })
}

/// Writes a snapshot file.
pub fn save_field(field: &Field, time: f64, path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&encode(field, time)).map_err(|e| Error::io(path, e))
}

/// Reads a snapshot file.
pub fn load_field(path: &Path) -> Result<Snapshot> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes, path)
}
