//! Field and transform files.
//!
//! `OCT3` field file, little-endian throughout:
//!
//! | offset | size | content                     |
//! |--------|------|-----------------------------|
//! | 0      | 4    | magic `OCT3`                |
//! | 4      | 4    | version (u32, currently 1)  |
//! | 8      | 24   | axis counts (3 × u64)       |
//! | 32     | 24   | spacings (3 × f64)          |
//! | 56     | 24   | origins (3 × f64)           |
//! | 80     | 64·N | 8 × f64 per sample, axis 3 fastest |
//!
//! `OCW6` transform files hold the ω grid then the μ grid in the same
//! 72-byte layout (header 152 bytes), followed by values μ-outer.
//!
//! Paths ending in `.json` are read and written as JSON instead, meant for
//! small hand-written fixtures.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid3D, GridAxis, SampledField3D, WoclctResult};
use crate::octonion::Octonion;

pub const FIELD_MAGIC: &[u8; 4] = b"OCT3";
pub const RESULT_MAGIC: &[u8; 4] = b"OCW6";
pub const VERSION: u32 = 1;
const GRID_BYTES: usize = 72;
pub const FIELD_HEADER_BYTES: usize = 8 + GRID_BYTES;
pub const RESULT_HEADER_BYTES: usize = 8 + 2 * GRID_BYTES;
const SAMPLE_BYTES: usize = 64;

/// Reads a whole file, naming the path in any error.
pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn put_grid(out: &mut Vec<u8>, g: &Grid3D) {
    for a in &g.axes {
        out.extend_from_slice(&(a.count as u64).to_le_bytes());
    }
    for a in &g.axes {
        out.extend_from_slice(&a.spacing.to_le_bytes());
    }
    for a in &g.axes {
        out.extend_from_slice(&a.origin.to_le_bytes());
    }
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

fn take_grid(b: &[u8]) -> Result<Grid3D> {
    let mut axes = [GridAxis {
        count: 1,
        spacing: 1.0,
        origin: 0.0,
    }; 3];
    for (k, slot) in axes.iter_mut().enumerate() {
        let count = usize::try_from(u64_at(b, 8 * k))
            .map_err(|_| Error::MalformedHeader(format!("axis {} count does not fit", k + 1)))?;
        *slot = GridAxis::new(count, f64_at(b, 24 + 8 * k), f64_at(b, 48 + 8 * k))
            .map_err(|e| Error::MalformedHeader(format!("axis {}: {e}", k + 1)))?;
    }
    Ok(Grid3D::new(axes))
}

fn put_values(out: &mut Vec<u8>, values: &[Octonion]) {
    out.reserve(values.len() * SAMPLE_BYTES);
    for v in values {
        for c in v.0 {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
}

fn check_header(bytes: &[u8], magic: &[u8; 4], header: usize) -> Result<()> {
    if bytes.len() < 8 || &bytes[..4] != magic {
        return Err(Error::MalformedHeader(format!(
            "expected magic {}",
            String::from_utf8_lossy(magic)
        )));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: VERSION,
        });
    }
    if bytes.len() < header {
        return Err(Error::MalformedHeader(format!(
            "header needs {header} bytes, file has {}",
            bytes.len()
        )));
    }
    Ok(())
}

fn take_values(payload: &[u8], points: usize) -> Result<Vec<Octonion>> {
    let expected = (points as u64)
        .checked_mul(SAMPLE_BYTES as u64)
        .ok_or_else(|| Error::MalformedHeader("grid too large".into()))?;
    let actual = payload.len() as u64;
    if actual < expected {
        return Err(Error::TruncatedPayload { expected, actual });
    }
    if actual > expected {
        return Err(Error::TrailingBytes {
            extra: actual - expected,
        });
    }
    Ok(payload
        .chunks_exact(SAMPLE_BYTES)
        .map(|s| Octonion(std::array::from_fn(|i| f64_at(s, 8 * i))))
        .collect())
}

pub fn encode_field(f: &SampledField3D) -> Vec<u8> {
    let mut out = Vec::with_capacity(FIELD_HEADER_BYTES + f.values.len() * SAMPLE_BYTES);
    out.extend_from_slice(FIELD_MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    put_grid(&mut out, &f.grid);
    put_values(&mut out, &f.values);
    out
}

pub fn decode_field(bytes: &[u8]) -> Result<SampledField3D> {
    check_header(bytes, FIELD_MAGIC, FIELD_HEADER_BYTES)?;
    let grid = take_grid(&bytes[8..FIELD_HEADER_BYTES])?;
    let values = take_values(&bytes[FIELD_HEADER_BYTES..], grid.len())?;
    SampledField3D::new(grid, values)
}

pub fn encode_result(g: &WoclctResult) -> Vec<u8> {
    let mut out = Vec::with_capacity(RESULT_HEADER_BYTES + g.values.len() * SAMPLE_BYTES);
    out.extend_from_slice(RESULT_MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    put_grid(&mut out, &g.omega_grid);
    put_grid(&mut out, &g.mu_grid);
    put_values(&mut out, &g.values);
    out
}

pub fn decode_result(bytes: &[u8]) -> Result<WoclctResult> {
    check_header(bytes, RESULT_MAGIC, RESULT_HEADER_BYTES)?;
    let omega = take_grid(&bytes[8..8 + GRID_BYTES])?;
    let mu = take_grid(&bytes[8 + GRID_BYTES..RESULT_HEADER_BYTES])?;
    let points = omega
        .len()
        .checked_mul(mu.len())
        .ok_or_else(|| Error::MalformedHeader("grid too large".into()))?;
    let values = take_values(&bytes[RESULT_HEADER_BYTES..], points)?;
    WoclctResult::new(omega, mu, values)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    grid: Grid3D,
    values: Vec<Octonion>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResultJson {
    omega_grid: Grid3D,
    mu_grid: Grid3D,
    values: Vec<Octonion>,
}

fn reject_bad_grid(g: &Grid3D) -> Result<()> {
    for a in &g.axes {
        GridAxis::new(a.count, a.spacing, a.origin)
            .map_err(|e| Error::MalformedHeader(e.to_string()))?;
    }
    Ok(())
}

pub fn read_field(path: impl AsRef<Path>) -> Result<SampledField3D> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    if is_json(path) {
        let j: FieldJson = serde_json::from_slice(&bytes)?;
        reject_bad_grid(&j.grid)?;
        return SampledField3D::new(j.grid, j.values)
            .map_err(|e| Error::MalformedHeader(e.to_string()));
    }
    decode_field(&bytes)
}

pub fn write_field(path: impl AsRef<Path>, f: &SampledField3D) -> Result<()> {
    let path = path.as_ref();
    if is_json(path) {
        let j = FieldJson {
            grid: f.grid,
            values: f.values.clone(),
        };
        write_bytes(path, &serde_json::to_vec(&j)?)?;
    } else {
        write_bytes(path, &encode_field(f))?;
    }
    Ok(())
}

pub fn read_result(path: impl AsRef<Path>) -> Result<WoclctResult> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    if is_json(path) {
        let j: ResultJson = serde_json::from_slice(&bytes)?;
        reject_bad_grid(&j.omega_grid)?;
        reject_bad_grid(&j.mu_grid)?;
        return WoclctResult::new(j.omega_grid, j.mu_grid, j.values)
            .map_err(|e| Error::MalformedHeader(e.to_string()));
    }
    decode_result(&bytes)
}

pub fn write_result(path: impl AsRef<Path>, g: &WoclctResult) -> Result<()> {
    let path = path.as_ref();
    if is_json(path) {
        let j = ResultJson {
            omega_grid: g.omega_grid,
            mu_grid: g.mu_grid,
            values: g.values.clone(),
        };
        write_bytes(path, &serde_json::to_vec(&j)?)?;
    } else {
        write_bytes(path, &encode_result(g))?;
    }
    Ok(())
}
