//! Problem files: a JSON descriptor plus an optional raw matrix payload.
//!
//! Payload layout: the 8 bytes `NHTMAT01`, then `m` and `n` as little-endian
//! `u32`, then the `m·n` entries as little-endian `f64` in row-major order.

use anyhow::{bail, ensure, Context, Result};
use nsht::{Matrix, ProblemDescriptor};
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 8] = b"NHTMAT01";
pub const HEADER_LEN: usize = 16;

pub fn write_matrix<W: Write>(a: &Matrix, mut out: W) -> Result<()> {
    let m = u32::try_from(a.rows()).context("row count does not fit in 32 bits")?;
    let n = u32::try_from(a.cols()).context("column count does not fit in 32 bits")?;
    out.write_all(MAGIC)?;
    out.write_all(&m.to_le_bytes())?;
    out.write_all(&n.to_le_bytes())?;
    for v in a.as_slice() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_matrix<R: Read>(mut input: R) -> Result<Matrix> {
    let mut header = [0u8; HEADER_LEN];
    input.read_exact(&mut header).context("payload shorter than its header")?;
    ensure!(&header[..8] == MAGIC, "not a matrix payload (bad magic)");
    let m = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let n = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
    let mut body = Vec::new();
    input.read_to_end(&mut body)?;
    let expected = m.checked_mul(n).and_then(|c| c.checked_mul(8)).context("payload size overflows")?;
    if body.len() != expected {
        bail!("payload holds {} bytes, header promises {expected}", body.len());
    }
    let entries = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Matrix::new(m, n, entries)?)
}

pub fn write_descriptor(path: &Path, d: &ProblemDescriptor) -> Result<()> {
    let text = serde_json::to_string_pretty(d)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

pub fn read_descriptor(path: &Path) -> Result<ProblemDescriptor> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Loads a matrix from a payload file, or regenerates it from a descriptor.
pub fn load_matrix(path: &Path) -> Result<Matrix> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if bytes.starts_with(MAGIC) {
        read_matrix(bytes.as_slice())
    } else {
        let d: ProblemDescriptor =
            serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
        Ok(d.generate::<f64>()?.a)
    }
}
