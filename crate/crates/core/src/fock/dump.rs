//! Binary snapshot format:
//!
//! ```text
//! "RHO1"  magic
//! b'L'    little-endian tag, then 3 reserved zero bytes
//! u32     dim1
//! u32     dim2
//! f64     t
//! [f64; 2 * D * D]  (re, im) pairs, row-major, D = dim1 * dim2
//! ```

use std::io::{Read, Write};

use num_complex::Complex64 as C64;

use super::FockDensityMatrix;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"RHO1";

pub fn write_rho<W: Write>(w: &mut W, rho: &FockDensityMatrix, t: f64) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[b'L', 0, 0, 0])?;
    w.write_all(&(rho.dim1 as u32).to_le_bytes())?;
    w.write_all(&(rho.dim2 as u32).to_le_bytes())?;
    w.write_all(&t.to_le_bytes())?;
    for z in rho.to_vec() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_rho<R: Read>(r: &mut R) -> Result<(FockDensityMatrix, f64)> {
    let mut head = [0u8; 24];
    r.read_exact(&mut head)?;
    if &head[0..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    if head[4] != b'L' {
        return Err(Error::Format(format!(
            "unsupported endianness tag {:?}",
            head[4] as char
        )));
    }
    let u32_at = |k: usize| u32::from_le_bytes(head[k..k + 4].try_into().unwrap()) as usize;
    let (dim1, dim2) = (u32_at(8), u32_at(12));
    let t = f64::from_le_bytes(head[16..24].try_into().unwrap());
    let d = dim1
        .checked_mul(dim2)
        .filter(|d| *d > 0 && *d <= 1 << 14)
        .ok_or_else(|| Error::Format(format!("implausible dims {dim1} x {dim2}")))?;
    let mut buf = vec![0u8; 16 * d * d];
    r.read_exact(&mut buf)?;
    let v: Vec<C64> = buf
        .chunks_exact(16)
        .map(|c| {
            C64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    Ok((FockDensityMatrix::from_vec(dim1, dim2, &v)?, t))
}
