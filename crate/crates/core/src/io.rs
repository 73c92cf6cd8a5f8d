//! RCQM-ARRAY snapshots.
//!
//! Layout: magic `RCQM1`; little-endian u32 ncomp, ndim, n1, n2, n3, flags;
//! three little-endian f64 box lengths; then component-major, row-major data
//! as f64 (re, im) pairs, or single f64 values when bit 0 of flags (real
//! layout) is set.

use crate::grid::{GridError, GridState};
use crate::linalg::C64;
use crate::maxwell::FieldState;
use std::io::{Read, Write};
use std::path::Path;
use thiserror::Error;

pub const MAGIC: &[u8; 5] = b"RCQM1";
pub const FLAG_REAL: u32 = 1;
/// Upper bound on stored values accepted by the reader (guards corrupt headers).
pub const MAX_VALUES: usize = 1 << 31;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not an RCQM-ARRAY file")]
    BadMagic,
    #[error("unsupported flags {0:#x}")]
    Flags(u32),
    #[error("header says ndim {ndim} but dims are {dims:?}")]
    Ndim { ndim: u32, dims: [usize; 3] },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("expected {want} components, file has {got}")]
    Components { got: usize, want: usize },
    #[error("invalid or oversized shape in header")]
    Shape,
    #[error("expected {0} layout")]
    Layout(&'static str),
}

/// Decoded snapshot.
#[derive(Clone, Debug, PartialEq)]
pub enum ArrayData {
    Complex(GridState),
    Real { dims: [usize; 3], lengths: [f64; 3], ncomp: usize, data: Vec<f64> },
}

fn header(w: &mut impl Write, ncomp: usize, dims: [usize; 3], lengths: [f64; 3], flags: u32) -> std::io::Result<()> {
    w.write_all(MAGIC)?;
    let ndim = dims.iter().filter(|&&d| d > 1).count().max(1) as u32;
    for v in [ncomp as u32, ndim, dims[0] as u32, dims[1] as u32, dims[2] as u32, flags] {
        w.write_all(&v.to_le_bytes())?;
    }
    for l in lengths {
        w.write_all(&l.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_complex(w: &mut impl Write, g: &GridState) -> std::io::Result<()> {
    header(w, g.ncomp, g.dims, g.lengths, 0)?;
    let mut buf = Vec::with_capacity(g.data.len() * 16);
    for z in &g.data {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    w.write_all(&buf)
}

pub fn write_real(w: &mut impl Write, dims: [usize; 3], lengths: [f64; 3], comps: &[Vec<f64>]) -> std::io::Result<()> {
    header(w, comps.len(), dims, lengths, FLAG_REAL)?;
    let mut buf = Vec::with_capacity(comps.iter().map(Vec::len).sum::<usize>() * 8);
    for c in comps {
        for x in c {
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    w.write_all(&buf)
}

pub fn write_fields(w: &mut impl Write, f: &FieldState) -> std::io::Result<()> {
    write_real(w, f.dims, f.lengths, &f.f)
}

fn u32_at(b: &[u8], i: usize) -> u32 {
    u32::from_le_bytes(b[i..i + 4].try_into().expect("4 bytes"))
}

fn f64_at(b: &[u8], i: usize) -> f64 {
    f64::from_le_bytes(b[i..i + 8].try_into().expect("8 bytes"))
}

pub fn read_array(r: &mut impl Read) -> Result<ArrayData, IoError> {
    let mut head = [0u8; 5 + 24 + 24];
    r.read_exact(&mut head)?;
    if &head[..5] != MAGIC {
        return Err(IoError::BadMagic);
    }
    let ncomp = u32_at(&head, 5) as usize;
    let ndim = u32_at(&head, 9);
    let dims = [u32_at(&head, 13) as usize, u32_at(&head, 17) as usize, u32_at(&head, 21) as usize];
    let flags = u32_at(&head, 25);
    let lengths = [f64_at(&head, 29), f64_at(&head, 37), f64_at(&head, 45)];
    if flags & !FLAG_REAL != 0 {
        return Err(IoError::Flags(flags));
    }
    if ndim as usize != dims.iter().filter(|&&d| d > 1).count().max(1) {
        return Err(IoError::Ndim { ndim, dims });
    }
    if ncomp == 0 || dims.contains(&0) || lengths.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(IoError::Shape);
    }
    let count = dims
        .iter()
        .try_fold(ncomp, |a, &d| a.checked_mul(d))
        .filter(|&c| c <= MAX_VALUES)
        .ok_or(IoError::Shape)?;
    if flags & FLAG_REAL != 0 {
        let mut b = vec![0u8; count * 8];
        r.read_exact(&mut b)?;
        let data = b.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
        Ok(ArrayData::Real { dims, lengths, ncomp, data })
    } else {
        let mut b = vec![0u8; count * 16];
        r.read_exact(&mut b)?;
        let data: Vec<C64> = b.chunks_exact(16).map(|c| C64::new(f64_at(c, 0), f64_at(c, 8))).collect();
        Ok(ArrayData::Complex(GridState::from_data(dims, lengths, ncomp, data)?))
    }
}

pub fn read_complex(r: &mut impl Read) -> Result<GridState, IoError> {
    match read_array(r)? {
        ArrayData::Complex(g) => Ok(g),
        ArrayData::Real { .. } => Err(IoError::Layout("complex")),
    }
}

pub fn read_fields(r: &mut impl Read) -> Result<FieldState, IoError> {
    match read_array(r)? {
        ArrayData::Real { dims, lengths, ncomp, data } => {
            if ncomp != 8 {
                return Err(IoError::Components { got: ncomp, want: 8 });
            }
            let n = data.len() / 8;
            Ok(FieldState { dims, lengths, f: std::array::from_fn(|a| data[a * n..(a + 1) * n].to_vec()) })
        }
        ArrayData::Complex(_) => Err(IoError::Layout("real")),
    }
}

pub fn save_complex(path: &Path, g: &GridState) -> Result<(), IoError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_complex(&mut w, g)?;
    Ok(w.flush()?)
}

pub fn save_fields(path: &Path, f: &FieldState) -> Result<(), IoError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_fields(&mut w, f)?;
    Ok(w.flush()?)
}

pub fn load_complex(path: &Path) -> Result<GridState, IoError> {
    read_complex(&mut std::io::BufReader::new(std::fs::File::open(path)?))
}

pub fn load_fields(path: &Path) -> Result<FieldState, IoError> {
    read_fields(&mut std::io::BufReader::new(std::fs::File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let g = GridState::zeros([4, 1, 1], [2.0, 1.0, 1.0], 2).unwrap();
        let mut b = Vec::new();
        write_complex(&mut b, &g).unwrap();
        assert_eq!(&b[..5], b"RCQM1");
        assert_eq!(u32_at(&b, 5), 2);
        assert_eq!(u32_at(&b, 9), 1);
        assert_eq!(u32_at(&b, 13), 4);
        assert_eq!(u32_at(&b, 25), 0);
        assert_eq!(f64_at(&b, 29), 2.0);
        assert_eq!(b.len(), 53 + 2 * 4 * 16);
    }

    #[test]
    fn fields_roundtrip_with_real_flag() {
        let f = FieldState::from_fn([3, 2, 1], [1.0, 2.0, 1.0], |x| std::array::from_fn(|a| a as f64 + x[0] - x[1])).unwrap();
        let mut b = Vec::new();
        write_fields(&mut b, &f).unwrap();
        assert_eq!(u32_at(&b, 25), FLAG_REAL);
        assert_eq!(b.len(), 53 + 8 * 6 * 8);
        assert_eq!(read_fields(&mut b.as_slice()).unwrap(), f);
        assert!(matches!(read_complex(&mut b.as_slice()), Err(IoError::Layout(_))));
    }

    #[test]
    fn corrupt_input_is_rejected() {
        assert!(matches!(read_array(&mut &b"RCQM2xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx"[..]), Err(IoError::BadMagic)));
        let g = GridState::zeros([2, 2, 1], [1.0; 3], 1).unwrap();
        let mut b = Vec::new();
        write_complex(&mut b, &g).unwrap();
        assert!(matches!(read_array(&mut &b[..b.len() - 1]), Err(IoError::Io(_))));
        let mut bad = b.clone();
        bad[25] = 4;
        assert!(matches!(read_array(&mut bad.as_slice()), Err(IoError::Flags(4))));
        let mut huge = b.clone();
        huge[13..17].copy_from_slice(&u32::MAX.to_le_bytes());
        huge[17..21].copy_from_slice(&u32::MAX.to_le_bytes());
        assert!(matches!(read_array(&mut huge.as_slice()), Err(IoError::Shape)));
    }

    proptest! {
        #[test]
        fn complex_roundtrip(n1 in 1usize..5, n2 in 1usize..4, nc in 1usize..4, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5 };
            let data: Vec<C64> = (0..n1 * n2 * nc).map(|_| C64::new(next(), next())).collect();
            let g = GridState::from_data([n1, n2, 1], [1.5, 2.5, 1.0], nc, data).unwrap();
            let mut b = Vec::new();
            write_complex(&mut b, &g).unwrap();
            prop_assert_eq!(read_complex(&mut b.as_slice()).unwrap(), g);
        }
    }
}
