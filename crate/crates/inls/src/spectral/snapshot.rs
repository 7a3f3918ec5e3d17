//! Bit-exact binary snapshot format for fields.
//!
//! Layout (little-endian throughout):
//!   magic "INLSNAP1" (8 bytes)
//!   n: u64, length: f64, time: f64
//!   p numerator: i64, p denominator: i64
//!   weight label: u64 byte count, then UTF-8 bytes
//!   n*n complex samples as (re, im) f64 pairs, row-major

use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

use super::field::Field;
use super::grid::Grid;
use crate::error::InlsError;
use crate::scaling::Power;

const MAGIC: &[u8; 8] = b"INLSNAP1";

/// Metadata stored alongside the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapshotHeader {
    pub time: f64,
    pub p: Power,
    pub weight_label: String,
}

pub fn write_snapshot(path: &Path, field: &Field, header: &SnapshotHeader) -> Result<(), InlsError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&(field.grid().n() as u64).to_le_bytes())?;
    w.write_all(&field.grid().length().to_le_bytes())?;
    w.write_all(&header.time.to_le_bytes())?;
    w.write_all(&header.p.value().numer().to_le_bytes())?;
    w.write_all(&header.p.value().denom().to_le_bytes())?;
    let label = header.weight_label.as_bytes();
    w.write_all(&(label.len() as u64).to_le_bytes())?;
    w.write_all(label)?;
    for v in field.data() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_exact<const K: usize>(r: &mut impl Read) -> Result<[u8; K], InlsError> {
    let mut buf = [0u8; K];
    r.read_exact(&mut buf)
        .map_err(|e| InlsError::Format(format!("truncated snapshot: {e}")))?;
    Ok(buf)
}

pub fn read_snapshot(path: &Path) -> Result<(Field, SnapshotHeader), InlsError> {
    let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
    let magic = read_exact::<8>(&mut r)?;
    if &magic != MAGIC {
        return Err(InlsError::Format("bad snapshot magic".into()));
    }
    let n = u64::from_le_bytes(read_exact(&mut r)?) as usize;
    let length = f64::from_le_bytes(read_exact(&mut r)?);
    let time = f64::from_le_bytes(read_exact(&mut r)?);
    let p_num = i64::from_le_bytes(read_exact(&mut r)?);
    let p_den = i64::from_le_bytes(read_exact(&mut r)?);
    let label_len = u64::from_le_bytes(read_exact(&mut r)?) as usize;
    if label_len > 1 << 20 {
        return Err(InlsError::Format(format!(
            "implausible label length {label_len}"
        )));
    }
    let mut label = vec![0u8; label_len];
    r.read_exact(&mut label)
        .map_err(|e| InlsError::Format(format!("truncated label: {e}")))?;
    let weight_label = String::from_utf8(label)
        .map_err(|_| InlsError::Format("label is not valid UTF-8".into()))?;
    let grid = Grid::new(n, length)?;
    let mut data = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = f64::from_le_bytes(read_exact(&mut r)?);
        let im = f64::from_le_bytes(read_exact(&mut r)?);
        data.push(Complex64::new(re, im));
    }
    let header = SnapshotHeader {
        time,
        p: Power::from_ints(p_num, p_den)?,
        weight_label,
    };
    Ok((Field::from_data(grid, data), header))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_bit_exact() {
        let grid = Grid::new(16, 8.0).unwrap();
        let f = Field::from_fn(grid, |x, y| {
            Complex64::new((x * 1.7).sin() + 1e-300, (y * 0.3).cos() * 1e12)
        });
        let header = SnapshotHeader {
            time: 0.125,
            p: Power::from_ints(7, 3).unwrap(),
            weight_label: "gaussian".into(),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("snap.bin");
        write_snapshot(&path, &f, &header).unwrap();
        let (g, h) = read_snapshot(&path).unwrap();
        assert_eq!(h, header);
        assert_eq!(g.grid(), grid);
        for (a, b) in f.data().iter().zip(g.data()) {
            assert!(a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits());
        }
    }

    #[test]
    fn rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.bin");
        std::fs::write(&path, b"not a snapshot at all").unwrap();
        assert!(read_snapshot(&path).is_err());
    }
}
