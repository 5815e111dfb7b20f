//! Binary dataset dump.
//!
//! Layout (all integers and floats little-endian):
//!   header: magic `DOADUMP1` (8 bytes), u32 version, u32 L, u32 K, u32 d,
//!           u32 reserved (zero), u64 record count
//!   record: X as K snapshot columns, each column L complex entries stored as
//!           interleaved (re, im) f64 pairs; then the label y as d raw bytes.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::scenario::SnapshotExample;

const MAGIC: &[u8; 8] = b"DOADUMP1";
const VERSION: u32 = 1;

/// Shape header of a dataset dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetHeader {
    pub version: u32,
    pub num_sensors: usize,
    pub num_snapshots: usize,
    pub grid_len: usize,
    pub count: usize,
}

/// A deserialized record: measurements and label.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub x: DMatrix<Complex64>,
    pub y: Vec<u8>,
}

fn write_u32<W: Write>(w: &mut W, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

/// Serialize examples into a dataset dump. All examples must share L, K, d.
pub fn write_dataset<W: Write>(w: &mut W, examples: &[SnapshotExample]) -> Result<()> {
    let (l, k, d) = match examples.first() {
        Some(ex) => (ex.x.nrows(), ex.x.ncols(), ex.y.len()),
        None => return Err(Error::InvalidInput("cannot dump an empty dataset".into())),
    };
    w.write_all(MAGIC)?;
    write_u32(w, VERSION)?;
    write_u32(w, l as u32)?;
    write_u32(w, k as u32)?;
    write_u32(w, d as u32)?;
    write_u32(w, 0)?;
    w.write_all(&(examples.len() as u64).to_le_bytes())?;
    for ex in examples {
        if ex.x.nrows() != l || ex.x.ncols() != k || ex.y.len() != d {
            return Err(Error::Dimension(format!(
                "dataset records must share shapes: expected ({l}, {k}, {d}), got ({}, {}, {})",
                ex.x.nrows(),
                ex.x.ncols(),
                ex.y.len()
            )));
        }
        for col in 0..k {
            for row in 0..l {
                let v = ex.x[(row, col)];
                w.write_all(&v.re.to_le_bytes())?;
                w.write_all(&v.im.to_le_bytes())?;
            }
        }
        w.write_all(&ex.y)?;
    }
    Ok(())
}

/// Read an entire dataset dump.
pub fn read_dataset<R: Read>(r: &mut R) -> Result<(DatasetHeader, Vec<DatasetRecord>)> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad dataset magic".into()));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported dataset version {version}")));
    }
    let l = read_u32(r)? as usize;
    let k = read_u32(r)? as usize;
    let d = read_u32(r)? as usize;
    let _reserved = read_u32(r)?;
    let count = read_u64(r)? as usize;
    let header = DatasetHeader {
        version,
        num_sensors: l,
        num_snapshots: k,
        grid_len: d,
        count,
    };
    let mut records = Vec::with_capacity(count);
    let mut f64buf = [0u8; 8];
    for _ in 0..count {
        let mut x = DMatrix::<Complex64>::zeros(l, k);
        for col in 0..k {
            for row in 0..l {
                r.read_exact(&mut f64buf)?;
                let re = f64::from_le_bytes(f64buf);
                r.read_exact(&mut f64buf)?;
                let im = f64::from_le_bytes(f64buf);
                x[(row, col)] = Complex64::new(re, im);
            }
        }
        let mut y = vec![0u8; d];
        r.read_exact(&mut y)?;
        records.push(DatasetRecord { x, y });
    }
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::policy::{make_training_batch, TrainingSetPolicy};
    use crate::sim::geometry::ArrayGeometry;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut policy = TrainingSetPolicy::paper_default();
        policy.geometry = ArrayGeometry::ula(4).unwrap();
        policy.num_snapshots = 3;
        let examples = make_training_batch(&policy, 5, 17).unwrap();

        let mut buf = Vec::new();
        write_dataset(&mut buf, &examples).unwrap();
        let (header, records) = read_dataset(&mut buf.as_slice()).unwrap();

        assert_eq!(header.num_sensors, 4);
        assert_eq!(header.num_snapshots, 3);
        assert_eq!(header.grid_len, 121);
        assert_eq!(header.count, 5);
        for (rec, ex) in records.iter().zip(&examples) {
            assert_eq!(rec.x, ex.x); // bit-exact complex round trip
            assert_eq!(rec.y, ex.y);
        }
    }

    #[test]
    fn corrupted_magic_is_rejected() {
        let mut policy = TrainingSetPolicy::paper_default();
        policy.geometry = ArrayGeometry::ula(4).unwrap();
        policy.num_snapshots = 2;
        let examples = make_training_batch(&policy, 1, 1).unwrap();
        let mut buf = Vec::new();
        write_dataset(&mut buf, &examples).unwrap();
        buf[0] = b'X';
        assert!(read_dataset(&mut buf.as_slice()).is_err());
    }
}
