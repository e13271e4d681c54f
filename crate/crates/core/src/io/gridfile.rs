//! Binary grid files.
//!
//! ```text
//! NANOTRAP-GRID v1
//! origin <x> <y> <z>
//! spacing <sx> <sy> <sz>
//! counts <nx> <ny> <nz>
//! mode dc|dressed
//! scene <sha256 hex>          (optional)
//!
//! <nx·ny·nz little-endian f64 values, x fastest>
//! <mask bits, same order, LSB first, zero padded to a byte>
//! ```
//!
//! Header numbers are decimal SI in shortest round-trip form.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::landscape::{GridSpec, PotentialGrid};
use crate::model::Vec3;
use crate::potential::PotentialMode;

pub const GRID_MAGIC: &str = "NANOTRAP-GRID v1";

/// A grid with the hash of the scene it was sampled from, if known.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFile {
    pub grid: PotentialGrid,
    pub scene_hash: Option<String>,
}

pub fn write_grid<W: Write>(out: &mut W, grid: &PotentialGrid, scene_hash: Option<&str>) -> Result<()> {
    let s = grid.spec();
    let mut header = format!(
        "{GRID_MAGIC}\norigin {:e} {:e} {:e}\nspacing {:e} {:e} {:e}\ncounts {} {} {}\nmode {}\n",
        s.origin.x,
        s.origin.y,
        s.origin.z,
        s.spacing.x,
        s.spacing.y,
        s.spacing.z,
        s.counts[0],
        s.counts[1],
        s.counts[2],
        grid.mode()
    );
    if let Some(h) = scene_hash {
        header.push_str(&format!("scene {h}\n"));
    }
    header.push('\n');

    let n = s.len();
    let mut buf = Vec::with_capacity(header.len() + 8 * n + n.div_ceil(8));
    buf.extend_from_slice(header.as_bytes());
    for v in grid.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut bits = vec![0u8; n.div_ceil(8)];
    for (i, &m) in grid.mask().iter().enumerate() {
        if m {
            bits[i / 8] |= 1 << (i % 8);
        }
    }
    buf.extend_from_slice(&bits);
    out.write_all(&buf)?;
    Ok(())
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn fields<'a>(line: &'a str, key: &str, n: usize) -> Result<Vec<&'a str>> {
    let mut it = line.split(' ');
    if it.next() != Some(key) {
        return Err(format_err(format!("expected `{key}` line, got `{line}`")));
    }
    let vals: Vec<&str> = it.collect();
    if vals.len() != n {
        return Err(format_err(format!("`{key}` needs {n} values")));
    }
    Ok(vals)
}

fn floats(line: &str, key: &str) -> Result<Vec3> {
    let v = fields(line, key, 3)?
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| format_err(format!("bad number `{t}` in `{key}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Vec3::new(v[0], v[1], v[2]))
}

pub fn read_grid<R: Read>(input: &mut R) -> Result<GridFile> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let end = bytes
        .windows(2)
        .position(|w| w == b"\n\n")
        .ok_or_else(|| format_err("missing header terminator"))?;
    let header = std::str::from_utf8(&bytes[..end]).map_err(|_| format_err("header is not UTF-8"))?;
    let payload = &bytes[end + 2..];
    let lines: Vec<&str> = header.split('\n').collect();
    if lines.first() != Some(&GRID_MAGIC) {
        return Err(format_err("bad magic line"));
    }
    if lines.len() != 5 && lines.len() != 6 {
        return Err(format_err("unexpected header length"));
    }
    let origin = floats(lines[1], "origin")?;
    let spacing = floats(lines[2], "spacing")?;
    let c = fields(lines[3], "counts", 3)?
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| format_err(format!("bad count `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    let mode: PotentialMode = fields(lines[4], "mode", 1)?[0]
        .parse()
        .map_err(|_| format_err("unknown mode"))?;
    let scene_hash = match lines.get(5) {
        Some(l) => Some(fields(l, "scene", 1)?[0].to_string()),
        None => None,
    };
    let spec = GridSpec::new(origin, spacing, [c[0], c[1], c[2]]).map_err(|e| format_err(e.to_string()))?;

    let n = spec.len();
    let expected = n
        .checked_mul(8)
        .and_then(|v| v.checked_add(n.div_ceil(8)))
        .ok_or_else(|| format_err("grid too large"))?;
    if payload.len() != expected {
        return Err(format_err(format!(
            "payload has {} bytes, header implies {expected}",
            payload.len()
        )));
    }
    let (raw, bits) = payload.split_at(8 * n);
    let values: Vec<f64> = raw
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    let mask: Vec<bool> = (0..n).map(|i| bits[i / 8] & (1 << (i % 8)) != 0).collect();
    if n % 8 != 0 && bits[n / 8] >> (n % 8) != 0 {
        return Err(format_err("nonzero mask padding bits"));
    }
    let grid = PotentialGrid::new(spec, values, mask, mode).map_err(|e| format_err(e.to_string()))?;
    Ok(GridFile { grid, scene_hash })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_grid() -> PotentialGrid {
        let spec = GridSpec::new(Vec3::new(-1e-7, 0.0, 2.5e-8), Vec3::repeat(1e-8), [2, 2, 2]).unwrap();
        PotentialGrid::new(spec, vec![0.0; 8], vec![false; 8], PotentialMode::Dc).unwrap()
    }

    fn encoded(grid: &PotentialGrid, hash: Option<&str>) -> Vec<u8> {
        let mut buf = Vec::new();
        write_grid(&mut buf, grid, hash).unwrap();
        buf
    }

    #[test]
    fn small_grid_layout() {
        let buf = encoded(&zero_grid(), None);
        let text = "NANOTRAP-GRID v1\norigin -1e-7 0e0 2.5e-8\nspacing 1e-8 1e-8 1e-8\ncounts 2 2 2\nmode dc\n\n";
        assert_eq!(&buf[..text.len()], text.as_bytes());
        assert_eq!(buf.len() - text.len(), 64 + 1);
        let back = read_grid(&mut buf.as_slice()).unwrap();
        assert_eq!(back.grid, zero_grid());
        assert_eq!(back.scene_hash, None);
    }

    #[test]
    fn mask_and_nan_round_trip_bitwise() {
        let spec = GridSpec::new(Vec3::zeros(), Vec3::repeat(1.0), [3, 2, 2]).unwrap();
        let mut values: Vec<f64> = (0..12).map(|i| (i as f64).sin() * 1e-28).collect();
        let mut mask = vec![false; 12];
        for i in [0, 7, 11] {
            mask[i] = true;
            values[i] = f64::NAN;
        }
        let g = PotentialGrid::new(spec, values.clone(), mask.clone(), PotentialMode::Dressed).unwrap();
        let buf = encoded(&g, Some("abc123"));
        let back = read_grid(&mut buf.as_slice()).unwrap();
        assert_eq!(back.scene_hash.as_deref(), Some("abc123"));
        assert_eq!(back.grid.mask(), &mask[..]);
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(back.grid.values()), bits(&values));
        assert_eq!(back.grid.mode(), PotentialMode::Dressed);
    }

    #[test]
    fn rejects_damaged_files() {
        let buf = encoded(&zero_grid(), None);
        let truncated = &buf[..buf.len() - 2];
        assert!(matches!(read_grid(&mut &truncated[..]), Err(Error::Format(_))));

        let mut extra = buf.clone();
        extra.push(0);
        assert!(matches!(read_grid(&mut extra.as_slice()), Err(Error::Format(_))));

        let mut magic = buf.clone();
        magic[0] = b'X';
        assert!(matches!(read_grid(&mut magic.as_slice()), Err(Error::Format(_))));

        let text = String::from_utf8_lossy(&buf).replace("counts 2 2 2", "counts 2 2 3");
        let wrong_counts = text.into_bytes();
        assert!(read_grid(&mut wrong_counts.as_slice()).is_err());
    }
}
