//! Flat binary and CSV serialization of sampled fields.
//!
//! Binary layout: a 9-value little-endian `f64` header
//! `[kind, dims, n₀, n₁, n₂, e₀, e₁, e₂, t]` (kind 0 = periodic,
//! 1 = truncated; extents are periods or half-widths), followed by the
//! three component arrays in component-major order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::grid::{Grid, GridKind, SampledField, ScalarSample};
use super::GridError;

fn io_err(e: std::io::Error) -> GridError {
    GridError::Io(e.to_string())
}

/// Writes a sampled field to the binary layout above.
pub fn write_binary(path: &Path, u: &SampledField) -> Result<(), GridError> {
    let g = &u.grid;
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    let kind = match g.kind {
        GridKind::Periodic => 0.0,
        GridKind::Truncated => 1.0,
    };
    let header = [
        kind,
        g.dims as f64,
        g.n[0] as f64,
        g.n[1] as f64,
        g.n[2] as f64,
        g.extents[0],
        g.extents[1],
        g.extents[2],
        u.t,
    ];
    for v in header {
        w.write_all(&v.to_le_bytes()).map_err(io_err)?;
    }
    for comp in &u.components {
        for v in comp {
            w.write_all(&v.to_le_bytes()).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

fn read_f64(r: &mut impl Read) -> Result<f64, GridError> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf).map_err(io_err)?;
    Ok(f64::from_le_bytes(buf))
}

/// Reads a sampled field written by [`write_binary`], re-validating the
/// grid invariants.
pub fn read_binary(path: &Path) -> Result<SampledField, GridError> {
    let mut r = BufReader::new(File::open(path).map_err(io_err)?);
    let mut header = [0.0; 9];
    for v in header.iter_mut() {
        *v = read_f64(&mut r)?;
    }
    let dims = header[1] as usize;
    if header[1].fract() != 0.0 || !(1..=3).contains(&dims) {
        return Err(GridError::Io(format!("bad dimension field {}", header[1])));
    }
    let mut n = [1usize; 3];
    for (a, v) in n.iter_mut().enumerate() {
        let raw = header[2 + a];
        if raw.fract() != 0.0 || raw < 1.0 || raw > 1e9 {
            return Err(GridError::Io(format!("bad point count {raw}")));
        }
        *v = raw as usize;
    }
    let extents = [header[5], header[6], header[7]];
    let grid = match header[0] {
        v if v == 0.0 => Grid::periodic(dims, n, extents)?,
        v if v == 1.0 => Grid::truncated(dims, n, extents)?,
        v => return Err(GridError::Io(format!("bad kind field {v}"))),
    };
    let len = grid.len();
    let mut components = [
        vec![0.0; len],
        vec![0.0; len],
        vec![0.0; len],
    ];
    for comp in components.iter_mut() {
        for v in comp.iter_mut() {
            *v = read_f64(&mut r)?;
        }
    }
    let mut tail = [0u8; 1];
    match r.read(&mut tail) {
        Ok(0) => {}
        Ok(_) => return Err(GridError::Io("trailing bytes after field body".into())),
        Err(e) => return Err(io_err(e)),
    }
    Ok(SampledField {
        grid,
        components,
        t: header[8],
    })
}

/// Writes `x,y,z,u1,u2,u3` rows for a vector sample.
pub fn write_csv_vector(path: &Path, u: &SampledField) -> Result<(), GridError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    writeln!(w, "x,y,z,u1,u2,u3").map_err(io_err)?;
    for flat in 0..u.grid.len() {
        let [x, y, z] = u.grid.point(flat);
        writeln!(
            w,
            "{x},{y},{z},{},{},{}",
            u.components[0][flat], u.components[1][flat], u.components[2][flat]
        )
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Writes `x,y,z,value` rows for a scalar sample.
pub fn write_csv_scalar(path: &Path, s: &ScalarSample) -> Result<(), GridError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    writeln!(w, "x,y,z,value").map_err(io_err)?;
    for flat in 0..s.grid.len() {
        let [x, y, z] = s.grid.point(flat);
        writeln!(w, "{x},{y},{z},{}", s.values[flat]).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldkit::gallery;
    use crate::gridops::grid::sample;

    #[test]
    fn binary_round_trip_is_exact() {
        let f = gallery("gaussian-vortex-3d").unwrap();
        let g = Grid::for_field(&f, 12).unwrap();
        let u = sample(&f, &g, 0.7).unwrap();
        let dir = std::env::temp_dir().join("flowscale-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.bin");
        write_binary(&path, &u).unwrap();
        let back = read_binary(&path).unwrap();
        assert_eq!(back.grid, u.grid);
        assert_eq!(back.t, u.t);
        for c in 0..3 {
            assert_eq!(back.components[c], u.components[c]);
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn csv_writers_emit_one_row_per_point() {
        let f = gallery("tg-embedded-2d").unwrap();
        let g = Grid::for_field(&f, 8).unwrap();
        let u = sample(&f, &g, 0.0).unwrap();
        let dir = std::env::temp_dir().join("flowscale-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.csv");
        write_csv_vector(&path, &u).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1 + g.len());
        assert!(text.starts_with("x,y,z,u1,u2,u3\n"));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn truncated_and_corrupt_headers_round_trip_safely() {
        let f = gallery("gaussian-vortex-3d").unwrap();
        let g = Grid::for_field(&f, 8).unwrap();
        let u = sample(&f, &g, 1.0).unwrap();
        let dir = std::env::temp_dir().join("flowscale-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corrupt.bin");
        write_binary(&path, &u).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 16);
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_binary(&path), Err(GridError::Io(_))));
        std::fs::remove_file(&path).unwrap();
    }
}
