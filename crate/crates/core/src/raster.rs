//! Grid rasters on disk: binary PGM for viewing, CSV for exact values.
//!
//! PGM images are written north-up: the first image row is the grid's
//! highest `y`. CSV files keep grid order, one line per cell row starting at
//! `y = 0`, values comma-separated, no header.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::FireEstimate;
use crate::grid::{Cell, Grid, GridSpec};
use crate::occupancy::OccupancyGrid;
use crate::radiation::ThermalGrid;

/// A decoded PGM image, rows top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub max_value: u16,
    pub pixels: Vec<u16>,
}

impl Pgm {
    pub fn at(&self, col: usize, row: usize) -> u16 {
        self.pixels[row * self.width + col]
    }
}

/// Writes an 8-bit grid as a binary (P5) PGM.
pub fn write_pgm8<W: Write>(grid: &Grid<u8>, mut w: W) -> Result<()> {
    let spec = grid.spec();
    write!(w, "P5\n{} {}\n255\n", spec.width, spec.height)?;
    for y in (0..spec.height).rev() {
        let row = &grid.as_slice()[y * spec.width..(y + 1) * spec.width];
        w.write_all(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a 16-bit grid as a binary (P5) PGM, big-endian samples.
pub fn write_pgm16<W: Write>(grid: &Grid<u16>, mut w: W) -> Result<()> {
    let spec = grid.spec();
    write!(w, "P5\n{} {}\n65535\n", spec.width, spec.height)?;
    for y in (0..spec.height).rev() {
        for v in &grid.as_slice()[y * spec.width..(y + 1) * spec.width] {
            w.write_all(&v.to_be_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a binary PGM written by this module (no comments in the header).
pub fn read_pgm<R: Read>(mut r: R) -> Result<Pgm> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::parse(1, "truncated PGM header"));
        }
        fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    pos += 1;
    if fields[0] != "P5" {
        return Err(Error::parse(1, format!("expected P5 magic, got {:?}", fields[0])));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(1, format!("bad PGM header field {s:?}")));
    let (width, height, max_value) = (num(&fields[1])?, num(&fields[2])?, num(&fields[3])?);
    if max_value == 0 || max_value > 65535 {
        return Err(Error::parse(1, format!("bad PGM maxval {max_value}")));
    }
    let depth = if max_value > 255 { 2 } else { 1 };
    let body = &bytes[pos.min(bytes.len())..];
    if body.len() != width * height * depth {
        return Err(Error::parse(1, format!(
            "PGM body holds {} bytes, expected {}",
            body.len(),
            width * height * depth
        )));
    }
    let pixels = if depth == 1 {
        body.iter().map(|&b| u16::from(b)).collect()
    } else {
        body.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    };
    Ok(Pgm {
        width,
        height,
        max_value: max_value as u16,
        pixels,
    })
}

pub fn write_csv<W: Write>(grid: &Grid<f64>, mut w: W) -> Result<()> {
    let spec = grid.spec();
    for row in grid.as_slice().chunks(spec.width) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV raster, returning `(width, height, row-major values)`.
pub fn read_csv<R: Read>(r: R) -> Result<(usize, usize, Vec<f64>)> {
    let mut width = None;
    let mut values = Vec::new();
    let mut height = 0;
    for (i, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(i + 1, format!("bad value {f:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::parse(i + 1, format!("row has {} values, expected {w}", row.len())))
            }
            _ => {}
        }
        values.extend(row);
        height += 1;
    }
    let width = width.ok_or_else(|| Error::parse(1, "empty raster"))?;
    Ok((width, height, values))
}

pub fn save_csv(grid: &Grid<f64>, path: impl AsRef<Path>) -> Result<()> {
    write_csv(grid, BufWriter::new(File::create(path)?))
}

pub fn load_csv(spec: &GridSpec, path: impl AsRef<Path>) -> Result<Grid<f64>> {
    let path = path.as_ref();
    let (w, h, values) = read_csv(File::open(path)?).map_err(|e| e.at_path(path))?;
    if (w, h) != (spec.width, spec.height) {
        return Err(Error::config(format!(
            "{} is {w}x{h} cells but the grid is {}x{}",
            path.display(),
            spec.width,
            spec.height
        )));
    }
    Grid::from_vec(*spec, values)
}

/// Occupancy as gray levels, `0` free through `255` lethal.
pub fn occupancy_levels(occ: &OccupancyGrid) -> Grid<u8> {
    occ.grid().map(|&o| (o * 255.0).round() as u8)
}

/// Draws a small cross centered on the fire, inverted against the
/// underlying levels so it shows on both free and lethal cells.
pub fn mark_fire(img: &mut Grid<u8>, fire: &FireEstimate) {
    let spec = *img.spec();
    let [fx, fy] = fire.center_xy();
    let Some(c) = spec.world_to_cell(fx, fy) else {
        return;
    };
    let arm = ((fire.footprint_radius / spec.resolution).round() as i64).max(2);
    for d in -arm..=arm {
        for (dx, dy) in [(d, 0), (0, d)] {
            let (x, y) = (c.x as i64 + dx, c.y as i64 + dy);
            if x >= 0 && y >= 0 && (x as usize) < spec.width && (y as usize) < spec.height {
                let p = &mut img[Cell::new(x as usize, y as usize)];
                *p = if *p >= 128 { 0 } else { 255 };
            }
        }
    }
}

/// Linear 16-bit quantization of a flux field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxScale {
    /// Flux represented by one gray level (kW/m²).
    pub kw_per_level: f64,
    /// Largest flux in the field (kW/m²).
    pub max_flux: f64,
}

pub fn thermal_levels(thermal: &ThermalGrid) -> (Grid<u16>, FluxScale) {
    let max_flux = thermal.max();
    let kw_per_level = if max_flux > 0.0 { max_flux / 65535.0 } else { 1.0 };
    let img = thermal
        .grid()
        .map(|&t| (t / kw_per_level).round().clamp(0.0, 65535.0) as u16);
    (img, FluxScale { kw_per_level, max_flux })
}

/// Map with a path on top: free cells light, lethal cells dark gray, the
/// path black, start and goal white.
pub fn path_overlay(occ: &OccupancyGrid, path: &[Cell]) -> Grid<u8> {
    let mut img = occ.grid().map(|&o| 64 + (191.0 * (1.0 - o)).round() as u8);
    for &c in path {
        img[c] = 0;
    }
    if let (Some(&s), Some(&g)) = (path.first(), path.last()) {
        img[s] = 255;
        img[g] = 255;
    }
    img
}

pub fn save_pgm8(grid: &Grid<u8>, path: impl AsRef<Path>) -> Result<()> {
    write_pgm8(grid, BufWriter::new(File::create(path)?))
}

pub fn save_pgm16(grid: &Grid<u16>, path: impl AsRef<Path>) -> Result<()> {
    write_pgm16(grid, BufWriter::new(File::create(path)?))
}
