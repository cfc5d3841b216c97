//! Metric 2D raster geometry shared by every map layer.
//!
//! A [`GridSpec`] describes a window of the world plane: the corner of cell
//! `(0, 0)`, a square cell edge and the cell counts. Cells are addressed by
//! column `x` and row `y`, and rasters are stored row-major (`y * width + x`).
//! Row 0 is the southern-most row (smallest world `y`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer cell address: column `x`, row `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

/// World window covered by a raster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// World coordinate (m) of the outer corner of cell `(0, 0)`.
    pub origin: [f64; 2],
    /// Cell edge length (m).
    pub resolution: f64,
    pub width: usize,
    pub height: usize,
}

impl Default for GridSpec {
    /// 20 m x 20 m at 10 cm, anchored at the world origin.
    fn default() -> Self {
        Self {
            origin: [0.0, 0.0],
            resolution: 0.1,
            width: 200,
            height: 200,
        }
    }
}

impl GridSpec {
    pub fn new(origin: [f64; 2], resolution: f64, width: usize, height: usize) -> Result<Self> {
        let spec = Self {
            origin,
            resolution,
            width,
            height,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Square window of `size_m` metres per side.
    pub fn square(origin: [f64; 2], size_m: f64, resolution: f64) -> Result<Self> {
        if !(resolution > 0.0) || !(size_m > 0.0) {
            return Err(Error::config(format!(
                "grid size {size_m} m and resolution {resolution} m must be positive"
            )));
        }
        let cells = (size_m / resolution).round() as usize;
        Self::new(origin, resolution, cells, cells)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resolution > 0.0) || !self.resolution.is_finite() {
            return Err(Error::config(format!(
                "grid resolution must be positive, got {}",
                self.resolution
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::config("grid must have at least one cell"));
        }
        if !self.origin.iter().all(|v| v.is_finite()) {
            return Err(Error::config("grid origin must be finite"));
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        cell.y * self.width + cell.x
    }

    #[inline]
    pub fn cell_of_index(&self, index: usize) -> Cell {
        Cell::new(index % self.width, index / self.width)
    }

    #[inline]
    pub fn contains(&self, cell: Cell) -> bool {
        cell.x < self.width && cell.y < self.height
    }

    /// Cell containing the world point, or `None` outside the window.
    pub fn world_to_cell(&self, x: f64, y: f64) -> Option<Cell> {
        let fx = ((x - self.origin[0]) / self.resolution).floor();
        let fy = ((y - self.origin[1]) / self.resolution).floor();
        if !(fx >= 0.0 && fy >= 0.0) || fx >= self.width as f64 || fy >= self.height as f64 {
            return None;
        }
        Some(Cell::new(fx as usize, fy as usize))
    }

    /// World coordinate of the cell center.
    #[inline]
    pub fn cell_center(&self, cell: Cell) -> [f64; 2] {
        [
            self.origin[0] + (cell.x as f64 + 0.5) * self.resolution,
            self.origin[1] + (cell.y as f64 + 0.5) * self.resolution,
        ]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height).flat_map(move |y| (0..self.width).map(move |x| Cell::new(x, y)))
    }

    pub(crate) fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self != other {
            return Err(Error::config(format!(
                "grid specs differ: {self:?} vs {other:?}"
            )));
        }
        Ok(())
    }

    pub(crate) fn ensure_contains(&self, cell: Cell) -> Result<()> {
        if !self.contains(cell) {
            return Err(Error::domain(format!(
                "cell ({}, {}) outside {}x{} grid",
                cell.x, cell.y, self.width, self.height
            )));
        }
        Ok(())
    }
}

/// Row-major raster over a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    spec: GridSpec,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn filled(spec: GridSpec, value: T) -> Self {
        Self {
            data: vec![value; spec.len()],
            spec,
        }
    }
}

impl<T> Grid<T> {
    pub fn from_vec(spec: GridSpec, data: Vec<T>) -> Result<Self> {
        if data.len() != spec.len() {
            return Err(Error::config(format!(
                "raster has {} values, grid expects {}",
                data.len(),
                spec.len()
            )));
        }
        Ok(Self { spec, data })
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Cell) -> T) -> Self {
        let data = spec.cells().map(&mut f).collect();
        Self { spec, data }
    }

    #[inline]
    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, cell: Cell) -> Option<&T> {
        self.spec
            .contains(cell)
            .then(|| &self.data[self.spec.index(cell)])
    }

    #[inline]
    pub fn get_mut(&mut self, cell: Cell) -> Option<&mut T> {
        if self.spec.contains(cell) {
            let i = self.spec.index(cell);
            Some(&mut self.data[i])
        } else {
            None
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            spec: self.spec,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> std::ops::Index<Cell> for Grid<T> {
    type Output = T;

    fn index(&self, cell: Cell) -> &T {
        &self.data[self.spec.index(cell)]
    }
}

impl<T> std::ops::IndexMut<Cell> for Grid<T> {
    fn index_mut(&mut self, cell: Cell) -> &mut T {
        let i = self.spec.index(cell);
        &mut self.data[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matches_twenty_metre_window() {
        let spec = GridSpec::default();
        assert_eq!((spec.width, spec.height), (200, 200));
        assert_eq!(spec.resolution, 0.1);
        assert_eq!(GridSpec::square([0.0, 0.0], 20.0, 0.1).unwrap(), spec);
    }

    #[test]
    fn cell_centers_round_trip() {
        let spec = GridSpec::new([-3.2, 7.7], 0.1, 57, 43).unwrap();
        for cell in spec.cells() {
            let [x, y] = spec.cell_center(cell);
            assert_eq!(spec.world_to_cell(x, y), Some(cell));
        }
    }

    #[test]
    fn outside_window_is_none() {
        let spec = GridSpec::new([0.0, 0.0], 0.5, 4, 4).unwrap();
        assert_eq!(spec.world_to_cell(-0.01, 1.0), None);
        assert_eq!(spec.world_to_cell(1.0, 2.0), None);
        assert_eq!(spec.world_to_cell(f64::NAN, 1.0), None);
        assert_eq!(spec.world_to_cell(1.99, 0.0), Some(Cell::new(3, 0)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::new([0.0, 0.0], 0.0, 4, 4).is_err());
        assert!(GridSpec::new([0.0, 0.0], 0.1, 0, 4).is_err());
        assert!(Grid::from_vec(GridSpec::new([0.0, 0.0], 1.0, 2, 2).unwrap(), vec![0; 3]).is_err());
    }
}
