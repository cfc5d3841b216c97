use super::flux::flux_at;
use super::los::LineOfSight;
use crate::error::{Error, Result};
use crate::fire::{FireEstimate, RadiationConstants};
use crate::grid::{Cell, Grid, GridSpec};
use crate::occupancy::ObstacleGrid;

/// Heat flux (kW/m²) sampled at every cell center.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalGrid {
    flux: Grid<f64>,
}

impl ThermalGrid {
    /// All-zero field, the state without a fire.
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            flux: Grid::filled(spec, 0.0),
        }
    }

    pub fn from_grid(flux: Grid<f64>) -> Result<Self> {
        if let Some(v) = flux.as_slice().iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::domain(format!("flux values must be finite and >= 0, got {v}")));
        }
        Ok(Self { flux })
    }

    pub fn spec(&self) -> &GridSpec {
        self.flux.spec()
    }

    pub fn grid(&self) -> &Grid<f64> {
        &self.flux
    }

    /// Flux at `cell` (kW/m²); panics outside the grid.
    pub fn at(&self, cell: Cell) -> f64 {
        self.flux[cell]
    }

    /// Flux at the cell containing a world point, `None` outside.
    pub fn at_world(&self, x: f64, y: f64) -> Option<f64> {
        self.spec().world_to_cell(x, y).map(|c| self.flux[c])
    }

    pub fn max(&self) -> f64 {
        self.flux.as_slice().iter().copied().fold(0.0, f64::max)
    }
}

/// Samples the fire's inverse-square flux at every cell center that the fire
/// cell can see.
///
/// Distances are measured in the world plane from the fire center to the cell
/// center. Cells with an occupied Bresenham cell between them and the fire
/// cell receive 0. The fire's own cell is evaluated at half a cell edge, which
/// bounds the singularity at the source.
pub fn fill_thermal_grid(
    spec: &GridSpec,
    obstacles: &ObstacleGrid,
    fire: &FireEstimate,
    consts: &RadiationConstants,
) -> Result<ThermalGrid> {
    spec.ensure_same(obstacles.spec())?;
    let [fx, fy] = fire.center_xy();
    let fire_cell = spec.world_to_cell(fx, fy).ok_or_else(|| {
        Error::domain(format!("fire center ({fx}, {fy}) lies outside the grid window"))
    })?;
    let los = LineOfSight::new(obstacles);
    let half_cell = spec.resolution / 2.0;
    let mut data = Vec::with_capacity(spec.len());
    for cell in spec.cells() {
        let value = if cell == fire_cell {
            flux_at(fire.power, half_cell, consts)?
        } else if los.visible(fire_cell, cell) {
            let [cx, cy] = spec.cell_center(cell);
            let d = (cx - fx).hypot(cy - fy);
            flux_at(fire.power, d, consts)?
        } else {
            0.0
        };
        data.push(value);
    }
    ThermalGrid::from_grid(Grid::from_vec(*spec, data)?)
}
