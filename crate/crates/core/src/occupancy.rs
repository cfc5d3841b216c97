//! Height-based obstacle classification and the fire-aware occupancy map.
//!
//! The pipeline bins LiDAR returns into a per-cell maximum height, classifies
//! cells taller than the robot (relative to a local ground estimate) as
//! obstacles, samples the fire's radiation field over the obstacle grid and
//! blends both hazards into `O[x, y] = max(O_geom, min(T / q_danger, 1))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::{FireEstimate, RadiationConstants};
use crate::geometry::ThermalCloud;
use crate::grid::{Cell, Grid, GridSpec};
use crate::radiation::{fill_thermal_grid, DangerThreshold, ThermalGrid};
use crate::stats::lower_percentile;

/// Per-cell maximum return height (m); `None` where nothing was observed.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightGrid {
    heights: Grid<Option<f64>>,
}

impl HeightGrid {
    pub fn spec(&self) -> &GridSpec {
        self.heights.spec()
    }

    pub fn grid(&self) -> &Grid<Option<f64>> {
        &self.heights
    }

    pub fn at(&self, cell: Cell) -> Option<f64> {
        self.heights[cell]
    }
}

/// Boolean raster of geometric obstacles.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstacleGrid {
    occupied: Grid<bool>,
}

impl ObstacleGrid {
    pub fn from_grid(occupied: Grid<bool>) -> Self {
        Self { occupied }
    }

    pub fn empty(spec: GridSpec) -> Self {
        Self {
            occupied: Grid::filled(spec, false),
        }
    }

    pub fn spec(&self) -> &GridSpec {
        self.occupied.spec()
    }

    pub fn grid(&self) -> &Grid<bool> {
        &self.occupied
    }

    #[inline]
    pub fn is_occupied(&self, cell: Cell) -> bool {
        self.occupied[cell]
    }

    pub fn count(&self) -> usize {
        self.occupied.as_slice().iter().filter(|o| **o).count()
    }
}

/// Blended hazard in `[0, 1]`; 1 is impassable.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    value: Grid<f64>,
}

impl OccupancyGrid {
    pub fn from_grid(value: Grid<f64>) -> Result<Self> {
        if let Some(v) = value.as_slice().iter().find(|v| !(**v >= 0.0 && **v <= 1.0)) {
            return Err(Error::domain(format!("occupancy values must lie in [0, 1], got {v}")));
        }
        Ok(Self { value })
    }

    pub fn spec(&self) -> &GridSpec {
        self.value.spec()
    }

    pub fn grid(&self) -> &Grid<f64> {
        &self.value
    }

    #[inline]
    pub fn at(&self, cell: Cell) -> f64 {
        self.value[cell]
    }

    pub fn is_lethal(&self, cell: Cell) -> bool {
        self.value[cell] >= 1.0
    }
}

/// Robot-dependent parameters of obstacle classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RobotParams {
    /// Cells rising more than this above local ground are obstacles (m).
    pub h_robot: f64,
    /// Robot position in the world plane (m).
    pub position: [f64; 2],
    /// Radius around the robot whose heights define the local ground (m).
    pub ground_window: f64,
    /// Percentile of local heights taken as ground.
    pub ground_percentile: f64,
    /// Treat cells without returns as obstacles.
    pub unknown_is_lethal: bool,
}

impl Default for RobotParams {
    fn default() -> Self {
        Self {
            h_robot: 0.5,
            position: [0.0, 0.0],
            ground_window: 10.0,
            ground_percentile: 20.0,
            unknown_is_lethal: false,
        }
    }
}

impl RobotParams {
    pub fn at(position: [f64; 2]) -> Self {
        Self {
            position,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h_robot > 0.0) {
            return Err(Error::config(format!("h_robot must be positive, got {}", self.h_robot)));
        }
        if !(self.ground_window > 0.0) {
            return Err(Error::config("ground window must be positive"));
        }
        if !(self.ground_percentile > 0.0 && self.ground_percentile < 100.0) {
            return Err(Error::config("ground percentile must lie in (0, 100)"));
        }
        if !self.position.iter().all(|v| v.is_finite()) {
            return Err(Error::config("robot position must be finite"));
        }
        Ok(())
    }
}

/// Bins every in-window point of every cloud into its cell, keeping the
/// maximum `z`.
pub fn build_height_grid<'a>(
    spec: &GridSpec,
    clouds: impl IntoIterator<Item = &'a ThermalCloud>,
) -> HeightGrid {
    let mut heights: Grid<Option<f64>> = Grid::filled(*spec, None);
    for cloud in clouds {
        for p in cloud.points() {
            if let Some(cell) = spec.world_to_cell(p.position.x, p.position.y) {
                let h = &mut heights[cell];
                *h = Some(h.map_or(p.position.z, |v| v.max(p.position.z)));
            }
        }
    }
    HeightGrid { heights }
}

/// Local ground level: the lower percentile of observed heights whose cell
/// centers lie within the robot's ground window. Falls back to every observed
/// cell when the window holds none.
pub fn local_ground(hg: &HeightGrid, robot: &RobotParams) -> Option<f64> {
    let spec = hg.spec();
    let [rx, ry] = robot.position;
    let r2 = robot.ground_window * robot.ground_window;
    let mut local: Vec<f64> = spec
        .cells()
        .filter_map(|c| {
            let h = hg.at(c)?;
            let [x, y] = spec.cell_center(c);
            ((x - rx).powi(2) + (y - ry).powi(2) <= r2).then_some(h)
        })
        .collect();
    if local.is_empty() {
        local = hg.grid().as_slice().iter().flatten().copied().collect();
    }
    lower_percentile(&mut local, robot.ground_percentile)
}

/// Marks observed cells rising more than `h_robot` above the local ground.
///
/// One ground estimate, taken around the robot, serves the whole grid.
pub fn classify_obstacles(hg: &HeightGrid, robot: &RobotParams) -> ObstacleGrid {
    let spec = *hg.spec();
    let Some(ground) = local_ground(hg, robot) else {
        return ObstacleGrid::empty(spec);
    };
    ObstacleGrid::from_grid(hg.grid().map(|h| h.is_some_and(|h| h - ground > robot.h_robot)))
}

/// `O = max(O_geom, min(T / q_danger, 1))` per cell.
pub fn blend(obstacles: &ObstacleGrid, thermal: &ThermalGrid, danger: &DangerThreshold) -> Result<OccupancyGrid> {
    obstacles.spec().ensure_same(thermal.spec())?;
    let q = danger.q_danger();
    let data = obstacles
        .grid()
        .as_slice()
        .iter()
        .zip(thermal.grid().as_slice())
        .map(|(&occ, &t)| {
            let geometric = if occ { 1.0 } else { 0.0 };
            f64::max(geometric, (t / q).min(1.0))
        })
        .collect();
    OccupancyGrid::from_grid(Grid::from_vec(*obstacles.spec(), data)?)
}

/// Every intermediate product of [`build_map`].
#[derive(Debug, Clone)]
pub struct MapLayers {
    pub heights: HeightGrid,
    pub obstacles: ObstacleGrid,
    pub thermal: ThermalGrid,
    pub occupancy: OccupancyGrid,
}

/// Runs the full pipeline and keeps the intermediate grids.
///
/// With a fire, every cell whose center lies within the footprint radius of
/// the fire center (and the fire's own cell) is forced to 1.
pub fn build_map_layers(
    spec: &GridSpec,
    clouds: &[ThermalCloud],
    robot: &RobotParams,
    fire: Option<&FireEstimate>,
    danger: &DangerThreshold,
    consts: &RadiationConstants,
) -> Result<MapLayers> {
    spec.validate()?;
    robot.validate()?;
    let heights = build_height_grid(spec, clouds);
    let obstacles = classify_obstacles(&heights, robot);
    let thermal = match fire {
        Some(f) => fill_thermal_grid(spec, &obstacles, f, consts)?,
        None => ThermalGrid::zeros(*spec),
    };
    let mut occupancy = blend(&obstacles, &thermal, danger)?;

    if robot.unknown_is_lethal {
        for (v, h) in occupancy.value.as_mut_slice().iter_mut().zip(heights.grid().as_slice()) {
            if h.is_none() {
                *v = 1.0;
            }
        }
    }
    if let Some(f) = fire {
        let [fx, fy] = f.center_xy();
        let r2 = f.footprint_radius * f.footprint_radius;
        for cell in spec.cells() {
            let [x, y] = spec.cell_center(cell);
            if (x - fx).powi(2) + (y - fy).powi(2) <= r2 {
                occupancy.value[cell] = 1.0;
            }
        }
        if let Some(c) = spec.world_to_cell(fx, fy) {
            occupancy.value[c] = 1.0;
        }
    }
    Ok(MapLayers {
        heights,
        obstacles,
        thermal,
        occupancy,
    })
}

/// Occupancy map from LiDAR clouds and an optional fire.
pub fn build_map(
    spec: &GridSpec,
    clouds: &[ThermalCloud],
    robot: &RobotParams,
    fire: Option<&FireEstimate>,
    danger: &DangerThreshold,
    consts: &RadiationConstants,
) -> Result<OccupancyGrid> {
    build_map_layers(spec, clouds, robot, fire, danger, consts).map(|l| l.occupancy)
}
