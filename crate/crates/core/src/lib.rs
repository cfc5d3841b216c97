//! Thermal-aware navigation for a ground robot near an open fire.
//!
//! The pipeline fuses depth and thermal camera frames into a temperature
//! annotated point cloud, finds the fire with DBSCAN, predicts radiant heat
//! flux with an inverse-square model masked by line of sight, blends that into
//! a 2D occupancy grid and plans through it with A*. A closed-loop simulator
//! drives the whole stack over synthetic scenes.
//!
//! ```
//! use thermal_nav::prelude::*;
//!
//! let consts = RadiationConstants::default();
//! let fire = FireEstimate::from_area([10.0, 10.0, 0.0], 0.735, &consts).unwrap();
//! let q = flux_at(fire.power, 0.45, &consts).unwrap();
//! assert!((q - 10.8).abs() < 0.1);
//! ```

pub mod calorimetry;
pub mod cli;
pub mod error;
pub mod fire;
pub mod geometry;
pub mod grid;
pub mod occupancy;
pub mod planner;
pub mod radiation;
pub mod raster;
pub mod sim;
mod stats;

pub use error::{Error, Result};
pub use nalgebra;

/// Common imports for library users.
pub mod prelude {
    pub use crate::calorimetry::{analyze, compare_model, CalorimetryReport, CalorimetrySample, ModelComparison};
    pub use crate::error::{Error, Result};
    pub use crate::fire::{dbscan, detect_fire, emitted_power, DbscanParams, FireEstimate, RadiationConstants};
    pub use crate::geometry::{
        annotate_cloud, project_point, CameraIntrinsics, RigidTransform, ThermalCloud, ThermalImage, ThermalPoint,
    };
    pub use crate::grid::{Cell, Grid, GridSpec};
    pub use crate::occupancy::{
        blend, build_height_grid, build_map, build_map_layers, classify_obstacles, MapLayers, ObstacleGrid,
        OccupancyGrid, RobotParams,
    };
    pub use crate::planner::{astar, dijkstra, make_cost_map, CostMap, PlannedPath};
    pub use crate::radiation::{
        fill_thermal_grid, flux_at, line_of_sight, safe_distance, DangerThreshold, ThermalGrid,
    };
    pub use crate::sim::{run_scenario, Scenario, SimStatus, TrajectoryLog};
    pub use nalgebra::Vector3;
}
