//! Free-space radiative heat flux: inverse-square decay from the fire,
//! Bresenham line-of-sight over the obstacle grid and the resulting
//! thermal grid.

mod field;
mod flux;
mod los;

pub use field::{fill_thermal_grid, ThermalGrid};
pub use flux::{flux_at, safe_distance, DangerThreshold};
pub use los::{bresenham, line_of_sight, LineOfSight};
